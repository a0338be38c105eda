#include <algorithm>
#include <cmath>
#include <numeric>

#include "stick/infer.hpp"

namespace stick {

namespace {

void check_matrix(const std::vector<std::vector<double>>& loglik, size_t min_samples,
                  const char* what) {
    if (loglik.size() < min_samples)
        throw ValidationError(std::string(what) + " needs at least " +
                              std::to_string(min_samples) + " posterior samples");
    if (loglik[0].empty()) throw ValidationError(std::string(what) + " needs at least one datum");
    for (const auto& row : loglik)
        if (row.size() != loglik[0].size())
            throw ValidationError("ragged log-likelihood matrix");
}

double sample_variance(const std::vector<double>& v) {
    const size_t n = v.size();
    if (n < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / double(n - 1);
}

double sum_se(const std::vector<double>& pointwise) {
    return std::sqrt(double(pointwise.size()) * sample_variance(pointwise));
}

}  // namespace

WaicResult waic(const std::vector<std::vector<double>>& loglik) {
    check_matrix(loglik, 1, "waic");
    const size_t S = loglik.size(), n = loglik[0].size();
    WaicResult res;
    res.pointwise.resize(n);
    std::vector<double> col(S);
    for (size_t i = 0; i < n; ++i) {
        for (size_t s = 0; s < S; ++s) col[s] = loglik[s][i];
        const double lppd = logsumexp(col) - std::log(double(S));
        const double p = sample_variance(col);  // 0 by convention for a single sample
        res.p_waic += p;
        res.pointwise[i] = -2.0 * (lppd - p);
        res.waic += res.pointwise[i];
    }
    res.se = sum_se(res.pointwise);
    return res;
}

void gpd_fit(const std::vector<double>& x, double& k, double& sigma, bool wip) {
    const size_t N = x.size();
    if (N < 2) throw ValidationError("gpd fit needs at least 2 tail points");
    const double prior = 3.0;
    const size_t M = 30 + static_cast<size_t>(std::floor(std::sqrt(double(N))));
    size_t quart = static_cast<size_t>(std::floor(double(N) / 4.0 + 0.5));
    if (quart >= 1) --quart;  // order statistic rank -> zero-based index
    double xstar = x[quart];
    if (!(xstar > 0.0))
        for (double v : x)
            if (v > 0.0) {
                xstar = v;
                break;
            }
    const double xmax = x[N - 1];
    if (!(xstar > 0.0) || !(xmax > 0.0)) {
        k = std::numeric_limits<double>::infinity();
        sigma = std::numeric_limits<double>::quiet_NaN();
        return;
    }

    std::vector<double> theta(M), lprof(M);
    for (size_t j = 0; j < M; ++j)
        theta[j] = 1.0 / xmax + (1.0 - std::sqrt(double(M) / (double(j) + 0.5))) / (prior * xstar);
    for (size_t j = 0; j < M; ++j) {
        double t = 0.0;
        for (double v : x) t += std::log1p(-theta[j] * v);
        t /= double(N);
        lprof[j] = double(N) * (std::log(-theta[j] / t) - t - 1.0);
        if (!std::isfinite(lprof[j])) lprof[j] = kNegInf;
    }
    double theta_hat = 0.0;
    for (size_t i = 0; i < M; ++i) {
        double denom = 0.0;
        for (size_t j = 0; j < M; ++j) denom += std::exp(lprof[j] - lprof[i]);
        theta_hat += theta[i] / denom;
    }
    double kk = 0.0;
    for (double v : x) kk += std::log1p(-theta_hat * v);
    kk /= double(N);
    sigma = -kk / theta_hat;
    if (wip) kk = kk * double(N) / (double(N) + 10.0) + 5.0 / (double(N) + 10.0);
    if (std::isnan(kk)) kk = std::numeric_limits<double>::infinity();
    k = kk;
}

namespace {

double gpd_quantile(double p, double k, double sigma) {
    if (k == 0.0) return -sigma * std::log1p(-p);
    return sigma * std::expm1(-k * std::log1p(-p)) / k;
}

}  // namespace

PsisResult psis_loo(const std::vector<std::vector<double>>& loglik) {
    check_matrix(loglik, 2, "psis-loo");
    const size_t S = loglik.size(), n = loglik[0].size();
    const size_t M = static_cast<size_t>(std::floor(0.2 * double(S)));

    PsisResult res;
    res.pointwise.resize(n);
    res.pareto_k.assign(n, std::numeric_limits<double>::quiet_NaN());
    res.tis_fallback.assign(n, 0);

    std::vector<double> ll(S), lw(S), shifted(S);
    std::vector<size_t> idx(S);
    double elpd_total = 0.0, lppd_total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t s = 0; s < S; ++s) ll[s] = loglik[s][i];
        double lmax = kNegInf;
        for (size_t s = 0; s < S; ++s) lmax = std::max(lmax, -ll[s]);
        for (size_t s = 0; s < S; ++s) lw[s] = -ll[s] - lmax;

        if (M < 5) {
            // tail too short for a Pareto fit: truncated importance sampling,
            // w capped at mean(w) * S^(3/4)
            res.tis_fallback[i] = 1;
            double mean_w = 0.0;
            for (size_t s = 0; s < S; ++s) mean_w += std::exp(lw[s]);
            mean_w /= double(S);
            const double cap = std::log(mean_w) + 0.75 * std::log(double(S));
            for (size_t s = 0; s < S; ++s) lw[s] = std::min(lw[s], cap);
        } else {
            std::iota(idx.begin(), idx.end(), size_t{0});
            std::sort(idx.begin(), idx.end(),
                      [&lw](size_t a, size_t b) { return lw[a] < lw[b]; });
            const double cutoff = std::exp(lw[idx[S - M - 1]]);
            std::vector<double> exc(M);
            for (size_t j = 0; j < M; ++j) exc[j] = std::exp(lw[idx[S - M + j]]) - cutoff;
            const bool flat = exc[M - 1] - exc[0] < 1e-12 * std::max(1.0, exc[M - 1]);
            if (!flat) {
                double khat = 0.0, sg = 0.0;
                gpd_fit(exc, khat, sg);
                res.pareto_k[i] = khat;
                if (std::isfinite(khat) && std::isfinite(sg) && sg > 0.0) {
                    std::vector<double> sm(M);
                    double sm_max = kNegInf;
                    for (size_t j = 0; j < M; ++j) {
                        sm[j] = cutoff + gpd_quantile((double(j) + 0.5) / double(M), khat, sg);
                        sm_max = std::max(sm_max, sm[j]);
                    }
                    for (size_t j = 0; j < M; ++j) lw[idx[S - M + j]] = std::log(sm[j]);
                    const double lcap = std::log(sm_max);  // truncate at the smoothed maximum
                    for (size_t s = 0; s < S; ++s) lw[s] = std::min(lw[s], lcap);
                }
                if (khat > 0.7)
                    res.warnings.push_back("datum " + std::to_string(i) + " tail shape k " +
                                           fmt_double(khat) + " exceeds 0.7");
            }
        }

        for (size_t s = 0; s < S; ++s) shifted[s] = lw[s] + ll[s];
        const double elpd = logsumexp(shifted) - logsumexp(lw);
        const double lppd = logsumexp(ll) - std::log(double(S));
        elpd_total += elpd;
        lppd_total += lppd;
        res.pointwise[i] = -2.0 * elpd;
        res.loo += res.pointwise[i];
    }
    res.p_loo = lppd_total - elpd_total;
    res.se = sum_se(res.pointwise);
    return res;
}

std::vector<ComparisonRow> compare_models(const std::vector<FitSummary>& fits) {
    if (fits.empty()) throw ValidationError("no fits to compare");
    for (const FitSummary& f : fits) {
        if (f.data_fingerprint != fits[0].data_fingerprint)
            throw ValidationError("fits were computed on different datasets: '" + fits[0].model +
                                  "' vs '" + f.model + "'");
        if (f.waic_pointwise.size() != fits[0].waic_pointwise.size())
            throw ValidationError("fits disagree on the number of data points");
    }
    std::vector<size_t> order(fits.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&fits](size_t a, size_t b) {
        if (fits[a].waic != fits[b].waic) return fits[a].waic < fits[b].waic;
        return fits[a].model < fits[b].model;
    });

    const FitSummary& best = fits[order[0]];
    std::vector<ComparisonRow> rows;
    rows.reserve(fits.size());
    for (size_t r = 0; r < order.size(); ++r) {
        const FitSummary& f = fits[order[r]];
        ComparisonRow row;
        row.model = f.model;
        row.max_loglik = f.max_loglik;
        row.waic = f.waic;
        row.waic_se = f.waic_se;
        row.psis_loo = f.psis_loo;
        row.psis_loo_se = f.psis_loo_se;
        row.delta_waic = f.waic - best.waic;
        if (r > 0) {
            std::vector<double> diff(f.waic_pointwise.size());
            for (size_t i = 0; i < diff.size(); ++i)
                diff[i] = f.waic_pointwise[i] - best.waic_pointwise[i];
            row.delta_se = sum_se(diff);
            row.indistinguishable = row.delta_waic < row.delta_se + 1e-12;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace stick
