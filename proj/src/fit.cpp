#include <algorithm>
#include <cmath>

#include "stick/infer.hpp"

namespace stick {

namespace {

void check_box(const std::vector<ParamDef>& box) {
    if (box.empty()) throw ValidationError("empty parameter space");
    for (const ParamDef& def : box)
        if (!(def.hi > def.lo))
            throw ValidationError("parameter '" + def.name + "' has an empty range");
}

}  // namespace

MapResult map_fit(const std::function<double(const std::vector<double>&)>& objective,
                  const std::vector<ParamDef>& box, const MapConfig& cfg) {
    check_box(box);
    const size_t d = box.size();
    const int m = std::clamp(
        static_cast<int>(std::floor(std::pow(double(cfg.grid_budget), 1.0 / double(d)))), 5, 41);

    MapResult res;
    std::vector<double> x(d), best(d);
    std::vector<int> digits(d, 0);
    // odometer with the last dimension fastest: dimension 0 varies slowest, so
    // listener tables keyed on it get rebuilt at most m times during the scan
    bool more = true;
    while (more) {
        for (size_t k = 0; k < d; ++k)
            x[k] = box[k].lo + (digits[k] + 0.5) * (box[k].hi - box[k].lo) / m;
        const double f = objective(x);
        ++res.evaluations;
        if (f > res.max_loglik) {
            res.max_loglik = f;
            best = x;
        }
        more = false;
        for (size_t k = d; k-- > 0;) {
            if (++digits[k] < m) {
                more = true;
                break;
            }
            digits[k] = 0;
        }
    }

    x = best;
    double f_best = res.max_loglik;
    std::vector<double> width(d);
    for (size_t k = 0; k < d; ++k) width[k] = (box[k].hi - box[k].lo) / m;
    int stale = 0;
    for (int pass = 0; pass < cfg.refine_passes && stale < 2; ++pass) {
        const double f_start = f_best;
        for (size_t k = 0; k < d; ++k) {
            const double lo = std::max(box[k].lo, best[k] - width[k]);
            const double hi = std::min(box[k].hi, best[k] + width[k]);
            for (int j = 0; j < cfg.refine_points; ++j) {
                x[k] = cfg.refine_points == 1
                           ? 0.5 * (lo + hi)
                           : lo + j * (hi - lo) / (cfg.refine_points - 1);
                const double f = objective(x);
                ++res.evaluations;
                if (f > f_best) {
                    f_best = f;
                    best = x;
                }
            }
            x = best;
        }
        for (double& wk : width) wk *= 0.6;
        stale = f_best - f_start < 1e-12 ? stale + 1 : 0;
    }
    res.params = best;
    res.max_loglik = f_best;
    return res;
}

MapResult map_fit(const ModelEval& eval, const MapConfig& cfg) {
    return map_fit([&eval](const std::vector<double>& p) { return eval.log_likelihood(p); },
                   eval.space().defs, cfg);
}

McmcResult mh_sample(const LogPostFn& logpost, const std::vector<ParamDef>& box,
                     const McmcConfig& cfg, size_t n_data) {
    check_box(box);
    if (cfg.chains < 1) throw ValidationError("mcmc needs at least one chain");
    if (cfg.samples < 1) throw ValidationError("mcmc needs at least one sample per chain");
    if (cfg.burnin < 0 || cfg.lag < 1) throw ValidationError("invalid burnin/lag");
    if (!(cfg.proposal_frac > 0.0)) throw ValidationError("proposal_frac must be positive");

    const size_t d = box.size();
    McmcResult out;
    out.samples.reserve(size_t(cfg.chains) * size_t(cfg.samples));
    out.loglik.reserve(size_t(cfg.chains) * size_t(cfg.samples));

    for (int chain = 0; chain < cfg.chains; ++chain) {
        RandomStream rng(stream_seed(cfg.seed, static_cast<uint64_t>(chain)));
        std::vector<double> x(d), sigma(d);
        for (size_t k = 0; k < d; ++k) {
            x[k] = box[k].lo + rng.uniform01() * (box[k].hi - box[k].lo);
            sigma[k] = cfg.proposal_frac * (box[k].hi - box[k].lo);
        }
        std::vector<double> cur_ll(n_data), prop_ll(n_data);
        double lp = logpost(x, &cur_ll);
        if (!std::isfinite(lp))
            throw ValidationError("chain " + std::to_string(chain) +
                                  " started at a state with non-finite posterior");

        long accepted = 0, moves = 0;
        std::vector<long> win_acc(d, 0), win_tot(d, 0);
        const long total = long(cfg.burnin) + long(cfg.samples) * long(cfg.lag);
        for (long sweep = 0; sweep < total; ++sweep) {
            const bool in_burnin = sweep < cfg.burnin;
            for (size_t k = 0; k < d; ++k) {
                double v = x[k] + sigma[k] * rng.normal();
                const double lo = box[k].lo, hi = box[k].hi;
                while (v < lo || v > hi) v = v < lo ? 2.0 * lo - v : 2.0 * hi - v;
                const double old = x[k];
                x[k] = v;
                const double lp_new = logpost(x, &prop_ll);
                const double u = rng.uniform01();  // drawn unconditionally, keeps streams aligned
                if (std::log(u) < lp_new - lp) {
                    lp = lp_new;
                    cur_ll.swap(prop_ll);
                    if (in_burnin)
                        ++win_acc[k];
                    else
                        ++accepted;
                } else {
                    x[k] = old;
                }
                if (in_burnin)
                    ++win_tot[k];
                else
                    ++moves;
            }
            if (in_burnin && (sweep + 1) % 250 == 0) {
                for (size_t k = 0; k < d; ++k) {
                    if (win_tot[k] == 0) continue;
                    const double rate = double(win_acc[k]) / double(win_tot[k]);
                    if (rate < 0.15)
                        sigma[k] *= 0.7;
                    else if (rate > 0.5)
                        sigma[k] *= 1.3;
                    sigma[k] = std::clamp(sigma[k], 1e-6 * (box[k].hi - box[k].lo),
                                          box[k].hi - box[k].lo);
                    win_acc[k] = 0;
                    win_tot[k] = 0;
                }
            }
            if (!in_burnin && (sweep - cfg.burnin + 1) % cfg.lag == 0) {
                out.samples.push_back(x);
                out.loglik.push_back(cur_ll);
            }
        }
        const double rate = moves > 0 ? double(accepted) / double(moves) : 0.0;
        out.chain_acceptance.push_back(rate);
        if (rate < 0.05 || rate > 0.8)
            out.warnings.push_back("chain " + std::to_string(chain) + " acceptance rate " +
                                   fmt_double(rate) + " outside [0.05, 0.8]");
    }
    return out;
}

McmcResult mh_sample(const ModelEval& eval, const McmcConfig& cfg) {
    return mh_sample(
        [&eval](const std::vector<double>& p, std::vector<double>* pd) {
            return eval.log_likelihood(p, pd);
        },
        eval.space().defs, cfg, eval.n_observations());
}

}  // namespace stick
