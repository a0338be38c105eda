#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace oracle {
namespace {

int64_t key(double v) { return static_cast<int64_t>(std::llround(v * 1e9)); }

std::vector<std::vector<double>> all_tuples(const Setup& s) {
    std::vector<std::vector<double>> out;
    std::vector<double> cur(s.n);
    std::vector<size_t> idx(s.n, 0);
    const size_t m = s.grid.size();
    while (true) {
        for (int i = 0; i < s.n; ++i) cur[i] = s.grid[idx[i]];
        out.push_back(cur);
        int i = s.n - 1;
        while (i >= 0 && ++idx[i] == m) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

int prop_of(const std::vector<double>& t, const Setup& s) {
    int64_t sum = 0;
    for (double v : t) sum += key(v);
    const int64_t target = static_cast<int64_t>(s.n) * key(s.midpoint);
    return sum > target ? 1 : sum < target ? -1 : 0;
}

bool matches_goal(int prop, bool goal_longer) { return goal_longer ? prop > 0 : prop < 0; }

// P(goal | chosen slot shows u), by counting slots across all tuples
double literal_goal_prob(const Setup& s, double u, bool goal_longer) {
    double hit = 0.0, tot = 0.0;
    for (const auto& t : all_tuples(s)) {
        const int prop = prop_of(t, s);
        for (double v : t)
            if (key(v) == key(u)) {
                tot += 1.0;
                if (matches_goal(prop, goal_longer)) hit += 1.0;
            }
    }
    if (tot == 0.0) throw std::runtime_error("oracle: evidence value not on grid");
    return hit / tot;
}

// per-grid-value log-scores for the motivated speaker
std::vector<double> literal_scores(const Setup& s, bool goal_longer) {
    std::vector<double> out;
    out.reserve(s.grid.size());
    for (double v : s.grid) {
        const double p = literal_goal_prob(s, v, goal_longer);
        out.push_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity());
    }
    return out;
}

double score_of(const Setup& s, const std::vector<double>& scores, double v) {
    for (size_t i = 0; i < s.grid.size(); ++i)
        if (key(s.grid[i]) == key(v)) return scores[i];
    throw std::runtime_error("oracle: value not on grid");
}

// P(speaker shows u | tuple), softmax over slots with exponent ab; -1 when the
// speaker has no utterance with finite utility
double speaker_prob(const Setup& s, const std::vector<double>& t, double u,
                    const std::vector<double>& scores, double ab) {
    double tot = 0.0, hit = 0.0;
    for (double v : t) {
        double w;
        if (ab == 0.0) {
            w = 1.0;
        } else {
            const double sc = score_of(s, scores, v);
            w = std::isinf(sc) ? 0.0 : std::exp(ab * sc);
        }
        tot += w;
        if (key(v) == key(u)) hit += w;
    }
    if (tot == 0.0) return -1.0;
    return hit / tot;
}

void add_world(Posterior& p, std::vector<double> t, int prop, double w) {
    std::sort(t.begin(), t.end());
    p.worlds[t] += w;
    if (prop > 0)
        p.p_longer += w;
    else if (prop < 0)
        p.p_shorter += w;
    else
        p.p_tie += w;
}

void normalize(Posterior& p) {
    double z = p.p_longer + p.p_shorter + p.p_tie;
    for (auto& [k, v] : p.worlds) v /= z;
    p.p_longer /= z;
    p.p_shorter /= z;
    p.p_tie /= z;
}

Posterior scored_posterior(const Setup& s, double u, const std::vector<double>& scores,
                           double ab) {
    Posterior p;
    for (const auto& t : all_tuples(s)) {
        const double like = speaker_prob(s, t, u, scores, ab);
        if (like <= 0.0) continue;
        add_world(p, t, prop_of(t, s), like);  // tuple prior is uniform, drops in normalization
    }
    normalize(p);
    return p;
}

}  // namespace

Posterior literal(const Setup& s, double u) {
    Posterior p;
    for (const auto& t : all_tuples(s)) {
        double count = 0.0;
        for (double v : t)
            if (key(v) == key(u)) count += 1.0;
        if (count > 0.0) add_world(p, t, prop_of(t, s), count);
    }
    normalize(p);
    return p;
}

Posterior pragmatic(const Setup& s, double u, bool goal_longer, double beta) {
    return scored_posterior(s, u, literal_scores(s, goal_longer), s.alpha * beta);
}

Joint joint(const Setup& s, double u, bool goal_longer, const std::vector<double>& beta_values,
            const std::vector<double>& beta_weights) {
    const auto scores = literal_scores(s, goal_longer);
    const auto tuples = all_tuples(s);
    Joint j;
    j.beta_values = beta_values;
    j.beta_posterior.assign(beta_values.size(), 0.0);
    for (size_t bj = 0; bj < beta_values.size(); ++bj) {
        for (const auto& t : tuples) {
            const double like = speaker_prob(s, t, u, scores, s.alpha * beta_values[bj]);
            if (like <= 0.0) continue;
            const double w = beta_weights[bj] * like;
            add_world(j.world, t, prop_of(t, s), w);
            j.beta_posterior[bj] += w;
        }
    }
    double z = 0.0;
    for (double v : j.beta_posterior) z += v;
    for (double& v : j.beta_posterior) v /= z;
    normalize(j.world);
    for (size_t bj = 0; bj < beta_values.size(); ++bj) {
        j.mean_beta += beta_values[bj] * j.beta_posterior[bj];
        j.mean_abs_beta += std::abs(beta_values[bj]) * j.beta_posterior[bj];
    }
    return j;
}

Posterior level2(const Setup& s, double u, bool goal_longer, double beta, double w_c,
                 const std::vector<double>& beta_values, const std::vector<double>& beta_weights) {
    std::vector<double> scores;
    scores.reserve(s.grid.size());
    for (double v : s.grid) {
        const Joint j = joint(s, v, goal_longer, beta_values, beta_weights);
        const double pg = goal_longer ? j.world.p_longer : j.world.p_shorter;
        scores.push_back(pg > 0.0 ? std::log(pg) - w_c * j.mean_abs_beta
                                  : -std::numeric_limits<double>::infinity());
    }
    return scored_posterior(s, u, scores, s.alpha * std::abs(beta));
}

}  // namespace oracle
