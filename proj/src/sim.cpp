#include <algorithm>
#include <cmath>

#include "stick/sim.hpp"

namespace stick {

WorldPrior default_world_prior() {
    WorldPrior prior;
    prior.grid = make_range_grid(1.0, 9.0, 1.0, 5.0);
    prior.n = 5;
    return prior;
}

WorldPrior sweep_world_prior() {
    WorldPrior prior;
    prior.grid = make_range_grid(1.0, 10.0, 1.0, 5.0);
    prior.n = 5;
    return prior;
}

void SweepConfig::validate() const {
    prior.validate();
    goal.validate();
    if (beta_values.empty()) throw ValidationError("beta sweep is empty");
    if (evidence_values.empty()) throw ValidationError("evidence sweep is empty");
    for (double u : evidence_values)
        if (prior.grid.index_of(u) < 0)
            throw ValidationError("evidence value " + fmt_double(u) +
                                  " is not on the sweep grid");
}

HeatmapResult effect_heatmap(const SweepConfig& cfg) {
    cfg.validate();
    auto table = build_world_table(cfg.prior);
    HeatmapResult res;
    res.beta_values = cfg.beta_values;
    res.evidence_values = cfg.evidence_values;
    res.effect.assign(cfg.beta_values.size(),
                      std::vector<double>(cfg.evidence_values.size(), 0.0));
    for (size_t bi = 0; bi < cfg.beta_values.size(); ++bi)
        for (size_t ui = 0; ui < cfg.evidence_values.size(); ++ui)
            res.effect[bi][ui] =
                effect_size(cfg.evidence_values[ui], cfg.goal, cfg.beta_values[bi], table);
    return res;
}

namespace {

double claim_split(const BeliefState& b, const Goal& goal) {
    return b.p_goal(goal) + 0.5 * b.p_tie;
}

}  // namespace

CurvesResult belief_curves(double beta, double offset, const WorldPrior& prior,
                           const std::vector<double>& evidence_values, const Goal& goal,
                           double alpha) {
    prior.validate();
    goal.validate();
    if (evidence_values.empty()) throw ValidationError("evidence sweep is empty");
    auto table = build_world_table(prior);
    CurvesResult res;
    res.evidence_values = evidence_values;
    res.j0.reserve(evidence_values.size());
    res.j1.reserve(evidence_values.size());
    for (double u : evidence_values) {
        res.j0.push_back(claim_split(literal_listener(u, table), goal) + offset);
        res.j1.push_back(claim_split(pragmatic_listener(u, goal, beta, table, alpha), goal) +
                         offset);
    }
    const PropPrior pp = proposition_prior(prior);
    res.prior_split =
        (goal.target == Prop::LONGER ? pp.p_longer : pp.p_shorter) + 0.5 * pp.p_tie;
    return res;
}

CurvesResult belief_curves(double beta, double offset) {
    const WorldPrior prior = default_world_prior();
    return belief_curves(beta, offset, prior, prior.grid.values, Goal{Prop::LONGER});
}

void SyntheticConfig::validate() const {
    prior.validate();
    if (n_participants < 0) throw ValidationError("n_participants must be >= 0");
    double psum = 0.0;
    for (double p : group_proportions) {
        if (!(p >= 0.0)) throw ValidationError("group proportions must be >= 0");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-9) throw ValidationError("group proportions must sum to 1");
    for (double p : p_z)
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p_z must lie in [0, 1]");
    if (!(weak_cell_prob >= 0.0 && weak_cell_prob <= 1.0))
        throw ValidationError("weak_cell_prob must lie in [0, 1]");
    if (!(long_first_prob >= 0.0 && long_first_prob <= 1.0))
        throw ValidationError("long_first_prob must lie in [0, 1]");
    if (!(response_sd > 0.0)) throw ValidationError("response_sd must be positive");
    if (speaker_set.size() < 3)
        throw ValidationError("speaker set needs at least three values to form the groups");
    for (double v : speaker_set)
        if (prior.grid.index_of(v) < 0)
            throw ValidationError("speaker set value " + fmt_double(v) +
                                  " is not on the length grid");
}

namespace {

// supporting evidence values for a claim direction, ascending; the weakest
// supporter sits adjacent to the midpoint
std::vector<double> support_set(const LengthGrid& grid, bool longer) {
    std::vector<double> out;
    const int64_t mid = lattice_key(grid.midpoint);
    for (double v : grid.values) {
        const int64_t k = lattice_key(v);
        if (longer ? k > mid : k < mid) out.push_back(v);
    }
    return out;
}

size_t draw_index(double u01, size_t n) {
    size_t i = static_cast<size_t>(u01 * double(n));
    return i >= n ? n - 1 : i;
}

}  // namespace

std::vector<ResponseRecord> generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    const auto table = build_world_table(cfg.prior);
    const std::vector<double> longer_set = support_set(cfg.prior.grid, true);
    const std::vector<double> shorter_set = support_set(cfg.prior.grid, false);
    if (longer_set.empty() || shorter_set.empty())
        throw ValidationError("the length grid has no evidence on one side of the midpoint");

    std::vector<double> sorted_set = cfg.speaker_set;
    std::sort(sorted_set.begin(), sorted_set.end());

    // listener means per (component, goal, evidence), filled on first use
    const size_t G = cfg.prior.grid.values.size();
    std::vector<std::array<double, 2>> mu_cache[2];
    mu_cache[0].assign(G, {-1.0, -1.0});
    mu_cache[1].assign(G, {-1.0, -1.0});
    auto mu_for = [&](int comp, int goal_idx, double u) {
        const int vi = cfg.prior.grid.index_of(u);
        double& slot = mu_cache[comp][size_t(vi)][size_t(goal_idx)];
        if (slot < 0.0) {
            const Goal goal{goal_idx == 0 ? Prop::LONGER : Prop::SHORTER};
            slot = comp == 0
                       ? claim_split(literal_listener(u, table), goal)
                       : claim_split(pragmatic_listener(u, goal, cfg.beta, table, cfg.alpha),
                                     goal);
        }
        return slot;
    };

    size_t id_width = std::to_string(cfg.n_participants).size();
    if (id_width < 4) id_width = 4;

    std::vector<ResponseRecord> out;
    out.reserve(size_t(cfg.n_participants));
    for (int i = 0; i < cfg.n_participants; ++i) {
        RandomStream rng(stream_seed(cfg.seed, static_cast<uint64_t>(i)));
        ResponseRecord rec;
        std::string num = std::to_string(i + 1);
        rec.participant_id = "p" + std::string(id_width - num.size(), '0') + num;

        const double g = rng.uniform01();
        rec.speaker_group = g < cfg.group_proportions[0] ? SpeakerGroup::STRONGEST
                            : g < cfg.group_proportions[0] + cfg.group_proportions[1]
                                ? SpeakerGroup::SECOND_STRONGEST
                                : SpeakerGroup::WEAKER;
        rec.contestant_order =
            rng.uniform01() < cfg.long_first_prob ? Order::LONG_FIRST : Order::SHORT_FIRST;
        const bool longer = rec.contestant_order == Order::LONG_FIRST;

        switch (rec.speaker_group) {
            case SpeakerGroup::STRONGEST:
                rec.speaker_choice = longer ? sorted_set.back() : sorted_set.front();
                break;
            case SpeakerGroup::SECOND_STRONGEST:
                rec.speaker_choice =
                    longer ? sorted_set[sorted_set.size() - 2] : sorted_set[1];
                break;
            default: {
                std::vector<double> pool(sorted_set.begin() + (longer ? 0 : 2),
                                         sorted_set.end() - (longer ? 2 : 0));
                rec.speaker_choice = pool[draw_index(rng.uniform01(), pool.size())];
            }
        }

        const std::vector<double>& support = longer ? longer_set : shorter_set;
        const double weak = longer ? support.front() : support.back();
        const double e = rng.uniform01();
        if (e < cfg.weak_cell_prob || support.size() == 1) {
            rec.evidence_1 = weak;
        } else {
            std::vector<double> others;
            for (double v : support)
                if (lattice_key(v) != lattice_key(weak)) others.push_back(v);
            const double rescaled =
                (e - cfg.weak_cell_prob) / (1.0 - cfg.weak_cell_prob);
            rec.evidence_1 = others[draw_index(rescaled, others.size())];
        }

        const int comp =
            rng.uniform01() < cfg.p_z[size_t(rec.speaker_group)] ? 1 : 0;  // J1 vs J0
        const int goal_idx = longer ? 0 : 1;
        const double mu = mu_for(comp, goal_idx, rec.evidence_1) + cfg.offset;
        double y = mu + cfg.response_sd * rng.normal();
        y = std::clamp(y, 0.0, 1.0);
        rec.response_1 = 100.0 * y;
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

struct BatteryGrid {
    std::string label;
    WorldPrior prior;
};

std::vector<BatteryGrid> battery() {
    std::vector<BatteryGrid> grids;
    grids.push_back({"grid 1..9 n=5", default_world_prior()});
    WorldPrior small;
    small.grid = make_range_grid(1.0, 5.0, 1.0, 3.0);
    small.n = 3;
    grids.push_back({"grid 1..5 n=3", small});
    WorldPrior fine;
    fine.grid = make_range_grid(0.1, 0.9, 0.1, 0.5);
    fine.n = 5;
    grids.push_back({"grid 0.1..0.9 n=5", fine});
    WorldPrior tiny;
    tiny.grid = make_range_grid(1.0, 3.0, 1.0, 2.0);
    tiny.n = 2;
    grids.push_back({"grid 1..3 n=2", tiny});
    return grids;
}

std::string goal_label(const Goal& g) {
    return g.target == Prop::LONGER ? "LONGER" : "SHORTER";
}

// utterances whose speaker probability is within tolerance of the maximum
std::vector<size_t> argmax_set(const ChoiceDist& dist) {
    double mx = 0.0;
    for (const auto& [u, p] : dist) mx = std::max(mx, p);
    std::vector<size_t> set;
    for (size_t i = 0; i < dist.size(); ++i)
        if (dist[i].second >= mx - 1e-9) set.push_back(i);
    return set;
}

}  // namespace

TheoremReport theorem_suite(double utility_sign) {
    TheoremReport report;
    const auto grids = battery();
    const Goal goals[2] = {Goal{Prop::LONGER}, Goal{Prop::SHORTER}};

    PropertyResult reduction{"beta-zero reduction", true, ""};
    PropertyResult monotone{"utility monotonicity", true, ""};
    PropertyResult argmax{"argmax invariance", true, ""};
    PropertyResult region{"effect-region monotonicity", true, ""};

    for (const BatteryGrid& bg : grids) {
        auto table = build_world_table(bg.prior);
        const auto& values = bg.prior.grid.values;

        for (const Goal& goal : goals) {
            // (1) beta = 0 collapses the pragmatic listener onto the literal one
            for (double u : values) {
                if (!reduction.pass) break;
                const BeliefState lit = literal_listener(u, table);
                const BeliefState prag = pragmatic_listener(u, goal, 0.0, table);
                double diff = std::max({std::abs(lit.p_longer - prag.p_longer),
                                        std::abs(lit.p_shorter - prag.p_shorter),
                                        std::abs(lit.p_tie - prag.p_tie)});
                for (size_t w = 0; w < lit.world_posterior.size(); ++w)
                    diff = std::max(diff,
                                    std::abs(lit.world_posterior[w] - prag.world_posterior[w]));
                if (diff >= 1e-12) {
                    reduction.pass = false;
                    reduction.counterexample = bg.label + " goal " + goal_label(goal) + " u=" +
                                               fmt_double(u) + ": deviation " + fmt_double(diff);
                }
            }

            // (2) persuasive utility strictly favors more supportive evidence
            for (size_t v = 1; v < values.size() && monotone.pass; ++v) {
                const double lo_u = values[v - 1], hi_u = values[v];
                const double f_lo = utility_sign * persuasive_utility(lo_u, goal, bg.prior);
                const double f_hi = utility_sign * persuasive_utility(hi_u, goal, bg.prior);
                const bool ok =
                    goal.target == Prop::LONGER ? f_hi > f_lo : f_hi < f_lo;
                if (!ok) {
                    monotone.pass = false;
                    monotone.counterexample =
                        bg.label + " goal " + goal_label(goal) + ": utility(" +
                        fmt_double(lo_u) + ")=" + fmt_double(f_lo) + " vs utility(" +
                        fmt_double(hi_u) + ")=" + fmt_double(f_hi);
                }
            }

            // (3) the speaker's modal choice is invariant under (beta, alpha) -> (c*beta, alpha/c)
            if (argmax.pass && !table->worlds.empty()) {
                const size_t picks[3] = {0, table->worlds.size() / 2, table->worlds.size() - 1};
                for (size_t pi = 0; pi < 3 && argmax.pass; ++pi) {
                    const StickSet w = table->materialize(table->worlds[picks[pi]]);
                    bool defined = true;  // worlds with no finite-utility utterance are vacuous
                    try {
                        speaker_choice_dist(w, goal, SpeakerParams{1.0, 1.0, 0.0, 1}, table);
                    } catch (const EmptySupport&) {
                        defined = false;
                    }
                    if (!defined) continue;
                    for (double beta : {0.5, 2.0}) {
                        for (double c : {2.0, 10.0}) {
                            SpeakerParams base{1.0, beta, 0.0, 1};
                            SpeakerParams scaled{1.0 / c, c * beta, 0.0, 1};
                            const auto a = argmax_set(speaker_choice_dist(w, goal, base, table));
                            const auto b =
                                argmax_set(speaker_choice_dist(w, goal, scaled, table));
                            bool overlap = false;
                            for (size_t x : a)
                                for (size_t y : b) overlap = overlap || x == y;
                            if (!overlap) {
                                argmax.pass = false;
                                argmax.counterexample = bg.label + " goal " + goal_label(goal) +
                                                        " beta=" + fmt_double(beta) +
                                                        " c=" + fmt_double(c) +
                                                        ": modal utterances diverge";
                            }
                        }
                    }
                }
            }

            // (4) the weak-evidence region never shrinks as beta grows (LONGER claim);
            // evidence no motivated speaker would ever show has no defined effect and
            // stays outside the region
            if (region.pass && goal.target == Prop::LONGER) {
                const std::vector<double> betas{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
                std::vector<bool> prev(values.size(), false);
                for (double beta : betas) {
                    std::vector<bool> cur(values.size(), false);
                    for (size_t v = 0; v < values.size(); ++v) {
                        try {
                            cur[v] = effect_size(values[v], goal, beta, table) > 1e-12;
                        } catch (const EmptySupport&) {
                            cur[v] = false;
                        }
                    }
                    for (size_t v = 0; v < values.size(); ++v) {
                        if (prev[v] && !cur[v]) {
                            region.pass = false;
                            region.counterexample =
                                bg.label + " goal " + goal_label(goal) + " u=" +
                                fmt_double(values[v]) + ": effect vanished at beta " +
                                fmt_double(beta);
                            break;
                        }
                    }
                    if (!region.pass) break;
                    prev = cur;
                }
            }
        }
    }

    report.results = {reduction, monotone, argmax, region};
    for (const PropertyResult& r : report.results) report.all_pass = report.all_pass && r.pass;
    return report;
}

}  // namespace stick
