#include "stick/rsa.hpp"

#include <algorithm>
#include <cmath>

namespace stick {

BetaPrior BetaPrior::uniform_grid(double lo, double hi, int points) {
    if (points < 1) throw ValidationError("beta prior needs >= 1 point");
    if (!(hi >= lo)) throw ValidationError("beta prior bounds out of order");
    BetaPrior p;
    p.values.reserve(points);
    p.weights.assign(points, 1.0 / points);
    for (int i = 0; i < points; ++i)
        p.values.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
    return p;
}

BetaPrior BetaPrior::point_mass(double beta) {
    BetaPrior p;
    p.values = {beta};
    p.weights = {1.0};
    return p;
}

void BetaPrior::validate() const {
    if (values.empty() || values.size() != weights.size())
        throw ValidationError("beta prior values/weights mismatch");
    double s = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("beta prior weights must be >= 0");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ValidationError("beta prior weights must sum to 1");
}

std::vector<std::pair<StickSet, double>> BeliefState::world_posterior_map() const {
    std::vector<std::pair<StickSet, double>> out;
    out.reserve(world_posterior.size());
    for (size_t i = 0; i < world_posterior.size(); ++i)
        out.emplace_back(table->materialize(table->worlds[i]), world_posterior[i]);
    return out;
}

std::vector<double> literal_goal_log_table(const WorldTable& table, const Goal& goal) {
    goal.validate();
    const auto& prior = table.prior;
    const auto pmf = remaining_sum_pmf(prior, prior.n - 1);
    // sorted key/prefix arrays for exact strict-threshold sums
    std::vector<int64_t> keys;
    std::vector<double> prefix;  // prefix[i] = sum of pmf over keys[0..i-1]
    keys.reserve(pmf.size());
    prefix.reserve(pmf.size() + 1);
    prefix.push_back(0.0);
    for (const auto& [k, p] : pmf) {
        keys.push_back(k);
        prefix.push_back(prefix.back() + p);
    }
    const double total = prefix.back();

    std::vector<double> out(prior.grid.values.size(), kNegInf);
    for (size_t i = 0; i < prior.grid.values.size(); ++i) {
        const int64_t t = table.target_key - lattice_key(prior.grid.values[i]);
        double p;
        if (goal.target == Prop::LONGER) {
            // P(S > t): subtract mass at keys <= t
            const auto it = std::upper_bound(keys.begin(), keys.end(), t);
            p = total - prefix[static_cast<size_t>(it - keys.begin())];
        } else {
            const auto it = std::lower_bound(keys.begin(), keys.end(), t);
            p = prefix[static_cast<size_t>(it - keys.begin())];
        }
        out[i] = p > 0.0 ? std::log(p) : kNegInf;
    }
    return out;
}

namespace {

BeliefState finish_belief(std::shared_ptr<const WorldTable> table, std::vector<double>&& weights,
                          const char* what) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw EmptySupport(std::string("empty posterior support in ") + what);
    BeliefState b;
    b.table = table;
    b.world_posterior = std::move(weights);
    for (size_t i = 0; i < b.world_posterior.size(); ++i) {
        b.world_posterior[i] /= total;
        const double p = b.world_posterior[i];
        switch (table->worlds[i].prop) {
            case Prop::LONGER: b.p_longer += p; break;
            case Prop::SHORTER: b.p_shorter += p; break;
            case Prop::TIE: b.p_tie += p; break;
        }
    }
    return b;
}

int require_value_index(const WorldTable& table, double u, const char* what) {
    const int idx = table.prior.grid.index_of(u);
    if (idx < 0)
        throw EmptySupport(std::string(what) + ": no world contains evidence " + fmt_double(u));
    return idx;
}

// P_S(item | w) for a softmax speaker with per-value log-scores and weight ab.
// Items are (value index, count); scores[vi] may be -inf. Returns false when
// every utterance has -inf utility (speaker undefined).
bool speaker_item_probs(const std::vector<std::pair<uint16_t, uint16_t>>& items,
                        const std::vector<double>& scores, double ab, int n,
                        std::vector<double>& out) {
    out.assign(items.size(), 0.0);
    if (ab == 0.0) {  // zero exponent: uniform over the n slots
        for (size_t i = 0; i < items.size(); ++i)
            out[i] = static_cast<double>(items[i].second) / n;
        return true;
    }
    double mx = kNegInf;
    bool any_posinf = false;
    std::vector<double> lw(items.size());
    for (size_t i = 0; i < items.size(); ++i) {
        const double s = scores[items[i].first];
        double v;
        if (s == kNegInf)
            v = ab > 0 ? kNegInf : std::numeric_limits<double>::infinity();
        else
            v = std::log(static_cast<double>(items[i].second)) + ab * s;
        lw[i] = v;
        if (v > mx) mx = v;
        if (v == std::numeric_limits<double>::infinity()) any_posinf = true;
    }
    if (mx == kNegInf) return false;
    double z = 0.0;
    if (any_posinf) {  // degenerate preference for zero-posterior utterances
        for (size_t i = 0; i < items.size(); ++i)
            out[i] = lw[i] == std::numeric_limits<double>::infinity()
                         ? static_cast<double>(items[i].second)
                         : 0.0;
    } else {
        for (size_t i = 0; i < items.size(); ++i) out[i] = std::exp(lw[i] - mx);
    }
    for (double v : out) z += v;
    for (double& v : out) v /= z;
    return true;
}

ChoiceDist items_to_dist(const WorldTable& table,
                         const std::vector<std::pair<uint16_t, uint16_t>>& items,
                         const std::vector<double>& probs) {
    ChoiceDist d;
    d.reserve(items.size());
    for (size_t i = 0; i < items.size(); ++i)
        d.emplace_back(table.prior.grid.values[items[i].first], probs[i]);
    return d;
}

std::vector<std::pair<uint16_t, uint16_t>> stickset_items(const WorldTable& table,
                                                          const StickSet& w) {
    if (static_cast<int>(w.n()) != table.prior.n)
        throw ValidationError("stick set size does not match the world prior");
    std::vector<std::pair<uint16_t, uint16_t>> items;
    for (double v : w.lengths) {
        const int idx = table.prior.grid.index_of(v);
        if (idx < 0) throw ValidationError("stick length " + fmt_double(v) + " not in grid");
        bool found = false;
        for (auto& [vi, c] : items)
            if (vi == idx) {
                ++c;
                found = true;
            }
        if (!found) items.emplace_back(static_cast<uint16_t>(idx), 1);
    }
    std::sort(items.begin(), items.end());
    return items;
}

// generic "posterior given one utterance under a per-value-scored speaker"
BeliefState scored_listener(std::shared_ptr<const WorldTable> table, double u,
                            const std::vector<double>& scores, double ab, const char* what) {
    const int uidx = require_value_index(*table, u, what);
    const auto& worlds = table->worlds;
    std::vector<double> weights(worlds.size(), 0.0);
    std::vector<double> probs;
    for (size_t wi = 0; wi < worlds.size(); ++wi) {
        const auto& w = worlds[wi];
        const uint16_t c = w.count_of(static_cast<uint16_t>(uidx));
        if (c == 0) continue;
        if (!speaker_item_probs(w.items, scores, ab, table->prior.n, probs))
            continue;  // all utterances -inf: this world's speaker has no move
        double like = 0.0;
        for (size_t i = 0; i < w.items.size(); ++i)
            if (w.items[i].first == uidx) {
                like = probs[i];
                break;
            }
        weights[wi] = w.prob * like;
    }
    return finish_belief(table, std::move(weights), what);
}

}  // namespace

BeliefState literal_listener(double u, std::shared_ptr<const WorldTable> table) {
    const int uidx = require_value_index(*table, u, "literal_listener");
    std::vector<double> weights(table->worlds.size(), 0.0);
    for (size_t wi = 0; wi < table->worlds.size(); ++wi) {
        const auto& w = table->worlds[wi];
        const uint16_t c = w.count_of(static_cast<uint16_t>(uidx));
        if (c) weights[wi] = w.prob * c;  // slot-conditioning likelihood c/n, n constant
    }
    return finish_belief(table, std::move(weights), "literal_listener");
}

BeliefState literal_listener(double u, const WorldPrior& prior) {
    return literal_listener(u, build_world_table(prior));
}

double persuasive_utility(double u, const Goal& goal, const WorldPrior& prior) {
    auto table = build_world_table(prior);
    const int uidx = require_value_index(*table, u, "persuasive_utility");
    return literal_goal_log_table(*table, goal)[uidx];
}

ChoiceDist speaker_choice_dist(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                               std::shared_ptr<const WorldTable> table) {
    params.validate();
    goal.validate();
    const auto items = stickset_items(*table, w);
    const auto scores = literal_goal_log_table(*table, goal);
    std::vector<double> probs;
    if (!speaker_item_probs(items, scores, params.alpha * params.beta, table->prior.n, probs))
        throw EmptySupport("speaker_choice_dist: all utterance utilities are -inf");
    return items_to_dist(*table, items, probs);
}

ChoiceDist speaker_choice_dist(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                               const WorldPrior& prior) {
    return speaker_choice_dist(w, goal, params, build_world_table(prior));
}

BeliefState pragmatic_listener(double u, const Goal& goal, double beta,
                               std::shared_ptr<const WorldTable> table, double alpha) {
    goal.validate();
    const auto scores = literal_goal_log_table(*table, goal);
    return scored_listener(table, u, scores, alpha * beta, "pragmatic_listener");
}

BeliefState pragmatic_listener(double u, const Goal& goal, double beta, const WorldPrior& prior,
                               double alpha) {
    return pragmatic_listener(u, goal, beta, build_world_table(prior), alpha);
}

double effect_size(double u, const Goal& goal, double beta,
                   std::shared_ptr<const WorldTable> table) {
    const double base = pragmatic_listener(u, goal, 0.0, table).p_goal(goal);
    return base - pragmatic_listener(u, goal, beta, table).p_goal(goal);
}

double effect_size(double u, const Goal& goal, double beta, const WorldPrior& prior) {
    return effect_size(u, goal, beta, build_world_table(prior));
}

JointPosterior joint_listener(double u, const Goal& goal, const BetaPrior& beta_prior,
                              std::shared_ptr<const WorldTable> table, double alpha) {
    goal.validate();
    beta_prior.validate();
    const int uidx = require_value_index(*table, u, "joint_listener");
    const auto scores = literal_goal_log_table(*table, goal);
    const auto& worlds = table->worlds;

    JointPosterior jp;
    jp.beta_values = beta_prior.values;
    jp.beta_posterior.assign(beta_prior.values.size(), 0.0);
    std::vector<double> world_weights(worlds.size(), 0.0);
    std::vector<double> probs;

    for (size_t bj = 0; bj < beta_prior.values.size(); ++bj) {
        const double pb = beta_prior.weights[bj];
        if (pb == 0.0) continue;
        const double ab = alpha * beta_prior.values[bj];
        for (size_t wi = 0; wi < worlds.size(); ++wi) {
            const auto& w = worlds[wi];
            const uint16_t c = w.count_of(static_cast<uint16_t>(uidx));
            if (c == 0) continue;
            if (!speaker_item_probs(w.items, scores, ab, table->prior.n, probs)) continue;
            double like = 0.0;
            for (size_t i = 0; i < w.items.size(); ++i)
                if (w.items[i].first == uidx) {
                    like = probs[i];
                    break;
                }
            const double wt = pb * w.prob * like;
            world_weights[wi] += wt;
            jp.beta_posterior[bj] += wt;
        }
    }
    double total = 0.0;
    for (double v : jp.beta_posterior) total += v;
    if (!(total > 0.0)) throw EmptySupport("joint_listener: empty posterior support");
    for (double& v : jp.beta_posterior) v /= total;
    jp.world_marginal = finish_belief(table, std::move(world_weights), "joint_listener");
    for (size_t bj = 0; bj < jp.beta_values.size(); ++bj) {
        jp.mean_beta += jp.beta_values[bj] * jp.beta_posterior[bj];
        jp.mean_abs_beta += std::abs(jp.beta_values[bj]) * jp.beta_posterior[bj];
    }
    return jp;
}

JointPosterior joint_listener(double u, const Goal& goal, const BetaPrior& beta_prior,
                              const WorldPrior& prior, double alpha) {
    return joint_listener(u, goal, beta_prior, build_world_table(prior), alpha);
}

double perceived_bias_cost(double u, const Goal& goal, const BetaPrior& beta_prior,
                           const WorldPrior& prior) {
    return joint_listener(u, goal, beta_prior, prior).mean_abs_beta;
}

Level2Tables level2_base_tables(std::shared_ptr<const WorldTable> table, const Goal& goal,
                                const BetaPrior& beta_prior, double alpha) {
    Level2Tables t;
    const size_t G = table->prior.grid.values.size();
    t.log_p_goal.assign(G, kNegInf);
    t.cost.assign(G, 0.0);
    for (size_t i = 0; i < G; ++i) {
        const auto jp = joint_listener(table->prior.grid.values[i], goal, beta_prior, table, alpha);
        const double pg = jp.world_marginal.p_goal(goal);
        t.log_p_goal[i] = pg > 0.0 ? std::log(pg) : kNegInf;
        t.cost[i] = jp.mean_abs_beta;
    }
    return t;
}

namespace {

// U2(v) = ln P_L1(goal | v) - w_c * C(v)
std::vector<double> level2_scores(const Level2Tables& tables, double w_c) {
    std::vector<double> s(tables.log_p_goal.size());
    for (size_t i = 0; i < s.size(); ++i)
        s[i] = tables.log_p_goal[i] == kNegInf ? kNegInf
                                               : tables.log_p_goal[i] - w_c * tables.cost[i];
    return s;
}

}  // namespace

ChoiceDist level2_speaker(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                          std::shared_ptr<const WorldTable> table, const Level2Tables& tables) {
    params.validate();
    goal.validate();
    if (params.level != 2) throw ValidationError("level2_speaker requires level = 2");
    const auto items = stickset_items(*table, w);
    const auto scores = level2_scores(tables, params.cost_weight);
    std::vector<double> probs;
    if (!speaker_item_probs(items, scores, params.alpha * std::abs(params.beta), table->prior.n,
                            probs))
        throw EmptySupport("level2_speaker: all utterance utilities are -inf");
    return items_to_dist(*table, items, probs);
}

ChoiceDist level2_speaker(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                          const BetaPrior& beta_prior, const WorldPrior& prior) {
    auto table = build_world_table(prior);
    const auto tables = level2_base_tables(table, goal, beta_prior, params.alpha);
    return level2_speaker(w, goal, params, table, tables);
}

BeliefState level2_listener(double u, const Goal& goal, double beta, double w_c,
                            std::shared_ptr<const WorldTable> table, const Level2Tables& tables,
                            double alpha) {
    goal.validate();
    const auto scores = level2_scores(tables, w_c);
    return scored_listener(table, u, scores, alpha * std::abs(beta), "level2_listener");
}

BeliefState level2_listener(double u, const Goal& goal, double beta, double w_c,
                            const WorldPrior& prior, const BetaPrior& beta_prior, double alpha) {
    auto table = build_world_table(prior);
    const auto tables = level2_base_tables(table, goal, beta_prior, alpha);
    return level2_listener(u, goal, beta, w_c, table, tables, alpha);
}

std::vector<BeliefState> sequential_update(const std::vector<std::pair<double, Goal>>& observations,
                                           ListenerKind kind, const SpeakerParams& params,
                                           const WorldPrior& prior, SecondPick second_pick,
                                           const BetaPrior& beta_prior) {
    if (observations.size() > 2)
        throw ValidationError("sequential_update supports at most 2 observations");
    auto table = build_world_table(prior);
    const auto& worlds = table->worlds;

    // per-goal score tables, built on demand
    std::vector<double> scores_by_goal[2];
    auto scores_for = [&](const Goal& g) -> const std::vector<double>& {
        const int gi = g.target == Prop::LONGER ? 0 : 1;
        if (scores_by_goal[gi].empty()) {
            if (kind == ListenerKind::LEVEL2)
                scores_by_goal[gi] =
                    level2_scores(level2_base_tables(table, g, beta_prior, params.alpha),
                                  params.cost_weight);
            else
                scores_by_goal[gi] = literal_goal_log_table(*table, g);
        }
        return scores_by_goal[gi];
    };
    const double ab = kind == ListenerKind::LEVEL2 ? params.alpha * std::abs(params.beta)
                                                   : params.alpha * params.beta;

    std::vector<double> cumulative(worlds.size(), 1.0);
    std::vector<BeliefState> out;
    std::vector<double> probs;
    for (size_t k = 0; k < observations.size(); ++k) {
        const auto& [u, goal] = observations[k];
        goal.validate();
        const int uidx = require_value_index(*table, u, "sequential_update");
        for (size_t wi = 0; wi < worlds.size(); ++wi) {
            if (cumulative[wi] == 0.0) continue;
            auto items = worlds[wi].items;
            int n = table->prior.n;
            if (k > 0 && second_pick == SecondPick::EXCLUSIVE) {
                // the second contestant picks from the multiset minus the first reveal
                const int prev_idx = table->prior.grid.index_of(observations[0].first);
                for (size_t i = 0; i < items.size(); ++i)
                    if (items[i].first == prev_idx) {
                        if (--items[i].second == 0) items.erase(items.begin() + i);
                        break;
                    }
                --n;
            }
            double like = 0.0;
            bool has = false;
            for (const auto& [vi, c] : items)
                if (vi == uidx) has = true;
            if (has) {
                if (kind == ListenerKind::LITERAL) {
                    for (const auto& [vi, c] : items)
                        if (vi == uidx) like = static_cast<double>(c) / n;
                } else if (speaker_item_probs(items, scores_for(goal), ab, n, probs)) {
                    for (size_t i = 0; i < items.size(); ++i)
                        if (items[i].first == uidx) like = probs[i];
                }
            }
            cumulative[wi] *= like;
        }
        std::vector<double> weights(worlds.size());
        for (size_t wi = 0; wi < worlds.size(); ++wi) weights[wi] = worlds[wi].prob * cumulative[wi];
        try {
            out.push_back(finish_belief(table, std::move(weights), "sequential_update"));
        } catch (const EmptySupport&) {
            throw EmptySupport("sequential_update: contradictory observations (no world supports them)");
        }
    }
    return out;
}

}  // namespace stick
