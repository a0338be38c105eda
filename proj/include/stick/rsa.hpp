#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "stick/world.hpp"

namespace stick {

struct Goal {
    Prop target = Prop::LONGER;  // LONGER or SHORTER only

    void validate() const {
        if (target == Prop::TIE) throw ValidationError("goal must be LONGER or SHORTER");
    }
};

struct SpeakerParams {
    double alpha = 1.0;        // softmax temperature, >= 0
    double beta = 0.0;         // persuasion weight
    double cost_weight = 0.0;  // w_c >= 0, level 2 only
    int level = 1;             // 1 or 2

    void validate() const {
        if (!(alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
        if (!(cost_weight >= 0.0)) throw ValidationError("cost_weight must be >= 0");
        if (level != 1 && level != 2) throw ValidationError("level must be 1 or 2");
    }
};

struct BetaPrior {
    std::vector<double> values;
    std::vector<double> weights;  // sums to 1

    static BetaPrior uniform_grid(double lo = 0.0, double hi = 10.0, int points = 101);
    static BetaPrior point_mass(double beta);
    void validate() const;
};

struct BeliefState {
    std::shared_ptr<const WorldTable> table;
    std::vector<double> world_posterior;  // aligned with table->worlds
    double p_longer = 0.0, p_shorter = 0.0, p_tie = 0.0;

    // tie-splitting response scale: exactly 0.5 at the midpoint on symmetric grids
    double split_longer() const { return p_longer + 0.5 * p_tie; }
    double p_goal(const Goal& g) const { return g.target == Prop::LONGER ? p_longer : p_shorter; }
    std::vector<std::pair<StickSet, double>> world_posterior_map() const;
};

// utterance distribution: (stick length, probability), ascending by length
using ChoiceDist = std::vector<std::pair<double, double>>;

// ln P_L0(goal | v) for every grid value, via exact remaining-sum convolution
std::vector<double> literal_goal_log_table(const WorldTable& table, const Goal& goal);

BeliefState literal_listener(double u, const WorldPrior& prior);
BeliefState literal_listener(double u, std::shared_ptr<const WorldTable> table);

double persuasive_utility(double u, const Goal& goal, const WorldPrior& prior);

ChoiceDist speaker_choice_dist(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                               const WorldPrior& prior);
ChoiceDist speaker_choice_dist(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                               std::shared_ptr<const WorldTable> table);

BeliefState pragmatic_listener(double u, const Goal& goal, double beta, const WorldPrior& prior,
                               double alpha = 1.0);
BeliefState pragmatic_listener(double u, const Goal& goal, double beta,
                               std::shared_ptr<const WorldTable> table, double alpha = 1.0);

// belief drop relative to the unbiased (beta = 0) listener; > 0 marks a weak evidence effect
double effect_size(double u, const Goal& goal, double beta, const WorldPrior& prior);
double effect_size(double u, const Goal& goal, double beta,
                   std::shared_ptr<const WorldTable> table);

struct JointPosterior {
    BeliefState world_marginal;
    std::vector<double> beta_values;
    std::vector<double> beta_posterior;
    double mean_beta = 0.0;
    double mean_abs_beta = 0.0;  // = perceived bias cost C(u)
};

JointPosterior joint_listener(double u, const Goal& goal, const BetaPrior& beta_prior,
                              const WorldPrior& prior, double alpha = 1.0);
JointPosterior joint_listener(double u, const Goal& goal, const BetaPrior& beta_prior,
                              std::shared_ptr<const WorldTable> table, double alpha = 1.0);

double perceived_bias_cost(double u, const Goal& goal, const BetaPrior& beta_prior,
                           const WorldPrior& prior);

// per-grid-value tables the level-2 speaker scores utterances with
struct Level2Tables {
    std::vector<double> log_p_goal;  // ln P_L1(goal | v) under the joint listener
    std::vector<double> cost;        // C(v) = E[|beta| | v]
};

Level2Tables level2_base_tables(std::shared_ptr<const WorldTable> table, const Goal& goal,
                                const BetaPrior& beta_prior, double alpha = 1.0);

ChoiceDist level2_speaker(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                          const BetaPrior& beta_prior, const WorldPrior& prior);
ChoiceDist level2_speaker(const StickSet& w, const Goal& goal, const SpeakerParams& params,
                          std::shared_ptr<const WorldTable> table, const Level2Tables& tables);

BeliefState level2_listener(double u, const Goal& goal, double beta, double w_c,
                            const WorldPrior& prior,
                            const BetaPrior& beta_prior = BetaPrior::uniform_grid(),
                            double alpha = 1.0);
BeliefState level2_listener(double u, const Goal& goal, double beta, double w_c,
                            std::shared_ptr<const WorldTable> table, const Level2Tables& tables,
                            double alpha = 1.0);

enum class ListenerKind { LITERAL, PRAGMATIC, LEVEL2 };
enum class SecondPick { INDEPENDENT, EXCLUSIVE };

std::vector<BeliefState> sequential_update(const std::vector<std::pair<double, Goal>>& observations,
                                           ListenerKind kind, const SpeakerParams& params,
                                           const WorldPrior& prior,
                                           SecondPick second_pick = SecondPick::INDEPENDENT,
                                           const BetaPrior& beta_prior = BetaPrior::uniform_grid());

}  // namespace stick
