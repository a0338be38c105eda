#pragma once

#include <array>
#include <string>
#include <vector>

#include "stick/infer.hpp"

namespace stick {

// experiment setting: integer inches 1..9, claims judged against a 5-inch midpoint
WorldPrior default_world_prior();
// extended sweep setting: values 1..10 over the same 5-inch midpoint
WorldPrior sweep_world_prior();

struct SweepConfig {
    std::vector<double> beta_values{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
    std::vector<double> evidence_values{5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
    Goal goal{Prop::LONGER};
    WorldPrior prior = sweep_world_prior();

    void validate() const;
};

struct HeatmapResult {
    std::vector<double> beta_values;
    std::vector<double> evidence_values;
    std::vector<std::vector<double>> effect;  // [beta][evidence]

    bool no_effect(size_t bi, size_t ui) const { return !(effect[bi][ui] > 0.0); }
};

HeatmapResult effect_heatmap(const SweepConfig& cfg);

struct CurvesResult {
    std::vector<double> evidence_values;
    std::vector<double> j0, j1;  // tie-split listener beliefs plus offset, unclamped
    double prior_split = 0.0;    // claim belief before any evidence
};

CurvesResult belief_curves(double beta, double offset, const WorldPrior& prior,
                           const std::vector<double>& evidence_values, const Goal& goal,
                           double alpha = 1.0);
CurvesResult belief_curves(double beta, double offset);  // experiment grid, LONGER claim

struct SyntheticConfig {
    int n_participants = 723;
    // STRONGEST, SECOND_STRONGEST, WEAKER
    std::array<double, 3> group_proportions{0.67, 0.20, 0.13};
    std::array<double, 3> p_z{0.99, 0.1, 0.1};  // per-group weight on the J1 component
    double beta = 2.26;
    double offset = -0.11;
    double weak_cell_prob = 0.4;  // oversampled weakest supporting evidence
    double long_first_prob = 0.5;
    double response_sd = 0.3;
    double alpha = 1.0;
    uint64_t seed = 0;
    WorldPrior prior = default_world_prior();
    std::vector<double> speaker_set{2, 4, 7, 8, 9};

    void validate() const;
};

std::vector<ResponseRecord> generate_synthetic(const SyntheticConfig& cfg);

struct PropertyResult {
    std::string property;
    bool pass = true;
    std::string counterexample;  // empty when passing
};

struct TheoremReport {
    std::vector<PropertyResult> results;
    bool all_pass = true;
};

// Runs the listener/speaker property battery over several grids. utility_sign
// exists for the negative self-test: -1 feeds the checks a sign-flipped speaker
// utility, which must produce a monotonicity counterexample.
TheoremReport theorem_suite(double utility_sign = 1.0);

}  // namespace stick
