#pragma once

#include <string>
#include <vector>

#include "stick/infer.hpp"
#include "stick/sim.hpp"

namespace stick {

// toml-like run configuration; `config init` prints every default
struct RunConfig {
    struct World {
        double grid_min = 1.0;
        double grid_max = 9.0;
        double grid_step = 1.0;
        double midpoint = 5.0;
        int n_sticks = 5;
        int64_t enumeration_cap = 10'000'000;
        std::vector<double> speaker_set{2, 4, 7, 8, 9};
    } world;

    struct Model {
        std::string family = "rsa";
        std::string variant = "speaker-dependent";
        std::vector<std::string> levels{"J0", "J1"};
        double alpha = 1.0;
        double response_sd = 0.3;
        int beta_grid_points = 101;
        double beta_max = 10.0;
        std::string second_pick = "independent";
    } model;

    struct Mcmc {
        int chains = 4;
        int samples = 1000;
        int burnin = 7500;
        int lag = 100;
        double proposal_frac = 0.05;
        uint64_t seed = 0;
    } mcmc;

    struct Sweep {
        std::vector<double> beta_list{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
        std::vector<double> evidence_list{5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
        std::string goal = "longer";
        double grid_min = 1.0;
        double grid_max = 10.0;
    } sweep;

    struct Synthetic {
        int n_participants = 723;
        double prop_strongest = 0.67;
        double prop_second = 0.20;
        double prop_weaker = 0.13;
        double beta = 2.26;
        double offset = -0.11;
        double p_z_strongest = 0.99;
        double p_z_second = 0.1;
        double p_z_weaker = 0.1;
        double weak_cell_prob = 0.4;
        double long_first_prob = 0.5;
    } synthetic;

    struct Output {
        std::string dir = ".";
    } output;

    static RunConfig parse(const std::string& text);
    static RunConfig load(const std::string& path);
    static std::string init_text();  // commented defaults, parseable by parse()

    // canonical values-only rendering; covers everything except mcmc.seed, which
    // is reported as its own provenance field
    std::string canonical() const;
    std::string hash() const;  // fnv1a over version + canonical()

    WorldPrior world_prior() const;
    ModelSpec model_spec() const;
    EvalOptions eval_options() const;
    McmcConfig mcmc_config(uint64_t seed) const;
    SweepConfig sweep_config() const;
    SyntheticConfig synthetic_config(uint64_t seed) const;
};

Goal parse_goal(const std::string& name);
ModelSpec parse_model_spec(const std::string& family, const std::string& variant,
                           const std::string& levels_csv);  // levels like "J0,J1"

std::string data_fingerprint(const std::vector<ResponseRecord>& records);

}  // namespace stick
