#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stick/adjust.hpp"
#include "stick/rsa.hpp"

namespace stick {

enum class Order { LONG_FIRST, SHORT_FIRST };
enum class SpeakerGroup { STRONGEST, SECOND_STRONGEST, WEAKER };

const char* order_name(Order o);
const char* group_name(SpeakerGroup g);

struct ResponseRecord {
    std::string participant_id;
    Order contestant_order = Order::LONG_FIRST;
    double speaker_choice = 0.0;
    SpeakerGroup speaker_group = SpeakerGroup::WEAKER;  // derived on ingest
    double evidence_1 = 0.0;
    double response_1 = 0.0;  // slider, [0, 100]
    std::optional<double> evidence_2;
    std::optional<double> response_2;

    Goal goal() const {
        return Goal{contestant_order == Order::LONG_FIRST ? Prop::LONGER : Prop::SHORTER};
    }
};

inline const std::vector<double>& default_speaker_set() {
    static const std::vector<double> s{2, 4, 7, 8, 9};
    return s;
}

double normalize_response(double slider);

SpeakerGroup classify_speaker_group(const ResponseRecord& record, const LengthGrid& grid,
                                    const std::vector<double>& speaker_set = default_speaker_set());

enum class Family { RSA, AA, MAS };
enum class Variant { HOMOGENEOUS, HETEROGENEOUS, SPEAKER_DEPENDENT };
enum class Level { J0, J1, J2 };

const char* family_name(Family f);
const char* variant_name(Variant v);
const char* level_name(Level l);

struct ModelSpec {
    Family family = Family::RSA;
    Variant variant = Variant::HOMOGENEOUS;
    std::vector<Level> levels;  // RSA only; sorted, unique

    void validate() const;
    bool has_level(Level l) const;
    std::string name() const;  // e.g. "rsa-speaker-dependent-J0J1"
};

struct ParamDef {
    std::string name;
    double lo = 0.0, hi = 1.0;
};

struct ParamSpace {
    std::vector<ParamDef> defs;

    int index(const std::string& name) const;  // -1 if absent
    size_t size() const { return defs.size(); }
};

ParamSpace build_param_space(const ModelSpec& spec);

// single-component prediction surface (spec op predict_response)
enum class Component { J0, J1, J2, AA, MAS };

struct PredictParams {
    double beta = 0.0;
    double w_c = 0.0;
    double B = 1.0;
    double R = 0.0;
    double alpha = 1.0;
};

double predict_response(Component comp, const PredictParams& params, const ResponseRecord& record,
                        const WorldPrior& prior,
                        const BetaPrior& beta_prior = BetaPrior::uniform_grid());

struct EvalOptions {
    double alpha = 1.0;
    double response_sd = 0.3;
    SecondPick second_pick = SecondPick::INDEPENDENT;
    BetaPrior beta_prior = BetaPrior::uniform_grid();
};

// Likelihood evaluator with listener-table caching (reused across MAP/MCMC sweeps).
class ModelEval {
public:
    ModelEval(ModelSpec spec, WorldPrior prior, EvalOptions opts = {});

    const ModelSpec& spec() const { return spec_; }
    const ParamSpace& space() const { return space_; }
    const WorldPrior& prior() const { return prior_; }
    const EvalOptions& options() const { return opts_; }

    void set_data(std::vector<ResponseRecord> data);
    const std::vector<ResponseRecord>& data() const { return data_; }
    size_t n_observations() const { return prep_.size(); }  // responses, not records

    // total log-likelihood; optionally fills per-datum log densities
    double log_likelihood(const std::vector<double>& params,
                          std::vector<double>* per_datum = nullptr) const;

    // mixture mean response for one record (diagnostic/generator use)
    double mixture_mu(const std::vector<double>& params, const ResponseRecord& rec,
                      Component comp) const;

private:
    struct Prepared {
        double y = 0.0;
        int goal = 0;  // 0 LONGER, 1 SHORTER
        int uidx = -1;
        int uidx2 = -1;  // second observation, if any
        int group = 2;
        size_t record = 0;
        int response = 1;
    };

    double component_mu(Component comp, const std::vector<double>& params, int goal, int uidx,
                        int uidx2) const;
    void refresh_caches(const std::vector<double>& params) const;

    ModelSpec spec_;
    WorldPrior prior_;
    EvalOptions opts_;
    ParamSpace space_;
    std::shared_ptr<const WorldTable> table_;
    std::vector<ResponseRecord> data_;
    std::vector<Prepared> prep_;

    int i_beta_ = -1, i_offset_ = -1, i_wc_ = -1, i_B_ = -1, i_R_ = -1, i_pz_ = -1,
        i_pz2_ = -1;  // i_pz_: first of 1 or 3 consecutive weights

    // lazy caches (value-keyed; pure given params)
    mutable std::vector<std::vector<double>> mu_j0_;  // [goal][uidx]
    mutable double j1_key_ = std::numeric_limits<double>::quiet_NaN();
    mutable std::vector<std::vector<double>> mu_j1_;
    mutable double j2_key_beta_ = std::numeric_limits<double>::quiet_NaN(),
                   j2_key_wc_ = std::numeric_limits<double>::quiet_NaN();
    mutable std::vector<std::vector<double>> mu_j2_;
    mutable std::vector<Level2Tables> l2_tables_;          // [goal], built once
    mutable std::map<int64_t, double> mu2_j0_, mu2_j1_, mu2_j2_;  // two-observation entries
};

// free-function spec surface
double log_likelihood(const ModelSpec& spec, const std::vector<double>& params,
                      const std::vector<ResponseRecord>& data, const WorldPrior& prior,
                      std::vector<double>* per_datum = nullptr);

struct MapConfig {
    int grid_budget = 60000;
    int refine_points = 11;
    int refine_passes = 14;
};

struct MapResult {
    std::vector<double> params;
    double max_loglik = kNegInf;
    long evaluations = 0;
};

MapResult map_fit(const ModelEval& eval, const MapConfig& cfg = {});

// generic deterministic grid + coordinate-refinement maximizer
MapResult map_fit(const std::function<double(const std::vector<double>&)>& objective,
                  const std::vector<ParamDef>& box, const MapConfig& cfg = {});

struct McmcConfig {
    int chains = 4;
    int samples = 1000;  // per chain
    int burnin = 7500;
    int lag = 100;
    uint64_t seed = 0;
    double proposal_frac = 0.05;  // of each prior width
};

struct McmcResult {
    std::vector<std::vector<double>> samples;  // pooled, chain-major
    std::vector<std::vector<double>> loglik;   // per sample: per-datum log densities
    std::vector<double> chain_acceptance;
    std::vector<std::string> warnings;
};

using LogPostFn = std::function<double(const std::vector<double>&, std::vector<double>*)>;

McmcResult mh_sample(const LogPostFn& logpost, const std::vector<ParamDef>& box,
                     const McmcConfig& cfg, size_t n_data);
McmcResult mh_sample(const ModelEval& eval, const McmcConfig& cfg);

struct WaicResult {
    double waic = 0.0, se = 0.0, p_waic = 0.0;
    std::vector<double> pointwise;  // -2 * (lppd_i - p_i)
};

WaicResult waic(const std::vector<std::vector<double>>& loglik);

struct PsisResult {
    double loo = 0.0, se = 0.0, p_loo = 0.0;
    std::vector<double> pointwise;  // -2 * elpd_loo_i
    std::vector<double> pareto_k;
    std::vector<uint8_t> tis_fallback;  // 1 where the tail was too short for a GPD fit
    std::vector<std::string> warnings;
};

PsisResult psis_loo(const std::vector<std::vector<double>>& loglik);

// Zhang-Stephens posterior-mean GPD fit on exceedances (ascending); returns shape/scale
void gpd_fit(const std::vector<double>& x_sorted, double& k, double& sigma, bool wip = true);

struct FitResult {
    ModelSpec spec;
    ParamSpace space;
    std::vector<double> map_params;
    double max_loglik = kNegInf;
    McmcResult mcmc;
    WaicResult waic;
    PsisResult psis;
    uint64_t seed = 0;
    std::string config_hash;
    std::string data_fingerprint;
};

struct ComparisonRow {
    std::string model;
    double max_loglik = 0.0;
    double waic = 0.0, waic_se = 0.0;
    double psis_loo = 0.0, psis_loo_se = 0.0;
    double delta_waic = 0.0, delta_se = 0.0;
    bool indistinguishable = false;
};

struct FitSummary {
    std::string model;
    double max_loglik = 0.0;
    double waic = 0.0, waic_se = 0.0;
    double psis_loo = 0.0, psis_loo_se = 0.0;
    std::vector<double> waic_pointwise;
    std::vector<double> loo_pointwise;
    std::string data_fingerprint;
};

std::vector<ComparisonRow> compare_models(const std::vector<FitSummary>& fits);

}  // namespace stick
