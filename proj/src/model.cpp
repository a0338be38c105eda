#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "stick/infer.hpp"

namespace stick {

const char* order_name(Order o) {
    return o == Order::LONG_FIRST ? "LONG_FIRST" : "SHORT_FIRST";
}

const char* group_name(SpeakerGroup g) {
    switch (g) {
        case SpeakerGroup::STRONGEST: return "STRONGEST";
        case SpeakerGroup::SECOND_STRONGEST: return "SECOND_STRONGEST";
        default: return "WEAKER";
    }
}

const char* family_name(Family f) {
    switch (f) {
        case Family::RSA: return "rsa";
        case Family::AA: return "aa";
        default: return "mas";
    }
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::HOMOGENEOUS: return "homogeneous";
        case Variant::HETEROGENEOUS: return "heterogeneous";
        default: return "speaker-dependent";
    }
}

const char* level_name(Level l) {
    switch (l) {
        case Level::J0: return "J0";
        case Level::J1: return "J1";
        default: return "J2";
    }
}

double normalize_response(double slider) {
    if (!std::isfinite(slider) || slider < 0.0 || slider > 100.0)
        throw ValidationError("response slider " + fmt_double(slider) + " must lie in [0, 100]");
    return slider / 100.0;
}

SpeakerGroup classify_speaker_group(const ResponseRecord& record, const LengthGrid& grid,
                                    const std::vector<double>& speaker_set) {
    if (speaker_set.empty()) throw ValidationError("speaker set is empty");
    if (grid.index_of(record.speaker_choice) < 0)
        throw ValidationError("speaker_choice " + fmt_double(record.speaker_choice) +
                              " is not on the length grid");
    std::vector<double> sorted = speaker_set;
    std::sort(sorted.begin(), sorted.end());
    const int64_t choice_key = lattice_key(record.speaker_choice);
    bool found = false;
    for (double v : sorted) found = found || lattice_key(v) == choice_key;
    if (!found)
        throw ValidationError("speaker_choice " + fmt_double(record.speaker_choice) +
                              " is outside the speaker set");
    // the relevant contestant argues LONGER after LONG_FIRST, so their strongest
    // stick is the largest; mirrored for SHORT_FIRST
    const bool longer = record.contestant_order == Order::LONG_FIRST;
    const double strongest = longer ? sorted.back() : sorted.front();
    if (choice_key == lattice_key(strongest)) return SpeakerGroup::STRONGEST;
    if (sorted.size() >= 2) {
        const double second = longer ? sorted[sorted.size() - 2] : sorted[1];
        if (choice_key == lattice_key(second)) return SpeakerGroup::SECOND_STRONGEST;
    }
    return SpeakerGroup::WEAKER;
}

void ModelSpec::validate() const {
    if (family == Family::RSA) {
        if (levels.empty())
            throw ValidationError("rsa models require at least one level out of J0, J1, J2");
        for (size_t i = 1; i < levels.size(); ++i)
            if (!(levels[i - 1] < levels[i]))
                throw ValidationError("model levels must be sorted and unique");
        if (variant == Variant::HOMOGENEOUS && levels.size() != 1)
            throw ValidationError("a homogeneous rsa model uses exactly one level");
        if (variant != Variant::HOMOGENEOUS && levels.size() < 2)
            throw ValidationError("a heterogeneous mixture needs at least two components");
    } else {
        if (!levels.empty()) throw ValidationError("levels apply only to the rsa family");
        if (variant == Variant::SPEAKER_DEPENDENT)
            throw ValidationError("speaker-dependent mixtures require the rsa family");
    }
}

bool ModelSpec::has_level(Level l) const {
    return std::find(levels.begin(), levels.end(), l) != levels.end();
}

std::string ModelSpec::name() const {
    if (family != Family::RSA) {
        if (variant == Variant::HETEROGENEOUS) return "aa+mas-heterogeneous";
        return std::string(family_name(family)) + "-homogeneous";
    }
    std::string s = "rsa-";
    s += variant_name(variant);
    s += '-';
    for (Level l : levels) s += level_name(l);
    return s;
}

int ParamSpace::index(const std::string& name) const {
    for (size_t i = 0; i < defs.size(); ++i)
        if (defs[i].name == name) return static_cast<int>(i);
    return -1;
}

ParamSpace build_param_space(const ModelSpec& spec) {
    spec.validate();
    ParamSpace ps;
    auto add = [&](const char* n, double lo, double hi) { ps.defs.push_back({n, lo, hi}); };
    if (spec.family == Family::RSA) {
        if (spec.has_level(Level::J1) || spec.has_level(Level::J2)) add("beta", 0.0, 10.0);
        add("offset", -0.5, 0.5);
        if (spec.has_level(Level::J2)) add("w_c", 0.0, 5.0);
        if (spec.variant == Variant::HETEROGENEOUS) {
            add("p_z", 0.0, 1.0);
        } else if (spec.variant == Variant::SPEAKER_DEPENDENT) {
            add("p_z_strongest", 0.0, 1.0);
            add("p_z_second", 0.0, 1.0);
            add("p_z_weaker", 0.0, 1.0);
        }
        if (spec.levels.size() == 3) add("p_z2", 0.0, 1.0);
    } else {
        add("offset", -0.5, 0.5);
        add("B", 0.0, 10.0);
        if (spec.family == Family::MAS || spec.variant == Variant::HETEROGENEOUS)
            add("R", -1.0, 1.0);
        if (spec.variant == Variant::HETEROGENEOUS) add("p_z", 0.0, 1.0);
    }
    return ps;
}

namespace {

// responses are on the claim's scale: belief that the claimed direction is right,
// ties split evenly
double claim_mu(const BeliefState& b, const Goal& goal) {
    return b.p_goal(goal) + 0.5 * b.p_tie;
}

double adjust_mu(Component comp, double B, double R, const Goal& goal, double center, double v1,
                 const double* v2) {
    StrengthMap map{B, center};
    AdjustParams ap{comp == Component::MAS ? R : 0.0, 0.5,
                    comp == Component::MAS ? AdjustVariant::MAS : AdjustVariant::AA};
    const double sign = goal.target == Prop::LONGER ? 1.0 : -1.0;
    double c = adjust_update(0.5, sign * evidence_strength(v1, map), ap);
    if (v2) c = adjust_update(c, sign * evidence_strength(*v2, map), ap);
    return c;
}

}  // namespace

double predict_response(Component comp, const PredictParams& params, const ResponseRecord& record,
                        const WorldPrior& prior, const BetaPrior& beta_prior) {
    const Goal goal = record.goal();
    const double u = record.evidence_1;
    switch (comp) {
        case Component::J0: return claim_mu(literal_listener(u, prior), goal);
        case Component::J1:
            return claim_mu(pragmatic_listener(u, goal, params.beta, prior, params.alpha), goal);
        case Component::J2:
            return claim_mu(
                level2_listener(u, goal, params.beta, params.w_c, prior, beta_prior, params.alpha),
                goal);
        default:
            return adjust_mu(comp, params.B, params.R, goal, prior.grid.midpoint, u, nullptr);
    }
}

ModelEval::ModelEval(ModelSpec spec, WorldPrior prior, EvalOptions opts)
    : spec_(std::move(spec)), prior_(std::move(prior)), opts_(std::move(opts)) {
    spec_.validate();
    prior_.validate();
    opts_.beta_prior.validate();
    space_ = build_param_space(spec_);
    i_beta_ = space_.index("beta");
    i_offset_ = space_.index("offset");
    i_wc_ = space_.index("w_c");
    i_B_ = space_.index("B");
    i_R_ = space_.index("R");
    i_pz_ = space_.index("p_z");
    if (i_pz_ < 0) i_pz_ = space_.index("p_z_strongest");
    i_pz2_ = space_.index("p_z2");
    if (spec_.family == Family::RSA) table_ = build_world_table(prior_);
}

namespace {

int64_t pair_key(int goal, int u1, int u2) {
    return (static_cast<int64_t>(goal) * 1000 + u1) * 1000 + u2;
}

}  // namespace

void ModelEval::set_data(std::vector<ResponseRecord> data) {
    data_ = std::move(data);
    prep_.clear();
    prep_.reserve(data_.size() * 2);
    for (size_t i = 0; i < data_.size(); ++i) {
        const ResponseRecord& r = data_[i];
        const std::string who = "participant '" + r.participant_id + "'";
        const int uidx = prior_.grid.index_of(r.evidence_1);
        if (uidx < 0)
            throw ValidationError("evidence_1 " + fmt_double(r.evidence_1) +
                                  " is not on the length grid (" + who + ")");
        if (r.evidence_2.has_value() != r.response_2.has_value())
            throw ValidationError("evidence_2 and response_2 must come together (" + who + ")");
        Prepared p;
        p.y = normalize_response(r.response_1);
        p.goal = r.contestant_order == Order::LONG_FIRST ? 0 : 1;
        p.uidx = uidx;
        p.group = static_cast<int>(r.speaker_group);
        p.record = i;
        p.response = 1;
        prep_.push_back(p);
        if (r.evidence_2) {
            p.uidx2 = prior_.grid.index_of(*r.evidence_2);
            if (p.uidx2 < 0)
                throw ValidationError("evidence_2 " + fmt_double(*r.evidence_2) +
                                      " is not on the length grid (" + who + ")");
            p.y = normalize_response(*r.response_2);
            p.response = 2;
            prep_.push_back(p);
        }
    }

    mu_j0_.clear();
    mu_j1_.clear();
    mu_j2_.clear();
    mu2_j0_.clear();
    mu2_j1_.clear();
    mu2_j2_.clear();
    j1_key_ = std::numeric_limits<double>::quiet_NaN();
    j2_key_beta_ = std::numeric_limits<double>::quiet_NaN();
    j2_key_wc_ = std::numeric_limits<double>::quiet_NaN();

    if (spec_.family != Family::RSA) return;

    const auto& values = prior_.grid.values;
    if (spec_.has_level(Level::J0)) {
        mu_j0_.assign(2, std::vector<double>(values.size(), 0.0));
        for (int g = 0; g < 2; ++g) {
            const Goal goal{g == 0 ? Prop::LONGER : Prop::SHORTER};
            for (size_t v = 0; v < values.size(); ++v)
                mu_j0_[g][v] = claim_mu(literal_listener(values[v], table_), goal);
        }
        for (const Prepared& p : prep_) {
            if (p.uidx2 < 0) continue;
            const int64_t key = pair_key(p.goal, p.uidx, p.uidx2);
            if (mu2_j0_.count(key)) continue;
            const Goal goal{p.goal == 0 ? Prop::LONGER : Prop::SHORTER};
            const std::vector<std::pair<double, Goal>> obs{{values[p.uidx], goal},
                                                           {values[p.uidx2], goal}};
            SpeakerParams sp{opts_.alpha, 0.0, 0.0, 1};
            const auto states = sequential_update(obs, ListenerKind::LITERAL, sp, prior_,
                                                  opts_.second_pick, opts_.beta_prior);
            mu2_j0_[key] = claim_mu(states.back(), goal);
        }
    }
}

void ModelEval::refresh_caches(const std::vector<double>& params) const {
    if (spec_.family != Family::RSA) return;
    const auto& values = prior_.grid.values;
    const double beta = i_beta_ >= 0 ? params[i_beta_] : 0.0;
    const double wc = i_wc_ >= 0 ? params[i_wc_] : 0.0;

    if (spec_.has_level(Level::J1) && !(beta == j1_key_ && !mu_j1_.empty())) {
        mu_j1_.assign(2, std::vector<double>(values.size(), 0.0));
        mu2_j1_.clear();
        for (int g = 0; g < 2; ++g) {
            const Goal goal{g == 0 ? Prop::LONGER : Prop::SHORTER};
            for (size_t v = 0; v < values.size(); ++v)
                mu_j1_[g][v] =
                    claim_mu(pragmatic_listener(values[v], goal, beta, table_, opts_.alpha), goal);
        }
        for (const Prepared& p : prep_) {
            if (p.uidx2 < 0) continue;
            const int64_t key = pair_key(p.goal, p.uidx, p.uidx2);
            if (mu2_j1_.count(key)) continue;
            const Goal goal{p.goal == 0 ? Prop::LONGER : Prop::SHORTER};
            const std::vector<std::pair<double, Goal>> obs{{values[p.uidx], goal},
                                                           {values[p.uidx2], goal}};
            SpeakerParams sp{opts_.alpha, beta, 0.0, 1};
            const auto states = sequential_update(obs, ListenerKind::PRAGMATIC, sp, prior_,
                                                  opts_.second_pick, opts_.beta_prior);
            mu2_j1_[key] = claim_mu(states.back(), goal);
        }
        j1_key_ = beta;
    }

    if (spec_.has_level(Level::J2) &&
        !(beta == j2_key_beta_ && wc == j2_key_wc_ && !mu_j2_.empty())) {
        if (l2_tables_.empty()) l2_tables_.resize(2);
        mu_j2_.assign(2, std::vector<double>(values.size(), 0.0));
        mu2_j2_.clear();
        for (int g = 0; g < 2; ++g) {
            const Goal goal{g == 0 ? Prop::LONGER : Prop::SHORTER};
            if (l2_tables_[g].log_p_goal.empty())
                l2_tables_[g] = level2_base_tables(table_, goal, opts_.beta_prior, opts_.alpha);
            for (size_t v = 0; v < values.size(); ++v)
                mu_j2_[g][v] = claim_mu(
                    level2_listener(values[v], goal, beta, wc, table_, l2_tables_[g], opts_.alpha),
                    goal);
        }
        for (const Prepared& p : prep_) {
            if (p.uidx2 < 0) continue;
            const int64_t key = pair_key(p.goal, p.uidx, p.uidx2);
            if (mu2_j2_.count(key)) continue;
            const Goal goal{p.goal == 0 ? Prop::LONGER : Prop::SHORTER};
            const std::vector<std::pair<double, Goal>> obs{{values[p.uidx], goal},
                                                           {values[p.uidx2], goal}};
            SpeakerParams sp{opts_.alpha, beta, wc, 2};
            const auto states = sequential_update(obs, ListenerKind::LEVEL2, sp, prior_,
                                                  opts_.second_pick, opts_.beta_prior);
            mu2_j2_[key] = claim_mu(states.back(), goal);
        }
        j2_key_beta_ = beta;
        j2_key_wc_ = wc;
    }
}

double ModelEval::component_mu(Component comp, const std::vector<double>& params, int goal,
                               int uidx, int uidx2) const {
    switch (comp) {
        case Component::J0:
            return uidx2 < 0 ? mu_j0_[goal][uidx] : mu2_j0_.at(pair_key(goal, uidx, uidx2));
        case Component::J1:
            return uidx2 < 0 ? mu_j1_[goal][uidx] : mu2_j1_.at(pair_key(goal, uidx, uidx2));
        case Component::J2:
            return uidx2 < 0 ? mu_j2_[goal][uidx] : mu2_j2_.at(pair_key(goal, uidx, uidx2));
        default: {
            const Goal g{goal == 0 ? Prop::LONGER : Prop::SHORTER};
            const double v1 = prior_.grid.values[uidx];
            double v2 = 0.0;
            const double* p2 = nullptr;
            if (uidx2 >= 0) {
                v2 = prior_.grid.values[uidx2];
                p2 = &v2;
            }
            return adjust_mu(comp, params[i_B_], i_R_ >= 0 ? params[i_R_] : 0.0, g,
                             prior_.grid.midpoint, v1, p2);
        }
    }
}

namespace {

std::vector<Component> model_components(const ModelSpec& spec) {
    std::vector<Component> comps;
    if (spec.family == Family::RSA) {
        for (Level l : spec.levels)
            comps.push_back(l == Level::J0   ? Component::J0
                            : l == Level::J1 ? Component::J1
                                             : Component::J2);
    } else if (spec.variant == Variant::HETEROGENEOUS) {
        comps = {Component::AA, Component::MAS};
    } else {
        comps = {spec.family == Family::AA ? Component::AA : Component::MAS};
    }
    return comps;
}

// mixture weights in component order; p_z always weights the higher component
// (J1 over J0, MAS over AA); the three-level stick-break gives J1 weight p_z,
// J2 weight (1-p_z)*p_z2, J0 the rest
void mixture_weights(const ModelSpec& spec, const std::vector<double>& params, int i_pz, int i_pz2,
                     int group, size_t n_comps, double* w) {
    if (n_comps == 1) {
        w[0] = 1.0;
        return;
    }
    const double pz =
        params[i_pz + (spec.variant == Variant::SPEAKER_DEPENDENT ? group : 0)];
    if (n_comps == 2) {
        w[0] = 1.0 - pz;
        w[1] = pz;
        return;
    }
    const double pz2 = params[i_pz2];
    w[1] = pz;
    w[2] = (1.0 - pz) * pz2;
    w[0] = (1.0 - pz) * (1.0 - pz2);
}

}  // namespace

double ModelEval::log_likelihood(const std::vector<double>& params,
                                 std::vector<double>* per_datum) const {
    if (params.size() != space_.size())
        throw ValidationError("expected " + std::to_string(space_.size()) + " parameters, got " +
                              std::to_string(params.size()));
    refresh_caches(params);
    const auto comps = model_components(spec_);
    const double sd = opts_.response_sd;
    const double offset = i_offset_ >= 0 ? params[i_offset_] : 0.0;
    const double log_norm = -std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
    if (per_datum) {
        per_datum->clear();
        per_datum->reserve(prep_.size());
    }
    double total = 0.0;
    double w[3];
    for (const Prepared& p : prep_) {
        mixture_weights(spec_, params, i_pz_, i_pz2_, p.group, comps.size(), w);
        double dens = 0.0;
        for (size_t c = 0; c < comps.size(); ++c) {
            if (w[c] == 0.0) continue;
            const double mu = component_mu(comps[c], params, p.goal, p.uidx, p.uidx2) + offset;
            const double z = (p.y - mu) / sd;
            dens += w[c] * std::exp(-0.5 * z * z);
        }
        const double ll = std::log(dens) + log_norm;
        if (!std::isfinite(ll))
            throw ValidationError("non-finite likelihood density for participant '" +
                                  data_[p.record].participant_id + "' response " +
                                  std::to_string(p.response));
        if (per_datum) per_datum->push_back(ll);
        total += ll;
    }
    return total;
}

double ModelEval::mixture_mu(const std::vector<double>& params, const ResponseRecord& rec,
                             Component comp) const {
    if (params.size() != space_.size())
        throw ValidationError("expected " + std::to_string(space_.size()) + " parameters, got " +
                              std::to_string(params.size()));
    refresh_caches(params);
    const int uidx = prior_.grid.index_of(rec.evidence_1);
    if (uidx < 0)
        throw ValidationError("evidence_1 " + fmt_double(rec.evidence_1) +
                              " is not on the length grid");
    const int goal = rec.contestant_order == Order::LONG_FIRST ? 0 : 1;
    const double offset = i_offset_ >= 0 ? params[i_offset_] : 0.0;
    return component_mu(comp, params, goal, uidx, -1) + offset;
}

double log_likelihood(const ModelSpec& spec, const std::vector<double>& params,
                      const std::vector<ResponseRecord>& data, const WorldPrior& prior,
                      std::vector<double>* per_datum) {
    ModelEval eval(spec, prior);
    eval.set_data(data);
    return eval.log_likelihood(params, per_datum);
}

}  // namespace stick
