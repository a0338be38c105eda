#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "stick/config.hpp"

namespace stick {

Goal parse_goal(const std::string& name) {
    if (name == "longer") return Goal{Prop::LONGER};
    if (name == "shorter") return Goal{Prop::SHORTER};
    throw ValidationError("goal must be \"longer\" or \"shorter\", got '" + name + "'");
}

namespace {

Family parse_family(const std::string& s) {
    if (s == "rsa") return Family::RSA;
    if (s == "aa") return Family::AA;
    if (s == "mas") return Family::MAS;
    throw ValidationError("family must be rsa, aa or mas, got '" + s + "'");
}

Variant parse_variant(const std::string& s) {
    if (s == "homogeneous") return Variant::HOMOGENEOUS;
    if (s == "heterogeneous") return Variant::HETEROGENEOUS;
    if (s == "speaker-dependent") return Variant::SPEAKER_DEPENDENT;
    throw ValidationError(
        "variant must be homogeneous, heterogeneous or speaker-dependent, got '" + s + "'");
}

Level parse_level(const std::string& s) {
    if (s == "J0") return Level::J0;
    if (s == "J1") return Level::J1;
    if (s == "J2") return Level::J2;
    throw ValidationError("level must be J0, J1 or J2, got '" + s + "'");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ' && c != '\t') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

}  // namespace

ModelSpec parse_model_spec(const std::string& family, const std::string& variant,
                           const std::string& levels_csv) {
    ModelSpec spec;
    spec.family = parse_family(family);
    spec.variant = parse_variant(variant);
    if (spec.family == Family::RSA) {
        if (levels_csv.empty()) {
            spec.levels = spec.variant == Variant::HOMOGENEOUS
                              ? std::vector<Level>{Level::J1}
                              : std::vector<Level>{Level::J0, Level::J1};
        } else {
            for (const std::string& tok : split_csv(levels_csv)) {
                if (tok.empty()) throw ValidationError("empty level in '" + levels_csv + "'");
                spec.levels.push_back(parse_level(tok));
            }
            std::sort(spec.levels.begin(), spec.levels.end());
            spec.levels.erase(std::unique(spec.levels.begin(), spec.levels.end()),
                              spec.levels.end());
        }
    } else if (!levels_csv.empty()) {
        throw ValidationError("levels apply only to the rsa family");
    }
    spec.validate();
    return spec;
}

namespace {

struct RawValue {
    std::string scalar;          // unset when is_list
    std::vector<std::string> list;
    bool is_list = false;
    bool quoted = false;         // scalar came wrapped in double quotes
    int line = 0;
};

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// raw key -> value pairs per section, one pass, duplicate keys rejected
std::map<std::string, std::map<std::string, RawValue>> tokenize(const std::string& text) {
    std::map<std::string, std::map<std::string, RawValue>> sections;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool in_quote = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line.resize(i);
                break;
            }
        }
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": malformed section header");
            section = strip(line.substr(1, line.size() - 2));
            if (sections.count(section))
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": duplicate section [" + section + "]");
            sections[section];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
        if (section.empty())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": key outside any [section]");
        const std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
        RawValue rv;
        rv.line = lineno;
        if (val.front() == '[') {
            if (val.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": unterminated list");
            rv.is_list = true;
            std::string inner = val.substr(1, val.size() - 2);
            std::string cur;
            bool quote = false;
            for (char c : inner) {
                if (c == '"') quote = !quote;
                if (c == ',' && !quote) {
                    rv.list.push_back(strip(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            cur = strip(cur);
            if (!cur.empty()) rv.list.push_back(cur);
            for (const std::string& item : rv.list)
                if (item.empty())
                    throw ValidationError("config line " + std::to_string(lineno) +
                                          ": empty list element");
        } else if (val.front() == '"') {
            if (val.size() < 2 || val.back() != '"')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": unterminated string");
            rv.scalar = val.substr(1, val.size() - 2);
            rv.quoted = true;
        } else {
            rv.scalar = val;
        }
        if (!sections[section].emplace(key, std::move(rv)).second)
            throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                  key + "'");
    }
    return sections;
}

std::string unquote_item(const std::string& s, int line) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
        return s.substr(1, s.size() - 2);
    throw ValidationError("config line " + std::to_string(line) + ": expected a quoted string");
}

double as_double(const RawValue& rv, const char* what) {
    if (rv.is_list || rv.quoted)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be a number");
    return parse_double(rv.scalar, what);
}

long long as_int(const RawValue& rv, const char* what) {
    if (rv.is_list || rv.quoted)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be an integer");
    long long v = 0;
    auto [ptr, ec] = std::from_chars(rv.scalar.data(), rv.scalar.data() + rv.scalar.size(), v);
    if (ec != std::errc() || ptr != rv.scalar.data() + rv.scalar.size())
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be an integer, got '" + rv.scalar + "'");
    return v;
}

uint64_t as_u64(const RawValue& rv, const char* what) {
    if (rv.is_list || rv.quoted)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be an unsigned integer");
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(rv.scalar.data(), rv.scalar.data() + rv.scalar.size(), v);
    if (ec != std::errc() || ptr != rv.scalar.data() + rv.scalar.size())
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be an unsigned integer, got '" + rv.scalar + "'");
    return v;
}

std::string as_string(const RawValue& rv, const char* what) {
    if (rv.is_list || !rv.quoted)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be a quoted string");
    return rv.scalar;
}

std::vector<double> as_num_list(const RawValue& rv, const char* what) {
    if (!rv.is_list)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be a list of numbers");
    std::vector<double> out;
    out.reserve(rv.list.size());
    for (const std::string& item : rv.list) out.push_back(parse_double(item, what));
    return out;
}

std::vector<std::string> as_str_list(const RawValue& rv, const char* what) {
    if (!rv.is_list)
        throw ValidationError("config line " + std::to_string(rv.line) + ": " + what +
                              " must be a list of quoted strings");
    std::vector<std::string> out;
    out.reserve(rv.list.size());
    for (const std::string& item : rv.list) out.push_back(unquote_item(item, rv.line));
    return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    auto sections = tokenize(text);

    using Setter = std::function<void(const RawValue&)>;
    std::map<std::string, std::map<std::string, Setter>> schema;

    auto& world = schema["world"];
    world["grid_min"] = [&](const RawValue& v) { cfg.world.grid_min = as_double(v, "grid_min"); };
    world["grid_max"] = [&](const RawValue& v) { cfg.world.grid_max = as_double(v, "grid_max"); };
    world["grid_step"] = [&](const RawValue& v) {
        cfg.world.grid_step = as_double(v, "grid_step");
    };
    world["midpoint"] = [&](const RawValue& v) { cfg.world.midpoint = as_double(v, "midpoint"); };
    world["n_sticks"] = [&](const RawValue& v) {
        cfg.world.n_sticks = static_cast<int>(as_int(v, "n_sticks"));
    };
    world["enumeration_cap"] = [&](const RawValue& v) {
        cfg.world.enumeration_cap = as_int(v, "enumeration_cap");
    };
    world["speaker_set"] = [&](const RawValue& v) {
        cfg.world.speaker_set = as_num_list(v, "speaker_set");
    };

    auto& model = schema["model"];
    model["family"] = [&](const RawValue& v) { cfg.model.family = as_string(v, "family"); };
    model["variant"] = [&](const RawValue& v) { cfg.model.variant = as_string(v, "variant"); };
    model["levels"] = [&](const RawValue& v) { cfg.model.levels = as_str_list(v, "levels"); };
    model["alpha"] = [&](const RawValue& v) { cfg.model.alpha = as_double(v, "alpha"); };
    model["response_sd"] = [&](const RawValue& v) {
        cfg.model.response_sd = as_double(v, "response_sd");
    };
    model["beta_grid_points"] = [&](const RawValue& v) {
        cfg.model.beta_grid_points = static_cast<int>(as_int(v, "beta_grid_points"));
    };
    model["beta_max"] = [&](const RawValue& v) { cfg.model.beta_max = as_double(v, "beta_max"); };
    model["second_pick"] = [&](const RawValue& v) {
        cfg.model.second_pick = as_string(v, "second_pick");
    };

    auto& mcmc = schema["mcmc"];
    mcmc["chains"] = [&](const RawValue& v) {
        cfg.mcmc.chains = static_cast<int>(as_int(v, "chains"));
    };
    mcmc["samples"] = [&](const RawValue& v) {
        cfg.mcmc.samples = static_cast<int>(as_int(v, "samples"));
    };
    mcmc["burnin"] = [&](const RawValue& v) {
        cfg.mcmc.burnin = static_cast<int>(as_int(v, "burnin"));
    };
    mcmc["lag"] = [&](const RawValue& v) { cfg.mcmc.lag = static_cast<int>(as_int(v, "lag")); };
    mcmc["proposal_frac"] = [&](const RawValue& v) {
        cfg.mcmc.proposal_frac = as_double(v, "proposal_frac");
    };
    mcmc["seed"] = [&](const RawValue& v) { cfg.mcmc.seed = as_u64(v, "seed"); };

    auto& sweep = schema["sweep"];
    sweep["beta_list"] = [&](const RawValue& v) {
        cfg.sweep.beta_list = as_num_list(v, "beta_list");
    };
    sweep["evidence_list"] = [&](const RawValue& v) {
        cfg.sweep.evidence_list = as_num_list(v, "evidence_list");
    };
    sweep["goal"] = [&](const RawValue& v) { cfg.sweep.goal = as_string(v, "goal"); };
    sweep["grid_min"] = [&](const RawValue& v) { cfg.sweep.grid_min = as_double(v, "grid_min"); };
    sweep["grid_max"] = [&](const RawValue& v) { cfg.sweep.grid_max = as_double(v, "grid_max"); };

    auto& synth = schema["synthetic"];
    synth["n_participants"] = [&](const RawValue& v) {
        cfg.synthetic.n_participants = static_cast<int>(as_int(v, "n_participants"));
    };
    synth["prop_strongest"] = [&](const RawValue& v) {
        cfg.synthetic.prop_strongest = as_double(v, "prop_strongest");
    };
    synth["prop_second"] = [&](const RawValue& v) {
        cfg.synthetic.prop_second = as_double(v, "prop_second");
    };
    synth["prop_weaker"] = [&](const RawValue& v) {
        cfg.synthetic.prop_weaker = as_double(v, "prop_weaker");
    };
    synth["beta"] = [&](const RawValue& v) { cfg.synthetic.beta = as_double(v, "beta"); };
    synth["offset"] = [&](const RawValue& v) { cfg.synthetic.offset = as_double(v, "offset"); };
    synth["p_z_strongest"] = [&](const RawValue& v) {
        cfg.synthetic.p_z_strongest = as_double(v, "p_z_strongest");
    };
    synth["p_z_second"] = [&](const RawValue& v) {
        cfg.synthetic.p_z_second = as_double(v, "p_z_second");
    };
    synth["p_z_weaker"] = [&](const RawValue& v) {
        cfg.synthetic.p_z_weaker = as_double(v, "p_z_weaker");
    };
    synth["weak_cell_prob"] = [&](const RawValue& v) {
        cfg.synthetic.weak_cell_prob = as_double(v, "weak_cell_prob");
    };
    synth["long_first_prob"] = [&](const RawValue& v) {
        cfg.synthetic.long_first_prob = as_double(v, "long_first_prob");
    };

    auto& output = schema["output"];
    output["dir"] = [&](const RawValue& v) { cfg.output.dir = as_string(v, "dir"); };

    for (const auto& [section, keys] : sections) {
        auto sit = schema.find(section);
        if (sit == schema.end())
            throw ValidationError("unknown config section [" + section + "]");
        for (const auto& [key, raw] : keys) {
            auto kit = sit->second.find(key);
            if (kit == sit->second.end())
                throw ValidationError("config line " + std::to_string(raw.line) +
                                      ": unknown key '" + key + "' in section [" + section + "]");
            kit->second(raw);
        }
    }
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

namespace {

std::string join_nums(const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt_double(v[i]);
    }
    return s + "]";
}

std::string join_strs(const std::vector<std::string>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += '"' + v[i] + '"';
    }
    return s + "]";
}

}  // namespace

std::string RunConfig::init_text() {
    const RunConfig d;
    std::string s;
    s += "# stick-contest toolkit run configuration (all values are the defaults)\n\n";
    s += "[world]\n";
    s += "grid_min = " + fmt_double(d.world.grid_min) + "          # smallest stick length\n";
    s += "grid_max = " + fmt_double(d.world.grid_max) + "\n";
    s += "grid_step = " + fmt_double(d.world.grid_step) + "\n";
    s += "midpoint = " + fmt_double(d.world.midpoint) + "          # claims are judged against n * midpoint\n";
    s += "n_sticks = " + std::to_string(d.world.n_sticks) + "\n";
    s += "enumeration_cap = " + std::to_string(d.world.enumeration_cap) +
         "   # refuse larger ordered-tuple spaces\n";
    s += "speaker_set = " + join_nums(d.world.speaker_set) +
         "   # sticks available in the speaker phase\n\n";
    s += "[model]\n";
    s += "family = \"" + d.model.family + "\"             # rsa | aa | mas\n";
    s += "variant = \"" + d.model.variant +
         "\"   # homogeneous | heterogeneous | speaker-dependent\n";
    s += "levels = " + join_strs(d.model.levels) + "       # rsa mixture components\n";
    s += "alpha = " + fmt_double(d.model.alpha) + "                  # speaker softmax temperature\n";
    s += "response_sd = " + fmt_double(d.model.response_sd) + "          # slider noise, unit scale\n";
    s += "beta_grid_points = " + std::to_string(d.model.beta_grid_points) +
         "    # listener-side prior grid over beta\n";
    s += "beta_max = " + fmt_double(d.model.beta_max) + "\n";
    s += "second_pick = \"" + d.model.second_pick + "\"  # independent | exclusive\n\n";
    s += "[mcmc]\n";
    s += "chains = " + std::to_string(d.mcmc.chains) + "\n";
    s += "samples = " + std::to_string(d.mcmc.samples) + "            # per chain, post-thinning\n";
    s += "burnin = " + std::to_string(d.mcmc.burnin) + "\n";
    s += "lag = " + std::to_string(d.mcmc.lag) + "\n";
    s += "proposal_frac = " + fmt_double(d.mcmc.proposal_frac) +
         "     # proposal sd as a fraction of each prior width\n";
    s += "seed = " + std::to_string(d.mcmc.seed) +
         "                  # overridden by SEED env, then by --seed\n\n";
    s += "[sweep]\n";
    s += "beta_list = " + join_nums(d.sweep.beta_list) + "\n";
    s += "evidence_list = " + join_nums(d.sweep.evidence_list) + "\n";
    s += "goal = \"" + d.sweep.goal + "\"           # longer | shorter\n";
    s += "grid_min = " + fmt_double(d.sweep.grid_min) + "             # sweep grid extends the world grid\n";
    s += "grid_max = " + fmt_double(d.sweep.grid_max) + "\n\n";
    s += "[synthetic]\n";
    s += "n_participants = " + std::to_string(d.synthetic.n_participants) + "\n";
    s += "prop_strongest = " + fmt_double(d.synthetic.prop_strongest) + "\n";
    s += "prop_second = " + fmt_double(d.synthetic.prop_second) + "\n";
    s += "prop_weaker = " + fmt_double(d.synthetic.prop_weaker) + "\n";
    s += "beta = " + fmt_double(d.synthetic.beta) + "\n";
    s += "offset = " + fmt_double(d.synthetic.offset) + "\n";
    s += "p_z_strongest = " + fmt_double(d.synthetic.p_z_strongest) + "\n";
    s += "p_z_second = " + fmt_double(d.synthetic.p_z_second) + "\n";
    s += "p_z_weaker = " + fmt_double(d.synthetic.p_z_weaker) + "\n";
    s += "weak_cell_prob = " + fmt_double(d.synthetic.weak_cell_prob) +
         "     # oversampled weakest supporting evidence\n";
    s += "long_first_prob = " + fmt_double(d.synthetic.long_first_prob) + "\n\n";
    s += "[output]\n";
    s += "dir = \"" + d.output.dir + "\"                 # base directory for relative output paths\n";
    return s;
}

std::string RunConfig::canonical() const {
    std::string s;
    s += "world.grid_min=" + fmt_double(world.grid_min) + "\n";
    s += "world.grid_max=" + fmt_double(world.grid_max) + "\n";
    s += "world.grid_step=" + fmt_double(world.grid_step) + "\n";
    s += "world.midpoint=" + fmt_double(world.midpoint) + "\n";
    s += "world.n_sticks=" + std::to_string(world.n_sticks) + "\n";
    s += "world.enumeration_cap=" + std::to_string(world.enumeration_cap) + "\n";
    s += "world.speaker_set=" + join_nums(world.speaker_set) + "\n";
    s += "model.family=" + model.family + "\n";
    s += "model.variant=" + model.variant + "\n";
    s += "model.levels=" + join_strs(model.levels) + "\n";
    s += "model.alpha=" + fmt_double(model.alpha) + "\n";
    s += "model.response_sd=" + fmt_double(model.response_sd) + "\n";
    s += "model.beta_grid_points=" + std::to_string(model.beta_grid_points) + "\n";
    s += "model.beta_max=" + fmt_double(model.beta_max) + "\n";
    s += "model.second_pick=" + model.second_pick + "\n";
    s += "mcmc.chains=" + std::to_string(mcmc.chains) + "\n";
    s += "mcmc.samples=" + std::to_string(mcmc.samples) + "\n";
    s += "mcmc.burnin=" + std::to_string(mcmc.burnin) + "\n";
    s += "mcmc.lag=" + std::to_string(mcmc.lag) + "\n";
    s += "mcmc.proposal_frac=" + fmt_double(mcmc.proposal_frac) + "\n";
    s += "sweep.beta_list=" + join_nums(sweep.beta_list) + "\n";
    s += "sweep.evidence_list=" + join_nums(sweep.evidence_list) + "\n";
    s += "sweep.goal=" + sweep.goal + "\n";
    s += "sweep.grid_min=" + fmt_double(sweep.grid_min) + "\n";
    s += "sweep.grid_max=" + fmt_double(sweep.grid_max) + "\n";
    s += "synthetic.n_participants=" + std::to_string(synthetic.n_participants) + "\n";
    s += "synthetic.prop_strongest=" + fmt_double(synthetic.prop_strongest) + "\n";
    s += "synthetic.prop_second=" + fmt_double(synthetic.prop_second) + "\n";
    s += "synthetic.prop_weaker=" + fmt_double(synthetic.prop_weaker) + "\n";
    s += "synthetic.beta=" + fmt_double(synthetic.beta) + "\n";
    s += "synthetic.offset=" + fmt_double(synthetic.offset) + "\n";
    s += "synthetic.p_z_strongest=" + fmt_double(synthetic.p_z_strongest) + "\n";
    s += "synthetic.p_z_second=" + fmt_double(synthetic.p_z_second) + "\n";
    s += "synthetic.p_z_weaker=" + fmt_double(synthetic.p_z_weaker) + "\n";
    s += "synthetic.weak_cell_prob=" + fmt_double(synthetic.weak_cell_prob) + "\n";
    s += "synthetic.long_first_prob=" + fmt_double(synthetic.long_first_prob) + "\n";
    s += "output.dir=" + output.dir + "\n";
    return s;
}

std::string RunConfig::hash() const {
    return hex64(fnv1a64(std::string(kVersion) + "\n" + canonical()));
}

WorldPrior RunConfig::world_prior() const {
    WorldPrior prior;
    prior.grid = make_range_grid(world.grid_min, world.grid_max, world.grid_step, world.midpoint);
    prior.n = world.n_sticks;
    prior.enumeration_cap = world.enumeration_cap;
    return prior;
}

ModelSpec RunConfig::model_spec() const {
    std::string levels_csv;
    for (size_t i = 0; i < model.levels.size(); ++i) {
        if (i) levels_csv += ',';
        levels_csv += model.levels[i];
    }
    return parse_model_spec(model.family, model.variant,
                            parse_family(model.family) == Family::RSA ? levels_csv : "");
}

EvalOptions RunConfig::eval_options() const {
    EvalOptions opts;
    opts.alpha = model.alpha;
    opts.response_sd = model.response_sd;
    if (model.second_pick == "independent")
        opts.second_pick = SecondPick::INDEPENDENT;
    else if (model.second_pick == "exclusive")
        opts.second_pick = SecondPick::EXCLUSIVE;
    else
        throw ValidationError("second_pick must be \"independent\" or \"exclusive\", got '" +
                              model.second_pick + "'");
    opts.beta_prior = BetaPrior::uniform_grid(0.0, model.beta_max, model.beta_grid_points);
    return opts;
}

McmcConfig RunConfig::mcmc_config(uint64_t seed) const {
    McmcConfig c;
    c.chains = mcmc.chains;
    c.samples = mcmc.samples;
    c.burnin = mcmc.burnin;
    c.lag = mcmc.lag;
    c.proposal_frac = mcmc.proposal_frac;
    c.seed = seed;
    return c;
}

SweepConfig RunConfig::sweep_config() const {
    SweepConfig c;
    c.beta_values = sweep.beta_list;
    c.evidence_values = sweep.evidence_list;
    c.goal = parse_goal(sweep.goal);
    c.prior.grid = make_range_grid(sweep.grid_min, sweep.grid_max, world.grid_step,
                                   world.midpoint);
    c.prior.n = world.n_sticks;
    c.prior.enumeration_cap = world.enumeration_cap;
    return c;
}

SyntheticConfig RunConfig::synthetic_config(uint64_t seed) const {
    SyntheticConfig c;
    c.n_participants = synthetic.n_participants;
    c.group_proportions = {synthetic.prop_strongest, synthetic.prop_second,
                           synthetic.prop_weaker};
    c.p_z = {synthetic.p_z_strongest, synthetic.p_z_second, synthetic.p_z_weaker};
    c.beta = synthetic.beta;
    c.offset = synthetic.offset;
    c.weak_cell_prob = synthetic.weak_cell_prob;
    c.long_first_prob = synthetic.long_first_prob;
    c.response_sd = model.response_sd;
    c.alpha = model.alpha;
    c.seed = seed;
    c.prior = world_prior();
    c.speaker_set = world.speaker_set;
    return c;
}

std::string data_fingerprint(const std::vector<ResponseRecord>& records) {
    uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const std::string& s) {
        h = fnv1a64(s.data(), s.size(), h);
        h = fnv1a64("|", 1, h);
    };
    feed(std::to_string(records.size()));
    for (const ResponseRecord& r : records) {
        feed(r.participant_id);
        feed(order_name(r.contestant_order));
        feed(fmt_double(r.speaker_choice));
        feed(fmt_double(r.evidence_1));
        feed(fmt_double(r.response_1));
        feed(r.evidence_2 ? fmt_double(*r.evidence_2) : "");
        feed(r.response_2 ? fmt_double(*r.response_2) : "");
    }
    return hex64(h);
}

}  // namespace stick
