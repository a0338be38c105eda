#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stick/csvio.hpp"

namespace {

using namespace stick;

uint64_t parse_seed_env(const char* text) {
    uint64_t v = 0;
    const std::string s(text);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("invalid SEED environment value '" + s + "'");
    return v;
}

// precedence: --seed flag, then SEED env, then [mcmc] seed from the config
uint64_t resolve_seed(bool flag_given, uint64_t flag_value, uint64_t config_seed) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("SEED")) return parse_seed_env(env);
    return config_seed;
}

std::string out_path(const RunConfig& cfg, const std::string& path) {
    if (path.empty() || path.front() == '/' || cfg.output.dir == "." || cfg.output.dir.empty())
        return path;
    return cfg.output.dir + "/" + path;
}

void emit(const RunConfig& cfg, const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(out_path(cfg, path), content);
}

int run(int argc, char** argv) {
    CLI::App app{"exact-inference and fitting toolkit for stick-contest persuasion models"};
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run model sweeps");
    simulate->require_subcommand(1);

    auto* heatmap_cmd = simulate->add_subcommand("heatmap", "weak-evidence-effect sweep");
    std::string hm_config, hm_out, hm_svg;
    std::vector<double> hm_betas;
    heatmap_cmd->add_option("--config", hm_config, "run configuration file")->required();
    heatmap_cmd->add_option("--beta-list", hm_betas, "override the beta sweep")->delimiter(',');
    heatmap_cmd->add_option("--out", hm_out, "output csv (stdout when omitted)");
    heatmap_cmd->add_option("--svg", hm_svg, "also render an svg heatmap");

    auto* curves_cmd = simulate->add_subcommand("curves", "literal vs pragmatic belief curves");
    double cv_beta = 0.0, cv_offset = 0.0;
    std::string cv_out;
    curves_cmd->add_option("--beta", cv_beta, "pragmatic listener beta")->required();
    curves_cmd->add_option("--offset", cv_offset, "additive response offset")->required();
    curves_cmd->add_option("--out", cv_out, "output csv")->required();

    // gen-data
    auto* gen_cmd = app.add_subcommand("gen-data", "generate a synthetic response dataset");
    std::string gd_config, gd_out;
    uint64_t gd_seed = 0;
    gen_cmd->add_option("--config", gd_config, "run configuration file")->required();
    auto* gd_seed_opt = gen_cmd->add_option("--seed", gd_seed, "generator seed");
    gen_cmd->add_option("--out", gd_out, "output csv")->required();

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "map + mcmc fit of one model");
    std::string ft_model, ft_variant, ft_levels, ft_data, ft_out, ft_config;
    int ft_chains = 4, ft_samples = 1000, ft_burnin = 7500, ft_lag = 100;
    uint64_t ft_seed = 0;
    fit_cmd->add_option("--model", ft_model, "rsa, aa or mas")->required();
    fit_cmd->add_option("--variant", ft_variant,
                        "homogeneous, heterogeneous or speaker-dependent")
        ->required();
    fit_cmd->add_option("--levels", ft_levels, "rsa mixture levels, e.g. J0,J1");
    fit_cmd->add_option("--data", ft_data, "response csv")->required();
    fit_cmd->add_option("--chains", ft_chains, "mcmc chains")->capture_default_str();
    fit_cmd->add_option("--samples", ft_samples, "posterior samples per chain")
        ->capture_default_str();
    fit_cmd->add_option("--burnin", ft_burnin, "burn-in sweeps")->capture_default_str();
    fit_cmd->add_option("--lag", ft_lag, "thinning lag")->capture_default_str();
    auto* ft_seed_opt = fit_cmd->add_option("--seed", ft_seed, "sampler seed");
    fit_cmd->add_option("--out", ft_out, "output fit json")->required();
    fit_cmd->add_option("--config", ft_config, "run configuration file (defaults when omitted)");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "rank fitted models");
    std::vector<std::string> cp_fits;
    std::string cp_out;
    cmp_cmd->add_option("--fits", cp_fits, "fit json files")->required()->expected(-1);
    cmp_cmd->add_option("--out", cp_out, "output csv")->required();

    // check
    auto* check_cmd = app.add_subcommand("check", "run the listener/speaker property battery");

    // config
    auto* config_cmd = app.add_subcommand("config", "configuration helpers");
    config_cmd->require_subcommand(1);
    auto* init_cmd = config_cmd->add_subcommand("init", "print the full default configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (heatmap_cmd->parsed()) {
        const RunConfig cfg = RunConfig::load(hm_config);
        SweepConfig sweep = cfg.sweep_config();
        if (!hm_betas.empty()) sweep.beta_values = hm_betas;
        const HeatmapResult heatmap = effect_heatmap(sweep);
        const Provenance prov{kVersion, resolve_seed(false, 0, cfg.mcmc.seed), cfg.hash()};
        emit(cfg, hm_out, heatmap_csv(heatmap, prov));
        if (!hm_svg.empty()) write_text_file(out_path(cfg, hm_svg), heatmap_svg(heatmap, prov));
        return 0;
    }

    if (curves_cmd->parsed()) {
        const RunConfig cfg;  // curves run on the built-in experiment setting
        const CurvesResult curves = belief_curves(cv_beta, cv_offset);
        const Provenance prov{kVersion, resolve_seed(false, 0, cfg.mcmc.seed), cfg.hash()};
        emit(cfg, cv_out, curves_csv(curves, prov));
        return 0;
    }

    if (gen_cmd->parsed()) {
        const RunConfig cfg = RunConfig::load(gd_config);
        const uint64_t seed = resolve_seed(gd_seed_opt->count() > 0, gd_seed, cfg.mcmc.seed);
        const auto records = generate_synthetic(cfg.synthetic_config(seed));
        const Provenance prov{kVersion, seed, cfg.hash()};
        emit(cfg, gd_out, data_csv(records, prov));
        std::cerr << "wrote " << records.size() << " records to " << out_path(cfg, gd_out)
                  << "\n";
        return 0;
    }

    if (fit_cmd->parsed()) {
        const RunConfig cfg = ft_config.empty() ? RunConfig{} : RunConfig::load(ft_config);
        const uint64_t seed = resolve_seed(ft_seed_opt->count() > 0, ft_seed, cfg.mcmc.seed);
        const ModelSpec spec = parse_model_spec(ft_model, ft_variant, ft_levels);
        const WorldPrior prior = cfg.world_prior();

        const IngestReport report = ingest(ft_data, prior.grid, cfg.world.speaker_set);
        for (const auto& rej : report.rejected)
            std::cerr << "skipped line " << rej.line << ": " << rej.reason << "\n";
        if (report.records.empty())
            throw ValidationError("no valid records in '" + ft_data + "'");

        ModelEval eval(spec, prior, cfg.eval_options());
        eval.set_data(report.records);

        FitResult fit;
        fit.spec = spec;
        fit.space = eval.space();
        fit.seed = seed;
        fit.config_hash = cfg.hash();
        fit.data_fingerprint = data_fingerprint(report.records);

        const MapResult map = map_fit(eval);
        fit.map_params = map.params;
        fit.max_loglik = map.max_loglik;

        McmcConfig mcfg = cfg.mcmc_config(seed);
        mcfg.chains = ft_chains;
        mcfg.samples = ft_samples;
        mcfg.burnin = ft_burnin;
        mcfg.lag = ft_lag;
        fit.mcmc = mh_sample(eval, mcfg);
        for (const std::string& w : fit.mcmc.warnings) std::cerr << "warning: " << w << "\n";

        fit.waic = waic(fit.mcmc.loglik);
        fit.psis = psis_loo(fit.mcmc.loglik);
        for (const std::string& w : fit.psis.warnings) std::cerr << "warning: " << w << "\n";

        write_text_file(out_path(cfg, ft_out), fit_json(fit));
        std::cerr << "wrote fit for " << spec.name() << " to " << out_path(cfg, ft_out) << "\n";
        return 0;
    }

    if (cmp_cmd->parsed()) {
        std::vector<FitSummary> fits;
        fits.reserve(cp_fits.size());
        for (const std::string& path : cp_fits) fits.push_back(read_fit_summary(path));
        const auto rows = compare_models(fits);
        const RunConfig cfg;
        const Provenance prov{kVersion, 0, cfg.hash()};
        emit(cfg, cp_out, compare_csv(rows, prov));
        return 0;
    }

    if (check_cmd->parsed()) {
        const TheoremReport report = theorem_suite();
        for (const PropertyResult& r : report.results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.property;
            if (!r.pass) std::cout << " — counterexample: " << r.counterexample;
            std::cout << "\n";
        }
        if (!report.all_pass) return 1;
        std::cout << "all properties passed\n";
        return 0;
    }

    if (init_cmd->parsed()) {
        std::cout << RunConfig::init_text();
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
