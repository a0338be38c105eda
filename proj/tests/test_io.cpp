#include <doctest.h>

#include <cstdio>
#include <string>

#include "stick/csvio.hpp"

using namespace stick;

namespace {

const LengthGrid& default_grid() {
    static const LengthGrid g = default_world_prior().grid;
    return g;
}

std::string tmp_path(const char* name) { return std::string("io_") + name + ".tmp"; }

}  // namespace

TEST_CASE("provenance lines") {
    Provenance prov{kVersion, 9, "abc"};
    CHECK(provenance_lines(prov) ==
          std::string("# version=") + kVersion + "\n# seed=9\n# config_hash=abc\n");
}

TEST_CASE("data csv round-trips through ingest") {
    SyntheticConfig cfg;
    cfg.n_participants = 25;
    cfg.seed = 9;
    const auto recs = generate_synthetic(cfg);
    const std::string path = tmp_path("roundtrip");
    write_text_file(path, data_csv(recs, Provenance{kVersion, 9, "abc"}));

    IngestReport rep = ingest(path, default_grid());
    CHECK(rep.rejected.empty());
    REQUIRE(rep.records.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
        CHECK(rep.records[i].participant_id == recs[i].participant_id);
        CHECK(rep.records[i].contestant_order == recs[i].contestant_order);
        CHECK(rep.records[i].speaker_choice == recs[i].speaker_choice);
        CHECK(rep.records[i].speaker_group == recs[i].speaker_group);
        CHECK(rep.records[i].evidence_1 == recs[i].evidence_1);
        CHECK(rep.records[i].response_1 == recs[i].response_1);
        CHECK(!rep.records[i].evidence_2.has_value());
    }
    std::remove(path.c_str());
}

TEST_CASE("two-observation records survive the round trip") {
    ResponseRecord rec;
    rec.participant_id = "p42";
    rec.contestant_order = Order::LONG_FIRST;
    rec.speaker_choice = 8.0;
    rec.evidence_1 = 7.0;
    rec.response_1 = 62.5;
    rec.evidence_2 = 6.0;
    rec.response_2 = 55.25;

    const std::string path = tmp_path("two_obs");
    write_text_file(path, data_csv({rec}, Provenance{}));
    IngestReport rep = ingest(path, default_grid());
    CHECK(rep.rejected.empty());
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].speaker_group == SpeakerGroup::SECOND_STRONGEST);
    REQUIRE(rep.records[0].evidence_2.has_value());
    CHECK(*rep.records[0].evidence_2 == 6.0);
    CHECK(*rep.records[0].response_2 == 55.25);
    std::remove(path.c_str());
}

TEST_CASE("ingest rejects bad rows with line numbers but keeps good ones") {
    const std::string path = tmp_path("rejects");
    std::string text = std::string(kDataHeader) + "\n";
    text += "p1,LONG_FIRST,9,6,50,,\n";                  // 2: valid
    text += "p1,LONG_FIRST,9,6,50,,\n";                  // 3: duplicate id
    text += "p2,MIDDLE,9,6,50,,\n";                      // 4: bad order
    text += "p3,LONG_FIRST,9,5.5,50,,\n";                // 5: off-grid evidence
    text += "p4,LONG_FIRST,9,6,150,,\n";                 // 6: response out of range
    text += "p5,LONG_FIRST,9,6,50,7,\n";                 // 7: evidence_2 without response_2
    text += "p6,LONG_FIRST,abc,6,50,,\n";                // 8: non-numeric
    text += "p7,LONG_FIRST,9,6,50,\n";                   // 9: six fields
    text += "p8,LONG_FIRST,9,4,50,,\n";                  // 10: evidence contradicts claim
    text += "# stray comment\n";                         // 11
    text += "p9,LONG_FIRST,5,6,50,,\n";                  // 12: choice outside speaker set
    text += ",LONG_FIRST,9,6,50,,\n";                    // 13: empty id
    write_text_file(path, text);

    IngestReport rep = ingest(path, default_grid());
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].participant_id == "p1");

    const std::pair<int, const char*> expected[] = {
        {3, "duplicate participant_id"},
        {4, "contestant_order must be"},
        {5, "not on the length grid"},
        {6, "must lie in [0, 100]"},
        {7, "must come together"},
        {8, "bad numeric value for speaker_choice"},
        {9, "expected 7 fields, got 6"},
        {10, "does not support the claimed direction"},
        {11, "comment after header"},
        {12, "outside the speaker set"},
        {13, "empty participant_id"},
    };
    REQUIRE(rep.rejected.size() == std::size(expected));
    for (size_t i = 0; i < std::size(expected); ++i) {
        CHECK(rep.rejected[i].line == expected[i].first);
        CHECK(rep.rejected[i].reason.find(expected[i].second) != std::string::npos);
    }
    std::remove(path.c_str());
}

TEST_CASE("ingest demands the exact header") {
    const std::string path = tmp_path("header");
    write_text_file(path, "id,order,choice\np1,LONG_FIRST,9\n");
    CHECK_THROWS_WITH_AS(ingest(path, default_grid()),
                         doctest::Contains("malformed header"), ValidationError);
    write_text_file(path, "# only comments\n");
    CHECK_THROWS_WITH_AS(ingest(path, default_grid()),
                         doctest::Contains("no header line"), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_WITH_AS(ingest("definitely_missing.csv", default_grid()),
                         doctest::Contains("cannot open data file"), ValidationError);
}

TEST_CASE("config defaults round-trip through init text") {
    const RunConfig defaults;
    const RunConfig parsed = RunConfig::parse(RunConfig::init_text());
    CHECK(parsed.canonical() == defaults.canonical());
    CHECK(parsed.hash() == defaults.hash());
    CHECK(RunConfig::parse("").canonical() == defaults.canonical());
}

TEST_CASE("config hash is stable, sensitive, and ignores the mcmc seed") {
    const RunConfig defaults;
    CHECK(defaults.hash() == "935ff1fd02d727ad");

    RunConfig seeded = defaults;
    seeded.mcmc.seed = 42;
    CHECK(seeded.hash() == defaults.hash());
    CHECK(seeded.canonical() == defaults.canonical());

    RunConfig tweaked = defaults;
    tweaked.synthetic.n_participants = 60;
    CHECK(tweaked.hash() != defaults.hash());
}

TEST_CASE("config parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(RunConfig::parse("[bogus]\nx = 1\n"),
                         doctest::Contains("unknown config section [bogus]"), ValidationError);
    CHECK_THROWS_WITH_AS(RunConfig::parse("[world]\nfrob = 1\n"),
                         doctest::Contains("config line 2: unknown key 'frob'"), ValidationError);
    CHECK_THROWS_WITH_AS(RunConfig::parse("[world]\n[world]\n"),
                         doctest::Contains("config line 2: duplicate section"), ValidationError);
    CHECK_THROWS_WITH_AS(RunConfig::parse("[world]\ngrid_min = 1\ngrid_min = 2\n"),
                         doctest::Contains("config line 3: duplicate key 'grid_min'"),
                         ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("[world]\ngrid_min = abc\n"), ValidationError);
    CHECK_THROWS_AS(RunConfig::parse("[model]\nfamily = rsa\n"), ValidationError);  // unquoted
    CHECK_THROWS_AS(RunConfig::parse("stray line\n"), ValidationError);
    CHECK_THROWS_WITH_AS(RunConfig::load("missing_config.toml"),
                         doctest::Contains("cannot open config file"), ValidationError);
}

TEST_CASE("parse_goal accepts the two claim directions") {
    CHECK(parse_goal("longer").target == Prop::LONGER);
    CHECK(parse_goal("shorter").target == Prop::SHORTER);
    CHECK_THROWS_AS(parse_goal("taller"), ValidationError);
}

TEST_CASE("data fingerprint tracks content") {
    SyntheticConfig cfg;
    cfg.n_participants = 5;
    const auto recs = generate_synthetic(cfg);
    auto copy = recs;
    CHECK(data_fingerprint(recs) == data_fingerprint(copy));
    copy[2].response_1 += 0.5;
    CHECK(data_fingerprint(recs) != data_fingerprint(copy));
}

TEST_CASE("heatmap csv format") {
    HeatmapResult hm;
    hm.beta_values = {0.0, 1.0};
    hm.evidence_values = {6.0};
    hm.effect = {{0.0}, {0.2}};
    const std::string got = heatmap_csv(hm, Provenance{kVersion, 9, "abc"});
    const std::string expect = std::string("# version=") + kVersion +
                               "\n# seed=9\n# config_hash=abc\n"
                               "beta,evidence,effect,no_effect\n"
                               "0,6,0,1\n"
                               "1,6,0.2,0\n";
    CHECK(got == expect);
}

TEST_CASE("heatmap svg marks empty cells black") {
    HeatmapResult hm;
    hm.beta_values = {0.0, 1.0};
    hm.evidence_values = {6.0, 7.0};
    hm.effect = {{0.0, 0.0}, {0.1, 0.2}};
    const std::string svg = heatmap_svg(hm, Provenance{kVersion, 3, "h"});
    CHECK(svg.find("<svg ") != std::string::npos);
    CHECK(svg.find("config_hash=h") != std::string::npos);
    CHECK(svg.find("#000000") != std::string::npos);
    size_t rects = 0;
    for (size_t pos = svg.find("<rect"); pos != std::string::npos;
         pos = svg.find("<rect", pos + 1))
        ++rects;
    CHECK(rects == 1 + 4);  // background + cells
}

TEST_CASE("curves csv format") {
    CurvesResult cv;
    cv.evidence_values = {6.0};
    cv.j0 = {0.3};
    cv.j1 = {0.4};
    cv.prior_split = 0.5;
    const std::string got = curves_csv(cv, Provenance{kVersion, 9, "abc"});
    const std::string expect = std::string("# version=") + kVersion +
                               "\n# seed=9\n# config_hash=abc\n"
                               "# prior_split=0.5\n"
                               "evidence,j0,j1\n"
                               "6,0.3,0.4\n";
    CHECK(got == expect);
}

TEST_CASE("compare csv format") {
    ComparisonRow row;
    row.model = "alpha";
    row.max_loglik = -48.0;
    row.waic = 100.0;
    row.waic_se = 2.0;
    row.psis_loo = 101.0;
    row.psis_loo_se = 2.1;
    row.delta_waic = 0.0;
    row.delta_se = 0.0;
    row.indistinguishable = false;
    const std::string got = compare_csv({row}, Provenance{kVersion, 1, "h"});
    CHECK(got.find("model,max_loglik,waic,waic_se,delta_waic,delta_se,psis_loo,psis_loo_se,"
                   "indistinguishable\n") != std::string::npos);
    CHECK(got.find("alpha,-48,100,2,0,0,101,2.1,0\n") != std::string::npos);
}

TEST_CASE("fit json round-trips through read_fit_summary") {
    FitResult fit;
    fit.spec = parse_model_spec("aa", "homogeneous", "");
    fit.space.defs = {{"offset", -0.5, 0.5}, {"B", 0.0, 10.0}};
    fit.map_params = {0.1, 1.2};
    fit.max_loglik = -12.5;
    fit.mcmc.samples = {{0.1, 1.2}, {0.2, 1.1}, {0.15, 1.3}};
    fit.mcmc.loglik = {{-1.0, -2.0}, {-1.1, -2.1}, {-0.9, -1.9}};
    fit.mcmc.chain_acceptance = {0.3};
    fit.waic = waic(fit.mcmc.loglik);
    fit.psis = psis_loo(fit.mcmc.loglik);
    fit.seed = 7;
    fit.config_hash = "deadbeef";
    fit.data_fingerprint = "fp";

    const std::string path = tmp_path("fit");
    write_text_file(path, fit_json(fit));
    FitSummary s = read_fit_summary(path);
    CHECK(s.model == "aa-homogeneous");
    CHECK(s.max_loglik == -12.5);
    CHECK(s.data_fingerprint == "fp");
    CHECK(s.waic == fit.waic.waic);
    CHECK(s.waic_se == fit.waic.se);
    CHECK(s.waic_pointwise == fit.waic.pointwise);
    CHECK(s.psis_loo == fit.psis.loo);
    CHECK(s.psis_loo_se == fit.psis.se);
    CHECK(s.loo_pointwise == fit.psis.pointwise);
    std::remove(path.c_str());
}

TEST_CASE("read_fit_summary failure modes") {
    CHECK_THROWS_WITH_AS(read_fit_summary("missing_fit.json"),
                         doctest::Contains("cannot open fit file"), ValidationError);
    const std::string path = tmp_path("badjson");
    write_text_file(path, "{not json");
    CHECK_THROWS_WITH_AS(read_fit_summary(path), doctest::Contains("cannot parse fit file"),
                         ValidationError);
    write_text_file(path, "{\"model\": \"x\"}");
    CHECK_THROWS_WITH_AS(read_fit_summary(path), doctest::Contains("missing fields"),
                         ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("text file helpers") {
    const std::string path = tmp_path("text");
    write_text_file(path, "hello\n");
    CHECK(read_text_file(path) == "hello\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file(path), ValidationError);
    CHECK_THROWS_AS(write_text_file("no_such_dir_xyz/file.txt", "x"), ValidationError);
}

TEST_CASE("csv fields reject unsafe ids") {
    ResponseRecord rec;
    rec.participant_id = "p,1";
    rec.contestant_order = Order::LONG_FIRST;
    rec.speaker_choice = 9.0;
    rec.evidence_1 = 6.0;
    rec.response_1 = 50.0;
    CHECK_THROWS_AS(data_csv({rec}, Provenance{}), ValidationError);
}
