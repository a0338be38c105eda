#include <doctest.h>

#include <cmath>

#include "stick/rsa.hpp"
#include "stick/sim.hpp"

using namespace stick;

namespace {

const Goal kLonger{Prop::LONGER};
const Goal kShorter{Prop::SHORTER};

double split(const BeliefState& b) { return b.p_longer + 0.5 * b.p_tie; }

}  // namespace

TEST_CASE("literal and pragmatic reference curves") {
    // listener curves at the fitted population values (beta 2.03, offset -0.13)
    const double j0[9] = {0.097481, 0.158066, 0.224824, 0.296155, 0.37,
                          0.443845, 0.515176, 0.581934, 0.642519};
    const double j1[9] = {0.008381, 0.054807, 0.110729, 0.176029, 0.249482,
                          0.328514, 0.409622, 0.489228, 0.564145};
    const CurvesResult c = belief_curves(2.03, -0.13);
    REQUIRE(c.evidence_values.size() == 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(c.j0[i] == doctest::Approx(j0[i]).epsilon(5e-6));
        CHECK(c.j1[i] == doctest::Approx(j1[i]).epsilon(5e-6));
    }
    CHECK(c.prior_split == doctest::Approx(0.5).epsilon(1e-12));

    // the pragmatic curve is the sharper S (larger max |second difference|)
    auto max_dd = [](const std::vector<double>& y) {
        double m = 0.0;
        for (size_t i = 2; i < y.size(); ++i)
            m = std::max(m, std::abs(y[i] - 2 * y[i - 1] + y[i - 2]));
        return m;
    };
    CHECK(max_dd(c.j1) > max_dd(c.j0));
}

TEST_CASE("joint listener reference points") {
    const WorldPrior prior = default_world_prior();
    auto table = build_world_table(prior);
    const BetaPrior bp = BetaPrior::uniform_grid(0, 10, 101);

    const JointPosterior j9 = joint_listener(9.0, kLonger, bp, table, 1.0);
    CHECK(j9.world_marginal.p_longer == doctest::Approx(0.653994608276).epsilon(1e-10));
    CHECK(j9.mean_abs_beta == doctest::Approx(5.738556762131).epsilon(1e-10));
    CHECK(j9.mean_beta == j9.mean_abs_beta);  // support is non-negative

    const JointPosterior j6 = joint_listener(6.0, kLonger, bp, table, 1.0);
    CHECK(j6.world_marginal.p_longer == doctest::Approx(0.327538907620).epsilon(1e-10));
    CHECK(j6.mean_abs_beta == doctest::Approx(4.796185745300).epsilon(1e-10));

    // stronger evidence looks less biased
    CHECK(perceived_bias_cost(9.0, kLonger, bp, prior) >
          perceived_bias_cost(6.0, kLonger, bp, prior));

    double s = 0.0;
    for (double v : j9.beta_posterior) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("level-2 base tables and listener") {
    const double lnp[9] = {-1.877117839, -1.698394713, -1.579342772,
                           -1.480530176, -1.338566492, -1.116148429,
                           -0.847646695, -0.605883727, -0.424656172};
    const double cost[9] = {1.185254490, 1.706236387, 2.480683495,
                            3.361627513, 4.161719580, 4.796185745,
                            5.256023712, 5.560523018, 5.738556762};
    auto table = build_world_table(default_world_prior());
    const BetaPrior bp = BetaPrior::uniform_grid(0, 10, 101);
    const Level2Tables t = level2_base_tables(table, kLonger, bp, 1.0);
    REQUIRE(t.log_p_goal.size() == 9);
    for (int i = 0; i < 9; ++i) {
        CHECK(t.log_p_goal[i] == doctest::Approx(lnp[i]).epsilon(1e-8));
        CHECK(t.cost[i] == doctest::Approx(cost[i]).epsilon(1e-8));
    }

    const BeliefState l2 = level2_listener(8.0, kLonger, 2.0, 1.0, table, t, 1.0);
    CHECK(l2.p_longer == doctest::Approx(0.968465875934).epsilon(1e-10));
    CHECK(l2.p_tie == doctest::Approx(0.009508455736).epsilon(1e-10));
    CHECK(split(l2) == doctest::Approx(0.973220103802).epsilon(1e-10));
}

TEST_CASE("level-2 speaker trades persuasion against perceived bias") {
    auto table = build_world_table(default_world_prior());
    const BetaPrior bp = BetaPrior::uniform_grid(0, 10, 101);
    const Level2Tables t = level2_base_tables(table, kLonger, bp, 1.0);
    const StickSet w{{2, 4, 7, 8, 9}};

    auto modal = [&](double wc) {
        const SpeakerParams sp{1.0, 2.0, wc, 2};
        const ChoiceDist d = level2_speaker(w, kLonger, sp, table, t);
        size_t best = 0;
        for (size_t i = 1; i < d.size(); ++i)
            if (d[i].second > d[best].second) best = i;
        return d[best].first;
    };
    // the modal utterance flips from the strongest stick to an unassuming one
    // as the bias cost rises; the crossing sits near wc = 0.3159
    CHECK(modal(0.0) == 9.0);
    CHECK(modal(0.3158) == 9.0);
    CHECK(modal(0.3159) == 2.0);
    CHECK(modal(1.0) == 2.0);

    // at zero cost weight the level-2 speaker uses the joint-listener scores
    const SpeakerParams sp0{1.0, 2.0, 0.0, 2};
    const ChoiceDist d0 = level2_speaker(w, kLonger, sp0, table, t);
    double s = 0.0;
    for (auto& [v, p] : d0) s += p;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extreme speaker rationality concentrates on the best stick") {
    auto table = build_world_table(default_world_prior());
    const StickSet w{{2, 4, 7, 8, 9}};
    const ChoiceDist d = speaker_choice_dist(w, kLonger, SpeakerParams{1.0, 1e4, 0.0, 1}, table);
    for (auto& [v, p] : d) CHECK(p == doctest::Approx(v == 9.0 ? 1.0 : 0.0).epsilon(1e-12));

    // and the mirrored goal prefers the shortest
    const ChoiceDist ds = speaker_choice_dist(w, kShorter, SpeakerParams{1.0, 1e4, 0.0, 1}, table);
    for (auto& [v, p] : ds) CHECK(p == doctest::Approx(v == 2.0 ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("weak evidence effect uses the literal baseline, not the prior") {
    const WorldPrior p10 = sweep_world_prior();
    auto table = build_world_table(p10);

    // same code path at beta 0 makes the effect exactly zero...
    CHECK(effect_size(5.0, kLonger, 0.0, table) == 0.0);

    // ...whereas a prior baseline would already read +0.01925 there
    const PropPrior pp = proposition_prior(p10);
    const BeliefState lit = literal_listener(5.0, table);
    CHECK(pp.p_longer - lit.p_longer == doctest::Approx(0.01925).epsilon(1e-6));
}

TEST_CASE("effect size reference cell") {
    auto table = build_world_table(sweep_world_prior());
    CHECK(effect_size(8.0, kLonger, 100.0, table) ==
          doctest::Approx(0.310369015777).epsilon(1e-9));
}

TEST_CASE("criterion-3 style reversal at moderate bias") {
    auto table = build_world_table(default_world_prior());
    const BeliefState b = pragmatic_listener(6.0, kLonger, 2.26, table, 1.0);
    const PropPrior pp = proposition_prior(default_world_prior());
    // supportive evidence that lowers belief below the prior
    CHECK(b.p_longer < pp.p_longer - 0.02);
}

TEST_CASE("persuasive utility matches the literal goal probability") {
    const WorldPrior prior = default_world_prior();
    auto table = build_world_table(prior);
    const auto scores = literal_goal_log_table(*table, kLonger);
    for (size_t i = 0; i < prior.grid.values.size(); ++i)
        CHECK(persuasive_utility(prior.grid.values[i], kLonger, prior) ==
              doctest::Approx(scores[i]).epsilon(1e-14));
}

TEST_CASE("speaker alpha-beta product is the only degree of freedom") {
    auto table = build_world_table(default_world_prior());
    const StickSet w{{2, 4, 7, 8, 9}};
    const ChoiceDist a = speaker_choice_dist(w, kLonger, SpeakerParams{1.0, 3.0, 0.0, 1}, table);
    const ChoiceDist b = speaker_choice_dist(w, kLonger, SpeakerParams{0.5, 6.0, 0.0, 1}, table);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-12));
}

TEST_CASE("sequential update basics") {
    const WorldPrior prior = default_world_prior();
    const SpeakerParams params{1.0, 2.0, 0.0, 1};

    // one observation equals the single-shot listener
    const auto seq =
        sequential_update({{6.0, kLonger}}, ListenerKind::PRAGMATIC, params, prior);
    REQUIRE(seq.size() == 1);
    const BeliefState one = pragmatic_listener(6.0, kLonger, 2.0, prior, 1.0);
    CHECK(seq[0].p_longer == doctest::Approx(one.p_longer).epsilon(1e-12));
    CHECK(seq[0].p_tie == doctest::Approx(one.p_tie).epsilon(1e-12));

    // symmetric pair of literal reveals balances the claim exactly
    const auto lit = sequential_update({{9.0, kLonger}, {1.0, kShorter}},
                                       ListenerKind::LITERAL, SpeakerParams{}, prior);
    REQUIRE(lit.size() == 2);
    CHECK(lit[1].p_longer == doctest::Approx(lit[1].p_shorter).epsilon(1e-12));

    // exclusive picking: a repeated reveal pins the world to the double-copy
    // multiset, since the second stick comes from the remaining pool
    WorldPrior p2;
    p2.grid = make_range_grid(1, 5, 1, 3);
    p2.n = 2;
    const auto exc = sequential_update({{3.0, kLonger}, {3.0, kLonger}},
                                       ListenerKind::LITERAL, SpeakerParams{}, p2,
                                       SecondPick::EXCLUSIVE);
    REQUIRE(exc.size() == 2);
    CHECK(exc[1].p_tie == doctest::Approx(1.0).epsilon(1e-12));  // only {3,3} remains
    // the same pair under independent picks leaves other worlds alive
    const auto ind = sequential_update({{3.0, kLonger}, {3.0, kLonger}},
                                       ListenerKind::LITERAL, SpeakerParams{}, p2);
    CHECK(ind[1].p_tie < 1.0);
    CHECK(ind[1].p_longer > 0.0);

    // evidence no motivated speaker could ever show contradicts the model
    WorldPrior tiny;
    tiny.grid = make_range_grid(1, 3, 1, 2);
    tiny.n = 2;
    CHECK_THROWS_AS(sequential_update({{1.0, kLonger}}, ListenerKind::PRAGMATIC,
                                      SpeakerParams{1.0, 1.0, 0.0, 1}, tiny),
                    EmptySupport);
}

TEST_CASE("beta prior helpers") {
    const BetaPrior u = BetaPrior::uniform_grid(0, 10, 101);
    CHECK(u.values.size() == 101);
    CHECK(u.values.front() == 0.0);
    CHECK(u.values.back() == 10.0);
    CHECK(u.values[50] == doctest::Approx(5.0).epsilon(1e-12));
    u.validate();

    const BetaPrior pm = BetaPrior::point_mass(2.26);
    pm.validate();
    CHECK(pm.values.size() == 1);

    BetaPrior bad;
    bad.values = {1.0};
    bad.weights = {0.5};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("listener errors") {
    const WorldPrior prior = default_world_prior();
    CHECK_THROWS_AS(literal_listener(4.5, prior), EmptySupport);
    CHECK_THROWS_AS(pragmatic_listener(12.0, kLonger, 1.0, prior, 1.0), EmptySupport);
}
