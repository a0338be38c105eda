#include <doctest.h>

#include <cmath>

#include "stick/adjust.hpp"
#include "stick/common.hpp"

using namespace stick;

namespace {

AdjustParams aa_params(double c0 = 0.5) {
    AdjustParams p;
    p.variant = AdjustVariant::AA;
    p.reference = 0.0;
    p.initial_belief = c0;
    return p;
}

AdjustParams mas_params(double r, double c0 = 0.5) {
    AdjustParams p;
    p.variant = AdjustVariant::MAS;
    p.reference = r;
    p.initial_belief = c0;
    return p;
}

}  // namespace

TEST_CASE("logistic evidence strength") {
    const StrengthMap m{1.0, 5.0};
    // B = 1, center 5: strength(6) = 1/(1+e^-1) - 1/2
    CHECK(evidence_strength(6.0, m) ==
          doctest::Approx(1.0 / (1.0 + std::exp(-1.0)) - 0.5).epsilon(1e-14));
    CHECK(evidence_strength(5.0, m) == doctest::Approx(0.0).epsilon(1e-14));
    // odd around the center
    const StrengthMap m2{2.0, 5.0};
    for (double d : {0.5, 1.0, 2.5, 4.0})
        CHECK(evidence_strength(5.0 + d, m2) ==
              doctest::Approx(-evidence_strength(5.0 - d, m2)).epsilon(1e-12));
    // steeper curves saturate toward the half-unit bounds
    CHECK(evidence_strength(9.0, m2) > evidence_strength(9.0, m));
    CHECK(evidence_strength(9.0, m2) < 0.5);
    CHECK(evidence_strength(9.0, m2) > 0.499);
    CHECK(evidence_strength(9.0, StrengthMap{10.0, 5.0}) <= 0.5);
    CHECK_THROWS_AS(evidence_strength(5.0, StrengthMap{-1.0, 5.0}), ValidationError);
}

TEST_CASE("adjustment closed forms") {
    const AdjustParams aa = aa_params();
    // C0 = 0.5, s = 0.2, R = 0: w = 1 - 0.5, C1 = 0.5 + 0.5*0.2 = 0.6
    CHECK(adjust_update(0.5, 0.2, aa) == doctest::Approx(0.6).epsilon(1e-14));
    // s = R leaves the belief unchanged, whatever the weight
    CHECK(adjust_update(0.5, 0.0, aa) == 0.5);
    CHECK(adjust_update(0.73, 0.4, mas_params(0.4, 0.73)) == 0.73);
    // s = -0.2: w = C_prev = 0.5, C1 = 0.5 + 0.5*(-0.2) = 0.4
    CHECK(adjust_update(0.5, -0.2, aa) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("adjustment clamps to the unit interval") {
    // 0.9 + 0.1*(0.5 - (-0.9)) = 1.04 -> 1
    CHECK(adjust_update(0.9, 0.5, mas_params(-0.9)) == 1.0);
    // 0.1 + 0.1*(-0.5 - 0.9) = -0.04 -> 0
    CHECK(adjust_update(0.1, -0.5, mas_params(0.9)) == 0.0);
    CHECK_THROWS_AS(adjust_update(1.2, 0.1, aa_params()), ValidationError);
}

TEST_CASE("anchor-and-adjust never decreases on supportive evidence") {
    const AdjustParams aa = aa_params();
    RandomStream rng(20260819);
    for (int i = 0; i < 10000; ++i) {
        const double c = rng.uniform01();
        const double s = rng.uniform01() * 0.5;  // s > 0 is supportive with R = 0
        const double c1 = adjust_update(c, s, aa);
        REQUIRE(c1 >= c);
        REQUIRE(c1 >= 0.0);
        REQUIRE(c1 <= 1.0);
    }
}

TEST_CASE("MAS reference point flips the supportive region") {
    // with R = 0.3, s = 0.2 counts against the claim
    const double c1 = adjust_update(0.5, 0.2, mas_params(0.3));
    CHECK(c1 < 0.5);
    CHECK(c1 == doctest::Approx(0.5 + 0.5 * (0.2 - 0.3)).epsilon(1e-14));
}

TEST_CASE("adjustment sequences") {
    const StrengthMap m{1.5, 5.0};
    const AdjustParams p = mas_params(0.1);
    const auto seq = adjust_sequence({7.0, 3.0}, m, p);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0] == 0.5);
    CHECK(seq[1] ==
          doctest::Approx(adjust_update(0.5, evidence_strength(7.0, m), p)).epsilon(1e-14));
    CHECK(seq[2] ==
          doctest::Approx(adjust_update(seq[1], evidence_strength(3.0, m), p)).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    AdjustParams p;
    p.variant = AdjustVariant::AA;
    p.reference = 0.2;
    CHECK_THROWS_AS(p.validate(), ValidationError);  // AA pins R = 0

    AdjustParams q;
    q.variant = AdjustVariant::MAS;
    q.reference = 1.5;
    CHECK_THROWS_AS(q.validate(), ValidationError);

    AdjustParams r;
    r.initial_belief = -0.1;
    CHECK_THROWS_AS(r.validate(), ValidationError);
}
