#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aiet/dynamics.hpp"

using namespace aiet;

namespace {
Scalar S(const char* s) { return Scalar::parse(s); }

// One attracting fixed point at 0 (right slope 1/2, left slope 3/2 through the
// circle convention); the break orbit of 1/2 never returns.
Aiet contracting_map() {
    return Aiet::from_pieces(
        {{S("0"), S("1/2"), S("0")}, {S("1/2"), S("3/2"), S("-1/2")}});
}
}  // namespace

TEST_CASE("fixed points of simple maps") {
    CHECK(fixed_points(Aiet::identity()).intervals ==
          std::vector<Interval>{{S("0"), S("1")}});
    CHECK(fixed_points(Aiet::rotation(S("1/3"))).empty());

    FixedRegion r = fixed_points(contracting_map());
    CHECK(r.intervals.empty());
    CHECK(r.points == std::vector<Scalar>{S("0")});

    FixedRegion rr = fixed_points(Aiet::restricted_rotation(S("1/4"), S("3/4"), S("1/6")));
    CHECK(rr.intervals == std::vector<Interval>{{S("0"), S("1/4")}, {S("3/4"), S("1")}});
    CHECK(rr.points.empty());
}

TEST_CASE("periodic structure of a rational rotation") {
    PeriodicStructure ps = periodic_structure(Aiet::rotation(S("1/3")), {.max_period = 8});
    CHECK(ps.conclusive);
    CHECK(ps.period == 3);
    CHECK(ps.fixed_intervals == std::vector<Interval>{{S("0"), S("1")}});
    CHECK(ps.isolated_points.empty());
    CHECK(ps.semi_hyperbolic.empty());
}

TEST_CASE("periodic structure of an irrational rotation") {
    Aiet r = Aiet::rotation(Scalar::sqrt_of(2) - Scalar(1));
    PeriodicStructure ps = periodic_structure(r, {.max_period = 20});
    CHECK(ps.conclusive);
    CHECK(ps.period == 0);
    CHECK(ps.per_empty());
}

TEST_CASE("semi-hyperbolic fixed point on both sides") {
    PeriodicStructure ps = periodic_structure(contracting_map(), {.max_period = 6});
    CHECK(ps.conclusive);
    CHECK(ps.period == 1);
    CHECK(ps.isolated_points == std::vector<Scalar>{S("0")});
    REQUIRE(ps.semi_hyperbolic.size() == 2);
    for (const SemiHyperbolicPoint& p : ps.semi_hyperbolic) {
        CHECK(p.point == S("0"));
        CHECK(p.period == 1);
        CHECK(p.derivative == (p.side == Side::Right ? S("1/2") : S("3/2")));
    }
}

TEST_CASE("orbit segment of an irrational rotation") {
    Scalar alpha = Scalar::sqrt_of(2) - Scalar(1);
    OrbitData od = orbit_segments(Aiet::rotation(alpha));
    CHECK(od.periodic.empty());
    REQUIRE(od.segments.size() == 1);
    const OrbitSegment& s = od.segments[0];
    CHECK(s.initial == Scalar(1) - alpha);  // 2 - sqrt(2)
    CHECK(s.length == 1);
    CHECK(s.points == std::vector<Scalar>{Scalar(1) - alpha, S("0")});
    CHECK(s.hits == s.points);
    CHECK(s.delta_inv.is_zero());
    CHECK(s.pi_inv.is_one());
}

TEST_CASE("growth dichotomy: bounded cases") {
    GrowthClass g = classify_bp_growth(Aiet::rotation(Scalar::sqrt_of(2) - Scalar(1)));
    CHECK(g.kind == GrowthClass::Bounded);
    CHECK(g.bound == 2);

    // The two-slope circle homeomorphism: the jump at the wrap point cancels
    // against the jump at 0 along the orbit, so growth stays bounded.
    GrowthClass b = classify_bp_growth(Aiet::two_slope_map(S("2"), S("1/3")));
    CHECK(b.kind == GrowthClass::Bounded);
    CHECK(b.bound == 2);
    for (long n : bp_count_sequence(Aiet::two_slope_map(S("2"), S("1/3")), 12))
        CHECK(n <= b.bound);
}

TEST_CASE("growth dichotomy: linear case") {
    Aiet f = contracting_map();
    GrowthClass g = classify_bp_growth(f);
    CHECK(g.kind == GrowthClass::Linear);
    REQUIRE(g.witness.has_value());
    CHECK(g.witness->initial == S("1/2"));
    CHECK(g.witness->length == 0);
    CHECK(g.witness->pi_inv == S("3"));

    std::vector<long> counts = bp_count_sequence(f, 8);
    for (size_t i = 0; i < counts.size(); ++i) CHECK(counts[i] == (long)i + 2);
}

TEST_CASE("periodic break points are reported with their period") {
    // Rotation by 1/2 of the left half, identity elsewhere: the break orbit
    // {1/8, 3/8} has period 2 under the restricted rotation.
    Aiet f = Aiet::restricted_rotation(S("0"), S("1/2"), S("1/4"));
    OrbitData od = orbit_segments(f);
    CHECK(od.segments.empty());
    REQUIRE(od.periodic.size() == 3);
    CHECK(od.periodic[0].point == S("0"));
    CHECK(od.periodic[0].period == 2);
    CHECK(od.periodic[1].point == S("1/4"));
    CHECK(od.periodic[1].period == 2);
    CHECK(od.periodic[2].point == S("1/2"));
    CHECK(od.periodic[2].period == 1);

    GrowthClass g = classify_bp_growth(f);
    CHECK(g.kind == GrowthClass::Bounded);
}

TEST_CASE("bp counts of powers match the dichotomy bound") {
    Scalar alpha = Scalar::sqrt_of(2) - Scalar(1);
    std::vector<long> counts = bp_count_sequence(Aiet::rotation(alpha), 10);
    for (long n : counts) CHECK(n <= 2);
}

TEST_CASE("delta cocycle identity") {
    Aiet b = Aiet::two_slope_map(S("2"), S("1/3"));
    auto [lhs, rhs] = lemma_delta2_check(b, S("2/5"), 3, 1);
    CHECK(lhs == rhs);
    auto [l2, r2] = lemma_delta2_check(b, S("2/5"), 5, 3);
    CHECK(l2 == r2);
    CHECK_THROWS_AS(lemma_delta2_check(b, S("2/5"), 3, 3), ValidationError);
}

TEST_CASE("results are stable under a tiny exploration horizon") {
    Aiet r = Aiet::rotation(Scalar::sqrt_of(2) - Scalar(1));
    GrowthClass g = classify_bp_growth(r, {.horizon = 1});
    CHECK(g.kind == GrowthClass::Bounded);
    CHECK(g.bound == 2);
}