#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aiet/map.hpp"

using namespace aiet;

namespace {
Scalar S(const char* s) { return Scalar::parse(s); }
}  // namespace

TEST_CASE("identity and rotation basics") {
    Aiet id = Aiet::identity();
    CHECK(id.is_identity());
    CHECK(id.eval(S("1/3")) == S("1/3"));

    Aiet r = Aiet::rotation(S("1/3"));
    CHECK(r.eval(S("1/2")) == S("5/6"));
    CHECK(r.eval(S("5/6")) == S("1/6"));
    CHECK(r.piece_count() == 2);
    CHECK(power(r, 3) == id);
    CHECK(r.inverse() == Aiet::rotation(S("2/3")));
    CHECK(compose(r, r.inverse()) == id);
    CHECK(Aiet::rotation(S("0")) == id);
    CHECK_THROWS_AS(Aiet::rotation(S("1")), ValidationError);
}

TEST_CASE("from_pieces validation") {
    // Image intervals must tile [0,1) exactly.
    CHECK_THROWS_AS(Aiet::from_pieces({{S("0"), S("2"), S("0")}}), ValidationError);
    CHECK_THROWS_AS(Aiet::from_pieces({{S("1/2"), S("1"), S("0")}}), ValidationError);
    CHECK_THROWS_AS(
        Aiet::from_pieces({{S("0"), S("1"), S("0")}, {S("1/2"), S("-1"), S("1")}}),
        ValidationError);
    // Overlapping images.
    CHECK_THROWS_AS(
        Aiet::from_pieces({{S("0"), S("1"), S("0")}, {S("1/2"), S("1"), S("-1/4")}}),
        ValidationError);
    CHECK_NOTHROW(Aiet::from_pieces(
        {{S("0"), S("1"), S("1/2")}, {S("1/2"), S("1"), S("-1/2")}}));
}

TEST_CASE("canonical form merges equal adjacent laws") {
    Aiet f = Aiet::from_pieces(
        {{S("0"), S("1"), S("0")}, {S("1/2"), S("1"), S("0")}});
    CHECK(f.is_identity());
    CHECK(f.piece_count() == 1);
}

TEST_CASE("restricted rotation") {
    Aiet f = Aiet::restricted_rotation(S("1/4"), S("3/4"), S("1/6"));
    CHECK(f.eval(S("0")) == S("0"));
    CHECK(f.eval(S("1/4")) == S("5/12"));
    CHECK(f.eval(S("3/4") - S("1/6")) == S("1/4"));
    CHECK(f.eval(S("7/8")) == S("7/8"));
    CHECK(f.support() == std::vector<Interval>{{S("1/4"), S("3/4")}});
    Shape sh = f.classify_shape();
    CHECK(sh.kind == ShapeKind::RestrictedRotation);
    CHECK(sh.delta == S("1/6"));
    CHECK_THROWS_AS(Aiet::restricted_rotation(S("1/4"), S("3/4"), S("2/3")), ValidationError);
}

TEST_CASE("iet from lengths") {
    // Swap of two intervals of lengths 1/3, 2/3 is rotation by 2/3.
    Aiet f = Aiet::iet_from_lengths({2, 1}, {S("1/3"), S("2/3")});
    CHECK(f == Aiet::rotation(S("2/3")));
    // Three-interval exchange (1,2,3) -> (3,1,2).
    Aiet g = Aiet::iet_from_lengths({3, 1, 2}, {S("1/2"), S("1/4"), S("1/4")});
    CHECK(g.is_iet());
    CHECK(g.eval(S("0")) == S("1/4"));       // first interval lands second
    CHECK(g.eval(S("1/2")) == S("3/4"));     // second interval lands third
    CHECK(g.eval(S("3/4")) == S("0"));       // third interval lands first
    CHECK_THROWS_AS(Aiet::iet_from_lengths({1, 1}, {S("1/2"), S("1/2")}), ValidationError);
    CHECK_THROWS_AS(Aiet::iet_from_lengths({1, 2}, {S("1/2"), S("1/3")}), ValidationError);
}

TEST_CASE("two slope map") {
    Aiet b = Aiet::two_slope_map(S("2"), S("1/2"));
    REQUIRE(b.piece_count() == 2);
    CHECK(b.pieces()[0] == Piece{S("0"), S("2"), S("1/3")});
    CHECK(b.pieces()[1].left == S("1/3"));
    CHECK(b.pieces()[1].slope == S("1/2"));
    CHECK(b.eval(S("1/3")) == S("0"));
    CHECK(b.is_circle_homeo());
    CHECK(b.classify_shape().kind == ShapeKind::PLHomeo);

    Aiet c = Aiet::two_slope_map(S("2"), S("1/3"));
    CHECK(c.pieces()[1].left == S("2/5"));
    CHECK(c.pieces()[0] == Piece{S("0"), S("2"), S("1/5")});
    CHECK(c.is_circle_homeo());

    CHECK_THROWS_AS(Aiet::two_slope_map(S("2"), S("3")), ValidationError);
    CHECK_THROWS_AS(Aiet::two_slope_map(S("1"), S("1/2")), ValidationError);
}

TEST_CASE("composition law and inverse on random words") {
    std::vector<Aiet> gens{Aiet::rotation(S("1/3")),
                           Aiet::two_slope_map(S("2"), S("1/2")),
                           Aiet::restricted_rotation(S("0"), S("1/2"), S("1/5"))};
    std::mt19937 rng(7);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<long> xs(0, 96);
    for (int trial = 0; trial < 40; ++trial) {
        Aiet w = Aiet::identity();
        std::vector<const Aiet*> word;
        for (int k = 0; k < 5; ++k) {
            const Aiet& g = gens[pick(rng)];
            word.push_back(&g);
            w = compose(g, w);
        }
        Scalar x(xs(rng), 97);
        Scalar direct = x;
        for (const Aiet* g : word) direct = g->eval(direct);
        CHECK(w.eval(x) == direct);
        CHECK(compose(w.inverse(), w).is_identity());
    }
}

TEST_CASE("power and guard") {
    Aiet r = Aiet::rotation(Scalar::sqrt_of(2) - Scalar(1));
    CHECK(compose(power(r, 3), power(r, -3)).is_identity());
    CHECK(power(r, 0).is_identity());
    CHECK(power(r, -1) == r.inverse());

    // A map with linearly growing piece counts trips a small guard.
    Aiet f = Aiet::from_pieces(
        {{S("0"), S("1/2"), S("0")}, {S("1/2"), S("3/2"), S("-1/2")}});
    CHECK_THROWS_AS(power(f, 40, 8), GuardExceeded);
}

TEST_CASE("break points of a rotation") {
    Scalar alpha = Scalar::sqrt_of(2) - Scalar(1);
    Aiet r = Aiet::rotation(alpha);
    BreakData bd = r.breakpoints();
    CHECK(bd.bp0 == std::vector<Scalar>{S("0"), Scalar(1) - alpha});
    CHECK(bd.bp1 == std::vector<Scalar>{S("0")});  // slopes are all 1
    CHECK(bd.delta[0].second == S("0"));           // circle-continuous at 0
    CHECK(bd.delta[1].second == S("-1"));
    CHECK(r.sigma_at(S("0")).is_one());
    CHECK(r.is_circle_homeo());
}

TEST_CASE("break data of the two slope map") {
    Aiet b = Aiet::two_slope_map(S("2"), S("1/2"));
    CHECK(b.bp_all() == std::vector<Scalar>{S("0"), S("1/3")});
    CHECK(b.sigma_at(S("0")) == S("4"));    // D+ at 0 over D- at 1
    CHECK(b.sigma_at(S("1/3")) == S("1/4"));
    CHECK(b.delta_at(S("1/3")) == S("-1"));  // interval jump of the circle wrap
}

TEST_CASE("conjugation moves dynamics") {
    Aiet r = Aiet::rotation(S("1/4"));
    Aiet h = Aiet::two_slope_map(S("2"), S("1/2"));
    Aiet g = conjugate(r, h);
    CHECK(power(g, 4).is_identity());
    CHECK(g.eval(h.eval(S("1/8"))) == h.eval(r.eval(S("1/8"))));
}

TEST_CASE("restrict and embed are inverse") {
    Interval I{S("1/4"), S("3/4")};
    Aiet g = Aiet::rotation(S("1/3"));
    Aiet f = embed_from_unit(g, I);
    CHECK(f == Aiet::restricted_rotation(S("1/4"), S("3/4"), S("1/6")));
    CHECK(restrict_to_unit(f, I) == g);

    Aiet b = Aiet::two_slope_map(S("2"), S("1/2"));
    Aiet fb = embed_from_unit(b, I);
    CHECK(fb.support() == std::vector<Interval>{I});
    CHECK(fb.classify_shape().kind == ShapeKind::RestrictedPLHomeo);
    CHECK(restrict_to_unit(fb, I) == b);
    CHECK(fb.eval(S("1/8")) == S("1/8"));
}

TEST_CASE("shape classification of IETs") {
    // Rotations presented as 2-IETs classify as circle homeomorphisms.
    CHECK(Aiet::rotation(S("1/3")).classify_shape().kind == ShapeKind::PLHomeo);

    // This 3-exchange is a rotation of [1/4,1) in disguise; the most specific
    // verdict wins.
    Aiet f = Aiet::iet_from_lengths({1, 3, 2}, {S("1/4"), S("1/4"), S("1/2")});
    Shape sf = f.classify_shape();
    CHECK(sf.kind == ShapeKind::RestrictedRotation);
    CHECK(sf.support == Interval{S("1/4"), S("1")});
    CHECK(sf.delta == S("1/2"));

    // A genuine 3-exchange with two interior discontinuities stays an IET.
    Aiet g = Aiet::iet_from_lengths({3, 2, 1}, {S("1/2"), S("1/3"), S("1/6")});
    CHECK(g.classify_shape().kind == ShapeKind::IET);
    CHECK_FALSE(g.is_circle_homeo());
}

TEST_CASE("string format") {
    Aiet b = Aiet::two_slope_map(S("2"), S("1/2"));
    CHECK(b.str() == "0 | 2 | 1/3\n1/3 | 1/2 | -1/6");
}
