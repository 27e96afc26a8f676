// Acceptance suite: end-to-end checks of the library against its quantitative
// targets.  Prints one PASS/FAIL line per criterion; exit code is the number
// of failures.  All tolerances are pinned here as constants.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "aiet/distortion.hpp"

using namespace aiet;

namespace {

// Pinned tolerances and sizes.
constexpr int kAlgebraPairs = 1000;
constexpr double kAlgebraBudgetSec = 30.0;
constexpr int kCocyclePairs = 500;
constexpr int kGrowthMaps = 200;
constexpr long kGrowthN = 200;
constexpr int kMinakawaRuns = 50;
constexpr long kRhoIters = 1000000;
constexpr double kRhoTol = 1e-4;
constexpr double kBoshTol = 1e-9;
constexpr long kBoshGrid = 1000;
constexpr double kRhoBudgetSec = 10.0;
constexpr long kDriftN = 100000;
constexpr double kDriftTol = 1e-2;
constexpr int kRemovalInstances = 20;
constexpr long kBallRadius = 6;
constexpr int kClassifyMaps = 100;
constexpr double kClassifyInconclusiveMax = 0.20;
constexpr double kClassifyBudgetSec = 300.0;

std::mt19937 rng(0x5eed1234);

long rand_int(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Scalar rand_rat(long max_den) {
    long den = rand_int(2, max_den);
    return Scalar(rand_int(1, den - 1), den);
}

/// A random rational AIET with exactly k pieces: random domain lengths mapped
/// affinely onto randomly permuted image intervals of random lengths.
Aiet random_aiet(int k) {
    std::vector<Scalar> dl, il;
    Scalar dsum(0), isum(0);
    for (int j = 0; j < k; ++j) {
        dl.push_back(Scalar(rand_int(1, 9)));
        il.push_back(Scalar(rand_int(1, 9)));
        dsum = dsum + dl.back();
        isum = isum + il.back();
    }
    for (int j = 0; j < k; ++j) {
        dl[j] = dl[j] / dsum;
        il[j] = il[j] / isum;
    }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<Scalar> image_start(k, Scalar(0));
    for (int j = 0; j < k; ++j)
        for (int j2 = 0; j2 < k; ++j2)
            if (perm[j2] < perm[j]) image_start[j] = image_start[j] + il[j2];

    std::vector<Piece> pieces;
    Scalar left(0);
    for (int j = 0; j < k; ++j) {
        Scalar slope = il[j] / dl[j];
        pieces.push_back(Piece{left, slope, image_start[j] - slope * left});
        left = left + dl[j];
    }
    return Aiet::from_pieces(pieces);
}

/// A random rational PL circle homeomorphism via prescribed jumps.
Aiet random_pl_homeo(int breaks) {
    std::vector<Scalar> bs{Scalar(0)};
    while (static_cast<int>(bs.size()) < breaks) {
        Scalar b = rand_rat(13);
        if (std::find(bs.begin(), bs.end(), b) == bs.end()) bs.push_back(b);
    }
    std::sort(bs.begin(), bs.end());
    std::vector<Scalar> js{Scalar(1)};
    Scalar prod(1);
    for (size_t i = 1; i < bs.size(); ++i) {
        Scalar j = rand_rat(9) + Scalar(rand_int(0, 2));
        js.push_back(j);
        prod = prod * j;
    }
    js[0] = prod.inverse();
    return pl_from_jumps(JumpSpec{bs, js});
}

bool contains(const std::vector<Scalar>& xs, const Scalar& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

Scalar d_plus_at(const Aiet& f, const Scalar& y) {  // y in [0,1)
    return f.eval_sided(y).d_plus;
}

Scalar d_minus_at(const Aiet& f, const Scalar& y) {  // y in (0,1]
    return f.eval_sided(y == Scalar(1) ? Scalar(0) : y).d_minus;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

bool exact_algebra() {
    auto t0 = std::chrono::steady_clock::now();
    for (int it = 0; it < kAlgebraPairs; ++it) {
        Aiet f = random_aiet(static_cast<int>(rand_int(2, 8)));
        Aiet g = random_aiet(static_cast<int>(rand_int(2, 8)));
        Aiet h = compose(f, g);
        Aiet finv = f.inverse();

        if (!compose(f, finv).is_identity()) return false;
        if (!compose(finv, f).is_identity()) return false;

        std::vector<Scalar> sample = h.bp0();
        for (int j = 0; j < 5; ++j) sample.push_back(rand_rat(37));
        for (const Scalar& x : sample)
            if (h.eval(x) != f.eval(g.eval(x))) return false;

        // BP0(f o g) within BP0(g) union g^-1(BP0(f)).
        Aiet ginv = g.inverse();
        std::vector<Scalar> allowed = g.bp0();
        for (const Scalar& x : f.bp0()) allowed.push_back(ginv.eval(x));
        for (const Scalar& x : h.bp0())
            if (!contains(allowed, x)) return false;

        // BP0(f^-1) = f(BP0(f)), up to the convention point 0.
        std::vector<Scalar> lhs = finv.bp0(), rhs;
        for (const Scalar& x : f.bp0()) rhs.push_back(f.eval(x));
        lhs.push_back(Scalar(0));
        rhs.push_back(Scalar(0));
        for (const Scalar& x : lhs)
            if (!contains(rhs, x)) return false;
        for (const Scalar& x : rhs)
            if (!contains(lhs, x)) return false;
    }
    return seconds_since(t0) < kAlgebraBudgetSec;
}

// ---------------------------------------------------------------- criterion 2

bool jump_calculus() {
    for (int it = 0; it < kCocyclePairs; ++it) {
        Aiet f = random_aiet(static_cast<int>(rand_int(2, 6)));
        Aiet g = random_pl_homeo(static_cast<int>(rand_int(2, 4)));
        Aiet h = compose(f, g);
        Aiet ginv = g.inverse();

        // sigma cocycle for PL-homeomorphism g, at every candidate break point.
        std::vector<Scalar> xs = g.bp1();
        for (const Scalar& b : f.bp1()) xs.push_back(ginv.eval(b));
        for (int j = 0; j < 3; ++j) xs.push_back(rand_rat(23));
        for (const Scalar& x : xs)
            if (h.sigma_at(x) != f.sigma_at(g.eval(x)) * g.sigma_at(x)) return false;

        // Four-factor law at every break point of the composition, with g
        // replaced by a general AIET.
        Aiet g2 = random_aiet(static_cast<int>(rand_int(2, 6)));
        Aiet h2 = compose(f, g2);
        for (const Scalar& x : h2.bp_all()) {
            Scalar gp = g2.eval(x);
            Scalar gm = x.is_zero() ? g2.eval_left(Scalar(1)) : g2.eval_left(x);
            Scalar lhs = h2.sigma_at(x);
            Scalar rhs = (d_plus_at(f, gp) * g2.eval_sided(x).d_plus) /
                         (d_minus_at(f, gm) * g2.eval_sided(x).d_minus);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3

bool growth_audit() {
    DynamicsConfig cfg;
    for (int it = 0; it < kGrowthMaps; ++it) {
        Aiet f = random_aiet(static_cast<int>(rand_int(2, 6)));
        GrowthClass gc;
        try {
            gc = classify_bp_growth(f, cfg);
        } catch (const HorizonExceeded&) {
            continue;
        }
        if (gc.kind == GrowthClass::Inconclusive) continue;
        std::vector<long> counts = bp_count_sequence(f, kGrowthN);
        if (gc.kind == GrowthClass::Bounded) {
            for (long c : counts)
                if (c > gc.bound) return false;
        } else {
            long offset = gc.witness ? gc.witness->length : 0;
            for (long n = 1; n <= kGrowthN; ++n)
                if (counts[n - 1] < n - offset) return false;
        }

        // Delta_{f^n}(f^{-k}(a)) = Delta_{f^{n-k}}(a) on sampled triples.
        try {
            OrbitData od = orbit_segments(f, cfg);
            for (const OrbitSegment& seg : od.segments) {
                for (int t = 0; t < 3; ++t) {
                    long k = rand_int(0, 3);
                    long n = k + rand_int(1, 3);
                    auto [a_side, b_side] = lemma_delta2_check(f, seg.initial, n, k);
                    if (a_side != b_side) return false;
                }
            }
        } catch (const HorizonExceeded&) {
            continue;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4

bool minakawa_roundtrip() {
    Scalar alpha = Scalar::sqrt_of(2) - Scalar(1);
    Aiet rot = Aiet::rotation(alpha);
    for (int it = 0; it < kMinakawaRuns; ++it) {
        Aiet h0 = random_pl_homeo(static_cast<int>(rand_int(2, 4)));
        MinakawaResult mr = minakawa_conjugate(conjugate(rot, h0));
        if (mr.b.slopes() != std::vector<Scalar>{Scalar(1)}) return false;
        if (!(mr.b == rot)) return false;
    }

    int crafted = 0;
    while (crafted < kMinakawaRuns) {
        Scalar l1 = Scalar(rand_int(2, 5));
        Scalar l2 = Scalar(1, rand_int(2, 5));
        Aiet f = conjugate(Aiet::two_slope_map(l1, l2),
                           random_pl_homeo(static_cast<int>(rand_int(2, 3))));
        MinakawaResult mr = minakawa_conjugate(f);
        if (mr.product == Scalar(1)) continue;  // not a Pi != 1 instance
        ++crafted;
        if (mr.b.slopes().size() != 2) return false;
        Scalar w = mr.b.inverse().eval(Scalar(0));
        for (const Scalar& x : mr.b.bp1())
            if (!x.is_zero() && x != w) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5

bool rotation_number_check() {
    auto t0 = std::chrono::steady_clock::now();
    Aiet b = Aiet::two_slope_map(Scalar(2), Scalar(1, 3));
    double rho_hat = rotation_number(b, kRhoIters);
    double rho = std::log(2.0) / std::log(6.0);
    if (std::fabs(rho_hat - rho) > kRhoTol) return false;
    BoshernitzanReport rep = verify_boshernitzan(b, kBoshTol, kBoshGrid);
    if (!rep.pass) return false;
    return seconds_since(t0) < kRhoBudgetSec;
}

// ---------------------------------------------------------------- criterion 6

bool drift_check() {
    Aiet b = Aiet::two_slope_map(Scalar(2), Scalar(1, 3));
    DriftResult d = exponent_drift(b, {2, 3}, Scalar(0), kDriftN);
    double rho = std::log(2.0) / std::log(6.0);
    return std::fabs(d.drift[0] - (1.0 - rho)) < kDriftTol &&
           std::fabs(d.drift[1] - (-rho)) < kDriftTol;
}

// ---------------------------------------------------------------- criterion 7

bool theorem_th_roundtrip() {
    Scalar a1 = Scalar::sqrt_of(2) - Scalar(1);           // angle on [0,1/2)
    Scalar a2 = Scalar::sqrt_of(2) / Scalar(8);           // angle on [1/2,1)
    Aiet f0 = compose(
        Aiet::restricted_rotation(Scalar(0), Scalar(1, 2), a1 / Scalar(2)),
        Aiet::restricted_rotation(Scalar(1, 2), Scalar(1), a2 / Scalar(2)));

    for (int it = 0; it < 5; ++it) {
        std::vector<int> perm{1, 2, 3, 4};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Scalar> lens;
        Scalar sum(0);
        for (int j = 0; j < 4; ++j) {
            lens.push_back(Scalar(rand_int(1, 6)));
            sum = sum + lens.back();
        }
        for (Scalar& l : lens) l = l / sum;
        Aiet e = Aiet::iet_from_lengths(perm, lens);
        Aiet f = conjugate(f0, e);

        ThNormalForm nf = normal_form_theorem_th(f);
        if (!nf.all_rotations || nf.components.size() != 2) return false;
        std::vector<Scalar> angles{nf.components[0].angle, nf.components[1].angle};
        std::sort(angles.begin(), angles.end());
        std::vector<Scalar> expected{a1, a2};
        std::sort(expected.begin(), expected.end());
        if (angles != expected) return false;

        Aiet product = Aiet::identity();
        for (const ThComponent& c : nf.components) product = compose(product, c.map);
        if (!(conjugate(power(f, nf.power), nf.conjugator) == product)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8

bool pair_removal() {
    Scalar alpha = Scalar::sqrt_of(2) - Scalar(1);
    int done = 0, attempts = 0;
    while (done < kRemovalInstances && attempts < 40 * kRemovalInstances) {
        ++attempts;
        int k = static_cast<int>(rand_int(3, 5));
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Scalar> lens;
        Scalar sum(0);
        for (int j = 0; j < k; ++j) {
            lens.push_back(Scalar(rand_int(1, 7)));
            sum = sum + lens.back();
        }
        for (Scalar& l : lens) l = l / sum;
        Aiet g = conjugate(Aiet::rotation(alpha), Aiet::iet_from_lengths(perm, lens));

        PairStructure ps;
        Aiet F;
        try {
            auto [q, Fq] = pair_power(g);
            F = Fq;
            PairCheck chk = pair_property_check(F);
            if (!std::holds_alternative<PairStructure>(chk)) continue;
            ps = std::get<PairStructure>(chk);
        } catch (const HorizonExceeded&) {
            continue;
        }
        if (!ps.has_removable()) continue;
        ++done;

        for (size_t i = 0; i < ps.pairs.size(); ++i) {
            if (!ps.pairs[i].removable) continue;
            Aiet E = removal_conjugator(F, ps, i);
            Aiet G = conjugate(F, E);
            if (G.bp0().size() + 2 > F.bp0().size()) return false;
            if (!std::holds_alternative<PairStructure>(pair_property_check(G))) return false;
        }
    }
    return done == kRemovalInstances;
}

// ---------------------------------------------------------------- criterion 9

bool certificates_vs_ball(const Aiet& f, const Certificate& cert) {
    GeneratingSet gens{{f}};
    std::vector<Aiet> targets;
    for (long n = 1; n <= kBallRadius; ++n) targets.push_back(power(f, n));
    std::vector<std::optional<long>> lens = ball_word_lengths(gens, kBallRadius, targets);
    for (long n = 1; n <= kBallRadius; ++n) {
        if (!lens[n - 1]) continue;
        double bound = cert.coefficient * static_cast<double>(n - cert.offset);
        if (static_cast<double>(*lens[n - 1]) < bound - 1e-12) return false;
    }
    return true;
}

bool certificate_soundness() {
    // Hyperbolic fixed point at 0: kappa = 1.
    Aiet hyper = Aiet::from_pieces({Piece{Scalar(0), Scalar(2), Scalar(0)},
                                    Piece{Scalar(1, 4), Scalar(2, 3), Scalar(1, 3)}});
    auto c1 = semi_hyperbolic_certificate(hyper, GeneratingSet{{hyper}});
    if (!c1 || std::fabs(c1->coefficient - 1.0) > 1e-12) return false;
    if (!certificates_vs_ball(hyper, *c1)) return false;

    // Single-jump map with linear break-point growth: kappa = 1/2.
    Aiet single = Aiet::from_pieces({Piece{Scalar(0), Scalar(1, 2), Scalar(0)},
                                     Piece{Scalar(1, 2), Scalar(3, 2), Scalar(-1, 2)}});
    auto c2 = bp_growth_certificate(single, GeneratingSet{{single}});
    if (!c2 || std::fabs(c2->coefficient - 0.5) > 1e-12) return false;
    return certificates_vs_ball(single, *c2);
}

// --------------------------------------------------------------- criterion 10

bool classify_audit() {
    auto t0 = std::chrono::steady_clock::now();
    int inconclusive = 0;
    for (int it = 0; it < kClassifyMaps; ++it) {
        Aiet f = random_aiet(static_cast<int>(rand_int(2, 6)));
        try {
            ClassifyResult r = classify_rational(f);
            if (r.verdict == ClassifyResult::Verdict::Inconclusive) ++inconclusive;
            if (r.verdict == ClassifyResult::Verdict::Undistorted && !r.certificate)
                return false;
        } catch (const std::exception&) {
            ++inconclusive;
        }
    }
    double rate = static_cast<double>(inconclusive) / kClassifyMaps;
    std::printf("  [criterion 10: inconclusive rate %.2f]\n", rate);
    return rate < kClassifyInconclusiveMax && seconds_since(t0) < kClassifyBudgetSec;
}

// --------------------------------------------------------------- criterion 11

bool group_checkers() {
    Aiet r3 = Aiet::rotation(Scalar(1, 3));
    Aiet r2 = Aiet::rotation(Scalar(1, 2));
    Aiet r4 = Aiet::rotation(Scalar(1, 4));

    if (!bs_relation_check(r3, r2, 1, 1)) return false;          // rotations commute
    if (bs_relation_check(r3, Aiet::identity(), 1, 2)) return false;
    if (!bs_relation_check(r4, r4, 5, 1)) return false;          // a^5 = a since a^4 = id
    if (bs_relation_check(r3, r3, 2, 1)) return false;

    // Nilpotency identity whenever centrality holds.
    std::vector<std::pair<Aiet, Aiet>> pairs{
        {r3, r4},
        {r2, Aiet::rotation(Scalar(1, 5))},
        {Aiet::restricted_rotation(Scalar(0), Scalar(1, 2), Scalar(1, 6)),
         Aiet::restricted_rotation(Scalar(1, 2), Scalar(1), Scalar(1, 10))}};
    for (const auto& [u, v] : pairs) {
        for (long p = 1; p <= 3; ++p)
            for (long q = 1; q <= 3; ++q) {
                NilpotentReport rep = nilpotent_commutator_check(u, v, p, q);
                if (rep.central && !rep.identity_holds) return false;
            }
    }
    return true;
}

struct Criterion {
    int id;
    const char* title;
    std::function<bool()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "exact algebra suite (1000 random pairs, < 30 s)", exact_algebra},
        {2, "jump calculus: cocycle and four-factor law (500 pairs)", jump_calculus},
        {3, "growth dichotomy audit (200 maps, n <= 200)", growth_audit},
        {4, "minakawa round trip and two-slope form (50 + 50 runs)", minakawa_roundtrip},
        {5, "rotation number 1e6 iterates within 1e-4; grid check at 1e-9", rotation_number_check},
        {6, "slope-exponent drift at n = 1e5 within 1e-2", drift_check},
        {7, "normal-form round trip through a random rational 4-IET", theorem_th_roundtrip},
        {8, "pair removal drops BP0 by >= 2 (20 instances)", pair_removal},
        {9, "certificates corroborated by radius-6 ball search", certificate_soundness},
        {10, "rational classifier audit (100 maps, < 20% inconclusive)", classify_audit},
        {11, "group relation and nilpotency checkers", group_checkers},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::printf("  [criterion %d: exception: %s]\n", c.id, e.what());
        }
        std::printf("criterion %2d: %s  %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                    seconds_since(t0));
        if (!ok) ++failures;
    }
    return failures;
}
