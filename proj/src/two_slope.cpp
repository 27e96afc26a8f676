#include "aiet/two_slope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace aiet {

namespace {

constexpr mp_bitcnt_t kOrbitPrecision = 256;

mpf_class to_mpf(const Scalar& s) {
    mpf_class a(s.rat(), kOrbitPrecision);
    if (s.is_rational()) return a;
    mpf_class b(s.quad(), kOrbitPrecision);
    mpf_class root(0, kOrbitPrecision);
    root = s.radicand();
    return a + b * sqrt(root);
}

/// Per-piece data of a map in 256-bit floating point.
struct FloatPieces {
    std::vector<mpf_class> lefts, slopes, intercepts;

    explicit FloatPieces(const Aiet& f) {
        for (const Piece& p : f.pieces()) {
            lefts.push_back(to_mpf(p.left));
            slopes.push_back(to_mpf(p.slope));
            intercepts.push_back(to_mpf(p.intercept));
        }
    }

    size_t piece_index(const mpf_class& x) const {
        size_t lo = 0, hi = lefts.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (lefts[mid] <= x)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    mpf_class apply(size_t idx, const mpf_class& x) const {
        return slopes[idx] * x + intercepts[idx];
    }
};

void clamp_unit(mpf_class& x) {
    if (x < 0) x = 0;
    if (x >= 1) {
        mpf_class eps(0, kOrbitPrecision);
        mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, kOrbitPrecision).get_mpf_t(),
                     kOrbitPrecision - 8);
        x = 1 - eps;
    }
}

/// The point w = b^{-1}(0): the orbit point crosses the circle wrap exactly
/// when x >= w.  When b fixes 0 there is no wrap (w = 1).
Scalar wrap_point(const Aiet& b) {
    if (b.eval(Scalar(0)).is_zero()) return Scalar(1);
    return b.inverse().eval(Scalar(0));
}

/// sigma of f^{N+1} at each segment point, as the tail products of sigma_f
/// along the segment (later orbit points are not break points).
std::vector<Scalar> segment_tails(const Aiet& f, const OrbitSegment& seg) {
    std::vector<Scalar> tail(seg.points.size(), Scalar(1));
    Scalar acc(1);
    for (size_t k = seg.points.size(); k-- > 0;) {
        acc = acc * f.sigma_at(seg.points[k]);
        tail[k] = acc;
    }
    return tail;
}

void require_bounded_pl(const Aiet& f, const DynamicsConfig& cfg, const char* who) {
    if (f.classify_shape().kind != ShapeKind::PLHomeo)
        throw ValidationError(std::string(who) + ": map is not a PL circle homeomorphism");
    GrowthClass growth = classify_bp_growth(f, cfg);
    if (growth.kind != GrowthClass::Bounded)
        throw ValidationError(std::string(who) + ": break-point growth is not bounded");
}

/// A rational point strictly inside the largest gap between the given points
/// (the last gap wraps around to 1).
Scalar rational_gap_point(std::vector<Scalar> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t best = 0;
    Scalar best_len(-1);
    for (size_t i = 0; i < pts.size(); ++i) {
        Scalar hi = (i + 1 < pts.size()) ? pts[i + 1] : Scalar(1);
        Scalar len = hi - pts[i];
        if (best_len < len) {
            best_len = len;
            best = i;
        }
    }
    const Scalar& lo = pts[best];
    Scalar hi = (best + 1 < pts.size()) ? pts[best + 1] : Scalar(1);
    Scalar mid = (lo + hi) / Scalar(2);
    if (mid.is_rational()) return mid;
    double target = mid.to_double();
    for (unsigned long den = 2;; den *= 2) {
        mpq_class q(static_cast<long>(std::llround(target * static_cast<double>(den))), den);
        q.canonicalize();
        Scalar c(q);
        if (lo < c && c < hi) return c;
        if (den > (1ul << 60))
            throw std::logic_error("rational_gap_point: no rational point found");
    }
}

}  // namespace

Aiet pl_from_jumps(const JumpSpec& spec, const std::optional<Scalar>& fix_point) {
    const auto& c = spec.breaks;
    const auto& sig = spec.jumps;
    if (c.empty() || c.size() != sig.size())
        throw ValidationError("pl_from_jumps: breaks and jumps must be nonempty and match");
    if (!c.front().is_zero())
        throw ValidationError("pl_from_jumps: first break point must be 0");
    Scalar total(1);
    for (size_t i = 0; i < c.size(); ++i) {
        if (i > 0 && !(c[i - 1] < c[i]))
            throw ValidationError("pl_from_jumps: break points must be strictly increasing");
        if (!(Scalar(0) < sig[i]))
            throw ValidationError("pl_from_jumps: jumps must be positive");
        if (!(c[i] < Scalar(1)))
            throw ValidationError("pl_from_jumps: break points must lie in [0,1)");
        total = total * sig[i];
    }
    if (!total.is_one())
        throw ValidationError("pl_from_jumps: jump product must be 1, no such homeomorphism");

    // lambda_1 = (|I_1| + sigma_1 |I_2| + ... + sigma_1...sigma_p |I_{p+1}|)^{-1},
    // lambda_{i+1} = sigma_i lambda_i, where I_i = [c_{i-1}, c_i) and c_{p+1} = 1.
    size_t p = c.size() - 1;
    std::vector<Scalar> len;
    for (size_t i = 0; i + 1 < c.size(); ++i) len.push_back(c[i + 1] - c[i]);
    len.push_back(Scalar(1) - c.back());
    Scalar denom(0), coeff(1);
    for (size_t i = 0; i <= p; ++i) {
        denom = denom + coeff * len[i];
        if (i + 1 <= p) coeff = coeff * sig[i + 1];
    }
    std::vector<Scalar> lambda{denom.inverse()};
    for (size_t i = 1; i <= p; ++i) lambda.push_back(sig[i] * lambda[i - 1]);
    if (sig[0] != lambda.front() / lambda.back())
        throw std::logic_error("pl_from_jumps: wrap jump inconsistent");

    std::vector<Piece> pieces;
    Scalar value(0);
    for (size_t i = 0; i <= p; ++i) {
        pieces.push_back({c[i], lambda[i], value - lambda[i] * c[i]});
        value = value + lambda[i] * len[i];
    }
    if (!value.is_one()) throw std::logic_error("pl_from_jumps: image length is not 1");
    Aiet h = Aiet::from_pieces(pieces);
    if (fix_point) {
        Scalar shift = (Scalar(1) - h.eval(*fix_point)).mod1();
        h = compose(Aiet::rotation(shift), h);
    }
    return h;
}

Scalar global_jump_product(const Aiet& f, const DynamicsConfig& cfg) {
    require_bounded_pl(f, cfg, "global_jump_product");
    Scalar product(1);
    for (const OrbitSegment& seg : orbit_segments(f, cfg).segments)
        for (const Scalar& t : segment_tails(f, seg)) product = product * t;
    return product;
}

MinakawaResult minakawa_conjugate(const Aiet& f, const DynamicsConfig& cfg) {
    require_bounded_pl(f, cfg, "minakawa_conjugate");
    OrbitData od = orbit_segments(f, cfg);

    std::map<Scalar, Scalar> jump;  // prescribed sigma_H
    std::vector<Scalar> occupied{Scalar(0)};
    Scalar seg_product(1);
    for (const OrbitSegment& seg : od.segments) {
        std::vector<Scalar> tail = segment_tails(f, seg);
        for (size_t k = 0; k < seg.points.size(); ++k) {
            occupied.push_back(seg.points[k]);
            seg_product = seg_product * tail[k];
            if (k == 0 || tail[k].is_one()) continue;
            auto [it, fresh] = jump.emplace(seg.points[k], tail[k]);
            if (!fresh) it->second = it->second * tail[k];
        }
    }

    // Periodic break orbits: cancel sigma_f along each cycle with
    // sigma_H(x_k) = (sigma_f(x_0) ... sigma_f(x_{k-1}))^{-1}; the wrap of the
    // cycle closes only when the cycle product of sigma_f is 1.
    std::set<std::string> done;
    for (const PeriodicBreakPoint& pb : od.periodic) {
        if (done.count(pb.point.str())) continue;
        std::vector<Scalar> orbit;
        Scalar x = pb.point;
        for (long k = 0; k < pb.period; ++k) {
            orbit.push_back(x);
            done.insert(x.str());
            x = f.eval(x);
        }
        Scalar prefix(1);
        for (const Scalar& pt : orbit) {
            occupied.push_back(pt);
            if (!prefix.is_one()) {
                auto [it, fresh] = jump.emplace(pt, prefix.inverse());
                if (!fresh) it->second = it->second * prefix.inverse();
            }
            prefix = prefix * f.sigma_at(pt);
        }
        if (!prefix.is_one())
            throw ValidationError(
                "minakawa_conjugate: jump product along a periodic break orbit is not 1");
    }

    for (auto it = jump.begin(); it != jump.end();)
        it = it->second.is_one() ? jump.erase(it) : std::next(it);

    Scalar total(1);
    for (const auto& [pt, s] : jump) total = total * s;

    std::optional<Scalar> extra;
    if (!total.is_one()) {
        for (const auto& [pt, s] : jump) occupied.push_back(pt);
        Scalar cpt = rational_gap_point(occupied);
        jump.emplace(cpt, total.inverse());
        extra = cpt;
    }
    jump.emplace(Scalar(0), Scalar(1));  // wrap jump, no-op unless already prescribed

    JumpSpec spec;
    for (const auto& [pt, s] : jump) {
        spec.breaks.push_back(pt);
        spec.jumps.push_back(s);
    }
    Aiet h = pl_from_jumps(spec, extra);
    Aiet b = conjugate(f, h, cfg.guard);
    return {std::move(h), std::move(b), seg_product, extra};
}

double rotation_number(const Aiet& b, long n_iters, const Scalar& seed) {
    if (n_iters <= 0) throw ValidationError("rotation_number: need n_iters > 0");
    if (!b.is_circle_homeo())
        throw ValidationError("rotation_number: map is not a circle homeomorphism");
    FloatPieces fp(b);
    mpf_class w = to_mpf(wrap_point(b));
    mpf_class x = to_mpf(seed);
    long wraps = 0;
    for (long k = 0; k < n_iters; ++k) {
        if (x >= w) ++wraps;
        x = fp.apply(fp.piece_index(x), x);
        clamp_unit(x);
    }
    return static_cast<double>(wraps) / static_cast<double>(n_iters);
}

BoshernitzanReport verify_boshernitzan(const Aiet& b, double tol, long grid_n) {
    std::vector<Scalar> sl = b.slopes();
    if (sl.size() != 2)
        throw ValidationError("verify_boshernitzan: map must have exactly two slopes");
    Scalar l1 = b.piece_at(Scalar(0)).slope;
    Scalar l2 = (l1 == sl[0]) ? sl[1] : sl[0];
    if (!((l1 - Scalar(1)) * (l2 - Scalar(1)) < Scalar(0)))
        throw ValidationError("verify_boshernitzan: need (lambda1-1)(lambda2-1) < 0");
    if (grid_n <= 0) throw ValidationError("verify_boshernitzan: need grid_n > 0");

    long double lam1 = static_cast<long double>(l1.to_double());
    long double lam2 = static_cast<long double>(l2.to_double());
    long double omega = lam1 / lam2;
    long double logw = logl(omega);
    long double rho = logl(lam1) / logw;

    std::vector<long double> lefts, slopes, inters;
    for (const Piece& p : b.pieces()) {
        lefts.push_back(static_cast<long double>(p.left.to_double()));
        slopes.push_back(static_cast<long double>(p.slope.to_double()));
        inters.push_back(static_cast<long double>(p.intercept.to_double()));
    }

    long double worst = 0.0L;
    for (long i = 0; i < grid_n; ++i) {
        long double y = static_cast<long double>(i) / static_cast<long double>(grid_n);
        size_t idx = 0;
        while (idx + 1 < lefts.size() && lefts[idx + 1] <= y) ++idx;
        long double by = slopes[idx] * y + inters[idx];
        long double t = log1pl(y * (omega - 1.0L)) / logw + rho;
        t -= floorl(t);
        long double hy = expm1l(t * logw) / (omega - 1.0L);
        long double dev = fabsl(hy - by);
        dev = std::min(dev, 1.0L - dev);  // circle distance: both values live in [0,1)
        worst = std::max(worst, dev);
    }

    BoshernitzanReport rep;
    rep.omega = static_cast<double>(omega);
    rep.rho = static_cast<double>(rho);
    rep.max_deviation = static_cast<double>(worst);
    rep.tol = tol;
    rep.grid_n = grid_n;
    rep.pass = worst <= static_cast<long double>(tol);
    return rep;
}

std::pair<long, long> birkhoff_visits(const Aiet& b, const Scalar& x0, long n) {
    if (n < 0) throw ValidationError("birkhoff_visits: need n >= 0");
    FloatPieces fp(b);
    mpf_class a = to_mpf(wrap_point(b));
    mpf_class x = to_mpf(x0);
    long n1 = 0, n2 = 0;
    for (long k = 0; k < n; ++k) {
        (x < a ? n1 : n2)++;
        x = fp.apply(fp.piece_index(x), x);
        clamp_unit(x);
    }
    return {n1, n2};
}

DriftResult exponent_drift(const Aiet& b, const std::vector<unsigned long>& basis,
                           const Scalar& x0, long n) {
    if (n <= 0) throw ValidationError("exponent_drift: need n > 0");
    std::vector<std::vector<long>> piece_exp;
    for (const Piece& p : b.pieces()) {
        if (!p.slope.is_rational())
            throw ValidationError("exponent_drift: slopes must be rational");
        ExponentVector ev = factor_exponents(p.slope.as_rational(), basis);
        piece_exp.push_back(ev.exponents);
    }

    FloatPieces fp(b);
    mpf_class x = to_mpf(x0);
    std::vector<long> visits(piece_exp.size(), 0);
    for (long k = 0; k < n; ++k) {
        size_t idx = fp.piece_index(x);
        visits[idx]++;
        x = fp.apply(idx, x);
        clamp_unit(x);
    }

    DriftResult res;
    res.basis = basis;
    res.n = n;
    res.counts.assign(basis.size(), 0);
    for (size_t p = 0; p < piece_exp.size(); ++p)
        for (size_t j = 0; j < basis.size(); ++j)
            res.counts[j] += visits[p] * piece_exp[p][j];
    for (long c : res.counts)
        res.drift.push_back(static_cast<double>(c) / static_cast<double>(n));
    return res;
}

}  // namespace aiet
