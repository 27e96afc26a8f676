#include "aiet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace aiet {
namespace {

Scalar piece_right(const Aiet& f, size_t i) {
    return i + 1 < f.piece_count() ? f.pieces()[i + 1].left : Scalar(1);
}

struct Region {
    std::vector<Interval> intervals;
    std::vector<Scalar> points;
    bool operator==(const Region&) const = default;
};

Region canonical_region(std::vector<Interval> iv, std::vector<Scalar> pts) {
    std::sort(iv.begin(), iv.end(),
              [](const Interval& x, const Interval& y) { return x.left < y.left; });
    Region r;
    for (const Interval& cur : iv) {
        if (!r.intervals.empty() && !(r.intervals.back().right < cur.left)) {
            if (r.intervals.back().right < cur.right) r.intervals.back().right = cur.right;
        } else {
            r.intervals.push_back(cur);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const Scalar& p : pts) {
        bool inside = false;
        for (const Interval& I : r.intervals)
            if (!(p < I.left) && p < I.right) {
                inside = true;
                break;
            }
        if (!inside) r.points.push_back(p);
    }
    return r;
}

Region fixed_region_of(const Aiet& f) {
    std::vector<Interval> iv;
    std::vector<Scalar> pts;
    const Scalar one(1);
    for (size_t i = 0; i < f.piece_count(); ++i) {
        const Piece& p = f.pieces()[i];
        Scalar right = piece_right(f, i);
        if (p.slope == one) {
            if (p.intercept.is_zero()) iv.push_back({p.left, right});
        } else {
            Scalar x0 = p.intercept / (one - p.slope);
            if (!(x0 < p.left) && x0 < right) pts.push_back(x0);
        }
    }
    return canonical_region(std::move(iv), std::move(pts));
}

// Integerized x = (A + B*sqrt(d)) / D with D > 0, never reduced. Steps cost a
// handful of big-by-small multiplications; no gcds on the hot path.
class OrbitStepper {
  public:
    OrbitStepper(const Aiet& f, unsigned long d) : d_(d), sqrt_d_(d ? std::sqrt((double)d) : 0) {
        for (size_t i = 0; i < f.piece_count(); ++i) {
            const Piece& p = f.pieces()[i];
            laws_.push_back({split(p.slope), split(p.intercept)});
            lefts_.push_back(p.left);
            lefts_d_.push_back(p.left.to_double());
        }
    }

    void set_targets(std::vector<Scalar> targets) {
        targets_ = std::move(targets);
        targets_d_.clear();
        for (const Scalar& t : targets_) targets_d_.push_back(t.to_double());
    }

    void seed(const Scalar& x) {
        auto [num, qnum, den] = split(x);
        A_ = num;
        B_ = qnum;
        D_ = den;
        shadow_ = x.to_double();
    }

    void step() {
        size_t i = find_piece();
        const ZLaw& w = laws_[i];
        // x <- ((lp + lq*sqrt(d))*x)/le + (bp + bq*sqrt(d))/be
        mpz_class na = w.slope.num * A_;
        mpz_class nb = w.slope.num * B_;
        if (d_ != 0) {
            na += w.slope.qnum * B_ * (long)d_;
            nb += w.slope.qnum * A_;
        }
        mpz_class dle = D_ * w.icpt.den;
        A_ = na * w.icpt.den + w.icpt.num * (D_ * w.slope.den);
        B_ = nb * w.icpt.den + w.icpt.qnum * (D_ * w.slope.den);
        D_ = dle * w.slope.den;
        refresh_shadow();
    }

    double shadow() const { return shadow_; }

    /// Index of a target exactly equal to the current point, or -1.
    int match_target() const {
        for (size_t k = 0; k < targets_.size(); ++k) {
            if (std::abs(shadow_ - targets_d_[k]) > 1e-9) continue;
            if (equals_exact(targets_[k])) return (int)k;
        }
        return -1;
    }

    Scalar current_exact() const {
        mpq_class a(A_, D_), b(B_, D_);
        a.canonicalize();
        b.canonicalize();
        return Scalar(std::move(a), std::move(b), d_);
    }

  private:
    struct ZPart {
        mpz_class num, qnum, den;  // (num + qnum*sqrt(d)) / den, den > 0
    };
    struct ZLaw {
        ZPart slope, icpt;
    };

    ZPart split(const Scalar& s) const {
        mpz_class e = lcm(s.rat().get_den(), s.quad().get_den());
        return {s.rat().get_num() * (e / s.rat().get_den()),
                s.quad().get_num() * (e / s.quad().get_den()), e};
    }

    void refresh_shadow() {
        long ea, eb, ed;
        double ma = mpz_get_d_2exp(&ea, A_.get_mpz_t());
        double md = mpz_get_d_2exp(&ed, D_.get_mpz_t());
        double v = md == 0 ? 0.0 : std::ldexp(ma, (int)(ea - ed)) / md;
        if (d_ != 0 && B_ != 0) {
            double mb = mpz_get_d_2exp(&eb, B_.get_mpz_t());
            v += sqrt_d_ * std::ldexp(mb, (int)(eb - ed)) / md;
        }
        shadow_ = v;
    }

    // Exact sign of x - t.
    int cmp_exact(const Scalar& t) const {
        mpz_class u = A_ * t.rat().get_den() - t.rat().get_num() * D_;
        mpz_class v = B_ * t.quad().get_den() - t.quad().get_num() * D_;
        if (v == 0) return sgn(u);
        mpz_class alpha = u * t.quad().get_den();
        mpz_class beta = v * t.rat().get_den();
        int sa = sgn(alpha), sb = sgn(beta);
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        mpz_class lhs = alpha * alpha, rhs = beta * beta * (long)d_;
        int c = cmp(lhs, rhs);
        return sa > 0 ? c : -c;
    }

    bool equals_exact(const Scalar& t) const {
        // Components are independent over Q, so compare them separately.
        if (A_ * t.rat().get_den() != t.rat().get_num() * D_) return false;
        return B_ * t.quad().get_den() == t.quad().get_num() * D_;
    }

    size_t find_piece() const {
        size_t lo =
            std::upper_bound(lefts_d_.begin(), lefts_d_.end(), shadow_) - lefts_d_.begin();
        size_t i = lo == 0 ? 0 : lo - 1;
        // The shadow carries ~1e-15 relative error; only boundaries within the
        // prefilter margin need exact disambiguation.
        while (i + 1 < lefts_.size() && std::abs(shadow_ - lefts_d_[i + 1]) < 1e-9 &&
               cmp_exact(lefts_[i + 1]) >= 0)
            ++i;
        while (i > 0 && std::abs(shadow_ - lefts_d_[i]) < 1e-9 && cmp_exact(lefts_[i]) < 0)
            --i;
        return i;
    }

    unsigned long d_;
    double sqrt_d_;
    std::vector<ZLaw> laws_;
    std::vector<Scalar> lefts_;
    std::vector<double> lefts_d_;
    std::vector<Scalar> targets_;
    std::vector<double> targets_d_;
    mpz_class A_, B_, D_;
    double shadow_ = 0;
};

unsigned long session_radicand(const Aiet& f) {
    for (const Piece& p : f.pieces()) {
        if (p.left.radicand()) return p.left.radicand();
        if (p.slope.radicand()) return p.slope.radicand();
        if (p.intercept.radicand()) return p.intercept.radicand();
    }
    return 0;
}

// One step of the sided cocycle: (f^{n+1})_+(a) = f_+((f^n)_+(a)) and likewise
// on the left, with y == 1 queried through the circle convention at 0.
struct SidedTracker {
    Scalar y_plus, y_minus, d_plus{1}, d_minus{1};

    explicit SidedTracker(const Scalar& a)
        : y_plus(a), y_minus(a.is_zero() ? Scalar(1) : a) {}

    void step(const Aiet& f) {
        const Piece& p = f.piece_at(y_plus);
        d_plus *= p.slope;
        y_plus = p.apply(y_plus);
        SidedValues s = f.eval_sided(y_minus == Scalar(1) ? Scalar(0) : y_minus);
        d_minus *= s.d_minus;
        y_minus = s.f_minus;
    }

    Scalar delta() const { return y_plus - y_minus; }
    Scalar sigma() const { return d_plus / d_minus; }
};

}  // namespace

FixedRegion fixed_points(const Aiet& f) {
    Region r = fixed_region_of(f);
    return {std::move(r.intervals), std::move(r.points)};
}

PeriodicStructure periodic_structure(const Aiet& f, const DynamicsConfig& cfg) {
    PeriodicStructure out;
    std::vector<Region> fixed(cfg.max_period + 1);
    std::vector<Interval> all_iv;
    std::vector<Scalar> all_pts;
    std::set<std::pair<std::string, int>> seen;  // (point, side) with minimal period kept
    Aiet fl = Aiet::identity();
    const Scalar one(1);
    for (long l = 1; l <= cfg.max_period; ++l) {
        fl = compose(f, fl, cfg.guard);
        fixed[l] = fixed_region_of(fl);
        for (const Interval& I : fixed[l].intervals) all_iv.push_back(I);
        for (const Scalar& p : fixed[l].points) all_pts.push_back(p);

        // Semi-hyperbolic points of period l: one-sided fixed with slope != 1.
        auto record = [&](const Scalar& pt, Side side, const Scalar& der) {
            auto key = std::make_pair(pt.str(), side == Side::Left ? 0 : 1);
            if (seen.insert(key).second) out.semi_hyperbolic.push_back({pt, l, side, der});
        };
        for (size_t i = 0; i < fl.piece_count(); ++i) {
            const Piece& p = fl.pieces()[i];
            if (p.slope == one) continue;
            Scalar x0 = p.intercept / (one - p.slope);
            if (!(x0 < p.left) && x0 < piece_right(fl, i)) record(x0, Side::Right, p.slope);
        }
        for (size_t i = 0; i < fl.piece_count(); ++i) {
            const Scalar& x = fl.pieces()[i].left;
            SidedValues v = fl.eval_sided(x);
            if (v.d_minus == one) continue;
            if (x.is_zero()) {
                if (v.f_minus == one) record(Scalar(0), Side::Left, v.d_minus);
            } else if (v.f_minus == x) {
                record(x, Side::Left, v.d_minus);
            }
        }
    }
    Region all = canonical_region(std::move(all_iv), std::move(all_pts));
    out.fixed_intervals = all.intervals;
    out.isolated_points = all.points;
    if (all.intervals.empty() && all.points.empty()) {
        out.conclusive = true;
        out.period = 0;
        out.note = "no periodic points up to period " + std::to_string(cfg.max_period);
        return out;
    }
    for (long m = 1; m <= cfg.max_period; ++m) {
        if (fixed[m] == all) {
            out.period = m;
            out.conclusive = 2 * m <= cfg.max_period;
            if (!out.conclusive)
                out.note = "Per(f) = Fix(f^" + std::to_string(m) +
                           ") not re-confirmed over a full extra cycle within max_period";
            return out;
        }
    }
    out.note = "periodic points of several incommensurable periods up to max_period; no "
               "single power captures the union";
    return out;
}

OrbitData orbit_segments(const Aiet& f, const DynamicsConfig& cfg) {
    OrbitData out;
    std::vector<Scalar> B = f.bp_all();
    const long horizon = cfg.effective_horizon(B.size());
    const long cap = 20 * horizon;
    unsigned long d = session_radicand(f);
    OrbitStepper fwd(f, d), bwd(f.inverse(), d);
    fwd.set_targets(B);
    bwd.set_targets(B);
    std::vector<char> assigned(B.size(), 0);
    std::set<std::string> bset;
    for (const Scalar& b : B) bset.insert(b.str());

    auto scan = [&](OrbitStepper& st, const Scalar& start, long self_idx,
                    std::vector<std::pair<long, int>>& hits) -> long {
        // Runs until a break of `horizon` steps without target hits; returns the
        // period when the orbit returns to `start`, else 0.
        st.seed(start);
        long steps = 0, gap = 0;
        while (gap < horizon) {
            st.step();
            ++steps;
            if (steps > cap)
                throw HorizonExceeded("orbit exploration exceeded " + std::to_string(cap) +
                                      " steps without resolving break-point classes");
            int t = st.match_target();
            if (t == (int)self_idx) return steps;
            if (t >= 0) {
                hits.push_back({steps, t});
                gap = 0;
            } else {
                ++gap;
            }
        }
        return 0;
    };

    for (size_t i = 0; i < B.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<std::pair<long, int>> fhits;
        long period = scan(fwd, B[i], (long)i, fhits);
        if (period > 0) {
            assigned[i] = 1;
            out.periodic.push_back({B[i], period});
            for (auto& [s, t] : fhits) {
                if (!assigned[t]) {
                    assigned[t] = 1;
                    out.periodic.push_back({B[t], period});
                }
            }
            continue;
        }
        // Not periodic within the horizon: walk backwards to the deepest
        // break-point hit, which is the initial point of the class.
        std::vector<std::pair<long, int>> bhits;
        long bperiod = scan(bwd, B[i], (long)i, bhits);
        if (bperiod > 0)
            throw HorizonExceeded("backward orbit returned but forward scan saw no period");
        size_t init = bhits.empty() ? i : (size_t)bhits.back().second;

        // Forward from the initial point: the last hit fixes N_a.
        std::vector<std::pair<long, int>> shits;
        long speriod = scan(fwd, B[init], (long)init, shits);
        if (speriod > 0)
            throw HorizonExceeded("initial candidate turned out periodic; horizon too small");
        OrbitSegment seg;
        seg.initial = B[init];
        seg.length = shits.empty() ? 0 : shits.back().first;
        assigned[init] = 1;
        for (auto& [s, t] : shits) assigned[t] = 1;

        // Exact segment values and the two invariants via the sided cocycle.
        SidedTracker tr(seg.initial);
        for (long k = 0; k <= seg.length; ++k) {
            Scalar x = tr.y_plus;
            seg.points.push_back(x);
            if (bset.count(x.str())) seg.hits.push_back(x);
            seg.pi_inv = k == 0 ? f.sigma_at(x) : seg.pi_inv * f.sigma_at(x);
            tr.step(f);
        }
        seg.delta_inv = tr.delta();
        out.segments.push_back(std::move(seg));
    }

    std::sort(out.periodic.begin(), out.periodic.end(),
              [](const PeriodicBreakPoint& a, const PeriodicBreakPoint& b) {
                  return a.point < b.point;
              });
    std::sort(out.segments.begin(), out.segments.end(),
              [](const OrbitSegment& a, const OrbitSegment& b) { return a.initial < b.initial; });
    return out;
}

std::vector<int> orbit_hits(const Aiet& f, const Scalar& x, const std::vector<Scalar>& targets,
                            long horizon) {
    unsigned long d = session_radicand(f);
    if (d == 0) d = x.radicand();
    for (const Scalar& t : targets)
        if (d == 0) d = t.radicand();
    std::set<int> found;
    const long cap = 20 * horizon;
    for (const Aiet& dir : {f, f.inverse()}) {
        OrbitStepper st(dir, d);
        st.set_targets(targets);
        st.seed(x);
        long steps = 0, gap = 0;
        while (gap < horizon) {
            st.step();
            ++steps;
            if (steps > cap)
                throw HorizonExceeded("orbit_hits exceeded " + std::to_string(cap) + " steps");
            int t = st.match_target();
            if (t >= 0 && targets[t] == x) break;  // returned to the start: periodic
            if (t >= 0) {
                found.insert(t);
                gap = 0;
            } else {
                ++gap;
            }
        }
    }
    return std::vector<int>(found.begin(), found.end());
}

GrowthClass classify_bp_growth(const Aiet& f, const DynamicsConfig& cfg) {
    GrowthClass out;
    OrbitData od;
    try {
        od = orbit_segments(f, cfg);
    } catch (const HorizonExceeded& e) {
        out.kind = GrowthClass::Inconclusive;
        out.note = e.what();
        return out;
    }
    for (const OrbitSegment& s : od.segments) {
        if (!s.delta_inv.is_zero() || !s.pi_inv.is_one()) {
            out.kind = GrowthClass::Linear;
            out.witness = s;
            out.note = "non-vanishing invariant on the segment starting at " + s.initial.str();
            return out;
        }
    }
    out.kind = GrowthClass::Bounded;
    long bound = 0;
    for (const OrbitSegment& s : od.segments) bound += 2 * s.length;
    for (const PeriodicBreakPoint& p : od.periodic) bound += p.period;
    out.bound = bound;
    return out;
}

std::vector<long> bp_count_sequence(const Aiet& f, long n_max, size_t guard) {
    std::vector<long> counts;
    Aiet fn = Aiet::identity();
    for (long n = 1; n <= n_max; ++n) {
        fn = compose(f, fn, guard);
        counts.push_back((long)fn.bp_all().size());
    }
    return counts;
}

std::pair<Scalar, Scalar> lemma_delta2_check(const Aiet& f, const Scalar& a, long n, long k,
                                             size_t guard) {
    if (k < 0 || k >= n) throw ValidationError("lemma_delta2_check needs 0 <= k <= n-1");
    Aiet finv = f.inverse();
    Scalar x = a;
    for (long j = 0; j < k; ++j) x = finv.eval(x);
    Scalar lhs = power(f, n, guard).delta_at(x);
    Scalar rhs = power(f, n - k, guard).delta_at(a);
    return {lhs, rhs};
}

}  // namespace aiet
