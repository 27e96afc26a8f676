#include "aiet/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace aiet {

namespace {

bool is_integer(const Scalar& s) { return s.is_rational() && s.rat().get_den() == 1; }

Aiet commutator(const Aiet& u, const Aiet& v, size_t guard) {
    return compose(compose(u, v, guard), compose(u.inverse(), v.inverse(), guard), guard);
}

struct RotComponent {
    Interval support;
    Scalar delta;
    Scalar angle;  // delta / |support|
};

/// Decomposes a into restricted rotations with disjoint supports, or returns
/// nothing when a is not exactly such a product.
std::optional<std::vector<RotComponent>> rotation_components(const Aiet& a) {
    for (const Scalar& s : a.slopes())
        if (!s.is_one()) return std::nullopt;
    std::vector<RotComponent> comps;
    const auto& pieces = a.pieces();
    Aiet rebuilt = Aiet::identity();
    for (size_t i = 0; i < pieces.size();) {
        if (pieces[i].is_identity_law()) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < pieces.size() && !pieces[j].is_identity_law()) ++j;
        Scalar left = pieces[i].left;
        Scalar right = (j < pieces.size()) ? pieces[j].left : Scalar(1);
        Scalar delta = a.eval(left) - left;
        if (!(Scalar(0) < delta && delta < right - left)) return std::nullopt;
        comps.push_back({{left, right}, delta, delta / (right - left)});
        rebuilt = compose(rebuilt, Aiet::restricted_rotation(left, right, delta));
        i = j;
    }
    if (rebuilt != a) return std::nullopt;
    return comps;
}

long long ipow(long long base, long exp) {
    long long r = 1;
    for (long i = 0; i < exp; ++i) {
        if (std::abs(r) > (1ll << 40)) throw ValidationError("bs_obstruction: exponent overflow");
        r *= base;
    }
    return r;
}

}  // namespace

const char* certificate_kind_name(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::SemiHyperbolic: return "semi-hyperbolic";
        case Certificate::Kind::BpGrowth: return "bp-growth";
        case Certificate::Kind::ExponentDrift: return "exponent-drift";
        case Certificate::Kind::FiniteOrder: return "finite-order";
        case Certificate::Kind::NormalFormRotations: return "normal-form-rotations";
    }
    return "unknown";
}

Scalar GeneratingSet::inf_slope() const {
    if (generators.empty()) throw ValidationError("empty generating set");
    Scalar best = generators[0].pieces()[0].slope;
    for (const Aiet& g : generators)
        for (const Piece& p : g.pieces()) best = std::min(best, p.slope);
    return best;
}

Scalar GeneratingSet::sup_slope() const {
    if (generators.empty()) throw ValidationError("empty generating set");
    Scalar best = generators[0].pieces()[0].slope;
    for (const Aiet& g : generators)
        for (const Piece& p : g.pieces()) best = std::max(best, p.slope);
    return best;
}

size_t GeneratingSet::max_breaks() const {
    size_t best = 0;
    for (const Aiet& g : generators) best = std::max(best, g.bp_all().size());
    return best;
}

Aiet word_evaluate(const GeneratingSet& gens, const std::vector<int>& word, size_t guard) {
    Aiet acc = Aiet::identity();
    for (int k : word) {
        size_t idx = static_cast<size_t>(std::abs(k));
        if (k == 0 || idx > gens.generators.size())
            throw ValidationError("word_evaluate: generator index out of range");
        const Aiet& g = gens.generators[idx - 1];
        acc = compose(acc, k > 0 ? g : g.inverse(), guard);
    }
    return acc;
}

std::vector<std::optional<long>> ball_word_lengths(const GeneratingSet& gens, long radius,
                                                   const std::vector<Aiet>& targets,
                                                   size_t guard) {
    if (radius < 0 || radius > kMaxBallRadius)
        throw ValidationError("ball_word_lengths: radius must be between 0 and 8");
    std::vector<Aiet> symbols;
    for (const Aiet& g : gens.generators) {
        symbols.push_back(g);
        symbols.push_back(g.inverse());
    }

    std::vector<std::optional<long>> result(targets.size());
    size_t found = 0;
    auto record = [&](const Aiet& g, long depth) {
        for (size_t t = 0; t < targets.size(); ++t)
            if (!result[t] && targets[t] == g) {
                result[t] = depth;
                ++found;
            }
    };

    std::set<std::string> seen{Aiet::identity().str()};
    std::vector<Aiet> frontier{Aiet::identity()};
    record(Aiet::identity(), 0);
    for (long depth = 1; depth <= radius && found < targets.size() && !frontier.empty(); ++depth) {
        std::vector<Aiet> next;
        for (const Aiet& g : frontier)
            for (const Aiet& s : symbols) {
                Aiet h = compose(s, g, guard);
                if (!seen.insert(h.str()).second) continue;
                record(h, depth);
                next.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    return result;
}

std::optional<Certificate> semi_hyperbolic_certificate(const Aiet& f, const GeneratingSet& gens,
                                                       const DynamicsConfig& cfg) {
    PeriodicStructure ps;
    try {
        ps = periodic_structure(f, cfg);
    } catch (const HorizonExceeded&) {
        return std::nullopt;
    }
    if (ps.semi_hyperbolic.empty()) return std::nullopt;
    const SemiHyperbolicPoint& sh = ps.semi_hyperbolic.front();
    double denom = std::max(std::abs(std::log(gens.inf_slope().to_double())),
                            std::abs(std::log(gens.sup_slope().to_double())));
    if (denom <= 0.0) return std::nullopt;

    Certificate cert;
    cert.kind = Certificate::Kind::SemiHyperbolic;
    cert.coefficient =
        std::abs(std::log(sh.derivative.to_double())) / (static_cast<double>(sh.period) * denom);
    cert.offset = 0;
    cert.exact = true;
    std::ostringstream w;
    w << "point " << sh.point.str() << ", period " << sh.period << ", derivative "
      << sh.derivative.str();
    cert.witness = w.str();
    return cert;
}

std::optional<Certificate> bp_growth_certificate(const Aiet& f, const GeneratingSet& gens,
                                                 const DynamicsConfig& cfg) {
    GrowthClass growth;
    try {
        growth = classify_bp_growth(f, cfg);
    } catch (const HorizonExceeded&) {
        return std::nullopt;
    }
    if (growth.kind != GrowthClass::Linear) return std::nullopt;
    size_t mb = gens.max_breaks();
    if (mb == 0) return std::nullopt;

    Certificate cert;
    cert.kind = Certificate::Kind::BpGrowth;
    cert.coefficient = 1.0 / static_cast<double>(mb);
    cert.offset = growth.witness ? growth.witness->length : 0;
    cert.exact = true;
    std::ostringstream w;
    w << "witness break point " << (growth.witness ? growth.witness->initial.str() : "?")
      << ", max generator breaks " << mb;
    cert.witness = w.str();
    return cert;
}

std::optional<Certificate> drift_certificate(const Aiet& b, const GeneratingSet& gens,
                                             const std::vector<unsigned long>& basis,
                                             const Scalar& x, long n_probe) {
    DriftResult dr;
    long best_s = 0;
    size_t best_j = 0;
    try {
        dr = exponent_drift(b, basis, x, n_probe);
        double best = 0.0;
        for (size_t j = 0; j < dr.drift.size(); ++j)
            if (std::abs(dr.drift[j]) > best) {
                best = std::abs(dr.drift[j]);
                best_j = j;
            }
        if (best < 1e-3) return std::nullopt;
        // S = max |N_j| over all generator slopes, for the chosen coordinate j
        for (const Aiet& g : gens.generators)
            for (const Piece& p : g.pieces()) {
                if (!p.slope.is_rational()) return std::nullopt;
                ExponentVector ev = factor_exponents(p.slope.as_rational(), basis);
                best_s = std::max(best_s, std::abs(ev.exponents[best_j]));
            }
    } catch (const PrimeOutsideBasis&) {
        return std::nullopt;
    } catch (const ValidationError&) {
        return std::nullopt;
    }
    if (best_s == 0) return std::nullopt;

    Certificate cert;
    cert.kind = Certificate::Kind::ExponentDrift;
    cert.coefficient = std::abs(dr.drift[best_j]) / static_cast<double>(best_s);
    cert.offset = 0;
    cert.exact = false;
    cert.empirical_params = EmpiricalParams{n_probe, dr.drift[best_j]};
    std::ostringstream w;
    w << "prime " << dr.basis[best_j] << ", drift " << dr.drift[best_j] << ", S " << best_s;
    cert.witness = w.str();
    return cert;
}

SplitResult split_periodic(const Aiet& f, const DynamicsConfig& cfg) {
    PeriodicStructure ps = periodic_structure(f, cfg);
    if (!ps.conclusive)
        throw HorizonExceeded("split_periodic: periodic structure inconclusive");
    if (!ps.isolated_points.empty())
        throw ValidationError(
            "split_periodic: Per(f) has isolated points, not a union of intervals");

    SplitResult res;
    if (ps.per_empty()) {
        res.s = Aiet::identity();
        res.p = 1;
        res.a = Scalar(0);
        res.g = f;
        return res;
    }

    res.p = ps.period;
    // blocks between the consecutive component endpoints, fixed blocks first
    std::vector<Scalar> cuts{Scalar(0), Scalar(1)};
    for (const Interval& I : ps.fixed_intervals) {
        cuts.push_back(I.left);
        cuts.push_back(I.right);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    struct Block {
        Scalar left, right;
        bool fixed;
    };
    std::vector<Block> blocks;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        bool fixed = false;
        for (const Interval& I : ps.fixed_intervals)
            if (I.left <= cuts[i] && cuts[i + 1] <= I.right) fixed = true;
        blocks.push_back({cuts[i], cuts[i + 1], fixed});
    }

    std::vector<Piece> pieces;
    Scalar offset(0);
    for (bool pass_fixed : {true, false})
        for (const Block& blk : blocks) {
            if (blk.fixed != pass_fixed) continue;
            pieces.push_back({blk.left, Scalar(1), offset - blk.left});
            offset = offset + (blk.right - blk.left);
            if (pass_fixed) res.a = offset;
        }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& x, const Piece& y) { return x.left < y.left; });
    res.s = Aiet::from_pieces(pieces);
    res.g = conjugate(power(f, res.p, cfg.guard), res.s, cfg.guard);

    FixedRegion fr = fixed_points(res.g);
    if (!fr.points.empty() || fr.intervals.size() != 1 || !fr.intervals[0].left.is_zero() ||
        fr.intervals[0].right != res.a)
        throw std::logic_error("split_periodic: sorted fixed set is not an initial interval");
    return res;
}

ThNormalForm normal_form_theorem_th(const Aiet& f, const DynamicsConfig& cfg, long drift_n) {
    SplitResult sp = split_periodic(f, cfg);
    if (sp.g.is_identity())
        throw ValidationError("normal_form_theorem_th: map has finite order");

    Interval M{sp.a, Scalar(1)};
    Scalar mlen = M.right - M.left;
    Aiet m = restrict_to_unit(sp.g, M);
    LiDecomposition li = li_normal_form(m, cfg);

    ThNormalForm nf;
    nf.power = sp.p * li.power_q * li.iterate_l;
    nf.fixed_prefix = sp.a;
    nf.all_rotations = true;

    Aiet h_m = Aiet::identity();  // the Minakawa conjugator assembled on the M-chart
    Aiet product = Aiet::identity();
    for (const Component& comp : li.components) {
        Aiet gamma_unit = restrict_to_unit(comp.gamma, comp.support);
        MinakawaResult mk = minakawa_conjugate(gamma_unit, cfg);
        h_m = compose(h_m, embed_from_unit(mk.h, comp.support), cfg.guard);

        ThComponent tc;
        tc.support = {M.left + mlen * comp.support.left, M.left + mlen * comp.support.right};
        tc.map = embed_from_unit(mk.b, tc.support);
        if (mk.b.slopes() == std::vector<Scalar>{Scalar(1)}) {
            tc.is_rotation = true;
            tc.angle = mk.b.eval(Scalar(0));
            tc.delta = tc.angle * tc.support.length();
            if (mk.b != Aiet::rotation(tc.angle))
                throw std::logic_error("normal_form_theorem_th: slope-1 factor is not a rotation");
        } else {
            nf.all_rotations = false;
            std::vector<mpq_class> rats;
            bool rational = true;
            for (const Scalar& s : mk.b.slopes()) {
                if (!s.is_rational()) rational = false;
                else rats.push_back(s.as_rational());
            }
            if (rational)
                tc.drift = drift_certificate(mk.b, GeneratingSet{{mk.b}},
                                             multiplicative_basis(rats), Scalar(0), drift_n);
        }
        product = compose(product, tc.map, cfg.guard);
        nf.components.push_back(std::move(tc));
    }

    nf.conjugator = compose(embed_from_unit(h_m, M),
                            compose(embed_from_unit(li.conjugator, M), sp.s, cfg.guard), cfg.guard);
    if (conjugate(power(f, nf.power, cfg.guard), nf.conjugator, cfg.guard) != product)
        throw std::logic_error("normal_form_theorem_th: conjugation identity failed");
    return nf;
}

ClassifyResult classify_rational(const Aiet& f, const DynamicsConfig& cfg, long drift_n) {
    for (const Piece& p : f.pieces())
        if (!p.left.is_rational() || !p.slope.is_rational() || !p.intercept.is_rational())
            throw ValidationError("classify_rational: map data must be rational");

    ClassifyResult res;
    // fast path: blind iteration
    try {
        Aiet g = f;
        for (long k = 1; k <= 64; ++k) {
            if (g.is_identity()) {
                res.verdict = ClassifyResult::Verdict::FiniteOrder;
                res.order = k;
                res.note = "blind iteration";
                return res;
            }
            g = compose(g, f, cfg.guard);
        }
    } catch (const GuardExceeded&) {
    }

    std::string trace;
    std::optional<ThNormalForm> nf;
    try {
        nf = normal_form_theorem_th(f, cfg, drift_n);
    } catch (const std::exception& e) {
        trace += std::string("normal form: ") + e.what() + "; ";
    }

    if (nf && nf->all_rotations) {
        bool all_rational = true;
        mpz_class order(1);
        for (const ThComponent& tc : nf->components) {
            if (!tc.angle.is_rational()) {
                all_rational = false;
                break;
            }
            mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), tc.angle.rat().get_den().get_mpz_t());
        }
        if (all_rational) {
            // f^(power * lcm) is the identity; refine to the minimal order
            mpz_class total = order * nf->power;
            if (total.fits_slong_p() && total.get_si() <= 4096) {
                long n = total.get_si();
                for (long d = 1; d <= n; ++d)
                    if (n % d == 0 && power(f, d, cfg.guard).is_identity()) {
                        res.verdict = ClassifyResult::Verdict::FiniteOrder;
                        res.order = d;
                        res.note = "normal form, rational angles";
                        return res;
                    }
            }
            res.verdict = ClassifyResult::Verdict::FiniteOrder;
            res.order = 0;
            res.note = "normal form, rational angles (order " + total.get_str() +
                       ", minimality unverified)";
            return res;
        }
    }

    if (auto cert = semi_hyperbolic_certificate(f, GeneratingSet{{f}}, cfg)) {
        res.verdict = ClassifyResult::Verdict::Undistorted;
        res.certificate = cert;
        res.note = trace + "semi-hyperbolic certificate";
        return res;
    }
    if (auto cert = bp_growth_certificate(f, GeneratingSet{{f}}, cfg)) {
        res.verdict = ClassifyResult::Verdict::Undistorted;
        res.certificate = cert;
        res.note = trace + "break-point growth certificate";
        return res;
    }
    if (nf) {
        for (const ThComponent& tc : nf->components)
            if (tc.drift) {
                res.verdict = ClassifyResult::Verdict::Undistorted;
                res.certificate = tc.drift;
                res.note = trace + "drift certificate from the two-slope component";
                return res;
            }
        if (nf->all_rotations) {
            Certificate cert;
            cert.kind = Certificate::Kind::NormalFormRotations;
            cert.exact = true;
            cert.witness = "product of infinite-order restricted rotations";
            res.verdict = ClassifyResult::Verdict::Undistorted;
            res.certificate = cert;
            res.note = trace + "normal form with an irrational rotation component";
            return res;
        }
    }

    res.verdict = ClassifyResult::Verdict::Inconclusive;
    res.note = trace + "no certificate applies";
    return res;
}

bool bs_relation_check(const Aiet& a, const Aiet& b, long m, long n, size_t guard) {
    Aiet lhs = compose(compose(b, power(a, m, guard), guard), b.inverse(), guard);
    return lhs == power(a, n, guard);
}

BsObstruction bs_obstruction(const Aiet& a, const Aiet& b, long m, long n, long s_max,
                             size_t guard) {
    BsObstruction rep;
    rep.relation_holds = bs_relation_check(a, b, m, n, guard);
    if (!rep.relation_holds) {
        rep.note = "relation b a^m b^-1 = a^n does not hold";
        return rep;
    }

    auto comps = rotation_components(a);
    if (!comps) {
        rep.note = "a is not a product of restricted rotations";
        return rep;
    }
    rep.decomposed = true;
    for (const RotComponent& rc : *comps)
        if (rc.angle.is_rational())
            rep.note = "precondition violated: a has a finite-order component";

    for (long s = 1; s <= s_max && !rep.s; ++s) {
        Aiet bs = power(b, s, guard);
        bool ok = true;
        for (const RotComponent& rc : *comps) {
            try {
                Aiet masked = mask_to_interval(bs, rc.support);
                for (const Scalar& sl : masked.slopes())
                    if (!sl.is_one()) ok = false;
            } catch (const ValidationError&) {
                ok = false;
            }
            if (!ok) break;
        }
        if (ok) rep.s = s;
    }
    if (!rep.s) {
        rep.note += (rep.note.empty() ? "" : "; ");
        rep.note += "no s <= s_max with b^s Lebesgue-preserving on each support";
        return rep;
    }

    long long ms = ipow(m, *rep.s), ns = ipow(n, *rep.s);
    for (const RotComponent& rc : *comps) {
        Scalar minus = Scalar(static_cast<long>(ms - ns)) * rc.angle;
        Scalar plus = Scalar(static_cast<long>(ms + ns)) * rc.angle;
        bool ok_minus = is_integer(minus), ok_plus = is_integer(plus);
        std::ostringstream d;
        d << "angle " << rc.angle.str() << ": (m^s-n^s)*angle"
          << (ok_minus ? " in Z" : " not in Z") << ", (m^s+n^s)*angle"
          << (ok_plus ? " in Z" : " not in Z");
        rep.details.push_back(d.str());
        if (!rc.angle.is_rational() && !ok_minus && !ok_plus) rep.contradiction = true;
    }
    return rep;
}

NilpotentReport nilpotent_commutator_check(const Aiet& u, const Aiet& v, long p, long q,
                                           size_t guard) {
    NilpotentReport rep;
    rep.c = commutator(u, v, guard);
    rep.central = compose(rep.c, u, guard) == compose(u, rep.c, guard) &&
                  compose(rep.c, v, guard) == compose(v, rep.c, guard);
    if (!rep.central) {
        rep.note = "c = [u,v] does not centralize {u, v}";
        return rep;
    }
    rep.identity_holds =
        commutator(power(u, p, guard), power(v, q, guard), guard) == power(rep.c, p * q, guard);
    for (long k = 1; k <= 5; ++k)
        rep.distortion_witness.emplace_back(
            k, commutator(power(u, k, guard), power(v, k, guard), guard) ==
                   power(rep.c, k * k, guard));
    return rep;
}

}  // namespace aiet
