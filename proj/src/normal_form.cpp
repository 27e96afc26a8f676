#include "aiet/normal_form.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace aiet {
namespace {

// Block exchange (1,2,3) -> (1,3,2) over [0,u), [u,v), [v,1); u may be 0,
// and u == v gives the identity (empty middle block).
Aiet three_block(const Scalar& u, const Scalar& v) {
    const Scalar zero(0), one(1);
    if (u == v) return Aiet::identity();
    std::vector<Piece> pieces;
    if (zero < u) pieces.push_back({zero, one, zero});
    pieces.push_back({u, one, one - v});
    pieces.push_back({v, one, u - v});
    return Aiet::from_pieces(std::move(pieces));
}

}  // namespace

PairCheck pair_property_check(const Aiet& f, const DynamicsConfig& cfg) {
    PeriodicStructure per = periodic_structure(f, cfg);
    if (!per.conclusive) throw HorizonExceeded("periodicity scan inconclusive: " + per.note);
    if (!per.per_empty()) return NotPair{"periodic points present"};

    std::vector<Scalar> v1 = f.bp0();
    std::vector<Scalar> v2 = power(f, 2, cfg.guard).bp0();
    std::set<Scalar> V(v1.begin(), v1.end()), V2(v2.begin(), v2.end());

    std::set<Scalar> betas, omegas;
    for (const Scalar& x : V)
        if (!V2.count(x) && V.count(f.eval(x))) betas.insert(x);
    for (const Scalar& x : V)
        if (!betas.count(x)) omegas.insert(x);
    if (betas.size() != omegas.size())
        return NotPair{"BP0 does not split into (beta, omega) pairs"};

    PairStructure ps;
    for (const Scalar& w : omegas) ps.pairs.push_back({Scalar(0), w});  // beta filled below
    std::set<size_t> taken;
    for (const Scalar& b : betas) {
        Scalar w = f.eval(b);
        auto it = std::find_if(ps.pairs.begin(), ps.pairs.end(),
                               [&](const BreakPair& p) { return p.omega == w; });
        if (it == ps.pairs.end() || !taken.insert(it - ps.pairs.begin()).second)
            return NotPair{"f does not map the beta set bijectively onto the omega set"};
        it->beta = b;
    }
    if (taken.size() != ps.pairs.size()) return NotPair{"unmatched omega point"};
    if (ps.pairs.empty() || !ps.pairs.front().omega.is_zero())
        return NotPair{"0 is not an omega point"};

    // The permutation pi: f_-(beta_i) = omega_{pi(i)}, with f_-(beta_i) = 1
    // meaning pi(i) = 1 (index 0 here).
    std::set<size_t> image;
    for (BreakPair& p : ps.pairs) {
        Scalar lim = f.eval_sided(p.beta).f_minus;
        if (lim == Scalar(1)) {
            p.pi = 0;
        } else {
            auto it = std::find_if(ps.pairs.begin(), ps.pairs.end(),
                                   [&](const BreakPair& q) { return q.omega == lim; });
            if (it == ps.pairs.end()) return NotPair{"f_-(beta) is not an omega point"};
            p.pi = it - ps.pairs.begin();
        }
        if (!image.insert(p.pi).second) return NotPair{"pi is not a permutation"};
    }

    // pi(i) = 0 records f_-(beta_i) = 1: that pair's effective omega_pi is 1,
    // never 0, so it is removable only through the wrapped case.
    for (BreakPair& p : ps.pairs) {
        const Scalar& wi = p.omega;
        Scalar wp = p.pi == 0 ? Scalar(1) : ps.pairs[p.pi].omega;
        if (wp < wi) {
            p.removable = true;
        } else {
            p.removable = std::any_of(ps.pairs.begin(), ps.pairs.end(), [&](const BreakPair& q) {
                return wi < q.omega && q.omega < wp;
            });
        }
    }

    // Orbit disjointness of the beta points, certified up to the horizon.
    std::vector<Scalar> targets;
    for (const BreakPair& p : ps.pairs) {
        targets.push_back(p.beta);
        targets.push_back(p.omega);
    }
    long horizon = cfg.effective_horizon(f.bp_all().size());
    for (size_t i = 0; i < ps.pairs.size(); ++i) {
        for (int t : orbit_hits(f, ps.pairs[i].beta, targets, horizon))
            if (static_cast<size_t>(t) / 2 != i)
                return NotPair{"orbits of the beta points are not disjoint"};
    }
    return ps;
}

std::pair<long, Aiet> pair_power(const Aiet& f, const DynamicsConfig& cfg) {
    OrbitData od = orbit_segments(f, cfg);
    if (!od.periodic.empty())
        throw ValidationError("pair_power requires a map without periodic break points");
    long n_max = 0;
    for (const OrbitSegment& s : od.segments) {
        if (!s.delta_inv.is_zero())
            throw ValidationError("pair_power requires bounded BP0 growth (Delta invariant "
                                  "nonzero at " + s.initial.str() + ")");
        n_max = std::max(n_max, s.length);
    }
    // The lemma guarantees q = N+1 works; we return the smallest q that does.
    for (long q = 1; q <= n_max + 1; ++q) {
        Aiet F = power(f, q, cfg.guard);
        if (std::holds_alternative<PairStructure>(pair_property_check(F, cfg))) return {q, F};
    }
    throw ValidationError("no iterate up to N+1 satisfies the pair property");
}

Aiet removal_conjugator(const Aiet& F, const PairStructure& ps, size_t i, size_t guard) {
    if (i >= ps.pairs.size()) throw ValidationError("pair index out of range");
    const BreakPair& p = ps.pairs[i];
    if (!p.removable) throw ValidationError("pair is not removable");
    const Scalar& wi = p.omega;
    Scalar wp = p.pi == 0 ? Scalar(1) : ps.pairs[p.pi].omega;
    if (wp < wi) return three_block(wp, wi);

    // Wrapped case: cut the circle at the smallest omega_j inside (wi, wp).
    Scalar wj;
    bool found = false;
    for (const BreakPair& q : ps.pairs)
        if (wi < q.omega && q.omega < wp && (!found || q.omega < wj)) {
            wj = q.omega;
            found = true;
        }
    if (!found) throw ValidationError("pair is not removable");  // defensive
    // Work in the cut coordinates and stay there: E = Ecut o C keeps the cut
    // point at 0, so the removed pair does not reappear as a wrap jump.
    Aiet C = Aiet::rotation((Scalar(1) - wj).mod1());
    Aiet Ecut = three_block(wp - wj, wi - wj + Scalar(1));
    return compose(Ecut, C, guard);
}

std::pair<Aiet, Aiet> reduce_to_unremovable(const Aiet& F, const DynamicsConfig& cfg) {
    Aiet E_total = Aiet::identity();
    Aiet G = F;
    bool first = true;
    while (true) {
        PairCheck chk = pair_property_check(G, cfg);
        if (std::holds_alternative<NotPair>(chk))
            throw ValidationError((first ? "input lacks the pair property: "
                                         : "pair property lost during reduction: ") +
                                  std::get<NotPair>(chk).reason);
        const PairStructure& ps = std::get<PairStructure>(chk);
        size_t idx = ps.pairs.size();
        for (size_t i = 0; i < ps.pairs.size(); ++i)
            if (ps.pairs[i].removable) {
                idx = i;
                break;
            }
        if (idx == ps.pairs.size()) return {E_total, G};
        Aiet E = removal_conjugator(G, ps, idx, cfg.guard);
        size_t before = G.bp0().size();
        G = conjugate(G, E, cfg.guard);
        if (G.bp0().size() + 2 > before)
            throw ValidationError("removal failed to drop BP0 by 2");
        E_total = compose(E, E_total, cfg.guard);
        first = false;
    }
}

Aiet mask_to_interval(const Aiet& g, const Interval& I) {
    const Scalar zero(0), one(1);
    if (I.left == zero && I.right == one) return g;
    std::vector<Piece> pieces;
    if (zero < I.left) pieces.push_back({zero, one, zero});
    for (size_t i = 0; i < g.piece_count(); ++i) {
        const Piece& p = g.pieces()[i];
        Scalar right = i + 1 < g.piece_count() ? g.pieces()[i + 1].left : one;
        if (!(p.left < I.right) || !(I.left < right)) continue;
        Scalar lo = p.left < I.left ? I.left : p.left;
        pieces.push_back({lo, p.slope, p.intercept});
    }
    if (I.right < one) pieces.push_back({I.right, one, zero});
    return Aiet::from_pieces(std::move(pieces));
}

std::pair<long, std::vector<Component>> component_decomposition(const Aiet& G,
                                                                const DynamicsConfig& cfg) {
    PairCheck chk = pair_property_check(G, cfg);
    if (std::holds_alternative<NotPair>(chk))
        throw ValidationError("component_decomposition needs the pair property: " +
                              std::get<NotPair>(chk).reason);
    const PairStructure& ps = std::get<PairStructure>(chk);
    if (ps.has_removable())
        throw ValidationError("component_decomposition needs an unremovable structure");
    size_t s = ps.pairs.size();
    for (size_t i = 0; i < s; ++i)
        if (ps.pairs[i].pi != (i + 1) % s)
            throw ValidationError("component intervals do not tile [0,1)");

    std::vector<Interval> J(s);
    for (size_t i = 0; i < s; ++i)
        J[i] = {ps.pairs[i].omega, i + 1 < s ? ps.pairs[i + 1].omega : Scalar(1)};

    // The induced interval permutation: iota(i) = j with beta_j interior to J_i.
    std::vector<size_t> iota(s, s);
    for (size_t j = 0; j < s; ++j) {
        const Scalar& b = ps.pairs[j].beta;
        size_t host = s;
        for (size_t i = 0; i < s; ++i)
            if (J[i].left < b && b < J[i].right) host = i;
        if (host == s || iota[host] != s)
            throw ValidationError("component interval lacks a unique interior discontinuity");
        iota[host] = j;
    }

    long l = 1;
    {
        std::vector<size_t> acc(iota);
        auto is_id = [&] {
            for (size_t i = 0; i < s; ++i)
                if (acc[i] != i) return false;
            return true;
        };
        while (!is_id()) {
            for (size_t i = 0; i < s; ++i) acc[i] = iota[acc[i]];
            ++l;
        }
    }

    Aiet Gl = power(G, l, cfg.guard);
    std::vector<Component> comps;
    for (size_t i = 0; i < s; ++i) {
        Aiet gamma = mask_to_interval(Gl, J[i]);
        size_t interior = 0;
        for (const Scalar& x : gamma.bp0())
            if (J[i].left < x && x < J[i].right) ++interior;
        if (interior > 1)
            throw ValidationError("component is not a restricted PL-homeomorphism");
        comps.push_back({J[i], std::move(gamma)});
    }
    return {l, std::move(comps)};
}

LiDecomposition li_normal_form(const Aiet& f, const DynamicsConfig& cfg) {
    LiDecomposition out;
    std::vector<Scalar> v0 = f.bp0();
    if (v0 == std::vector<Scalar>{Scalar(0)}) {
        PeriodicStructure per = periodic_structure(f, cfg);
        if (!per.conclusive) throw HorizonExceeded("periodicity scan inconclusive: " + per.note);
        if (!per.per_empty())
            throw ValidationError("li_normal_form requires a map without periodic points");
        out.components.push_back({{Scalar(0), Scalar(1)}, f});
        return out;
    }
    auto [q, F] = pair_power(f, cfg);
    auto [E, G] = reduce_to_unremovable(F, cfg);
    auto [l, comps] = component_decomposition(G, cfg);

    Aiet product = Aiet::identity();
    for (const Component& c : comps) product = compose(c.gamma, product, cfg.guard);
    if (conjugate(power(f, q * l, cfg.guard), E, cfg.guard) != product)
        throw ValidationError("normal-form verification identity failed");

    out.power_q = q;
    out.conjugator = E;
    out.iterate_l = l;
    out.components = std::move(comps);
    return out;
}

}  // namespace aiet
