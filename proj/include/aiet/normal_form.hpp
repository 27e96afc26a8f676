#pragma once

#include <variant>
#include <vector>

#include "aiet/dynamics.hpp"
#include "aiet/map.hpp"

namespace aiet {

/// A break-point pair (beta, omega) with f(beta) = omega; pairs are sorted so
/// that 0 = omega_1 < omega_2 < ... < omega_s.
struct BreakPair {
    Scalar beta, omega;
    size_t pi = 0;  // 0-based: f_-(beta_i) = omega_{pi(i)}, or pi(i) = 0 when f_-(beta_i) = 1
    bool removable = false;
};

struct PairStructure {
    std::vector<BreakPair> pairs;

    bool has_removable() const {
        for (const BreakPair& p : pairs)
            if (p.removable) return true;
        return false;
    }
};

struct NotPair {
    std::string reason;
};

using PairCheck = std::variant<PairStructure, NotPair>;

PairCheck pair_property_check(const Aiet& f, const DynamicsConfig& cfg = {});

/// Smallest q <= N+1 (N the maximal segment length) with f^q satisfying the
/// pair property. Requires f aperiodic with vanishing Delta invariants.
std::pair<long, Aiet> pair_power(const Aiet& f, const DynamicsConfig& cfg = {});

/// The conjugating IET removing pair i: the 3-block exchange
/// (1,2,3) -> (1,3,2) over {0, omega_pi(i), omega_i}, composed with a circle
/// cut at an intermediate omega_j in the wrapped case.
Aiet removal_conjugator(const Aiet& F, const PairStructure& ps, size_t i,
                        size_t guard = kDefaultPieceGuard);

/// Applies removal_conjugator (lowest removable index first) until no pair is
/// removable. Returns (E_total, G) with G = conjugate(F, E_total).
std::pair<Aiet, Aiet> reduce_to_unremovable(const Aiet& F, const DynamicsConfig& cfg = {});

struct Component {
    Interval support;
    Aiet gamma;  // restricted PL-homeomorphism, identity outside support
};

struct LiDecomposition {
    long power_q = 1;
    Aiet conjugator;  // an IET E with conjugate(power(f, q*l), E) = product of gammas
    long iterate_l = 1;
    std::vector<Component> components;
};

/// Decomposes an unremovable pair-property map into the interval components
/// [omega_i, omega_{i+1}) and the iterate l with G^l fixing each of them.
std::pair<long, std::vector<Component>> component_decomposition(const Aiet& G,
                                                                const DynamicsConfig& cfg = {});

LiDecomposition li_normal_form(const Aiet& f, const DynamicsConfig& cfg = {});

/// The map equal to g on I and the identity elsewhere; requires g(I) = I.
Aiet mask_to_interval(const Aiet& g, const Interval& I);

}  // namespace aiet
