#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aiet/dynamics.hpp"
#include "aiet/normal_form.hpp"
#include "aiet/two_slope.hpp"

namespace aiet {

inline constexpr long kMaxBallRadius = 8;

/// A finite generating set of a subgroup; derived word-metric bounds are
/// recomputed exactly from the generators.
struct GeneratingSet {
    std::vector<Aiet> generators;

    Scalar inf_slope() const;  // smallest one-sided derivative over all generators
    Scalar sup_slope() const;  // largest one-sided derivative over all generators
    size_t max_breaks() const; // max #BP(g_i) (circle convention, 0 included)
};

struct EmpiricalParams {
    long probe_n = 0;
    double estimate = 0.0;  // the empirically estimated drift nu
};

/// A machine-checkable positive linear lower bound on word length:
/// l_S(f^n) >= coefficient * (n - offset).
struct Certificate {
    enum class Kind { SemiHyperbolic, BpGrowth, ExponentDrift, FiniteOrder, NormalFormRotations };

    Kind kind;
    double coefficient = 0.0;
    long offset = 0;
    bool exact = true;
    std::optional<EmpiricalParams> empirical_params;
    std::string witness;
    long order = 0;  // FiniteOrder only
};

const char* certificate_kind_name(Certificate::Kind k);

/// Exact product of the word over the generators; positive index k stands for
/// generators[k-1], negative for its inverse.  The rightmost letter applies
/// first.
Aiet word_evaluate(const GeneratingSet& gens, const std::vector<int>& word,
                   size_t guard = kDefaultPieceGuard);

/// Breadth-first enumeration of the ball of the given radius (<= 8) with
/// exact canonical-form deduplication; returns the word length of each target
/// or nullopt when not found within the radius.
std::vector<std::optional<long>> ball_word_lengths(const GeneratingSet& gens, long radius,
                                                   const std::vector<Aiet>& targets,
                                                   size_t guard = kDefaultPieceGuard);

/// Undistortedness via a semi-hyperbolic periodic point (period l, one-sided
/// derivative lambda != 1): kappa = |ln lambda| / (l * max(|ln inf|, |ln sup|)).
std::optional<Certificate> semi_hyperbolic_certificate(const Aiet& f, const GeneratingSet& gens,
                                                       const DynamicsConfig& cfg = {});

/// Undistortedness via linear break-point growth: #BP(f^n) >= n - N_a while
/// #BP(g) <= l_S(g) * max #BP(g_i), so kappa = 1 / max #BP(g_i), offset N_a.
std::optional<Certificate> bp_growth_certificate(const Aiet& f, const GeneratingSet& gens,
                                                 const DynamicsConfig& cfg = {});

/// Undistortedness via slope-exponent drift: |N_j(D+ b^n(x))| <= l_S(b^n) * S
/// with S the largest generator exponent, while N_j(D+ b^n(x))/n -> nu != 0.
std::optional<Certificate> drift_certificate(const Aiet& b, const GeneratingSet& gens,
                                             const std::vector<unsigned long>& basis,
                                             const Scalar& x, long n_probe);

/// The periodic/aperiodic splitter: an IET S sorting the connected components
/// of Per(f) = Fix(f^p) to the front, so that g = S f^p S^{-1} fixes [0, a)
/// pointwise and has no periodic points on [a, 1).
struct SplitResult {
    Aiet s;
    long p = 1;
    Scalar a;  // fixed prefix: Fix(g) = [0, a)
    Aiet g;    // S f^p S^{-1}
};

SplitResult split_periodic(const Aiet& f, const DynamicsConfig& cfg = {});

/// One factor of the final normal form, supported on `support` in the
/// original coordinates of [0,1).
struct ThComponent {
    Interval support;
    Aiet map;            // the factor, identity outside support
    bool is_rotation = false;
    Scalar delta;        // translation on support when is_rotation
    Scalar angle;        // delta / |support| (the rotation angle of the unit chart)
    std::optional<Certificate> drift;  // candidate when two slopes remain
};

struct ThNormalForm {
    long power = 0;      // k = p * q * l
    Aiet conjugator;     // H o E o S with conjugate(power(f, k), conjugator) = product of factors
    Scalar fixed_prefix; // a: the conjugated power is the identity on [0, a)
    std::vector<ThComponent> components;
    bool all_rotations = false;
};

/// The full normal-form pipeline: split off the periodic part, reduce the
/// aperiodic part to disjoint restricted PL-homeomorphisms, and PL-conjugate
/// each factor to its two-slope form.  When every factor ends with slopes {1}
/// the result is a product of restricted rotations with exact angles.
ThNormalForm normal_form_theorem_th(const Aiet& f, const DynamicsConfig& cfg = {},
                                    long drift_n = 20000);

struct ClassifyResult {
    enum class Verdict { FiniteOrder, Undistorted, Inconclusive };

    Verdict verdict = Verdict::Inconclusive;
    long order = 0;  // when FiniteOrder
    std::optional<Certificate> certificate;
    std::string note;  // stage trace
};

/// The rational-AIET classifier: exact finite-order detection through the
/// normal form (blind iteration to 64 as a fast path), then the certificate
/// cascade.  Never returns a "distorted" verdict.
ClassifyResult classify_rational(const Aiet& f, const DynamicsConfig& cfg = {},
                                 long drift_n = 20000);

/// Exact check of the Baumslag-Solitar relation b a^m b^{-1} = a^n.
bool bs_relation_check(const Aiet& a, const Aiet& b, long m, long n,
                       size_t guard = kDefaultPieceGuard);

struct BsObstruction {
    bool relation_holds = false;
    bool decomposed = false;       // a is a product of restricted rotations
    std::optional<long> s;         // b^s maps each support to itself with slopes 1
    bool contradiction = false;    // some (m^s -+ n^s) * angle_i never lands in Z
    std::vector<std::string> details;
    std::string note;
};

/// The spectral obstruction of Lemma 9.1: given a = product of restricted
/// rotations and the relation b a^m b^{-1} = a^n, finds s <= s_max with b^s
/// Lebesgue-preserving on each support and tests (m^s -+ n^s) * (alpha_i/l_i)
/// against Z for both signs.
BsObstruction bs_obstruction(const Aiet& a, const Aiet& b, long m, long n, long s_max,
                             size_t guard = kDefaultPieceGuard);

struct NilpotentReport {
    bool central = false;        // c = [u,v] commutes with u and v
    Aiet c;
    bool identity_holds = false; // [u^p, v^q] == c^{p q}
    std::vector<std::pair<long, bool>> distortion_witness;  // c^{n^2} == [u^n, v^n], n <= 5
    std::string note;
};

/// Exact instance check of the nilpotency claim [u^p, v^q] = c^{pq} with
/// c = [u, v] = u v u^{-1} v^{-1}, plus the distortion witness sequence.
NilpotentReport nilpotent_commutator_check(const Aiet& u, const Aiet& v, long p, long q,
                                           size_t guard = kDefaultPieceGuard);

}  // namespace aiet
