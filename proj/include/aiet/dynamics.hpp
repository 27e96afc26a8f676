#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aiet/map.hpp"

namespace aiet {

struct HorizonExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DynamicsConfig {
    long horizon = 0;       // 0: use 50 * (#BP(f))^2
    long max_period = 64;
    size_t guard = kDefaultPieceGuard;

    long effective_horizon(size_t bp_count) const {
        return horizon > 0 ? horizon : 50 * static_cast<long>(bp_count * bp_count);
    }
};

/// Exact fixed set of one map: whole fixed intervals plus isolated points.
struct FixedRegion {
    std::vector<Interval> intervals;
    std::vector<Scalar> points;

    bool empty() const { return intervals.empty() && points.empty(); }
    bool operator==(const FixedRegion&) const = default;
};

FixedRegion fixed_points(const Aiet& f);

enum class Side { Left, Right };

struct SemiHyperbolicPoint {
    Scalar point;
    long period;
    Side side;
    Scalar derivative;  // one-sided derivative of f^period at the point, != 1
};

struct PeriodicStructure {
    bool conclusive = false;
    long period = 0;  // stabilized p with Per(f) = Fix(f^p), when conclusive
    std::vector<Interval> fixed_intervals;
    std::vector<Scalar> isolated_points;
    std::vector<SemiHyperbolicPoint> semi_hyperbolic;
    std::string note;

    bool per_empty() const { return fixed_intervals.empty() && isolated_points.empty(); }
};

PeriodicStructure periodic_structure(const Aiet& f, const DynamicsConfig& cfg = {});

/// The break-point orbit data driving the growth dichotomy. `initial` is an
/// initial break point (backward orbit certified outside BP(f) up to the
/// horizon), `points` is the segment a, f(a), ..., f^{N_a}(a).
struct OrbitSegment {
    Scalar initial;
    long length = 0;  // N_a
    std::vector<Scalar> points;
    std::vector<Scalar> hits;  // segment points lying in BP(f)
    Scalar delta_inv;          // Delta_{f^{N_a+1}}(initial)
    Scalar pi_inv;             // product of sigma_f over the segment
};

struct PeriodicBreakPoint {
    Scalar point;
    long period;
};

struct OrbitData {
    std::vector<OrbitSegment> segments;
    std::vector<PeriodicBreakPoint> periodic;
};

/// Partitions BP(f) into orbit segments and periodic break points. Throws
/// HorizonExceeded when exploration cannot separate classes within the horizon.
OrbitData orbit_segments(const Aiet& f, const DynamicsConfig& cfg = {});

struct GrowthClass {
    enum Kind { Bounded, Linear, Inconclusive } kind = Inconclusive;
    long bound = 0;                       // Bounded: #BP(f^n) <= bound for all n
    std::optional<OrbitSegment> witness;  // Linear: #BP(f^n) >= n - N_a
    std::string note;
};

GrowthClass classify_bp_growth(const Aiet& f, const DynamicsConfig& cfg = {});

/// #BP(f^n) for n = 1..n_max, by exact repeated composition.
std::vector<long> bp_count_sequence(const Aiet& f, long n_max,
                                    size_t guard = kDefaultPieceGuard);

/// Indices of targets met by the orbit of x (both directions, x itself
/// excluded), explored under the same gap rule as orbit_segments.
std::vector<int> orbit_hits(const Aiet& f, const Scalar& x, const std::vector<Scalar>& targets,
                            long horizon);

/// Both sides of Delta_{f^n}(f^{-k}(a)) = Delta_{f^{n-k}}(a), computed
/// independently on exact powers.
std::pair<Scalar, Scalar> lemma_delta2_check(const Aiet& f, const Scalar& a, long n, long k,
                                             size_t guard = kDefaultPieceGuard);

}  // namespace aiet
