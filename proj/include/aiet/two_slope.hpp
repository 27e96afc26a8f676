#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "aiet/dynamics.hpp"
#include "aiet/exponent.hpp"
#include "aiet/map.hpp"

namespace aiet {

/// Prescribed circle break points and jumps for a PL-homeomorphism.
/// `breaks` is sorted with breaks[0] == 0 (the circle wrap point);
/// `jumps[i]` is the desired sigma at breaks[i].  A solution exists if and
/// only if the product of all jumps is 1.
struct JumpSpec {
    std::vector<Scalar> breaks;
    std::vector<Scalar> jumps;
};

/// Builds the PL-homeomorphism H with the prescribed jumps.  Slopes are
/// solved from lambda_{i+1} = sigma_i * lambda_i together with total image
/// length 1; the wrap jump sigma_0 = lambda_1 / lambda_{p+1} is implied by
/// the product condition and verified.  Normalization: H(0) = 0, or
/// H(*fix_point) = 0 when a fix point is given.
Aiet pl_from_jumps(const JumpSpec& spec,
                   const std::optional<Scalar>& fix_point = std::nullopt);

/// The global jump product Pi(f): the exact product, over every point of
/// every break-orbit segment of f, of the jump of f^{N+1} at that point
/// (N = the longest segment length).  Requires f to be a PL circle
/// homeomorphism with bounded break-point growth.
Scalar global_jump_product(const Aiet& f, const DynamicsConfig& cfg = {});

struct MinakawaResult {
    Aiet h;                            // conjugator
    Aiet b;                            // b = h o f o h^{-1}
    Scalar product;                    // global jump product Pi(f)
    std::optional<Scalar> extra_break; // the added break c when the total jump product != 1
};

/// PL-conjugates a bounded-growth PL circle homeomorphism to its two-slope
/// normal form.  If the jump data cancels completely the result is a
/// rotation; otherwise b has exactly two slopes and its slope breaks lie in
/// {0, b^{-1}(0)}.
MinakawaResult minakawa_conjugate(const Aiet& f, const DynamicsConfig& cfg = {});

/// Wrap-count estimate of the rotation number: the fraction of the first
/// n_iters orbit points lying in [b^{-1}(0), 1).  Error is O(1/n) for circle
/// homeomorphisms.  The orbit runs in 256-bit floating point.
double rotation_number(const Aiet& b, long n_iters, const Scalar& seed = Scalar(0));

struct BoshernitzanReport {
    double omega = 0.0;
    double rho = 0.0;
    double max_deviation = 0.0;
    double tol = 0.0;
    long grid_n = 0;
    bool pass = false;
};

/// Checks that b equals h o R_rho o h^{-1} on a grid, where
/// h(x) = (omega^x - 1)/(omega - 1), omega = lambda1/lambda2 and
/// rho = ln(lambda1)/ln(omega).  Requires b to have exactly two slopes with
/// (lambda1 - 1)(lambda2 - 1) < 0.  Deviation is measured as circle distance.
BoshernitzanReport verify_boshernitzan(const Aiet& b, double tol, long grid_n);

/// Visit counts (N1, N2) of x, b(x), ..., b^{n-1}(x) to [0, a) and [a, 1),
/// where a = b^{-1}(0).
std::pair<long, long> birkhoff_visits(const Aiet& b, const Scalar& x, long n);

struct DriftResult {
    std::vector<unsigned long> basis;
    std::vector<long> counts;   // exponent coordinates of D+ b^n(x) over basis
    std::vector<double> drift;  // counts / n
    long n = 0;
};

/// Exponent coordinates of D+ b^n(x) = product of the slopes along the
/// orbit, factored over the prime basis, together with the per-iterate
/// drift counts/n.  All slopes of b must be rational and factor over basis.
DriftResult exponent_drift(const Aiet& b, const std::vector<unsigned long>& basis,
                           const Scalar& x, long n);

}  // namespace aiet
