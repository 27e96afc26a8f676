#pragma once

#include <gmpxx.h>

#include <vector>

#include "aiet/scalar.hpp"

namespace aiet {

struct PrimeOutsideBasis : ScalarError {
    using ScalarError::ScalarError;
};

/// Coordinates of a positive rational in the multiplicative group generated by
/// a set of primes: value = prod basis[j] ^ exponents[j].
struct ExponentVector {
    std::vector<unsigned long> basis;
    std::vector<long> exponents;

    mpq_class reconstruct() const;
};

/// Prime-exponent coordinates of q > 0 over the given primes. Throws
/// PrimeOutsideBasis if some prime factor of q is missing from the basis.
ExponentVector factor_exponents(const mpq_class& q, const std::vector<unsigned long>& basis);

/// Sorted set of all primes dividing any numerator or denominator.
std::vector<unsigned long> multiplicative_basis(const std::vector<mpq_class>& values);

}  // namespace aiet
