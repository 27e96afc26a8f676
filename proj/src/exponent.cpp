#include "aiet/exponent.hpp"

#include <algorithm>
#include <set>

namespace aiet {

mpq_class ExponentVector::reconstruct() const {
    mpq_class v(1);
    for (size_t j = 0; j < basis.size(); ++j) {
        mpz_class p(basis[j]);
        mpz_class pw;
        long e = exponents[j];
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        if (e >= 0)
            v *= pw;
        else
            v /= pw;
    }
    return v;
}

ExponentVector factor_exponents(const mpq_class& q, const std::vector<unsigned long>& basis) {
    if (sgn(q) <= 0) throw ScalarError("factor_exponents requires a positive rational");
    ExponentVector ev{basis, std::vector<long>(basis.size(), 0)};
    mpz_class num = q.get_num(), den = q.get_den();
    for (size_t j = 0; j < basis.size(); ++j) {
        mpz_class p(basis[j]);
        while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
            num /= p;
            ++ev.exponents[j];
        }
        while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
            den /= p;
            --ev.exponents[j];
        }
    }
    if (num != 1 || den != 1)
        throw PrimeOutsideBasis("value " + q.get_str() +
                                " has a prime factor outside the basis (residue " +
                                num.get_str() + "/" + den.get_str() + ")");
    return ev;
}

namespace {

void collect_primes(mpz_class n, std::set<unsigned long>& out) {
    n = abs(n);
    for (mpz_class p = 2; p * p <= n;) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out.insert(p.get_ui());
            do n /= p;
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()));
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    if (n > 1) {
        if (!n.fits_ulong_p()) throw ScalarError("prime factor too large for basis: " + n.get_str());
        out.insert(n.get_ui());
    }
}

}  // namespace

std::vector<unsigned long> multiplicative_basis(const std::vector<mpq_class>& values) {
    std::set<unsigned long> primes;
    for (const auto& v : values) {
        if (sgn(v) <= 0) throw ScalarError("multiplicative_basis requires positive rationals");
        collect_primes(v.get_num(), primes);
        collect_primes(v.get_den(), primes);
    }
    return {primes.begin(), primes.end()};
}

}  // namespace aiet
