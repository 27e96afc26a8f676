#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aiet {

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IncompatibleRadicands : ScalarError {
    IncompatibleRadicands(unsigned long d1, unsigned long d2)
        : ScalarError("incompatible radicands: sqrt(" + std::to_string(d1) +
                      ") vs sqrt(" + std::to_string(d2) + ")") {}
};

struct DivisionByZero : ScalarError {
    DivisionByZero() : ScalarError("division by zero") {}
};

struct ScalarParseError : ScalarError {
    using ScalarError::ScalarError;
};

/// A number in Q or Q(sqrt(d)) for a square-free d > 1, stored as a + b*sqrt(d)
/// with exact rational components. b == 0 is normalized to the rational form
/// (d == 0). Ordering is total and decided by exact rational comparisons only.
class Scalar {
  public:
    Scalar() : a_(0), b_(0), d_(0) {}
    Scalar(long n) : a_(n), b_(0), d_(0) {}
    Scalar(long num, long den);
    explicit Scalar(mpq_class q) : a_(std::move(q)), b_(0), d_(0) { a_.canonicalize(); }
    Scalar(mpq_class a, mpq_class b, unsigned long d);

    /// sqrt(n) for a positive integer n, with the square part extracted
    /// (sqrt(8) -> 2*sqrt(2), sqrt(9) -> 3).
    static Scalar sqrt_of(unsigned long n);

    static Scalar parse(std::string_view text);

    bool is_rational() const { return d_ == 0; }
    bool is_integer() const { return d_ == 0 && a_.get_den() == 1; }
    const mpq_class& rat() const { return a_; }
    const mpq_class& quad() const { return b_; }
    unsigned long radicand() const { return d_; }

    /// The rational value; throws if the number is irrational.
    const mpq_class& as_rational() const;

    int sign() const;
    bool is_zero() const { return d_ == 0 && a_ == 0; }
    bool is_one() const { return d_ == 0 && a_ == 1; }

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
        if (x == y) return std::strong_ordering::equal;
        int s = (x - y).sign();
        return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    Scalar inverse() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    /// Fractional part in [0, 1): x - floor(x).
    Scalar mod1() const;

    double to_double() const;
    std::string str() const;

  private:
    void normalize();
    // Matches the other operand's field; throws IncompatibleRadicands.
    static unsigned long join_radicand(const Scalar& x, const Scalar& y);

    mpq_class a_, b_;
    unsigned long d_;  // 0 for rationals, else square-free > 1
};

inline int compare(const Scalar& x, const Scalar& y) {
    auto c = x <=> y;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace aiet
