#include "aiet/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace aiet {

Scalar::Scalar(long num, long den) : a_(num, den), b_(0), d_(0) {
    if (den == 0) throw DivisionByZero();
    a_.canonicalize();
}

Scalar::Scalar(mpq_class a, mpq_class b, unsigned long d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    normalize();
}

void Scalar::normalize() {
    if (b_ == 0) {
        d_ = 0;
    } else if (d_ < 2) {
        throw ScalarError("radicand must be > 1 when the sqrt coefficient is nonzero");
    }
}

unsigned long Scalar::join_radicand(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw IncompatibleRadicands(x.d_, y.d_);
}

const mpq_class& Scalar::as_rational() const {
    if (d_ != 0) throw ScalarError("irrational value where a rational was required: " + str());
    return a_;
}

int Scalar::sign() const {
    int sa = sgn(a_);
    if (d_ == 0) return sa;
    int sb = sgn(b_);
    if (sa == 0) return sb;
    if (sb == 0) return sa;
    if (sa == sb) return sa;
    // Mixed signs: |a| vs |b|*sqrt(d) decided by comparing squares.
    mpq_class lhs = a_ * a_;
    mpq_class rhs = b_ * b_ * d_;
    int c = cmp(lhs, rhs);
    if (c == 0) throw ScalarError("radicand is a perfect square; not a quadratic irrational");
    // If a^2 > b^2 d the rational term dominates, otherwise the sqrt term does.
    return c > 0 ? sa : sb;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    d_ = join_radicand(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    d_ = join_radicand(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    unsigned long d = join_radicand(*this, o);
    mpq_class a = a_ * o.a_ + b_ * o.b_ * (d == 0 ? 0 : d);
    mpq_class b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (sign() == 0) throw DivisionByZero();
    if (d_ == 0) return Scalar(mpq_class(1 / a_));
    // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
    mpq_class norm = a_ * a_ - b_ * b_ * d_;
    if (norm == 0) throw ScalarError("radicand is a perfect square; not a quadratic irrational");
    return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::mod1() const {
    // floor of a + b sqrt(d): bracket by integers around the double estimate
    // and fix up with exact comparisons.
    mpz_class fl;
    if (d_ == 0) {
        mpz_fdiv_q(fl.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    } else {
        fl = static_cast<long>(std::floor(to_double()));
        while (*this < Scalar(mpq_class(fl))) fl -= 1;
        while (*this >= Scalar(mpq_class(fl + 1))) fl += 1;
    }
    return *this - Scalar(mpq_class(fl));
}

Scalar Scalar::sqrt_of(unsigned long n) {
    if (n == 0) return Scalar();
    unsigned long square_part = 1, free_part = 1;
    for (unsigned long p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            square_part *= p;
            n /= p * p;
        }
        if (n % p == 0) {
            free_part *= p;
            n /= p;
        }
    }
    free_part *= n;
    if (free_part == 1) return Scalar(mpq_class(square_part));
    return Scalar(mpq_class(0), mpq_class(square_part), free_part);
}

double Scalar::to_double() const {
    double v = a_.get_d();
    if (d_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
    return v;
}

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.is_rational()) return os << s.rat();
    if (s.rat() != 0) {
        os << s.rat() << (sgn(s.quad()) < 0 ? " - " : " + ");
        mpq_class b = abs(s.quad());
        if (b != 1) os << b << "*";
        return os << "sqrt(" << s.radicand() << ")";
    }
    if (s.quad() == -1)
        os << "-";
    else if (s.quad() != 1)
        os << s.quad() << "*";
    return os << "sqrt(" << s.radicand() << ")";
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (text.substr(pos, w.size()) == w) {
            pos += w.size();
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ScalarParseError("scalar parse error at offset " + std::to_string(pos) + ": " +
                               msg + " in \"" + std::string(text) + "\"");
    }

    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        return mpz_class(std::string(text.substr(start, pos - start)));
    }

    mpq_class rational() {
        mpq_class q(integer());
        if (eat('/')) {
            mpz_class den = integer();
            if (den == 0) fail("zero denominator");
            q /= den;
        }
        return q;
    }

    // One signed term: either a rational or a rational multiple of sqrt(d).
    Scalar term(bool negative) {
        skip_ws();
        mpq_class coef = 1;
        bool have_coef = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coef = rational();
            have_coef = true;
            if (!eat('*')) {
                skip_ws();
                if (!eat_word("sqrt")) {
                    if (negative) coef = -coef;
                    return Scalar(coef);
                }
                pos -= 4;  // un-eat; handled below
            }
        }
        if (eat_word("sqrt")) {
            if (!eat('(')) fail("expected ( after sqrt");
            mpz_class d = integer();
            if (!eat(')')) fail("expected ) after radicand");
            if (!d.fits_ulong_p() || d < 2) fail("radicand out of range");
            if (eat('/')) {
                mpz_class den = integer();
                if (den == 0) fail("zero denominator");
                coef /= den;
            }
            if (negative) coef = -coef;
            Scalar root = Scalar::sqrt_of(d.get_ui());
            return Scalar(coef) * root;
        }
        if (!have_coef) fail("expected a number");
        if (negative) coef = -coef;
        return Scalar(coef);
    }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
    Cursor c{text};
    Scalar result;
    bool first = true;
    while (!c.done()) {
        bool neg = false;
        if (c.eat('-'))
            neg = true;
        else if (!c.eat('+') && !first)
            c.fail("expected + or - between terms");
        result += c.term(neg);
        first = false;
    }
    if (first) c.fail("empty scalar");
    return result;
}

}  // namespace aiet
