#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aiet/scalar.hpp"

namespace aiet {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(size_t n)
        : std::runtime_error("piece-count guard exceeded: " + std::to_string(n) + " pieces") {}
};

inline constexpr size_t kDefaultPieceGuard = 100000;

/// One affine law x -> slope*x + intercept on [left, next piece's left).
struct Piece {
    Scalar left, slope, intercept;

    Scalar apply(const Scalar& x) const { return slope * x + intercept; }
    bool same_law(const Piece& o) const { return slope == o.slope && intercept == o.intercept; }
    bool is_identity_law() const { return slope.is_one() && intercept.is_zero(); }
    bool operator==(const Piece&) const = default;
};

/// One-sided data at a point, with the circle convention at 0: the left data
/// of f at 0 is taken at 1^-.
struct SidedValues {
    Scalar f_plus, f_minus, d_plus, d_minus;
    Scalar delta;  // f_plus - f_minus
    Scalar sigma;  // d_plus / d_minus
};

struct Interval {
    Scalar left, right;  // [left, right)
    Scalar length() const { return right - left; }
    bool operator==(const Interval&) const = default;
};

struct BreakData {
    std::vector<Scalar> bp0, bp1;                  // sorted, each contains 0
    std::vector<std::pair<Scalar, Scalar>> delta;  // (x, Delta_f(x)) for x in bp0
    std::vector<std::pair<Scalar, Scalar>> sigma;  // (x, sigma_f(x)) for x in bp1
};

enum class ShapeKind { IET, PLHomeo, RestrictedPLHomeo, RestrictedRotation, General };

struct Shape {
    ShapeKind kind = ShapeKind::General;
    std::optional<Interval> support;  // single-interval support for restricted kinds
    std::optional<Scalar> delta;      // rotation amount for RestrictedRotation
};

const char* shape_kind_name(ShapeKind k);

/// An affine interval exchange transformation of [0,1): a bijection that is
/// increasing and affine with positive slope on finitely many half-open
/// intervals. Canonical form: adjacent pieces with equal laws are merged, so
/// equality of canonical forms is equality of maps.
class Aiet {
  public:
    Aiet() : pieces_{Piece{Scalar(0), Scalar(1), Scalar(0)}} {}

    static Aiet identity() { return Aiet(); }
    static Aiet from_pieces(std::vector<Piece> pieces);
    static Aiet rotation(const Scalar& alpha);
    static Aiet restricted_rotation(const Scalar& a, const Scalar& b, const Scalar& delta);
    static Aiet iet_from_lengths(const std::vector<int>& perm, const std::vector<Scalar>& lengths);
    static Aiet two_slope_map(const Scalar& lambda1, const Scalar& lambda2);

    const std::vector<Piece>& pieces() const { return pieces_; }
    size_t piece_count() const { return pieces_.size(); }
    bool is_identity() const { return pieces_.size() == 1 && pieces_[0].is_identity_law(); }

    const Piece& piece_at(const Scalar& x) const;  // x in [0,1)
    Scalar eval(const Scalar& x) const { return piece_at(x).apply(x); }
    Scalar operator()(const Scalar& x) const { return eval(x); }
    /// Left limit f_-(x) for x in (0,1].
    Scalar eval_left(const Scalar& x) const;
    SidedValues eval_sided(const Scalar& x) const;
    Scalar delta_at(const Scalar& x) const { return eval_sided(x).delta; }
    Scalar sigma_at(const Scalar& x) const { return eval_sided(x).sigma; }

    Aiet inverse() const;

    BreakData breakpoints() const;
    std::vector<Scalar> bp0() const;
    std::vector<Scalar> bp1() const;
    std::vector<Scalar> bp_all() const;  // bp0 union bp1
    std::vector<Scalar> slopes() const;  // distinct slopes, sorted
    std::vector<Interval> support() const;
    Shape classify_shape() const;
    /// True when the induced map of the circle [0,1]/(0=1) is a homeomorphism.
    bool is_circle_homeo() const;
    bool is_iet() const;

    bool operator==(const Aiet&) const = default;

    /// One piece per line: "left | slope | intercept".
    std::string str() const;

  private:
    struct Trusted {};
    Aiet(std::vector<Piece> pieces, Trusted) : pieces_(std::move(pieces)) { canonicalize(); }
    void canonicalize();
    friend Aiet compose(const Aiet&, const Aiet&, size_t);

    std::vector<Piece> pieces_;
};

/// f after g: eval(compose(f,g), x) == f(g(x)).
Aiet compose(const Aiet& f, const Aiet& g, size_t guard = kDefaultPieceGuard);
/// Repeated composition, n in Z; power(f, 0) is the identity.
Aiet power(const Aiet& f, long n, size_t guard = kDefaultPieceGuard);
/// h o f o h^-1.
Aiet conjugate(const Aiet& f, const Aiet& h, size_t guard = kDefaultPieceGuard);

/// For f supported inside I with f(I) = I: the restriction of f to I carried
/// onto [0,1) by the direct affine map I -> [0,1).
Aiet restrict_to_unit(const Aiet& f, const Interval& I);
/// Inverse of restrict_to_unit: a map of [0,1) carried into I, identity outside.
Aiet embed_from_unit(const Aiet& g, const Interval& I);

std::ostream& operator<<(std::ostream& os, const Aiet& f);

}  // namespace aiet
