#include "aiet/map.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace aiet {

const char* shape_kind_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::IET: return "IET";
        case ShapeKind::PLHomeo: return "PLHomeo";
        case ShapeKind::RestrictedPLHomeo: return "RestrictedPLHomeo";
        case ShapeKind::RestrictedRotation: return "RestrictedRotation";
        case ShapeKind::General: return "General";
    }
    return "?";
}

void Aiet::canonicalize() {
    std::vector<Piece> merged;
    for (auto& p : pieces_) {
        if (!merged.empty() && merged.back().same_law(p)) continue;
        merged.push_back(std::move(p));
    }
    pieces_ = std::move(merged);
}

Aiet Aiet::from_pieces(std::vector<Piece> pieces) {
    if (pieces.empty()) throw ValidationError("an AIET needs at least one piece");
    const Scalar zero(0), one(1);
    if (pieces.front().left != zero) throw ValidationError("first piece must start at 0");
    for (size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].slope.sign() <= 0) throw ValidationError("slopes must be positive");
        if (i + 1 < pieces.size() && !(pieces[i].left < pieces[i + 1].left))
            throw ValidationError("piece left endpoints must be strictly increasing");
        if (pieces[i].left < zero || !(pieces[i].left < one))
            throw ValidationError("piece left endpoints must lie in [0,1)");
    }
    // Image intervals [f(a_i), f_-(a_{i+1})) must tile [0,1) exactly.
    std::vector<Interval> images;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const Scalar& right = i + 1 < pieces.size() ? pieces[i + 1].left : one;
        images.push_back({pieces[i].apply(pieces[i].left), pieces[i].apply(right)});
    }
    std::sort(images.begin(), images.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    if (images.front().left != zero) throw ValidationError("image does not start at 0");
    for (size_t i = 0; i + 1 < images.size(); ++i)
        if (images[i].right != images[i + 1].left)
            throw ValidationError("image intervals overlap or leave a gap at " +
                                  images[i].right.str());
    if (images.back().right != one) throw ValidationError("image does not end at 1");
    return Aiet(std::move(pieces), Trusted{});
}

Aiet Aiet::rotation(const Scalar& alpha) {
    const Scalar zero(0), one(1);
    if (alpha < zero || !(alpha < one)) throw ValidationError("rotation angle must lie in [0,1)");
    if (alpha.is_zero()) return identity();
    return Aiet({Piece{zero, one, alpha}, Piece{one - alpha, one, alpha - one}}, Trusted{});
}

Aiet Aiet::restricted_rotation(const Scalar& a, const Scalar& b, const Scalar& delta) {
    const Scalar zero(0), one(1);
    if (!(zero <= a && a < b && b <= one))
        throw ValidationError("restricted rotation needs 0 <= a < b <= 1");
    if (!(zero < delta && delta < b - a))
        throw ValidationError("restricted rotation needs 0 < delta < b - a");
    std::vector<Piece> pieces;
    if (zero < a) pieces.push_back({zero, one, zero});
    pieces.push_back({a, one, delta});
    pieces.push_back({b - delta, one, delta - (b - a)});
    if (b < one) pieces.push_back({b, one, zero});
    return Aiet(std::move(pieces), Trusted{});
}

Aiet Aiet::iet_from_lengths(const std::vector<int>& perm, const std::vector<Scalar>& lengths) {
    size_t n = lengths.size();
    if (perm.size() != n || n == 0) throw ValidationError("permutation/length size mismatch");
    std::vector<bool> seen(n, false);
    for (int idx : perm) {
        if (idx < 1 || static_cast<size_t>(idx) > n || seen[idx - 1])
            throw ValidationError("not a permutation of 1..n");
        seen[idx - 1] = true;
    }
    Scalar total(0);
    std::vector<Scalar> lefts(n);
    for (size_t i = 0; i < n; ++i) {
        if (lengths[i].sign() <= 0) throw ValidationError("interval lengths must be positive");
        lefts[i] = total;
        total += lengths[i];
    }
    if (!total.is_one()) throw ValidationError("interval lengths must sum to 1");
    // perm[k] is the domain interval placed k-th in the image.
    std::vector<Scalar> image_left(n);
    Scalar acc(0);
    for (size_t k = 0; k < n; ++k) {
        image_left[perm[k] - 1] = acc;
        acc += lengths[perm[k] - 1];
    }
    std::vector<Piece> pieces;
    for (size_t i = 0; i < n; ++i)
        pieces.push_back({lefts[i], Scalar(1), image_left[i] - lefts[i]});
    return Aiet(std::move(pieces), Trusted{});
}

Aiet Aiet::two_slope_map(const Scalar& l1, const Scalar& l2) {
    const Scalar one(1);
    if (l1.sign() <= 0 || l2.sign() <= 0) throw ValidationError("two-slope map needs positive slopes");
    if (l1 == one && l2 == one) return identity();
    if (((l1 - one) * (l2 - one)).sign() >= 0)
        throw ValidationError("two-slope map needs (lambda1-1)(lambda2-1) < 0");
    Scalar c = l2 * (l1 - one) / (l1 - l2);
    Scalar wrap = (one - c) / l1;  // B(wrap) = 0 from the upper branch's end
    if (!(Scalar(0) < c && c < one && Scalar(0) < wrap && wrap < one))
        throw ValidationError("two-slope parameters admit no circle homeomorphism");
    return Aiet({Piece{Scalar(0), l1, c}, Piece{wrap, l2, -(l2 * wrap)}}, Trusted{});
}

const Piece& Aiet::piece_at(const Scalar& x) const {
    if (x.sign() < 0 || !(x < Scalar(1)))
        throw ValidationError("point outside [0,1): " + x.str());
    // Last piece with left <= x.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Scalar& v, const Piece& p) { return v < p.left; });
    return *std::prev(it);
}

Scalar Aiet::eval_left(const Scalar& x) const {
    if (x.sign() <= 0 || x > Scalar(1))
        throw ValidationError("left limit needs a point in (0,1]: " + x.str());
    // Last piece with left < x; the law there gives the left limit.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Scalar& v, const Piece& p) { return !(p.left < v); });
    return std::prev(it)->apply(x);
}

SidedValues Aiet::eval_sided(const Scalar& x) const {
    const Piece& right = piece_at(x);
    SidedValues v;
    v.f_plus = right.apply(x);
    v.d_plus = right.slope;
    if (x.is_zero()) {
        v.f_minus = pieces_.back().apply(Scalar(1));
        v.d_minus = pieces_.back().slope;
    } else {
        auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                   [](const Scalar& a, const Piece& p) { return !(p.left < a); });
        const Piece& leftp = *std::prev(it);
        v.f_minus = leftp.apply(x);
        v.d_minus = leftp.slope;
    }
    v.delta = v.f_plus - v.f_minus;
    v.sigma = v.d_plus / v.d_minus;
    return v;
}

Aiet Aiet::inverse() const {
    struct Img {
        Scalar left;
        Scalar slope, intercept;  // inverse law
    };
    std::vector<Img> imgs;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        Scalar inv_slope = p.slope.inverse();
        imgs.push_back({p.apply(p.left), inv_slope, -(p.intercept * inv_slope)});
    }
    std::sort(imgs.begin(), imgs.end(), [](const Img& a, const Img& b) { return a.left < b.left; });
    std::vector<Piece> pieces;
    for (auto& im : imgs) pieces.push_back({im.left, im.slope, im.intercept});
    return Aiet(std::move(pieces), Trusted{});
}

Aiet compose(const Aiet& f, const Aiet& g, size_t guard) {
    std::vector<Piece> pieces;
    const Scalar one(1);
    for (size_t i = 0; i < g.pieces().size(); ++i) {
        const Piece& pg = g.pieces()[i];
        const Scalar& right = i + 1 < g.pieces().size() ? g.pieces()[i + 1].left : one;
        Scalar img_lo = pg.apply(pg.left);
        Scalar img_hi = pg.apply(right);
        // Cut the g-piece at preimages of f's break points inside its image.
        std::vector<Scalar> cuts{pg.left};
        for (const Piece& pf : f.pieces()) {
            if (img_lo < pf.left && pf.left < img_hi)
                cuts.push_back((pf.left - pg.intercept) / pg.slope);
        }
        std::sort(cuts.begin(), cuts.end());
        for (const Scalar& x0 : cuts) {
            const Piece& pf = f.piece_at(pg.apply(x0));
            pieces.push_back({x0, pf.slope * pg.slope, pf.slope * pg.intercept + pf.intercept});
        }
        if (pieces.size() > guard) throw GuardExceeded(pieces.size());
    }
    return Aiet(std::move(pieces), Aiet::Trusted{});
}

Aiet power(const Aiet& f, long n, size_t guard) {
    Aiet base = n < 0 ? f.inverse() : f;
    long k = n < 0 ? -n : n;
    Aiet acc = Aiet::identity();
    for (long i = 0; i < k; ++i) acc = compose(base, acc, guard);
    return acc;
}

Aiet conjugate(const Aiet& f, const Aiet& h, size_t guard) {
    return compose(h, compose(f, h.inverse(), guard), guard);
}

BreakData Aiet::breakpoints() const {
    BreakData bd;
    auto record = [&](const Scalar& x) {
        SidedValues v = eval_sided(x);
        bool in0 = x.is_zero() || !v.delta.is_zero();
        bool in1 = x.is_zero() || !v.sigma.is_one();
        if (in0) {
            bd.bp0.push_back(x);
            bd.delta.emplace_back(x, v.delta);
        }
        if (in1) {
            bd.bp1.push_back(x);
            bd.sigma.emplace_back(x, v.sigma);
        }
    };
    record(Scalar(0));
    for (size_t i = 1; i < pieces_.size(); ++i) record(pieces_[i].left);
    return bd;
}

std::vector<Scalar> Aiet::bp0() const { return breakpoints().bp0; }
std::vector<Scalar> Aiet::bp1() const { return breakpoints().bp1; }

std::vector<Scalar> Aiet::bp_all() const {
    BreakData bd = breakpoints();
    std::vector<Scalar> all;
    std::set_union(bd.bp0.begin(), bd.bp0.end(), bd.bp1.begin(), bd.bp1.end(),
                   std::back_inserter(all));
    return all;
}

std::vector<Scalar> Aiet::slopes() const {
    std::vector<Scalar> s;
    for (const Piece& p : pieces_) s.push_back(p.slope);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool Aiet::is_iet() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [](const Piece& p) { return p.slope.is_one(); });
}

std::vector<Interval> Aiet::support() const {
    std::vector<Interval> out;
    const Scalar one(1);
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].is_identity_law()) continue;
        const Scalar& right = i + 1 < pieces_.size() ? pieces_[i + 1].left : one;
        if (!out.empty() && out.back().right == pieces_[i].left)
            out.back().right = right;
        else
            out.push_back({pieces_[i].left, right});
    }
    return out;
}

bool Aiet::is_circle_homeo() const {
    const Scalar zero(0), one(1);
    for (size_t i = 0; i < pieces_.size(); ++i) {
        SidedValues v = eval_sided(pieces_[i].left);
        if (v.delta.is_zero()) continue;
        // The unique wrap discontinuity has f_+ = 0 and f_- = 1 (mod-1 continuity);
        // at the interval origin f_-(1) plays the role of the left limit.
        if (v.f_plus == zero && v.f_minus == one) continue;
        return false;
    }
    return true;
}

Shape Aiet::classify_shape() const {
    Shape shape;
    if (is_circle_homeo()) {
        shape.kind = ShapeKind::PLHomeo;
        return shape;
    }
    std::vector<Interval> supp = support();
    if (supp.size() == 1) {
        const Interval& I = supp.front();
        Scalar delta = eval(I.left) - I.left;
        if (is_iet() && Scalar(0) < delta && delta < I.length() &&
            *this == restricted_rotation(I.left, I.right, delta)) {
            shape.kind = ShapeKind::RestrictedRotation;
            shape.support = I;
            shape.delta = delta;
            return shape;
        }
        int interior_bp0 = 0;
        for (const Scalar& x : bp0())
            if (I.left < x && x < I.right) ++interior_bp0;
        if (interior_bp0 <= 1) {
            shape.kind = ShapeKind::RestrictedPLHomeo;
            shape.support = I;
            return shape;
        }
    }
    if (is_iet()) {
        shape.kind = ShapeKind::IET;
        return shape;
    }
    shape.kind = ShapeKind::General;
    return shape;
}

Aiet restrict_to_unit(const Aiet& f, const Interval& I) {
    const Scalar w = I.length();
    if (w.sign() <= 0) throw ValidationError("empty interval");
    for (const Interval& s : f.support())
        if (s.left < I.left || s.right > I.right)
            throw ValidationError("map is not supported inside the interval");
    std::vector<Piece> pieces;
    bool at_left_edge = false;
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        const Piece& p = f.pieces()[i];
        const Scalar& right = i + 1 < f.pieces().size() ? f.pieces()[i + 1].left : Scalar(1);
        if (!(p.left < I.right) || !(I.left < right)) continue;
        Scalar lo = std::max(p.left, I.left);
        pieces.push_back({(lo - I.left) / w, p.slope,
                          (p.slope * I.left + p.intercept - I.left) / w});
        if (lo == I.left) at_left_edge = true;
    }
    if (!at_left_edge || pieces.front().left != Scalar(0))
        throw ValidationError("interval is not tiled by pieces");
    return Aiet::from_pieces(std::move(pieces));
}

Aiet embed_from_unit(const Aiet& g, const Interval& I) {
    const Scalar w = I.length();
    if (w.sign() <= 0) throw ValidationError("empty interval");
    std::vector<Piece> pieces;
    if (I.left.sign() > 0) pieces.push_back({Scalar(0), Scalar(1), Scalar(0)});
    for (const Piece& p : g.pieces()) {
        // y = s*x + t on the unit interval becomes, inside I,
        // Y = s*X + (I.left*(1 - s) + w*t).
        pieces.push_back({I.left + w * p.left, p.slope,
                          I.left * (Scalar(1) - p.slope) + w * p.intercept});
    }
    if (I.right < Scalar(1)) pieces.push_back({I.right, Scalar(1), Scalar(0)});
    return Aiet::from_pieces(std::move(pieces));
}

std::string Aiet::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Aiet& f) {
    for (size_t i = 0; i < f.pieces().size(); ++i) {
        const Piece& p = f.pieces()[i];
        if (i) os << "\n";
        os << p.left << " | " << p.slope << " | " << p.intercept;
    }
    return os;
}

}  // namespace aiet
