#pragma once

/**
 * @file endpoint.hpp
 * @brief Boundary points: rationals and quadratic surds, with exact sign
 *        determination, comparisons, approximation and separation helpers.
 *
 * A QuadSurd is a root of x^2 - s*x + p with positive nonsquare discriminant;
 * the lower branch is (s - sqrt(s^2-4p))/2, the upper its conjugate. Sign
 * queries reduce the polynomial mod the defining quadratic and compare
 * squares with sign bookkeeping; no general Q(sqrt(d)) arithmetic exists
 * anywhere.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "roots.hpp"

namespace pcert {

inline bool is_square_integer(const Integer& n, Integer* root = nullptr) {
    if (n < 0) return false;
    Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

/// True iff q is the square of a rational.
inline bool is_square_rational(const Rational& q) {
    if (q.is_negative()) return false;
    return is_square_integer(q.num()) && is_square_integer(q.den());
}

struct QuadSurd {
    Rational s;  // root of x^2 - s*x + p
    Rational p;
    bool upper;  // (s + sqrt(disc))/2 if true, conjugate otherwise

    Rational discriminant() const { return s * s - Rational(4) * p; }
    Polynomial min_poly() const { return Polynomial{p, -s, Rational(1)}; }
    QuadSurd conjugate() const { return {s, p, !upper}; }

    bool operator==(const QuadSurd& o) const { return s == o.s && p == o.p && upper == o.upper; }
};

/// Validated constructor; throws if the discriminant is <= 0 or a square
/// (the point would be rational, not a surd).
inline QuadSurd make_quad_surd(const Rational& s, const Rational& p, bool upper) {
    QuadSurd q{s, p, upper};
    Rational d = q.discriminant();
    if (d.sign() <= 0) throw std::domain_error("QuadSurd: discriminant must be positive");
    if (is_square_rational(d)) throw std::domain_error("QuadSurd: discriminant is a perfect square");
    return q;
}

class Endpoint {
public:
    Endpoint() : v_(Rational(0)) {}
    Endpoint(Rational r) : v_(std::move(r)) {}
    Endpoint(long long r) : v_(Rational(r)) {}
    Endpoint(QuadSurd s) : v_(std::move(s)) {}

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_surd() const { return !is_rational(); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const QuadSurd& surd() const { return std::get<QuadSurd>(v_); }

    bool operator==(const Endpoint& o) const { return v_ == o.v_; }

private:
    std::variant<Rational, QuadSurd> v_;
};

/// Exact sign of f at a quadratic surd: reduce f mod x^2-sx+p to u+vx and
/// decide sign(u + v*root) by comparing squares.
inline Sign sign_at(const Polynomial& f, const QuadSurd& r) {
    if (f.is_zero()) return Sign::Zero;
    Polynomial rem = poly_divrem(f, r.min_poly()).second;
    Rational u = rem.coeff(0), v = rem.coeff(1);
    // u + v*(s + sigma*sqrt(D))/2 = (A + w*sqrt(D))/2,  A = 2u+vs, w = sigma*v
    Rational A = Rational(2) * u + v * r.s;
    Rational w = r.upper ? v : -v;
    if (w.is_zero()) return sign_of(A);
    if (A.is_zero()) return sign_of(w);
    if (A.sign() == w.sign()) return sign_of(A);
    Rational cmp = A * A - w * w * r.discriminant();
    // cmp == 0 would force sqrt(D) rational, excluded by the invariant
    return cmp.is_positive() ? sign_of(A) : sign_of(w);
}

inline Sign sign_at(const Polynomial& f, const Endpoint& p) {
    return p.is_rational() ? sign_of(f(p.rational())) : sign_at(f, p.surd());
}

/// Starting isolating interval for the surd's branch; q(lo), q(hi) != 0.
inline IsolatingInterval surd_interval(const QuadSurd& r) {
    Polynomial q = r.min_poly();
    Rational half = r.s / Rational(2);
    if (r.upper) {
        Rational hi = half + Rational(1);
        while (sign_of(q(hi)) != Sign::Positive) hi = half + (hi - half) * Rational(2);
        return {half, hi, q};
    }
    Rational lo = half - Rational(1);
    while (sign_of(q(lo)) != Sign::Positive) lo = half - (half - lo) * Rational(2);
    return {lo, half, q};
}

/// Rational q strictly on the requested side with 0 < |q - root| < tol.
enum class Side { Below, Above };

inline Rational rational_approx_surd(const QuadSurd& r, const Rational& tol, Side side) {
    if (tol.sign() <= 0) throw std::domain_error("rational_approx_surd: tol must be positive");
    IsolatingInterval iv = refine(surd_interval(r), tol / Rational(2));
    return side == Side::Below ? iv.lo : iv.hi;
}

// ---- exact comparisons ----

inline std::strong_ordering endpoint_cmp(const Endpoint& a, const Endpoint& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() <=> b.rational();
    if (a.is_rational()) {
        // sign of (b - a) where b is the surd
        Sign s = sign_at(Polynomial{-a.rational(), Rational(1)}, b.surd());
        return s == Sign::Positive ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (b.is_rational()) {
        Sign s = sign_at(Polynomial{-b.rational(), Rational(1)}, a.surd());
        return s == Sign::Positive ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.surd() == b.surd()) return std::strong_ordering::equal;
    // distinct surds: refine both isolating windows until disjoint
    IsolatingInterval ia = surd_interval(a.surd());
    IsolatingInterval ib = surd_interval(b.surd());
    while (true) {
        if (ia.hi < ib.lo) return std::strong_ordering::less;
        if (ib.hi < ia.lo) return std::strong_ordering::greater;
        ia = refine(ia, ia.width() / Rational(4));
        ib = refine(ib, ib.width() / Rational(4));
    }
}

inline bool endpoint_lt(const Endpoint& a, const Endpoint& b) {
    return endpoint_cmp(a, b) == std::strong_ordering::less;
}
inline bool endpoint_eq(const Endpoint& a, const Endpoint& b) {
    return endpoint_cmp(a, b) == std::strong_ordering::equal;
}

/// Tightens iv until it lies strictly on one side of the rational q
/// (or collapses onto it); iv's root is assumed != q for termination
/// unless poly(q) == 0, which collapses exactly.
inline IsolatingInterval separate_from(IsolatingInterval iv, const Rational& q) {
    while (!iv.degenerate() && !(iv.hi < q) && !(q < iv.lo)) {
        if (sign_of(iv.poly(q)) == Sign::Zero && iv.lo <= q && q <= iv.hi) {
            // q is itself the isolated root
            iv.lo = iv.hi = q;
            return iv;
        }
        iv = refine(iv, iv.width() / Rational(4));
    }
    return iv;
}

// ---- extended bounds (-inf, point, +inf) ----

struct ExtBound {
    enum class Kind { NegInf, Point, PosInf } kind = Kind::Point;
    Endpoint point;

    static ExtBound neg_inf() { return {Kind::NegInf, {}}; }
    static ExtBound pos_inf() { return {Kind::PosInf, {}}; }
    static ExtBound at(Endpoint p) { return {Kind::Point, std::move(p)}; }
};

inline std::strong_ordering ext_cmp(const ExtBound& a, const ExtBound& b) {
    using K = ExtBound::Kind;
    auto rank = [](K k) { return k == K::NegInf ? -1 : (k == K::PosInf ? 1 : 0); };
    if (a.kind != K::Point || b.kind != K::Point) {
        int ra = rank(a.kind), rb = rank(b.kind);
        if (ra != rb) return ra <=> rb;
        if (a.kind != K::Point) return std::strong_ordering::equal;
    }
    return endpoint_cmp(a.point, b.point);
}

/// Number of distinct real roots of f in (lo, hi].
inline int sturm_count(const Polynomial& f, const ExtBound& lo, const ExtBound& hi) {
    if (f.is_zero()) throw std::domain_error("sturm_count of zero polynomial");
    if (!(ext_cmp(lo, hi) == std::strong_ordering::less))
        throw std::domain_error("sturm_count: lo must be < hi");
    auto chain = sturm_chain(f);
    auto variations = [&](const ExtBound& b, bool positive_side) {
        switch (b.kind) {
            case ExtBound::Kind::NegInf:
                return chain_variations_at_infinity(chain, false);
            case ExtBound::Kind::PosInf:
                return chain_variations_at_infinity(chain, true);
            case ExtBound::Kind::Point: {
                if (b.point.is_rational()) return chain_variations_at(chain, b.point.rational());
                std::vector<Sign> signs;
                signs.reserve(chain.size());
                for (const auto& p : chain) signs.push_back(sign_at(p, b.point.surd()));
                return sign_variations(signs);
            }
        }
        (void)positive_side;
        return 0;
    };
    return variations(lo, false) - variations(hi, true);
}

/// Rational strictly between two extended bounds.
inline Rational rational_between(const ExtBound& a, const ExtBound& b) {
    if (!(ext_cmp(a, b) == std::strong_ordering::less))
        throw std::domain_error("rational_between: a must be < b");
    using K = ExtBound::Kind;
    if (a.kind == K::NegInf && b.kind == K::PosInf) return Rational(0);
    if (a.kind == K::NegInf) {
        if (b.point.is_rational()) return b.point.rational() - Rational(1);
        return refine(surd_interval(b.point.surd()), Rational(1)).lo - Rational(1);
    }
    if (b.kind == K::PosInf) {
        if (a.point.is_rational()) return a.point.rational() + Rational(1);
        return refine(surd_interval(a.point.surd()), Rational(1)).hi + Rational(1);
    }
    const Endpoint& ea = a.point;
    const Endpoint& eb = b.point;
    if (ea.is_rational() && eb.is_rational())
        return (ea.rational() + eb.rational()) / Rational(2);
    // refine surd windows until they clear the other bound
    auto window = [&](const Endpoint& e) {
        return e.is_rational() ? IsolatingInterval{e.rational(), e.rational(), Polynomial{}}
                               : surd_interval(e.surd());
    };
    IsolatingInterval ia = window(ea), ib = window(eb);
    while (!(ia.hi < ib.lo)) {
        if (!ia.degenerate()) ia = refine(ia, ia.width() / Rational(4));
        if (!ib.degenerate()) ib = refine(ib, ib.width() / Rational(4));
        if (ia.degenerate() && ib.degenerate() && !(ia.hi < ib.lo))
            throw std::logic_error("rational_between: bounds not separated");
    }
    return (ia.hi + ib.lo) / Rational(2);
}

inline Rational rational_between(const Endpoint& a, const Endpoint& b) {
    return rational_between(ExtBound::at(a), ExtBound::at(b));
}

inline std::string endpoint_to_string(const Endpoint& e) {
    if (e.is_rational()) return e.rational().str();
    const QuadSurd& q = e.surd();
    // present as u +/- v*sqrt(d) with u = s/2, and v*sqrt(d) = sqrt(disc)/2
    Rational u = q.s / Rational(2);
    Rational disc = q.discriminant();
    // pull out the largest square so v and d are readable: disc/4 = v^2 d
    Rational v2d = disc / Rational(4);
    // prefer integer d: v = 1/den part
    Rational v(1, v2d.den());
    Rational d = v2d / (v * v);
    std::string s = u.str();
    s += q.upper ? "+" : "-";
    s += v.str() + "*sqrt(" + d.str() + ")";
    return s;
}

}  // namespace pcert
