#pragma once

/**
 * @file roots.hpp
 * @brief Exact real-root machinery: Sturm chains, counting, isolation,
 *        bisection refinement.
 *
 * The hot loops run on primitive integer polynomials (contents stripped with
 * integer gcds, signs decided by integer evaluation), so no rational
 * normalization happens per step. Counting follows the half-open convention:
 * a chain-variation difference over (lo, hi] counts distinct roots of the
 * squarefree part.
 */

#include <stdexcept>
#include <vector>

#include "factor.hpp"
#include "polynomial.hpp"

namespace pcert {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(const Rational& r) {
    return r.is_zero() ? Sign::Zero : (r.is_positive() ? Sign::Positive : Sign::Negative);
}
inline Sign sign_of_int(int s) {
    return s == 0 ? Sign::Zero : (s > 0 ? Sign::Positive : Sign::Negative);
}
inline int sign_int(Sign s) { return static_cast<int>(s); }

namespace zroot {

/// Primitive integer image of a rational polynomial (same roots, same signs).
using ZP = std::vector<Integer>;

inline ZP to_primitive(const Polynomial& f) {
    ZP out(f.coeffs().size());
    if (f.is_zero()) return out;
    Integer den_lcm = 1;
    for (const auto& c : f.coeffs()) den_lcm = den_lcm / int_gcd(den_lcm, c.den()) * c.den();
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = f.coeffs()[i].num() * (den_lcm / f.coeffs()[i].den());
    Integer g = 0;
    for (const auto& c : out) g = int_gcd(g, c < 0 ? Integer(-c) : c);
    if (g > 1)
        for (auto& c : out) c /= g;
    return out;
}

inline int zdeg(const ZP& f) { return static_cast<int>(f.size()) - 1; }

inline int zsign(const Integer& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

/// sign of f(p/q), q > 0: integer Horner on c_i p^i q^{n-i}.
inline int sign_at(const ZP& f, const Rational& x) {
    if (f.empty()) return 0;
    const Integer& p = x.num();
    const Integer& q = x.den();
    Integer acc = f.back();
    Integer qpow = 1;
    for (int i = zdeg(f) - 1; i >= 0; --i) {
        qpow *= q;
        acc = acc * p + f[i] * qpow;
    }
    return zsign(acc);
}

inline int sign_at_infinity(const ZP& f, bool positive) {
    if (f.empty()) return 0;
    int s = zsign(f.back());
    if (!positive && zdeg(f) % 2 == 1) s = -s;
    return s;
}

inline ZP derivative(const ZP& f) {
    if (f.size() <= 1) return {};
    ZP d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i] * Integer(i);
    return d;
}

inline void ztrim(ZP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZP primitive_part(ZP p) {
    ztrim(p);
    Integer g = 0;
    for (const auto& c : p) g = int_gcd(g, c < 0 ? Integer(-c) : c);
    if (g > 1)
        for (auto& c : p) c /= g;
    return p;
}

/// Pseudo-remainder scaled by an even power of lc(b): the sign structure of
/// a is preserved, which is what Sturm chains need.
inline ZP prem_even(const ZP& a, const ZP& b) {
    ZP rem = a;
    ztrim(rem);
    const Integer lcb = b.back();
    int steps = zdeg(a) - zdeg(b) + 1;
    int even_steps = steps + (steps % 2);
    // multiply a by lcb^even_steps up front, then divide exactly step by step
    Integer scale = 1;
    for (int i = 0; i < even_steps; ++i) scale *= lcb;
    for (auto& c : rem) c *= scale;
    while (!rem.empty() && rem.size() >= b.size()) {
        Integer q = rem.back() / lcb;
        if (q * lcb != rem.back())
            throw std::logic_error("prem_even: inexact step");
        size_t shift = rem.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) rem[shift + j] -= q * b[j];
        ztrim(rem);
    }
    return rem;
}

/// Sturm chain of a squarefree primitive f, all elements primitive integer.
inline std::vector<ZP> sturm_chain(const ZP& f) {
    std::vector<ZP> chain;
    chain.push_back(f);
    if (zdeg(f) <= 0) return chain;
    chain.push_back(primitive_part(derivative(f)));
    while (!chain.back().empty() && zdeg(chain.back()) > 0) {
        ZP r = prem_even(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(primitive_part(std::move(r)));
    }
    return chain;
}

inline int variations(const std::vector<int>& signs) {
    int count = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

inline int variations_at(const std::vector<ZP>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(sign_at(p, x));
    return variations(signs);
}

inline int variations_at_infinity(const std::vector<ZP>& chain, bool positive) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(sign_at_infinity(p, positive));
    return variations(signs);
}

/// Distinct roots in (lo, hi].
inline int count_halfopen(const std::vector<ZP>& chain, const Rational& lo, const Rational& hi) {
    return variations_at(chain, lo) - variations_at(chain, hi);
}

}  // namespace zroot

/// Fujiwara-style bound, rounded to a power of two: every root z satisfies
/// |z| < 2L where L is the smallest power of two with
/// |c_{n-i}| <= L^i |c_n| for all i. Far tighter than the Cauchy bound when
/// mid coefficients are large.
inline Rational root_bound(const Polynomial& f) {
    if (f.is_zero() || f.degree() == 0) return Rational(1);
    const int n = f.degree();
    const Rational lc_abs = f.leading_coefficient().abs();
    Rational L(1);
    for (int i = 1; i <= n; ++i) {
        Rational ci = f.coeff(n - i).abs();
        while (ci > L.pow(static_cast<unsigned>(i)) * lc_abs) L *= Rational(2);
    }
    return L * Rational(2);
}

/// Squarefree part f / gcd(f, f'), monic.
inline Polynomial squarefree_part(const Polynomial& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_part of zero polynomial");
    if (f.degree() == 0) return Polynomial(Rational(1));
    return poly_divexact(f, poly_gcd(f, f.derivative())).monic();
}

/// Rational-polynomial view of the Sturm chain (squarefree part taken
/// internally).
inline std::vector<Polynomial> sturm_chain(const Polynomial& f) {
    Polynomial sf = squarefree_part(f);
    auto zchain = zroot::sturm_chain(zroot::to_primitive(sf));
    std::vector<Polynomial> chain;
    chain.reserve(zchain.size());
    for (const auto& zp : zchain) {
        std::vector<Rational> c(zp.size());
        for (size_t i = 0; i < zp.size(); ++i) c[i] = Rational(zp[i]);
        chain.emplace_back(std::move(c));
    }
    return chain;
}

inline int sign_variations(const std::vector<Sign>& signs) {
    int count = 0;
    Sign prev = Sign::Zero;
    for (Sign s : signs) {
        if (s == Sign::Zero) continue;
        if (prev != Sign::Zero && s != prev) ++count;
        prev = s;
    }
    return count;
}

inline int chain_variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
    std::vector<Sign> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(sign_of(p(x)));
    return sign_variations(signs);
}

inline int chain_variations_at_infinity(const std::vector<Polynomial>& chain, bool positive) {
    std::vector<Sign> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) {
        if (p.is_zero()) {
            signs.push_back(Sign::Zero);
            continue;
        }
        int s = p.leading_coefficient().sign();
        if (!positive && p.degree() % 2 == 1) s = -s;
        signs.push_back(sign_of_int(s));
    }
    return sign_variations(signs);
}

/// Distinct real roots of f in (lo, hi], rational bounds.
inline int count_roots_halfopen(const std::vector<Polynomial>& chain, const Rational& lo,
                                const Rational& hi) {
    return chain_variations_at(chain, lo) - chain_variations_at(chain, hi);
}

inline int count_real_roots(const Polynomial& f) {
    auto chain = zroot::sturm_chain(zroot::to_primitive(squarefree_part(f)));
    return zroot::variations_at_infinity(chain, false) - zroot::variations_at_infinity(chain, true);
}

/// Closed rational interval holding exactly one real root of poly.
/// Degenerate (lo == hi) means the root is the rational lo itself.
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    Polynomial poly;

    bool degenerate() const { return lo == hi; }
    Rational width() const { return hi - lo; }
};

namespace detail {

/// Bisection isolation for a squarefree polynomial with no rational roots
/// (signs at rational points are never zero).
inline void isolate_no_rational_roots(const Polynomial& p, const Rational& lo, const Rational& hi,
                                      int count, const std::vector<zroot::ZP>& chain,
                                      const zroot::ZP& zp, std::vector<IsolatingInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back({lo, hi, p});
        return;
    }
    Rational mid = (lo + hi) / Rational(2);
    int left = zroot::count_halfopen(chain, lo, mid);
    isolate_no_rational_roots(p, lo, mid, left, chain, zp, out);
    isolate_no_rational_roots(p, mid, hi, count - left, chain, zp, out);
}

}  // namespace detail

/// Disjoint, sorted isolating intervals covering all real roots of the
/// squarefree part; rational roots come back as degenerate intervals.
/// Each interval's poly is the irreducible factor owning the root.
inline std::vector<IsolatingInterval> isolate_roots(const Polynomial& f, int degree_cap = 64) {
    if (f.is_zero()) throw std::domain_error("isolate_roots of zero polynomial");
    std::vector<IsolatingInterval> out;
    if (f.degree() == 0) return out;

    Factorization fac = factor_over_rationals(f, degree_cap);
    for (const auto& [p, mult] : fac.factors) {
        (void)mult;
        if (p.degree() == 1) {
            Rational r = -p.coeff(0);  // monic x + c
            out.push_back({r, r, p});
            continue;
        }
        zroot::ZP zp = zroot::to_primitive(p);
        auto chain = zroot::sturm_chain(zp);
        Rational b = root_bound(p);
        int n = zroot::count_halfopen(chain, -b, b);
        detail::isolate_no_rational_roots(p, -b, b, n, chain, zp, out);
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });

    // refine until pairwise disjoint (roots are distinct reals, so this ends)
    bool again = true;
    while (again) {
        again = false;
        for (size_t i = 0; i + 1 < out.size(); ++i) {
            if (out[i].hi < out[i + 1].lo) continue;
            if (out[i].degenerate() && out[i + 1].degenerate())
                throw std::logic_error("isolate_roots: duplicate rational root");
            again = true;
            for (auto* iv : {&out[i], &out[i + 1]}) {
                if (iv->degenerate()) continue;
                zroot::ZP zp = zroot::to_primitive(iv->poly);
                Rational mid = (iv->lo + iv->hi) / Rational(2);
                int sm = zroot::sign_at(zp, mid);
                if (sm == 0) {
                    iv->lo = iv->hi = mid;
                } else if (sm == zroot::sign_at(zp, iv->lo)) {
                    iv->lo = mid;
                } else {
                    iv->hi = mid;
                }
            }
        }
        if (again)
            std::sort(out.begin(), out.end(), [](const IsolatingInterval& a,
                                                 const IsolatingInterval& b) { return a.lo < b.lo; });
    }
    return out;
}

/// Bisection refinement to width <= target (no-op on degenerate intervals or
/// when already narrow enough). The contained root never escapes.
inline IsolatingInterval refine(IsolatingInterval iv, const Rational& width) {
    if (width.sign() <= 0) throw std::domain_error("refine: width must be positive");
    if (iv.degenerate() || !(iv.width() > width)) return iv;
    zroot::ZP zp = zroot::to_primitive(iv.poly);
    int slo = zroot::sign_at(zp, iv.lo);
    if (slo == 0) {
        iv.hi = iv.lo;
        return iv;
    }
    while (iv.width() > width) {
        Rational mid = (iv.lo + iv.hi) / Rational(2);
        int sm = zroot::sign_at(zp, mid);
        if (sm == 0) {
            iv.lo = iv.hi = mid;
            return iv;
        }
        if (sm == slo)
            iv.lo = mid;
        else
            iv.hi = mid;
    }
    return iv;
}

}  // namespace pcert
