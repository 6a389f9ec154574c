#pragma once

/**
 * @file factor.hpp
 * @brief Squarefree decomposition (Yun) and complete factorization over Q
 *        (Zassenhaus: Berlekamp mod p, Hensel lifting, subset recombination).
 *
 * factor_over_rationals returns monic irreducibles times a rational scalar;
 * the product re-expands to the input exactly. A hard degree cap (default 64)
 * keeps the subset recombination at desk scale.
 */

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace pcert {

struct DegreeLimitExceeded : std::runtime_error {
    explicit DegreeLimitExceeded(int deg, int limit)
        : std::runtime_error("factorization degree " + std::to_string(deg) +
                             " exceeds cap " + std::to_string(limit)),
          degree(deg),
          cap(limit) {}
    int degree;
    int cap;
};

struct PolyFactor {
    Polynomial poly;  // monic
    int multiplicity;
};

struct Factorization {
    Rational scalar;
    std::vector<PolyFactor> factors;

    Polynomial expand() const {
        Polynomial p(scalar);
        for (const auto& f : factors) p *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
        return p;
    }
};

/// Yun's algorithm. Output: scalar * prod p_i^{m_i} with the p_i monic,
/// squarefree and pairwise coprime.
inline Factorization squarefree_decomposition(const Polynomial& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomposition of zero polynomial");
    Factorization out;
    out.scalar = f.leading_coefficient();
    Polynomial g = f.monic();
    if (g.degree() == 0) return out;

    Polynomial gp = g.derivative();
    Polynomial a0 = poly_gcd(g, gp);
    Polynomial b = poly_divexact(g, a0);
    Polynomial d = poly_divexact(gp, a0) - b.derivative();
    int mult = 1;
    while (b.degree() > 0) {
        Polynomial a = poly_gcd(b, d);
        if (a.degree() > 0) out.factors.push_back({a, mult});
        b = poly_divexact(b, a);
        d = poly_divexact(d, a) - b.derivative();
        ++mult;
    }
    return out;
}

namespace detail {

// ---- integer polynomials (ascending coefficients, trimmed) ----

using ZPoly = std::vector<Integer>;

inline void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline ZPoly zadd(ZPoly a, const ZPoly& b) {
    a.resize(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    ztrim(a);
    return a;
}

inline ZPoly zsub(ZPoly a, const ZPoly& b) {
    a.resize(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

/// Exact division test over Z; on success quot holds the quotient.
inline bool zdivide_exact(const ZPoly& a, const ZPoly& b, ZPoly& quot) {
    if (b.empty()) return false;
    ZPoly rem = a;
    ztrim(rem);
    quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Integer(0));
    while (rem.size() >= b.size()) {
        Integer q = rem.back() / b.back();
        if (q * b.back() != rem.back()) return false;
        size_t shift = rem.size() - b.size();
        quot[shift] = q;
        for (size_t j = 0; j < b.size(); ++j) rem[shift + j] -= q * b[j];
        ztrim(rem);
        if (rem.empty()) break;
    }
    return rem.empty();
}

inline Integer zcontent(const ZPoly& p) {
    Integer g = 0;
    for (const auto& c : p) g = int_gcd(g, c < 0 ? Integer(-c) : c);
    return g;
}

inline ZPoly zprimitive(ZPoly p) {
    Integer g = zcontent(p);
    if (g > 1)
        for (auto& c : p) c /= g;
    return p;
}

// ---- arithmetic mod a word-size prime ----

inline int64_t mod_norm(int64_t a, int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline int64_t mod_pow(int64_t b, int64_t e, int64_t p) {
    int64_t r = 1;
    b = mod_norm(b, p);
    while (e) {
        if (e & 1) r = static_cast<int64_t>(static_cast<__int128>(r) * b % p);
        b = static_cast<int64_t>(static_cast<__int128>(b) * b % p);
        e >>= 1;
    }
    return r;
}

inline int64_t mod_inv(int64_t a, int64_t p) { return mod_pow(a, p - 2, p); }

using MPoly = std::vector<int64_t>;  // ascending, in [0, p), trimmed

inline void mtrim(MPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int mdeg(const MPoly& f) { return static_cast<int>(f.size()) - 1; }

inline MPoly mmul(const MPoly& a, const MPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    MPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int64_t>((c[i + j] + static_cast<__int128>(a[i]) * b[j]) % p);
    }
    mtrim(c);
    return c;
}

inline MPoly mmonic(MPoly f, int64_t p) {
    mtrim(f);
    if (f.empty() || f.back() == 1) return f;
    int64_t inv = mod_inv(f.back(), p);
    for (auto& c : f) c = static_cast<int64_t>(static_cast<__int128>(c) * inv % p);
    return f;
}

inline std::pair<MPoly, MPoly> mdivrem(MPoly a, const MPoly& b, int64_t p) {
    mtrim(a);
    if (b.empty()) throw std::domain_error("mdivrem by zero");
    if (a.size() < b.size()) return {MPoly{}, a};
    MPoly quot(a.size() - b.size() + 1, 0);
    int64_t inv = mod_inv(b.back(), p);
    for (size_t k = a.size(); k >= b.size(); --k) {
        int64_t q = static_cast<int64_t>(static_cast<__int128>(a[k - 1]) * inv % p);
        quot[k - b.size()] = q;
        if (q)
            for (size_t j = 0; j < b.size(); ++j)
                a[k - b.size() + j] =
                    mod_norm(a[k - b.size() + j] - static_cast<int64_t>(static_cast<__int128>(q) * b[j] % p), p);
    }
    a.resize(b.size() - 1);
    mtrim(a);
    mtrim(quot);
    return {quot, a};
}

inline MPoly mgcd(MPoly a, MPoly b, int64_t p) {
    mtrim(a);
    mtrim(b);
    while (!b.empty()) {
        auto [q, r] = mdivrem(a, b, p);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

inline MPoly mderiv(const MPoly& f, int64_t p) {
    if (f.size() <= 1) return {};
    MPoly d(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i)
        d[i - 1] = static_cast<int64_t>(static_cast<__int128>(f[i]) * (i % p) % p);
    mtrim(d);
    return d;
}

inline MPoly mpowmod(MPoly base, int64_t e, const MPoly& f, int64_t p) {
    MPoly r{1};
    base = mdivrem(std::move(base), f, p).second;
    while (e > 0) {
        if (e & 1) r = mdivrem(mmul(r, base, p), f, p).second;
        base = mdivrem(mmul(base, base, p), f, p).second;
        e >>= 1;
    }
    return r;
}

/// Berlekamp factorization of a squarefree monic f mod p into monic
/// irreducibles. Deterministic: splits with gcd(v - s) sweeps over s in F_p.
inline std::vector<MPoly> berlekamp(const MPoly& f, int64_t p) {
    int n = mdeg(f);
    if (n <= 1) return {f};

    // column i of Q is x^{i*p} mod f
    std::vector<MPoly> xpow(n);
    MPoly xp = mpowmod(MPoly{0, 1}, p, f, p);
    xpow[0] = MPoly{1};
    for (int i = 1; i < n; ++i) xpow[i] = mdivrem(mmul(xpow[i - 1], xp, p), f, p).second;

    // nullspace basis of Q - I
    std::vector<std::vector<int64_t>> m(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[j][i] = j < static_cast<int>(xpow[i].size()) ? xpow[i][j] : 0;
        m[i][i] = mod_norm(m[i][i] - 1, p);
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        int64_t inv = mod_inv(m[rank][col], p);
        for (int j = 0; j < n; ++j)
            m[rank][j] = static_cast<int64_t>(static_cast<__int128>(m[rank][j]) * inv % p);
        for (int r = 0; r < n; ++r) {
            if (r == rank || !m[r][col]) continue;
            int64_t factor = m[r][col];
            for (int j = 0; j < n; ++j)
                m[r][j] = mod_norm(
                    m[r][j] - static_cast<int64_t>(static_cast<__int128>(factor) * m[rank][j] % p), p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<MPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        MPoly v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = mod_norm(-m[r][col], p);
        mtrim(v);
        basis.push_back(std::move(v));
    }

    const size_t target = basis.size();
    std::vector<MPoly> factors{mmonic(f, p)};
    if (target <= 1) return factors;
    for (const auto& v : basis) {
        if (factors.size() >= target) break;
        if (mdeg(v) < 1) continue;
        std::vector<MPoly> next;
        for (auto& g : factors) {
            MPoly rem = g;
            for (int64_t s = 0; s < p && mdeg(rem) > 0; ++s) {
                MPoly vs = v;
                vs.resize(std::max<size_t>(vs.size(), 1), 0);
                vs[0] = mod_norm(vs[0] - s, p);
                mtrim(vs);
                if (vs.empty()) continue;
                MPoly d = mgcd(rem, vs, p);
                if (mdeg(d) > 0 && mdeg(d) < mdeg(rem)) {
                    next.push_back(d);
                    rem = mdivrem(std::move(rem), d, p).first;
                }
            }
            if (mdeg(rem) > 0) next.push_back(mmonic(rem, p));
        }
        factors = std::move(next);
    }
    return factors;
}

// ---- Hensel lifting (von zur Gathen & Gerhard, Alg. 15.10/15.17) ----

inline Integer zmod_sym(Integer a, const Integer& m) {
    a %= m;
    if (a < 0) a += m;
    if (2 * a > m) a -= m;
    return a;
}

inline ZPoly zmod_sym_poly(ZPoly f, const Integer& m) {
    for (auto& c : f) c = zmod_sym(c, m);
    ztrim(f);
    return f;
}

/// divrem by a monic b with coefficients reduced mod m.
inline std::pair<ZPoly, ZPoly> zdivrem_monic_mod(ZPoly a, const ZPoly& b, const Integer& m) {
    a = zmod_sym_poly(std::move(a), m);
    if (a.size() < b.size()) return {ZPoly{}, a};
    ZPoly quot(a.size() - b.size() + 1, Integer(0));
    for (size_t k = a.size(); k >= b.size(); --k) {
        Integer q = a[k - 1];
        quot[k - b.size()] = q;
        if (q != 0)
            for (size_t j = 0; j < b.size(); ++j)
                a[k - b.size() + j] = zmod_sym(a[k - b.size() + j] - q * b[j], m);
    }
    a.resize(b.size() - 1);
    ztrim(a);
    return {zmod_sym_poly(std::move(quot), m), a};
}

// extended Euclid mod p: s*g + t*h = 1 for coprime g, h
inline void mbezout(const MPoly& g, const MPoly& h, int64_t p, MPoly& s, MPoly& t) {
    MPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    mtrim(r0);
    mtrim(r1);
    while (!r1.empty()) {
        auto [q, r2] = mdivrem(r0, r1, p);
        auto advance = [&](MPoly& u0, MPoly& u1) {
            MPoly qu = mmul(q, u1, p);
            MPoly u2 = u0;
            u2.resize(std::max(u2.size(), qu.size()), 0);
            for (size_t i = 0; i < qu.size(); ++i) u2[i] = mod_norm(u2[i] - qu[i], p);
            mtrim(u2);
            u0 = std::move(u1);
            u1 = std::move(u2);
        };
        advance(s0, s1);
        advance(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    int64_t inv = mod_inv(r0.empty() ? 1 : r0[0], p);
    for (auto& c : s0) c = static_cast<int64_t>(static_cast<__int128>(c) * inv % p);
    for (auto& c : t0) c = static_cast<int64_t>(static_cast<__int128>(c) * inv % p);
    s = std::move(s0);
    t = std::move(t0);
}

inline ZPoly z_from_m(const MPoly& f) {
    ZPoly g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = f[i];
    return g;
}

/// One Hensel step: given monic f ≡ g*h (mod m) with s*g + t*h ≡ 1 (mod m),
/// h monic, produces the same data mod m^2 (all in symmetric residues).
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
    const Integer m2 = m * m;
    ZPoly e = zmod_sym_poly(zsub(f, zmul(g, h)), m2);
    auto [q, r] = zdivrem_monic_mod(zmul(s, e), h, m2);
    ZPoly gstar = zmod_sym_poly(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
    ZPoly hstar = zmod_sym_poly(zadd(h, r), m2);

    ZPoly b = zmod_sym_poly(zsub(zadd(zmul(s, gstar), zmul(t, hstar)), ZPoly{1}), m2);
    auto [c, d] = zdivrem_monic_mod(zmul(s, b), hstar, m2);
    ZPoly sstar = zmod_sym_poly(zsub(s, d), m2);
    ZPoly tstar = zmod_sym_poly(zsub(zsub(t, zmul(t, b)), zmul(c, gstar)), m2);

    g = std::move(gstar);
    h = std::move(hstar);
    s = std::move(sstar);
    t = std::move(tstar);
}

/// Lifts the mod-p factorization (monic factors) of a monic f to factors
/// mod p^K (p^K >= modulus), via a factor tree.
inline std::vector<ZPoly> hensel_lift_tree(const ZPoly& f, const std::vector<MPoly>& mod_factors,
                                           int64_t p, const Integer& modulus) {
    if (mod_factors.size() == 1) return {zmod_sym_poly(f, modulus)};
    size_t half = mod_factors.size() / 2;
    MPoly gm{1}, hm{1};
    for (size_t i = 0; i < half; ++i) gm = mmul(gm, mod_factors[i], p);
    for (size_t i = half; i < mod_factors.size(); ++i) hm = mmul(hm, mod_factors[i], p);
    MPoly sm, tm;
    mbezout(gm, hm, p, sm, tm);

    ZPoly g = z_from_m(gm), h = z_from_m(hm), s = z_from_m(sm), t = z_from_m(tm);
    g = zmod_sym_poly(std::move(g), Integer(p));
    h = zmod_sym_poly(std::move(h), Integer(p));
    s = zmod_sym_poly(std::move(s), Integer(p));
    t = zmod_sym_poly(std::move(t), Integer(p));
    Integer m(p);
    while (m < modulus) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    g = zmod_sym_poly(std::move(g), modulus);
    h = zmod_sym_poly(std::move(h), modulus);

    std::vector<MPoly> left(mod_factors.begin(), mod_factors.begin() + half);
    std::vector<MPoly> right(mod_factors.begin() + half, mod_factors.end());
    auto out = hensel_lift_tree(g, left, p, modulus);
    auto rhs = hensel_lift_tree(h, right, p, modulus);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
}

constexpr std::array<int64_t, 25> kFactorPrimes = {3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                   31, 37, 41, 43, 47, 53, 59, 61, 67,
                                                   71, 73, 79, 83, 89, 97, 101};

/// Factors a primitive squarefree integer polynomial with positive leading
/// coefficient into primitive irreducibles over Z.
inline std::vector<ZPoly> factor_squarefree_z(const ZPoly& f0) {
    int n = zdeg(f0);
    if (n <= 1) return {f0};

    const Integer lc = f0.back();
    int64_t best_p = 0;
    std::vector<MPoly> best_factors;
    int tried = 0;
    for (int64_t p : kFactorPrimes) {
        if (lc % p == 0) continue;
        MPoly fp(f0.size());
        for (size_t i = 0; i < f0.size(); ++i)
            fp[i] = ((f0[i] % p + p) % p).convert_to<int64_t>();
        mtrim(fp);
        if (mdeg(fp) != n) continue;
        if (mdeg(mgcd(fp, mderiv(fp, p), p)) != 0) continue;
        auto factors = berlekamp(mmonic(fp, p), p);
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(factors);
        }
        if (++tried >= 3 || best_factors.size() == 1) break;
    }
    if (best_p == 0) throw std::logic_error("factor_squarefree_z: no usable prime found");
    if (best_factors.size() == 1) return {f0};
    const int64_t p = best_p;

    // Landau-Mignotte: coefficients of any factor (times lc) fit below
    // 2^{n+1} * ||f||_2 * |lc|.
    Integer norm2 = 0;
    for (const auto& c : f0) norm2 += c * c;
    Integer bound = boost::multiprecision::sqrt(norm2) + 1;
    bound <<= (n + 1);
    bound *= (lc < 0 ? Integer(-lc) : lc);
    Integer modulus(p);
    while (modulus <= 2 * bound) modulus *= p;

    // lift against the monic image of f mod modulus
    Integer lc_inv_mod;
    {
        Integer a = (lc % modulus + modulus) % modulus;
        Integer x0 = 1, x1 = 0, r0 = a, r1 = modulus;
        while (r1 != 0) {
            Integer q = r0 / r1;
            Integer r2 = r0 - q * r1, x2 = x0 - q * x1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            x0 = std::move(x1);
            x1 = std::move(x2);
        }
        lc_inv_mod = (x0 % modulus + modulus) % modulus;
    }
    ZPoly fmonic(f0.size());
    for (size_t i = 0; i < f0.size(); ++i) fmonic[i] = zmod_sym(f0[i] * lc_inv_mod, modulus);
    auto lifted = hensel_lift_tree(fmonic, best_factors, p, modulus);

    // subset recombination
    std::vector<ZPoly> result;
    ZPoly remaining = f0;
    std::vector<ZPoly> pool = std::move(lifted);
    size_t subset_size = 1;
    while (2 * subset_size <= pool.size()) {
        bool found = false;
        std::vector<size_t> idx(subset_size);
        for (size_t i = 0; i < subset_size; ++i) idx[i] = i;
        while (true) {
            ZPoly cand{remaining.back()};
            for (size_t i : idx) cand = zmod_sym_poly(zmul(cand, pool[i]), modulus);
            ZPoly candprim = zprimitive(cand);
            if (!candprim.empty() && candprim.back() < 0)
                for (auto& cc : candprim) cc = -cc;
            bool quick_ok;
            if (!candprim.empty() && candprim[0] != 0)
                quick_ok = (remaining[0] * remaining.back()) % candprim[0] == 0;
            else
                quick_ok = remaining[0] == 0;
            ZPoly quot;
            if (quick_ok && zdivide_exact(remaining, candprim, quot)) {
                result.push_back(candprim);
                remaining = zprimitive(std::move(quot));
                if (remaining.back() < 0)
                    for (auto& cc : remaining) cc = -cc;
                std::vector<ZPoly> keep;
                for (size_t i = 0, j = 0; i < pool.size(); ++i) {
                    if (j < idx.size() && idx[j] == i) {
                        ++j;
                        continue;
                    }
                    keep.push_back(std::move(pool[i]));
                }
                pool = std::move(keep);
                found = true;
                break;
            }
            int pos = static_cast<int>(subset_size) - 1;
            while (pos >= 0 && idx[pos] == pool.size() - subset_size + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < subset_size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++subset_size;
    }
    if (zdeg(remaining) > 0) result.push_back(remaining);
    return result;
}

}  // namespace detail

/// Complete factorization into monic irreducibles over Q times a scalar.
/// Throws DegreeLimitExceeded beyond the cap (default 64).
inline Factorization factor_over_rationals(const Polynomial& f, int degree_cap = 64) {
    if (f.is_zero()) throw std::domain_error("factor_over_rationals of zero polynomial");
    if (f.degree() > degree_cap) throw DegreeLimitExceeded(f.degree(), degree_cap);

    Factorization out;
    out.scalar = f.leading_coefficient();
    if (f.degree() == 0) return out;

    Factorization sqf = squarefree_decomposition(f);
    for (const auto& [part, mult] : sqf.factors) {
        Rational cont = poly_content(part);
        Polynomial prim = part / cont;
        detail::ZPoly zp(prim.coeffs().size());
        for (size_t i = 0; i < prim.coeffs().size(); ++i) zp[i] = prim.coeffs()[i].num();
        if (zp.back() < 0)
            for (auto& c : zp) c = -c;
        for (const auto& zf : detail::factor_squarefree_z(zp)) {
            std::vector<Rational> rc(zf.size());
            for (size_t i = 0; i < zf.size(); ++i) rc[i] = Rational(zf[i]);
            out.factors.push_back({Polynomial(std::move(rc)).monic(), mult});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        for (int i = a.poly.degree(); i >= 0; --i)
            if (a.poly.coeff(i) != b.poly.coeff(i)) return a.poly.coeff(i) < b.poly.coeff(i);
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

}  // namespace pcert
