#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over Rational.
 *
 * Coefficients are stored in ascending degree order with no trailing zero;
 * the zero polynomial is the empty sequence (degree() == -1 as the -inf
 * sentinel). Values are immutable in spirit: every operation is a pure
 * function returning a fresh polynomial.
 */

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace pcert {

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant) {
        if (!constant.is_zero()) coeffs_.push_back(constant);
    }
    Polynomial(long long constant) : Polynomial(Rational(constant)) {}
    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Rational> coeffs)
        : coeffs_(coeffs.begin(), coeffs.end()) {
        trim();
    }

    static Polynomial monomial(size_t degree, const Rational& coeff = Rational(1)) {
        if (coeff.is_zero()) return {};
        std::vector<Rational> c(degree + 1);
        c[degree] = coeff;
        return Polynomial(std::move(c));
    }
    static Polynomial x() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }
    /// -1 encodes the zero polynomial (degree -inf).
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& leading_coefficient() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    /// Coefficient of x^i, zero beyond the stored range.
    Rational coeff(size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    Polynomial operator-() const {
        std::vector<Rational> c(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
        return Polynomial(std::move(c));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
        return Polynomial(std::move(c));
    }
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1);
        for (size_t i = 0; i < coeffs_.size(); ++i)
            for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(c));
    }

    Polynomial operator*(const Rational& s) const {
        if (s.is_zero()) return {};
        std::vector<Rational> c(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * s;
        return Polynomial(std::move(c));
    }
    Polynomial operator/(const Rational& s) const { return *this * s.reciprocal(); }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned e) const {
        Polynomial r(Rational(1)), base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1u;
        }
        return r;
    }

    /// Horner evaluation; exact.
    Rational operator()(const Rational& a) const {
        Rational r(0);
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * a + coeffs_[i];
        return r;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> c(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational((long long)i);
        return Polynomial(std::move(c));
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return *this / leading_coefficient();
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

/// Exact Euclidean division: f = q*g + r with deg r < deg g.
inline std::pair<Polynomial, Polynomial> poly_divrem(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw std::domain_error("poly_divrem: division by zero polynomial");
    if (f.degree() < g.degree()) return {Polynomial{}, f};
    std::vector<Rational> rem(f.coeffs());
    std::vector<Rational> quot(f.degree() - g.degree() + 1);
    const Rational lc_inv = g.leading_coefficient().reciprocal();
    for (int k = f.degree() - g.degree(); k >= 0; --k) {
        Rational q = rem[k + g.degree()] * lc_inv;
        quot[k] = q;
        if (q.is_zero()) continue;
        for (int j = 0; j <= g.degree(); ++j) rem[k + j] -= q * g.coeff(j);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Division known to be exact; throws if a remainder appears.
inline Polynomial poly_divexact(const Polynomial& f, const Polynomial& g) {
    auto [q, r] = poly_divrem(f, g);
    if (!r.is_zero()) throw std::logic_error("poly_divexact: nonzero remainder");
    return q;
}

/// Content as a positive rational; f / content(f) has coprime integer
/// coefficients. content(0) = 0.
inline Rational poly_content(const Polynomial& f);

/// Monic gcd. Internally a primitive polynomial remainder sequence (contents
/// stripped every step) to keep exact coefficient growth polynomial.
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd(0, 0)");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    auto primitive = [](const Polynomial& p) { return p / poly_content(p); };
    a = primitive(a);
    b = primitive(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b stays integral
        Rational scale = b.leading_coefficient().pow(
            static_cast<unsigned>(a.degree() - b.degree() + 1));
        Polynomial r = poly_divrem(a * scale, b).second;
        a = std::move(b);
        b = r.is_zero() ? Polynomial{} : primitive(r);
    }
    return a.monic();
}

/// f(a*x + b) expanded exactly; requires a != 0 so degree is preserved.
inline Polynomial affine_substitute(const Polynomial& f, const Rational& a, const Rational& b) {
    if (a.is_zero()) throw std::domain_error("affine_substitute: alpha = 0");
    Polynomial axb{b, a};
    Polynomial r;
    for (size_t i = f.coeffs().size(); i-- > 0;) r = r * axb + Polynomial(f.coeffs()[i]);
    return r;
}

/// f(x + c).
inline Polynomial poly_shift(const Polynomial& f, const Rational& c) {
    return affine_substitute(f, Rational(1), c);
}

/// f(x^2): coefficient i moves to 2i.
inline Polynomial substitute_x_squared(const Polynomial& f) {
    if (f.is_zero()) return {};
    std::vector<Rational> c(2 * f.coeffs().size() - 1);
    for (size_t i = 0; i < f.coeffs().size(); ++i) c[2 * i] = f.coeffs()[i];
    return Polynomial(std::move(c));
}

/// The unique (alpha, beta) with f(x) = alpha(x^2) + x*beta(x^2).
inline std::pair<Polynomial, Polynomial> even_odd_split(const Polynomial& f) {
    std::vector<Rational> ev, od;
    for (size_t i = 0; i < f.coeffs().size(); ++i)
        (i % 2 == 0 ? ev : od).push_back(f.coeffs()[i]);
    return {Polynomial(std::move(ev)), Polynomial(std::move(od))};
}

inline Rational poly_content(const Polynomial& f) {
    Rational c(0);
    for (const auto& a : f.coeffs()) c = rational_gcd(c, a);
    return c;
}

/// Plain text like "x^2 - 3*x + 2" (ascending input, descending output).
inline std::string poly_to_string(const Polynomial& f, const std::string& var = "x") {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        Rational c = f.coeff(i);
        if (c.is_zero()) continue;
        if (out.empty()) {
            if (c.is_negative()) out += "-";
        } else {
            out += c.is_negative() ? " - " : " + ";
        }
        Rational a = c.abs();
        if (i == 0) {
            out += a.str();
        } else {
            if (!(a == Rational(1))) out += a.str() + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace pcert
