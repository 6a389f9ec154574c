#pragma once

/**
 * @file numeric.hpp
 * @brief Numeric two-square approximation of positive-definite polynomials:
 *        Durand-Kerner root finding at escalating multiprecision, with dyadic
 *        rounding back to exact rationals.
 *
 * Everything here is a heuristic seed; callers absorb the exact residual and
 * re-verify, so a failed attempt only costs an escalation.
 */

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace pcert::numeric {

template <unsigned Digits>
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
template <unsigned Digits>
using Complex = boost::multiprecision::cpp_complex<Digits>;

template <unsigned Digits>
Real<Digits> to_real(const Rational& q) {
    return Real<Digits>(q.num()) / Real<Digits>(q.den());
}

/// Nearest rational with denominator 2^bits.
template <unsigned Digits>
Rational from_real_dyadic(const Real<Digits>& v, unsigned bits) {
    using boost::multiprecision::round;
    Real<Digits> scaled = boost::multiprecision::ldexp(v, static_cast<int>(bits));
    Integer n = round(scaled).template convert_to<Integer>();
    Integer den = Integer(1) << bits;
    return Rational(n, den);
}

/// All complex roots by Durand-Kerner. Runs until the updates settle or the
/// iteration budget is spent; the caller's exact residual check is the real
/// acceptance gate, so approximate roots are still returned.
template <unsigned Digits>
std::vector<Complex<Digits>> all_roots(const Polynomial& f, unsigned max_iter = 0) {
    using C = Complex<Digits>;
    using R = Real<Digits>;
    const int n = f.degree();
    if (n <= 0) return std::vector<C>{};
    if (max_iter == 0) max_iter = 200 + 60 * static_cast<unsigned>(n);
    std::vector<C> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = C(to_real<Digits>(f.coeff(i)));
    // monic normalization
    for (int i = 0; i < n; ++i) c[i] /= c[n];
    c[n] = C(R(1));

    auto eval = [&](const C& z) {
        C r(R(0));
        for (int i = n; i >= 0; --i) r = r * z + c[i];
        return r;
    };

    R radius(1);
    for (int i = 0; i < n; ++i) {
        R m = abs(c[i]);
        if (m > radius) radius = m;
    }
    radius += R(1);

    std::vector<C> z(n);
    const C seed(R("0.4"), R("0.9"));
    C acc = seed;
    for (int k = 0; k < n; ++k) {
        z[k] = acc * radius;
        acc *= seed;
    }

    const R tol = boost::multiprecision::ldexp(R(1), -static_cast<int>(Digits * 3));
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        R worst(0);
        for (int k = 0; k < n; ++k) {
            C denom(R(1));
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (abs(denom) == R(0)) {
                z[k] += C(R("0.001"), R("0.002"));
                worst = R(1);
                continue;
            }
            C delta = eval(z[k]) / denom;
            z[k] -= delta;
            R d = abs(delta);
            if (d > worst) worst = d;
        }
        if (worst < tol) break;
    }
    return z;
}

/// Rational q1, q2 with q1^2 + q2^2 ~ h, for h positive definite of even
/// degree with positive leading coefficient. Rounded to denominator 2^bits.
template <unsigned Digits>
std::optional<std::pair<Polynomial, Polynomial>> two_square_approx(const Polynomial& h,
                                                                   unsigned bits) {
    using C = Complex<Digits>;
    using R = Real<Digits>;
    const int n = h.degree();
    if (n <= 0 || n % 2 != 0) return std::nullopt;
    auto roots = all_roots<Digits>(h);
    std::vector<C> upper;
    for (const auto& z : roots)
        if (z.imag() > R(0)) upper.push_back(z);
    if (static_cast<int>(upper.size()) != n / 2) return std::nullopt;

    // u(x) = sqrt(lc) * prod (x - z_j), coefficients ascending
    std::vector<C> u{C(sqrt(to_real<Digits>(h.leading_coefficient())))};
    for (const auto& z : upper) {
        std::vector<C> next(u.size() + 1, C(R(0)));
        for (size_t i = 0; i < u.size(); ++i) {
            next[i + 1] += u[i];
            next[i] -= u[i] * z;
        }
        u = std::move(next);
    }
    std::vector<Rational> re(u.size()), im(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        re[i] = from_real_dyadic<Digits>(u[i].real(), bits);
        im[i] = from_real_dyadic<Digits>(u[i].imag(), bits);
    }
    return std::make_pair(Polynomial(std::move(re)), Polynomial(std::move(im)));
}

/// Hardware-precision variant of two_square_approx; the fast first rung of
/// the escalation ladder. Inputs are expected pre-scaled (roots near the
/// unit disk), so plain doubles are adequate seeds.
inline std::optional<std::pair<Polynomial, Polynomial>> two_square_approx_double(
    const Polynomial& h, unsigned bits) {
    using C = std::complex<double>;
    const int n = h.degree();
    if (n <= 0 || n % 2 != 0) return std::nullopt;
    std::vector<C> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        double v = h.coeff(i).to_double();
        if (!std::isfinite(v)) return std::nullopt;
        c[i] = C(v, 0.0);
    }
    for (int i = 0; i < n; ++i) c[i] /= c[n];
    c[n] = C(1.0, 0.0);

    auto eval = [&](const C& z) {
        C r(0.0, 0.0);
        for (int i = n; i >= 0; --i) r = r * z + c[i];
        return r;
    };
    double radius = 1.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1.0;

    std::vector<C> z(n);
    const C seed(0.4, 0.9);
    C acc = seed;
    for (int k = 0; k < n; ++k) {
        z[k] = acc * radius;
        acc *= seed;
    }
    const unsigned max_iter = 200 + 60 * static_cast<unsigned>(n);
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            C denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) == 0.0) {
                z[k] += C(1e-3, 2e-3);
                worst = 1.0;
                continue;
            }
            C delta = eval(z[k]) / denom;
            z[k] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    std::vector<C> upper;
    for (const auto& zz : z)
        if (zz.imag() > 0.0) upper.push_back(zz);
    if (static_cast<int>(upper.size()) != n / 2) return std::nullopt;

    double lc = h.leading_coefficient().to_double();
    std::vector<C> u{C(std::sqrt(lc), 0.0)};
    for (const auto& zz : upper) {
        std::vector<C> next(u.size() + 1, C(0.0, 0.0));
        for (size_t i = 0; i < u.size(); ++i) {
            next[i + 1] += u[i];
            next[i] -= u[i] * zz;
        }
        u = std::move(next);
    }
    auto round_dyadic = [&](double v) {
        if (!std::isfinite(v)) v = 0.0;
        Real<25> r(v);
        return from_real_dyadic<25>(r, bits);
    };
    std::vector<Rational> re(u.size()), im(u.size());
    for (size_t i = 0; i < u.size(); ++i) {
        re[i] = round_dyadic(u[i].real());
        im[i] = round_dyadic(u[i].imag());
    }
    return std::make_pair(Polynomial(std::move(re)), Polynomial(std::move(im)));
}

}  // namespace pcert::numeric
