#pragma once

/**
 * @file sos_core.hpp
 * @brief Base constructive decompositions: weighted SOS on R, half-line and
 *        interval certificates, point sets, the Berg-Maserick identity
 *        (rational and surd endpoints) and the disk-linear identity.
 *
 * Every operation returns data whose exact re-expansion equals its input;
 * each one re-verifies that identity before returning.
 */

#include <optional>

#include "certificate.hpp"
#include "numeric.hpp"
#include "oracle.hpp"

namespace pcert {

struct NotNonnegativeError : std::runtime_error {
    explicit NotNonnegativeError(std::optional<Rational> w)
        : std::runtime_error("polynomial is negative on the set" +
                             (w ? " at " + w->str() : std::string())),
          witness(std::move(w)) {}
    std::optional<Rational> witness;
};

struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

/// f = sum a_i f_i^2 with a_i >= 0 for f >= 0 on R. Hybrid exact/numeric:
/// factor out the square part, complete the square at degree <= 2, and at
/// degree >= 4 pad with an epsilon cushion, approximate two squares
/// numerically, and absorb the exact residual into the cushion.
inline WeightedSOS sos_on_line(const Polynomial& f, int degree_cap = 64) {
    WeightedSOS out;
    if (f.is_zero()) return out;
    {
        auto v = is_nonneg_on_line(f);
        if (!v.nonnegative) throw NotNonnegativeError(v.witness);
    }
    if (f.degree() == 0) {
        out.add(f.coeff(0), Polynomial(Rational(1)));
        return out;
    }

    // f = c * s^2 * g, g squarefree positive definite
    Factorization fac = factor_over_rationals(f, degree_cap);
    Rational c = fac.scalar;
    Polynomial s{Rational(1)};
    Polynomial g{Rational(1)};
    for (const auto& [p, m] : fac.factors) {
        if (m / 2 > 0) s *= p.pow(static_cast<unsigned>(m / 2));
        if (m % 2 == 1) g *= p;
    }
    if (!c.is_positive() || g.degree() % 2 != 0)
        throw InternalInconsistency("sos_on_line: factor shape contradicts nonnegativity");

    if (g.degree() == 0) {
        out.add(c, s);
        return out;
    }
    if (g.degree() == 2) {
        // x^2 + px + q = (x + p/2)^2 + (q - p^2/4)
        Rational p = g.coeff(1), q = g.coeff(0);
        Rational rest = q - p * p / Rational(4);
        out.add(c, s * Polynomial{p / Rational(2), Rational(1)});
        if (!rest.is_zero()) out.add(c * rest, s);
    } else {
        const int m = g.degree() / 2;
        // rescale so all roots sit near the unit disk: gs(y) = g(Ly)/L^{2m};
        // the numeric step is far better conditioned there, and everything
        // maps back exactly through powers of L
        const Rational L = root_bound(g);  // power of two; roots of gs in |z| < 1
        const Polynomial gs =
            affine_substitute(g, L, Rational(0)) / L.pow(static_cast<unsigned>(2 * m));

        std::vector<Rational> tc(2 * m + 1);
        for (int i = 0; i <= m; ++i) tc[2 * i] = Rational(1);
        const Polynomial t(std::move(tc));

        // seed epsilon from a numeric min of gs/t at the critical points,
        // then verify exactly (usually one oracle call)
        Rational eps(1);
        {
            double est = 1.0;
            auto gs_d = [&](double x) {
                double acc = 0;
                for (int i = gs.degree(); i >= 0; --i) acc = acc * x + gs.coeff(i).to_double();
                return acc;
            };
            auto t_d = [&](double x) {
                double acc = 0, x2 = x * x, p = 1;
                for (int i = 0; i <= m; ++i, p *= x2) acc += p;
                return acc;
            };
            est = gs_d(0.0) / t_d(0.0);
            for (const auto& z : numeric::all_roots<25>(gs.derivative(), 200)) {
                double x = z.real().convert_to<double>();
                if (std::abs(z.imag().convert_to<double>()) > 1e-6) continue;
                double v = gs_d(x) / t_d(x);
                if (std::isfinite(v) && v < est) est = v;
            }
            if (std::isfinite(est) && est > 1e-300) {
                int k = std::ilogb(est / 2);
                eps = k >= 0 ? Rational(Integer(1) << k)
                             : Rational(Integer(1), Integer(1) << (-k));
            }
            if (eps > Rational(1)) eps = Rational(1);
        }
        int guard = 0;
        while (!is_nonneg_on_line(gs - t * eps).nonnegative) {
            eps /= Rational(16);
            if (++guard > 200) throw InternalInconsistency("sos_on_line: epsilon search stuck");
        }
        const Rational half_eps = eps / Rational(2);
        const Polynomial h = gs - t * half_eps;  // >= (eps/2)t > 0 on R

        // square q of the scaled variable, weight w: contributes
        // w * L^{2m - 2 deg q} * (L^{deg q} q(x/L))^2 to g
        auto emit = [&](const Rational& w, const Polynomial& q) {
            int d = q.degree();
            std::vector<Rational> cs(q.coeffs());
            for (int j = 0; j <= d; ++j) cs[j] *= L.pow(static_cast<unsigned>(d - j));
            out.add(c * w * L.pow(static_cast<unsigned>(2 * (m - d))),
                    s * Polynomial(std::move(cs)));
        };

        // absorbs the exact residual of an approximate two-square split into
        // the cushion; fails (false) when a cushion weight would go negative
        auto absorb = [&](std::optional<std::pair<Polynomial, Polynomial>> qs) -> bool {
            if (!qs) return false;
            const auto& [q1, q2] = *qs;
            Polynomial r = h - q1 * q1 - q2 * q2;
            std::vector<Rational> w(m + 1, half_eps);
            std::vector<std::pair<Rational, Polynomial>> odds;
            for (int j = 0; j <= r.degree(); ++j) {
                Rational rc = r.coeff(j);
                if (rc.is_zero()) continue;
                if (j % 2 == 0) {
                    if (j / 2 > m) return false;
                    w[j / 2] += rc;
                } else {
                    // e x^{2i+1} = (|e|/2)[(x^{i+1} +- x^i)^2 - x^{2i+2} - x^{2i}]
                    int i = (j - 1) / 2;
                    if (i + 1 > m) return false;
                    Rational habs = rc.abs() / Rational(2);
                    odds.emplace_back(
                        habs, Polynomial::monomial(i + 1) +
                                  Polynomial::monomial(
                                      i, rc.is_positive() ? Rational(1) : Rational(-1)));
                    w[i] -= habs;
                    w[i + 1] -= habs;
                }
            }
            for (const auto& wi : w)
                if (wi.is_negative()) return false;
            out = WeightedSOS{};
            emit(Rational(1), q1);
            emit(Rational(1), q2);
            for (const auto& [ow, oq] : odds) emit(ow, oq);
            for (int i = 0; i <= m; ++i)
                if (!w[i].is_zero()) emit(w[i], Polynomial::monomial(i));
            return true;
        };

        bool done = absorb(numeric::two_square_approx_double(h, 40)) ||
                    absorb(numeric::two_square_approx<50>(h, 120)) ||
                    absorb(numeric::two_square_approx<100>(h, 280)) ||
                    absorb(numeric::two_square_approx<200>(h, 620)) ||
                    absorb(numeric::two_square_approx<400>(h, 1250));
        if (!done) throw InternalInconsistency("sos_on_line: numeric precision exhausted");
    }
    if (!(out.expand() == f)) throw InternalInconsistency("sos_on_line: identity check failed");
    return out;
}

/// f = sigma0 + x*sigma1 on [0,inf): decompose f(x^2) on R and split each
/// square by parity; the cross terms cancel identically.
inline std::pair<WeightedSOS, WeightedSOS> decompose_halfline(const Polynomial& f,
                                                              int degree_cap = 64) {
    {
        auto v = is_nonneg_on(f, SemiAlgSet::from_components({make_ray_above(Endpoint(Rational(0)))}));
        if (!v.nonnegative) throw NotNonnegativeError(v.witness);
    }
    WeightedSOS s0, s1;
    if (f.is_zero()) return {s0, s1};
    WeightedSOS line = sos_on_line(substitute_x_squared(f), degree_cap);
    for (const auto& term : line.terms()) {
        auto [alpha, beta] = even_odd_split(term.root);
        s0.add(term.weight, alpha);
        s1.add(term.weight, beta);
    }
    if (!(s0.expand() + Polynomial::x() * s1.expand() == f))
        throw InternalInconsistency("decompose_halfline: identity check failed");
    return {s0, s1};
}

/// The m-th degree Goursat transform (1+x)^m f((1-x)/(1+x)).
inline Polynomial goursat(const Polynomial& f, int m) {
    if (m < f.degree()) throw std::domain_error("goursat: m < deg f");
    Polynomial up{Rational(1), Rational(1)};    // 1+x
    Polynomial down{Rational(1), Rational(-1)};  // 1-x
    Polynomial out;
    for (int k = 0; k <= f.degree(); ++k) {
        if (f.coeff(k).is_zero()) continue;
        out += down.pow(static_cast<unsigned>(k)) * up.pow(static_cast<unsigned>(m - k)) *
               f.coeff(k);
    }
    return out;
}

namespace detail {

inline GeneratorSet interval_generators(const Rational& a, const Rational& b) {
    GeneratorSet g;
    g.add(Polynomial{-a, Rational(1)}, GenRole::LowerLinear);
    g.add(Polynomial{b, Rational(-1)}, GenRole::UpperLinear);
    return g;
}

inline GeneratorSet point_generators(const Rational& a) {
    GeneratorSet g;
    g.add(Polynomial{-a, Rational(1)}, GenRole::LowerLinear);
    g.add(Polynomial{a, Rational(-1)}, GenRole::UpperLinear);
    return g;
}

/// Divides the generator at index i by lambda > 0, scaling affected terms so
/// the certificate still verifies.
inline Certificate rescale_generator(const Certificate& c, size_t i, const Rational& lambda) {
    if (!lambda.is_positive()) throw std::domain_error("rescale_generator: lambda <= 0");
    GeneratorSet gens = c.generators();
    gens.generators[i] = gens.generators[i] / lambda;
    Certificate out(c.target(), gens);
    for (const auto& [e, sos] : c.terms())
        out.add_term(e, e.bits[i] ? sos.scaled(lambda) : sos);
    out.metadata() = c.metadata();
    return out;
}

}  // namespace detail

/// Exact certificate f = s0 + s1 (x-a) + s2 (b-x) + s3 (x-a)(b-x) on [a,b]:
/// affine to [-1,1], Goursat to the half-line, pull back with the parity of
/// the (1+y) factor absorbed into squares, undo the scaling.
inline Certificate decompose_interval(const Polynomial& f, const Rational& a, const Rational& b,
                                      int degree_cap = 64) {
    if (!(a < b)) throw std::domain_error("decompose_interval: requires a < b");
    {
        auto v = is_nonneg_on(
            f, SemiAlgSet::from_components({make_segment(Endpoint(a), Endpoint(b))}));
        if (!v.nonnegative) throw NotNonnegativeError(v.witness);
    }
    GeneratorSet target_gens = detail::interval_generators(a, b);
    if (f.is_zero()) return Certificate(Polynomial{}, target_gens);
    if (f.degree() == 0) {
        Certificate c = Certificate::constant(f.coeff(0), target_gens);
        return c;
    }

    const int m = f.degree();
    // phi(y) = f(((b-a)y + (a+b))/2) nonnegative on [-1,1]
    const Rational alpha = (b - a) / Rational(2);
    const Rational beta = (a + b) / Rational(2);
    Polynomial phi = affine_substitute(f, alpha, beta);

    Polynomial ft = goursat(phi, m);
    auto [s0, s1] = decompose_halfline(ft, degree_cap);

    GeneratorSet ygens = detail::interval_generators(Rational(-1), Rational(1));  // y+1, 1-y
    Certificate ycert(phi * Rational(2).pow(static_cast<unsigned>(m)), ygens);
    const Polynomial one_plus{Rational(1), Rational(1)};

    auto pull_back = [&](const WeightedSOS& sos, bool odd_family) {
        for (const auto& term : sos.terms()) {
            int d = term.root.degree();
            if (d < 0) continue;
            Polynomial P = goursat(term.root, d);
            int k2 = m - 2 * d - (odd_family ? 1 : 0);
            if (k2 < 0) throw InternalInconsistency("decompose_interval: degree bookkeeping");
            ExponentVector e = ExponentVector::zero(2);
            if (odd_family) e.bits[1] = 1;  // (1-y)
            Polynomial sq = P;
            if (k2 % 2 == 1) {
                e.bits[0] ^= 1;  // one extra (y+1)
                k2 -= 1;
            }
            sq = sq * one_plus.pow(static_cast<unsigned>(k2 / 2));
            ycert.add_term(e, WeightedSOS(term.weight, sq));
        }
    };
    pull_back(s0, false);
    pull_back(s1, true);

    Certificate scaled = cert_scale(ycert, Rational(1) / Rational(2).pow(static_cast<unsigned>(m)));
    // back to x: y = (2x - (a+b))/(b-a)
    Certificate xcert = cert_affine(scaled, Rational(2) / (b - a), -(a + b) / (b - a));
    // generators are now 2(x-a)/(b-a) and 2(b-x)/(b-a); normalize
    const Rational lambda = Rational(2) / (b - a);
    xcert = detail::rescale_generator(xcert, 0, lambda);
    xcert = detail::rescale_generator(xcert, 1, lambda);

    if (!(xcert.expand() == f) || !(xcert.target() == f))
        throw InternalInconsistency("decompose_interval: identity check failed");
    return xcert;
}

/// Taylor certificate at an isolated point: f = sum c_k (x-a)^k routed to
/// the generators {x-a, a-x} by sign and parity.
inline Certificate decompose_point(const Polynomial& f, const Rational& a) {
    Rational value = f(a);
    if (value.is_negative()) throw NotNonnegativeError(a);
    GeneratorSet gens = detail::point_generators(a);
    Certificate cert(f, gens);
    Polynomial shifted = poly_shift(f, a);  // f(x+a): coefficients at (x-a)^k
    const Polynomial xa{-a, Rational(1)};   // x-a
    for (int k = 0; k <= shifted.degree(); ++k) {
        Rational c = shifted.coeff(k);
        if (c.is_zero()) continue;
        if (k % 2 == 0) {
            int j = k / 2;
            if (!c.is_negative()) {
                cert.add_term(ExponentVector::zero(2), WeightedSOS(c, xa.pow(j)));
            } else {
                // c(x-a)^{2j} = |c| (x-a)^{2j-2} * (x-a)(a-x)
                ExponentVector e = ExponentVector::zero(2);
                e.bits[0] = e.bits[1] = 1;
                cert.add_term(e, WeightedSOS(c.abs(), xa.pow(j - 1)));
            }
        } else {
            int j = k / 2;
            ExponentVector e = ExponentVector::unit(2, c.is_positive() ? 0 : 1);
            cert.add_term(e, WeightedSOS(c.abs(), xa.pow(j)));
        }
    }
    if (!(cert.expand() == f)) throw InternalInconsistency("decompose_point: identity check failed");
    return cert;
}

struct BergMaserick {
    Rational t;
    WeightedSOS sigma0;
};

namespace detail {

/// Core of the Berg-Maserick identity on symmetric functions: with
/// S_in = c+d, P_in = cd, S_out = a+b, P_out = ab, produces t in [0,1] and a
/// PSD quadratic sigma0 with
///   (x-c)(x-d) = sigma0 + t (x-a)(x-b).
/// The discriminant Delta(t) = A t^2 + B t + C is convex with A = (a-b)^2;
/// its clamped vertex works whenever the containment hypothesis holds.
inline BergMaserick bm_symmetric(const Rational& S_in, const Rational& P_in, const Rational& S_out,
                                 const Rational& P_out) {
    if (S_in == S_out && P_in == P_out) return {Rational(1), WeightedSOS{}};
    Rational A = S_out * S_out - Rational(4) * P_out;
    Rational B = Rational(4) * P_out + Rational(4) * P_in - Rational(2) * S_out * S_in;
    Rational C = S_in * S_in - Rational(4) * P_in;
    if (!A.is_positive()) throw InternalInconsistency("bm: outer pair degenerate");
    Rational t = -B / (Rational(2) * A);
    if (t.is_negative()) t = Rational(0);
    if (!(t < Rational(1))) {
        // vertex at/past 1 forces equal sums (Delta(1) = (S_in-S_out)^2 <= 0)
        Rational con = P_in - P_out;
        if (!(S_in == S_out) || con.is_negative())
            throw InternalInconsistency("bm: clamped endpoint invalid");
        WeightedSOS s0;
        s0.add(con, Polynomial(Rational(1)));
        return {Rational(1), s0};
    }
    Rational delta = A * t * t + B * t + C;
    if (delta.is_positive()) throw InternalInconsistency("bm: discriminant positive at vertex");
    Rational one_minus = Rational(1) - t;
    Rational mid = (S_in - t * S_out) / (Rational(2) * one_minus);
    Rational kappa = -delta / (Rational(4) * one_minus);
    WeightedSOS s0;
    s0.add(one_minus, Polynomial{-mid, Rational(1)});
    if (!kappa.is_zero()) s0.add(kappa, Polynomial(Rational(1)));
    // exact check: s0 + t(x^2 - S_out x + P_out) == x^2 - S_in x + P_in
    Polynomial outq{P_out, -S_out, Rational(1)};
    Polynomial inq{P_in, -S_in, Rational(1)};
    if (!(s0.expand() + outq * t == inq)) throw InternalInconsistency("bm: identity check failed");
    return {Rational(t), s0};
}

}  // namespace detail

/// (x-c)(x-d) = sigma0 + t (x-a)(x-b) with t in [0,1], deg(sigma0) <= 2,
/// for a <= c < d <= b; a, b rational or a conjugate surd pair. The surd
/// case chains through x^2 - r^2 = (r^2/alpha)(x^2-alpha) + (1-r^2/alpha)x^2.
inline BergMaserick berg_maserick(const Rational& c, const Rational& d, const Endpoint& a,
                                  const Endpoint& b) {
    if (!(c < d)) throw std::domain_error("berg_maserick: requires c < d");
    if (endpoint_lt(Endpoint(c), a) || endpoint_lt(b, Endpoint(d)))
        throw std::domain_error("berg_maserick: requires a <= c < d <= b");

    if (a.is_rational() && b.is_rational()) {
        return detail::bm_symmetric(c + d, c * d, a.rational() + b.rational(),
                                    a.rational() * b.rational());
    }
    if (!(a.is_surd() && b.is_surd() && a.surd().s == b.surd().s && a.surd().p == b.surd().p))
        throw std::domain_error("berg_maserick: endpoints must be rational or a conjugate pair");

    // shift by S/2: generator becomes x^2 - alpha
    const Rational S = a.surd().s;
    const Rational P = a.surd().p;
    const Rational alpha = S * S / Rational(4) - P;
    const Rational ct = c - S / Rational(2);
    const Rational dt = d - S / Rational(2);
    Rational need = ct.abs() > dt.abs() ? ct.abs() : dt.abs();
    const QuadSurd sqrt_alpha = make_quad_surd(Rational(0), -alpha, true);
    Rational tol(1, 2);
    Rational r = rational_approx_surd(sqrt_alpha, tol, Side::Below);
    int guard = 0;
    while (!(need < r)) {
        tol /= Rational(2);
        r = rational_approx_surd(sqrt_alpha, tol, Side::Below);
        if (++guard > 10000)
            throw InternalInconsistency("berg_maserick: surd approximation stuck");
    }
    BergMaserick inner = detail::bm_symmetric(ct + dt, ct * dt, Rational(0), -r * r);
    // (y-ct)(y-dt) = inner.sigma0 + inner.t (y^2 - r^2)
    //             = inner.sigma0 + inner.t (1 - r^2/alpha) y^2 + inner.t (r^2/alpha)(y^2-alpha)
    Rational ratio = r * r / alpha;
    WeightedSOS s0 = inner.sigma0;
    s0.add(inner.t * (Rational(1) - ratio), Polynomial::x());
    Rational t = inner.t * ratio;
    // shift back y = x - S/2
    WeightedSOS s0x = s0.affine(Rational(1), -S / Rational(2));
    Polynomial outq{P, -S, Rational(1)};
    Polynomial inq = Polynomial{-c, Rational(1)} * Polynomial{-d, Rational(1)};
    if (!(s0x.expand() + outq * t == inq))
        throw InternalInconsistency("berg_maserick: surd identity check failed");
    return {t, s0x};
}

/// Certificate for x - a (a < -sqrt(d)) or a - x (a > sqrt(d)) over the
/// single generator d - x^2:
///   (1/-2r)[(d-x^2)+(x-r)^2] = x - (r^2+d)/(2r)   for r < 0.
inline Certificate disk_linear(const Rational& a, const Rational& d) {
    if (!d.is_positive() || is_square_rational(d))
        throw std::domain_error("disk_linear: d must be positive and non-square");
    const QuadSurd sqrt_d = make_quad_surd(Rational(0), -d, true);
    const bool below = a.is_negative() && (a * a > d);
    const bool above = a.is_positive() && (a * a > d);
    if (!below && !above) throw std::domain_error("disk_linear: a must satisfy a^2 > d");

    GeneratorSet gens;
    gens.add(Polynomial{d, Rational(0), Rational(-1)}, GenRole::DiskQuadratic);

    Rational tol(1, 2);
    int guard = 0;
    while (true) {
        if (++guard > 10000) throw InternalInconsistency("disk_linear: approximation stuck");
        // |r| slightly above sqrt(d), so a' = (r^2+d)/(2r) sits strictly
        // between a and the surd for tol small enough
        Rational r_abs = rational_approx_surd(sqrt_d, tol, Side::Above);
        Rational r = below ? -r_abs : r_abs;
        Rational aprime = (r * r + d) / (Rational(2) * r);
        bool aprime_ok = below ? (a < aprime) : (aprime < a);
        if (!aprime_ok) {
            tol /= Rational(2);
            continue;
        }
        // below: x - a = (1/-2r)(x-r)^2 + (1/-2r)(d-x^2) + (a'-a)
        // above: a - x = (1/2r)(x-r)^2 + (1/2r)(d-x^2) + (a-a')
        Rational w = below ? Rational(1) / (Rational(-2) * r) : Rational(1) / (Rational(2) * r);
        Rational constant = below ? aprime - a : a - aprime;
        Polynomial target = below ? Polynomial{-a, Rational(1)} : Polynomial{a, Rational(-1)};
        Certificate cert(target, gens);
        cert.add_term(ExponentVector::zero(1), WeightedSOS(w, Polynomial{-r, Rational(1)}));
        if (!constant.is_zero())
            cert.add_term(ExponentVector::zero(1), WeightedSOS(constant, Polynomial(Rational(1))));
        cert.add_term(ExponentVector::unit(1, 0), WeightedSOS(w, Polynomial(Rational(1))));
        if (!(cert.expand() == target)) throw InternalInconsistency("disk_linear: identity failed");
        return cert;
    }
}

}  // namespace pcert
