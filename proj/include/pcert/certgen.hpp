#pragma once

/**
 * @file certgen.hpp
 * @brief The certificate generator: decides f in Pos(K) and produces a
 *        verified preordering certificate over the natural generators,
 *        following the constructive saturation proof case by case.
 *
 * Structure of certify:
 *   - connected sets go to the base decompositions (line, point, half-line,
 *     interval, and the quadratic-endpoint disk forms);
 *   - a multi-component K first tries the hull reduction; otherwise f is
 *     negative in some gap and one of three degree-reducing steps applies:
 *     factor out an interior zero, subtract an interpolating quadratic
 *     (interior minimum), or subtract a scaled product of gap generators
 *     (boundary zeros);
 *   - surd-bounded gaps are shrunk to rational sub-gaps (or merged away),
 *     the all-rational problem is certified, and the shrunk gap generator is
 *     rewritten via the Berg-Maserick identity.
 *
 * The proof's sequences (r_n), (s_n), (b_n), delta_N are replaced by bounded
 * refinement ladders whose exit conditions are the exact oracle checks; a
 * safety cap reports internal inconsistency instead of looping forever.
 */

#include <variant>

#include "sos_core.hpp"

namespace pcert {

struct CertifyConfig {
    int degree_cap = 64;
    int max_refinements = 10000;
    int ladder_cap = 64;  // refinement ladder steps per search
    uint64_t seed = 0;    // reserved; the pipeline is deterministic
};

namespace certdetail {

// ---- root windows + zone signs (the sign layout of f on R) ----

struct SignLayout {
    std::vector<IsolatingInterval> windows;  // disjoint, sorted; degenerate = rational root
    std::vector<int> zone_signs;             // windows.size()+1 entries, each +-1
};

inline SignLayout sign_layout(const Polynomial& f, int degree_cap) {
    SignLayout out;
    out.windows = isolate_roots(f, degree_cap);
    const size_t k = out.windows.size();
    out.zone_signs.resize(k + 1);
    for (size_t i = 0; i <= k; ++i) {
        Rational sample;
        if (k == 0)
            sample = Rational(0);
        else if (i == 0)
            sample = out.windows[0].lo - Rational(1);
        else if (i == k)
            sample = out.windows[k - 1].hi + Rational(1);
        else
            sample = (out.windows[i - 1].hi + out.windows[i].lo) / Rational(2);
        out.zone_signs[i] = f(sample).sign();
        if (out.zone_signs[i] == 0)
            throw InternalInconsistency("sign_layout: sample hit a root");
    }
    return out;
}

/// Refines window w until it lies strictly on one side of e (or e is its
/// root). Returns -1 (window left of e), 0 (root == e), +1 (right of e).
inline int window_vs_endpoint(IsolatingInterval& w, const Endpoint& e) {
    const bool root_is_e = sign_at(w.poly, e) == Sign::Zero;
    while (true) {
        if (endpoint_cmp(e, Endpoint(w.lo)) == std::strong_ordering::less) return 1;
        if (endpoint_cmp(e, Endpoint(w.hi)) == std::strong_ordering::greater) return -1;
        if (root_is_e) return 0;
        w = refine(w, w.width() / Rational(4));
    }
}

/// Index range [first, past) of windows whose roots lie strictly inside
/// (a, b); first == -1 when none do.
inline std::pair<int, int> windows_in_gap(SignLayout& L, const Endpoint& a, const Endpoint& b) {
    int first = -1, last = -1;
    for (size_t i = 0; i < L.windows.size(); ++i) {
        if (window_vs_endpoint(L.windows[i], a) <= 0) continue;
        if (window_vs_endpoint(L.windows[i], b) >= 0) break;
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
    }
    return {first, first < 0 ? -1 : last + 1};
}

/// Does f take a negative value strictly inside (a, b)?
inline bool dips_inside(SignLayout& L, const Endpoint& a, const Endpoint& b) {
    auto [first, past] = windows_in_gap(L, a, b);
    if (first < 0) {
        // no roots inside: constant sign across the gap = sign of the zone
        // containing it
        for (size_t i = 0; i < L.windows.size(); ++i)
            if (window_vs_endpoint(L.windows[i], a) >= 0) return L.zone_signs[i] < 0;
        return L.zone_signs[L.windows.size()] < 0;
    }
    for (int i = first; i <= past; ++i)
        if (L.zone_signs[i] < 0) return true;
    return false;
}

/// Negative zone strictly left of e (its windows and zones all below e)?
inline bool dips_left_of(SignLayout& L, const Endpoint& e) {
    for (size_t i = 0; i < L.windows.size(); ++i) {
        if (window_vs_endpoint(L.windows[i], e) >= 0) return false;
        if (L.zone_signs[i] < 0) return true;
    }
    return L.zone_signs[L.windows.size()] < 0;  // everything left of e
}

inline bool dips_right_of(SignLayout& L, const Endpoint& e) {
    for (size_t i = L.windows.size(); i-- > 0;) {
        if (window_vs_endpoint(L.windows[i], e) <= 0) return false;
        if (L.zone_signs[i + 1] < 0) return true;
    }
    return L.zone_signs[0] < 0;
}

}  // namespace certdetail

// ---- spec-surfaced step types ----

struct GapContext {
    Endpoint left;   // d'_i (meaningful when choice == LeftQuadratic)
    Endpoint zero;   // c_i
    Endpoint right;  // d''_i (meaningful when choice == RightQuadratic)
    enum class Choice { One, LeftQuadratic, RightQuadratic } choice;
};

struct ShortCircuit {
    Polynomial factor;  // h': (x-c)^2, (x-c)(x-d''), (x-c1), or (c_r - x)
};

struct InteriorZeroStep {
    Polynomial square_factor;  // h' = g^{2r}
    Polynomial minimal_poly;   // g
    int half_multiplicity;     // r
    Polynomial quotient;       // h = f / h'
};

struct InteriorMinProbe {
    Rational r;
    Rational s;
    Rational delta;
    Polynomial G;         // degree <= 2, G(r) = f(r), G(s) = f(s)
    Polynomial quotient;  // h = (f - G) / ((x-r)(x-s))
    Endpoint gap_lo, gap_hi;
};

struct BoundaryStep {
    Polynomial G;             // scale * product of selected gap generators
    Rational b_prime;         // rational divisor root near b
    Rational c1;              // smallest boundary zero
    Endpoint gap_lo, gap_hi;  // gap containing b'
    Polynomial quotient;      // h = (f - G) / ((x-b')(x-c1))
};

class Certifier {
public:
    explicit Certifier(CertifyConfig cfg = {}) : cfg_(cfg) {}

    Result<Certificate> certify(const Polynomial& f, const SemiAlgSet& K) {
        if (K.is_empty())
            return Refusal{Refusal::Reason::EmptySet,
                           "certification over the empty set is vacuous",
                           "every polynomial is trivially nonnegative on an empty set; no "
                           "certificate is meaningful"};
        auto gens = natural_generators(K);
        if (!gens.ok()) {
            Refusal r = gens.refusal();
            if (!K.is_compact())
                r.citation =
                    "noncompact K with an unsupported algebraic boundary point: Pos(K) is not a "
                    "finitely generated preordering";
            return r;
        }
        auto verdict = is_nonneg_on(f, K);
        if (!verdict.nonnegative)
            return Refusal{Refusal::Reason::NotNonnegative, "f takes a negative value on K",
                           "f is not in Pos(K)", verdict.witness};
        try {
            Certificate cert = rec(f, K, gens.value(), 0);
            cert.metadata().provenance = "certify";
            if (!(cert.expand() == f))
                throw InternalInconsistency("certify: final identity check failed");
            return cert;
        } catch (const DegreeLimitExceeded& e) {
            return Refusal{Refusal::Reason::DegreeLimitExceeded, e.what(),
                           "configured factorization degree cap"};
        }
    }

    // ---- spec-surfaced steps (preconditions checked by the dispatcher) ----

    /// Factors out the even power of the minimal polynomial of an interior
    /// zero: f = g^{2r} h with h in Pos(K).
    InteriorZeroStep interior_zero_step(const Polynomial& f, const SemiAlgSet& K) {
        auto roots = classify_roots(f, K, cfg_.degree_cap);
        for (const auto& r : roots) {
            if (r.location != ClassifiedRoot::Location::Interior) continue;
            if (r.multiplicity % 2 != 0)
                throw InternalInconsistency(
                    "interior_zero_step: odd multiplicity at an interior zero contradicts "
                    "nonnegativity");
            Polynomial hp = r.factor.pow(static_cast<unsigned>(r.multiplicity));
            Polynomial h = poly_divexact(f, hp);
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("interior_zero_step: quotient not nonnegative");
            return {hp, r.factor, r.multiplicity / 2, h};
        }
        throw InternalInconsistency("interior_zero_step: no interior zero");
    }

    /// Quadratic interpolation step for f > 0 on K with a negative dip in
    /// the gap (gap_lo, gap_hi): returns G with f - G = (x-r)(x-s) h, all
    /// side conditions verified exactly.
    InteriorMinProbe interior_min_step(const Polynomial& f, const SemiAlgSet& K,
                                       const Endpoint& gap_lo, const Endpoint& gap_hi) {
        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);
        auto [first, past] = certdetail::windows_in_gap(L, gap_lo, gap_hi);
        if (first < 0 || past - first < 2)
            throw InternalInconsistency("interior_min_step: needs two extreme zeros in the gap");
        IsolatingInterval wl = L.windows[first];
        IsolatingInterval wr = L.windows[past - 1];

        Rational delta0(1);
        Rational lc_abs = f.leading_coefficient().abs();
        if (lc_abs < Rational(2)) delta0 = lc_abs / Rational(2);

        for (int k = 0; k < cfg_.ladder_cap; ++k) {
            // windows shrink twice as fast as delta, so the interpolation
            // error vanishes relative to the cushion
            Rational w = Rational(1, 4).pow(static_cast<unsigned>(k + 1));
            if (!wl.degenerate()) wl = refine(wl, w);
            if (!wr.degenerate()) wr = refine(wr, w);
            Rational r = wl.degenerate() ? wl.lo : wl.hi;
            Rational s = wr.lo;
            if (!(r < s)) continue;
            if (!(endpoint_cmp(Endpoint(r), gap_lo) == std::strong_ordering::greater)) continue;
            if (!(endpoint_cmp(Endpoint(s), gap_hi) == std::strong_ordering::less)) continue;
            Rational delta = delta0 / Rational(2).pow(static_cast<unsigned>(k));

            Rational fr = f(r), fs = f(s);
            Polynomial quad = Polynomial{-r, Rational(1)} * Polynomial{-s, Rational(1)};
            Polynomial G;
            if (!(fr.is_zero() && fs.is_zero())) {  // (d1): exact roots give G = 0
                Rational slope = (fs - fr) / (s - r);
                Polynomial line{fr - slope * r, slope};
                G = quad * delta + line;
            }
            Polynomial diff = f - G;
            auto [h, rem] = poly_divrem(diff, quad);
            if (!rem.is_zero())
                throw InternalInconsistency("interior_min_step: interpolation division failed");
            if (!G.is_zero() && !is_nonneg_on(G, K).nonnegative) continue;
            if (!is_nonneg_on(diff, K).nonnegative) continue;
            if (!is_nonneg_on(h, K).nonnegative) continue;
            return {r, s, G.is_zero() ? Rational(0) : delta, G, h, gap_lo, gap_hi};
        }
        throw InternalInconsistency("interior_min_step: refinement ladder exhausted");
    }

    /// The per-zero generator selection table; either a short-circuit factor
    /// or one GapContext per boundary zero.
    std::variant<ShortCircuit, std::vector<GapContext>> select_gap_generators(
        const Polynomial& f, const SemiAlgSet& K, const std::vector<Endpoint>& zeros) {
        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);
        const size_t r = zeros.size();
        if (r == 0) throw InternalInconsistency("select_gap_generators: no zeros");

        auto minimum = K.minimum();
        auto maximum = K.maximum();

        struct ZeroInfo {
            Rational c;
            bool isolated = false, left_seg = false, right_seg = false;
            bool has_right_gap = false, has_left_gap = false;
            Rational d_right, d_left;
            int sR = 0, sL = 0;
            bool fd_right_zero = false, fd_left_zero = false;
            int s_before_dright = 0;
        };
        std::vector<ZeroInfo> info(r);
        for (size_t i = 0; i < r; ++i) {
            ZeroInfo& z = info[i];
            if (!zeros[i].is_rational())
                throw InternalInconsistency("select_gap_generators: surd boundary zero leaked");
            z.c = zeros[i].rational();
            for (const auto& comp : K.components()) {
                if (comp.kind == Component::Kind::Point && endpoint_eq(comp.lo, zeros[i]))
                    z.isolated = true;
                bool has_lo = comp.kind == Component::Kind::Segment ||
                              comp.kind == Component::Kind::RayAbove;
                bool has_hi = comp.kind == Component::Kind::Segment ||
                              comp.kind == Component::Kind::RayBelow;
                if (has_lo && endpoint_eq(comp.lo, zeros[i])) z.left_seg = true;
                if (has_hi && endpoint_eq(comp.hi, zeros[i])) z.right_seg = true;
            }
            for (const auto& [glo, ghi] : K.gaps()) {
                if (endpoint_eq(glo, zeros[i])) {
                    z.has_right_gap = true;
                    z.d_right = ghi.rational();
                }
                if (endpoint_eq(ghi, zeros[i])) {
                    z.has_left_gap = true;
                    z.d_left = glo.rational();
                }
            }
            z.sR = sign_right_of(L, z.c);
            z.sL = sign_left_of(L, z.c);
            if (z.has_right_gap) {
                z.fd_right_zero = f(z.d_right).is_zero();
                z.s_before_dright = sign_left_of(L, z.d_right);
            }
            if (z.has_left_gap) z.fd_left_zero = f(z.d_left).is_zero();
        }

        // (h1)-(h4): short circuits
        for (size_t i = 0; i < r; ++i) {
            const ZeroInfo& z = info[i];
            if (z.sR > 0 && z.sL > 0)
                return ShortCircuit{Polynomial{-z.c, Rational(1)} * Polynomial{-z.c, Rational(1)}};
            if (z.sR < 0 && z.has_right_gap && z.fd_right_zero && z.s_before_dright < 0)
                return ShortCircuit{Polynomial{-z.c, Rational(1)} *
                                    Polynomial{-z.d_right, Rational(1)}};
        }
        if (minimum && minimum->is_rational() && info.front().c == minimum->rational() &&
            info.front().sR > 0)
            return ShortCircuit{Polynomial{-info.front().c, Rational(1)}};
        if (maximum && maximum->is_rational() && info.back().c == maximum->rational() &&
            info.back().sL > 0)
            return ShortCircuit{Polynomial{info.back().c, Rational(-1)}};

        // per-zero table (the (i)/(j) rules)
        std::vector<GapContext> out;
        for (size_t i = 0; i < r; ++i) {
            const ZeroInfo& z = info[i];
            const bool is_first = (i == 0);
            const bool is_min = minimum && minimum->is_rational() && z.c == minimum->rational();
            const bool is_max = maximum && maximum->is_rational() && z.c == maximum->rational();
            const bool f_nonneg_before_dright =
                !z.has_right_gap || !(z.fd_right_zero && z.s_before_dright < 0);
            const bool fd_left_is_zero = z.has_left_gap && z.fd_left_zero;

            GapContext ctx{Endpoint(z.has_left_gap ? z.d_left : z.c), Endpoint(z.c),
                           Endpoint(z.has_right_gap ? z.d_right : z.c), GapContext::Choice::One};

            if (is_min) {
                // (j1): minimal element; (h3)/(h7) force f < 0 right, isolated
                if (!(z.sR < 0) || !z.has_right_gap)
                    throw InternalInconsistency("selection (j1): unexpected configuration");
                ctx.choice = GapContext::Choice::RightQuadratic;
            } else if (is_max) {
                // (j8): f < 0 left (h8), left gap exists
                if (!z.has_left_gap)
                    throw InternalInconsistency("selection (j8): missing left gap");
                ctx.choice = fd_left_is_zero ? GapContext::Choice::One
                                             : GapContext::Choice::LeftQuadratic;
            } else if (z.sR < 0) {
                // (j2)/(j5)/(j7)/(j10)
                if (!z.has_right_gap)
                    throw InternalInconsistency("selection: negative right side without a gap");
                ctx.choice = GapContext::Choice::RightQuadratic;
            } else {
                // f > 0 just right of c_i
                if (z.right_seg)
                    throw InternalInconsistency("selection: f > 0 on both sides escaped (h1)");
                if (z.has_right_gap && !f_nonneg_before_dright) {
                    // (j3.1)/(j4.3): f dives into d''
                    ctx.choice = GapContext::Choice::RightQuadratic;
                } else if (fd_left_is_zero && !is_first) {
                    // (j4.1)/(j6.1)/(j9.2): d' is the previous zero
                    ctx.choice = GapContext::Choice::One;
                } else {
                    // (j3.2)/(j4.2)/(j6.2)/(j9.1)
                    if (!z.has_left_gap)
                        throw InternalInconsistency("selection: left quadratic without a gap");
                    ctx.choice = GapContext::Choice::LeftQuadratic;
                }
            }
            out.push_back(ctx);
        }
        if (out.front().choice == GapContext::Choice::One)
            throw InternalInconsistency("selection: g_1 = 1 is never chosen by the table");
        return out;
    }

    /// The scaled-product step at boundary zeros: G = (f(b')/prod g_i(b'))
    /// prod g_i with f - G = (x-b')(x-c1) h, everything checked exactly.
    /// Candidate divisor roots are swept right gap first, then left.
    BoundaryStep boundary_step(const Polynomial& f, const SemiAlgSet& K,
                               const std::vector<GapContext>& selection) {
        Polynomial G_prod{Rational(1)};
        for (const auto& ctx : selection) {
            if (ctx.choice == GapContext::Choice::One) continue;
            const Endpoint& other =
                ctx.choice == GapContext::Choice::RightQuadratic ? ctx.right : ctx.left;
            G_prod *= Polynomial{-ctx.zero.rational(), Rational(1)} *
                      Polynomial{-other.rational(), Rational(1)};
        }
        if (G_prod.degree() > f.degree())
            throw InternalInconsistency("boundary_step: product degree exceeds deg f");
        const Rational c1 = selection.front().zero.rational();
        if (!G_prod(c1).is_zero())
            throw InternalInconsistency("boundary_step: product does not vanish at c1");

        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);

        std::vector<std::pair<Endpoint, Endpoint>> cand_gaps;
        for (const auto& [glo, ghi] : K.gaps())
            if (glo.is_rational() && glo.rational() == c1) cand_gaps.emplace_back(glo, ghi);
        for (const auto& [glo, ghi] : K.gaps())
            if (ghi.is_rational() && ghi.rational() == c1) cand_gaps.emplace_back(glo, ghi);

        for (const auto& [gap_lo, gap_hi] : cand_gaps) {
            auto [first, past] = certdetail::windows_in_gap(L, gap_lo, gap_hi);
            if (first < 0) continue;
            for (int wi = first; wi < past; ++wi) {
                for (int side = 0; side < 2; ++side) {
                    IsolatingInterval w = L.windows[wi];
                    Rational width0 = w.degenerate() ? Rational(1, 4) : w.width();
                    for (int k = 1; k < cfg_.ladder_cap; ++k) {
                        Rational off = width0 * Rational(1, 2).pow(static_cast<unsigned>(k));
                        Rational bp;
                        if (w.degenerate()) {
                            bp = side == 0 ? w.lo + off : w.lo - off;
                        } else {
                            w = refine(w, off);
                            bp = side == 0 ? w.hi : w.lo;
                        }
                        if (!(endpoint_cmp(Endpoint(bp), gap_lo) == std::strong_ordering::greater))
                            continue;
                        if (!(endpoint_cmp(Endpoint(bp), gap_hi) == std::strong_ordering::less))
                            continue;
                        Rational fb = f(bp);
                        if (fb.is_zero()) continue;
                        Rational gb = G_prod(bp);
                        if (gb.is_zero()) continue;
                        if (fb.sign() != gb.sign()) break;  // wrong side for this root
                        Rational scale = fb / gb;
                        Polynomial G = G_prod * scale;
                        Polynomial diff = f - G;
                        Polynomial hp =
                            Polynomial{-bp, Rational(1)} * Polynomial{-c1, Rational(1)};
                        auto [h, rem] = poly_divrem(diff, hp);
                        if (!rem.is_zero())
                            throw InternalInconsistency("boundary_step: divisor does not divide");
                        if (!is_nonneg_on(diff, K).nonnegative) continue;
                        if (!is_nonneg_on(h, K).nonnegative) continue;
                        return {G, bp, c1, gap_lo, gap_hi, h};
                    }
                }
            }
        }
        throw InternalInconsistency("boundary_step: no admissible divisor root found");
    }

private:
    // sign of f immediately right/left of the rational point c
    static int sign_right_of(certdetail::SignLayout& L, const Rational& c) {
        for (size_t i = 0; i < L.windows.size(); ++i) {
            if (L.windows[i].hi < c) continue;
            if (c < L.windows[i].lo) return L.zone_signs[i];
            int rel = certdetail::window_vs_endpoint(L.windows[i], Endpoint(c));
            if (rel == 1) return L.zone_signs[i];
            if (rel == -1) continue;
            return L.zone_signs[i + 1];  // c is the root; just right is the next zone
        }
        return L.zone_signs[L.windows.size()];
    }
    static int sign_left_of(certdetail::SignLayout& L, const Rational& c) {
        for (size_t i = L.windows.size(); i-- > 0;) {
            if (c < L.windows[i].lo) continue;
            if (L.windows[i].hi < c) return L.zone_signs[i + 1];
            int rel = certdetail::window_vs_endpoint(L.windows[i], Endpoint(c));
            if (rel == -1) return L.zone_signs[i + 1];
            if (rel == 1) continue;
            return L.zone_signs[i];
        }
        return L.zone_signs[0];
    }

    // ---- certificate assembly helpers ----

    static size_t find_generator(const GeneratorSet& gens, const Polynomial& g) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens.generators[i] == g) return i;
        throw InternalInconsistency("generator not found in the natural set");
    }

    static size_t find_generator_role(const GeneratorSet& gens, GenRole role) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens.roles[i] == role) return i;
        throw InternalInconsistency("generator role not present");
    }

    /// Embeds a certificate over a subset of the generators into the full
    /// list; mapping[j] is the index of sub-generator j in gens.
    static Certificate embed(const Certificate& sub, const GeneratorSet& gens,
                             const std::vector<size_t>& mapping) {
        Certificate out(sub.target(), gens);
        for (const auto& [e, sos] : sub.terms()) {
            ExponentVector ee = ExponentVector::zero(gens.size());
            for (size_t j = 0; j < e.size(); ++j)
                if (e.bits[j]) ee.bits[mapping[j]] = 1;
            out.add_term(ee, sos);
        }
        return out;
    }

    static Certificate from_sos(const Polynomial& f, const WeightedSOS& sos,
                                const GeneratorSet& gens) {
        Certificate c(f, gens);
        c.add_term(ExponentVector::zero(gens.size()), sos);
        return c;
    }

    /// Half-line certificate pulled to x = alpha*y + shift (alpha = +-1):
    /// f = sigma0(y(x)) + gen(x) * sigma1(y(x)) with gen = x-a resp. b-x.
    Certificate halfline_cert(const Polynomial& f, const GeneratorSet& gens, size_t idx,
                              const Rational& alpha, const Rational& shift) {
        Polynomial g = affine_substitute(f, alpha, shift);
        auto [s0, s1] = decompose_halfline(g, cfg_.degree_cap);
        WeightedSOS s0x = s0.affine(alpha, -alpha * shift);  // y = alpha*(x - shift)
        WeightedSOS s1x = s1.affine(alpha, -alpha * shift);
        Certificate cert(f, gens);
        cert.add_term(ExponentVector::zero(gens.size()), s0x);
        cert.add_term(ExponentVector::unit(gens.size(), idx), s1x);
        if (!(cert.expand() == f)) throw InternalInconsistency("halfline_cert: identity failed");
        return cert;
    }

    // ---- recursion ----

    Certificate rec(const Polynomial& f, const SemiAlgSet& K, const GeneratorSet& gens,
                    int depth) {
        if (depth > 3 * std::max(1, f.degree()) + 24)
            throw InternalInconsistency("certify: recursion depth exceeded");
        if (f.is_zero()) return Certificate(Polynomial{}, gens);
        if (f.degree() == 0) return Certificate::constant(f.coeff(0), gens);
        if (K.is_line()) return from_sos(f, sos_on_line(f, cfg_.degree_cap), gens);

        if (K.components().size() == 1) return connected(f, K, K.components()[0], gens, depth);
        if (!K.boundary_all_rational()) return mixed(f, K, gens, depth);
        return rational_multi(f, K, gens, depth);
    }

    Certificate connected(const Polynomial& f, const SemiAlgSet& K, const Component& c,
                          const GeneratorSet& gens, int depth) {
        switch (c.kind) {
            case Component::Kind::Line:
                return from_sos(f, sos_on_line(f, cfg_.degree_cap), gens);
            case Component::Kind::Point:
                return decompose_point(f, c.lo.rational());
            case Component::Kind::RayAbove:
                return halfline_cert(f, gens, 0, Rational(1), c.lo.rational());
            case Component::Kind::RayBelow:
                return halfline_cert(f, gens, 0, Rational(-1), c.hi.rational());
            case Component::Kind::Segment:
                if (c.lo.is_rational() && c.hi.is_rational())
                    return decompose_interval(f, c.lo.rational(), c.hi.rational(),
                                              cfg_.degree_cap);
                return quad_segment(f, K, c, gens, depth);
        }
        throw InternalInconsistency("connected: unreachable");
    }

    // ---- quadratic-endpoint segments: [l,u] disk, [a,u], [l,b] ----

    Certificate quad_segment(const Polynomial& f, const SemiAlgSet& K, const Component& c,
                             const GeneratorSet& gens, int depth) {
        // generator layout from natural_generators:
        //   disk [l,u]: { -(minpoly) };  [a,u]: { x-a, -(minpoly) };
        //   [l,b]: { -(minpoly), b-x }
        const bool has_lower = c.lo.is_rational();
        const bool has_upper = c.hi.is_rational();
        const QuadSurd& surd = c.lo.is_surd() ? c.lo.surd() : c.hi.surd();
        const size_t disk_idx = has_lower ? 1 : 0;
        const Polynomial q = surd.min_poly();

        if (is_nonneg_on_line(f).nonnegative)
            return from_sos(f, sos_on_line(f, cfg_.degree_cap), gens);

        if (has_lower) {
            SemiAlgSet ray = SemiAlgSet::from_components({make_ray_above(c.lo)});
            if (is_nonneg_on(f, ray).nonnegative)
                return halfline_cert(f, gens, 0, Rational(1), c.lo.rational());
        }
        if (has_upper) {
            SemiAlgSet ray = SemiAlgSet::from_components({make_ray_below(c.hi)});
            if (is_nonneg_on(f, ray).nonnegative)
                return halfline_cert(f, gens, disk_idx + 1, Rational(-1), c.hi.rational());
        }

        // f vanishes at the surd pair: divide out the minimal polynomial
        if (poly_divrem(f, q).second.is_zero()) {
            Polynomial h = -poly_divexact(f, q);  // f = (-q) * h
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("quad_segment: quotient not nonnegative");
            return cert_mul(Certificate::generator(gens, disk_idx), rec(h, K, gens, depth + 1));
        }

        // rational endpoint zero: strip the linear generator
        if (has_lower && f(c.lo.rational()).is_zero()) {
            Polynomial h = poly_divexact(f, Polynomial{-c.lo.rational(), Rational(1)});
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("quad_segment: lower quotient not nonnegative");
            return cert_mul(Certificate::generator(gens, 0), rec(h, K, gens, depth + 1));
        }
        if (has_upper && f(c.hi.rational()).is_zero()) {
            Polynomial h = poly_divexact(f, Polynomial{c.hi.rational(), Rational(-1)});
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("quad_segment: upper quotient not nonnegative");
            return cert_mul(Certificate::generator(gens, disk_idx + 1), rec(h, K, gens, depth + 1));
        }

        // interior zero: even power of its minimal polynomial
        {
            auto roots = classify_roots(f, K, cfg_.degree_cap);
            for (const auto& rt : roots) {
                if (rt.location != ClassifiedRoot::Location::Interior) continue;
                auto step = interior_zero_step(f, K);
                Certificate sq = Certificate::square(
                    Rational(1),
                    step.minimal_poly.pow(static_cast<unsigned>(step.half_multiplicity)), gens);
                return cert_mul(sq, rec(step.quotient, K, gens, depth + 1));
            }
        }

        // f > 0 on K with dips outside: peel a linear factor
        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);
        if (!has_lower && certdetail::dips_left_of(L, c.lo))
            return disk_peel_below(f, K, c, gens, L, depth);
        if (!has_upper && certdetail::dips_right_of(L, c.hi))
            return disk_peel_above(f, K, c, gens, L, depth);
        throw InternalInconsistency("quad_segment: dispatch exhausted");
    }

    /// Dip in (-inf, l): pick a zero a of f with f < 0 just left of it, a
    /// rational r < a with f(r) < 0 and a shallow increasing line
    /// g = s(x - rho), rho < l, with g <= f on K; then f = g + (x-r) h.
    Certificate disk_peel_below(const Polynomial& f, const SemiAlgSet& K, const Component& c,
                                const GeneratorSet& gens, certdetail::SignLayout& L, int depth) {
        int zone = -1;
        for (size_t i = 0; i < L.windows.size(); ++i) {
            if (certdetail::window_vs_endpoint(L.windows[i], c.lo) >= 0) break;
            if (L.zone_signs[i] < 0) zone = static_cast<int>(i);
        }
        if (zone < 0) throw InternalInconsistency("disk_peel_below: no negative zone");
        IsolatingInterval aw = L.windows[zone];  // its root a has f < 0 just left

        IsolatingInterval lw = surd_interval(c.lo.surd());
        for (int k = 1; k < cfg_.ladder_cap; ++k) {
            Rational step = Rational(1, 2).pow(static_cast<unsigned>(k));
            if (!aw.degenerate()) aw = refine(aw, step);
            lw = refine(lw, step);
            Rational r = aw.degenerate() ? aw.lo - step : aw.lo;
            Rational fr = f(r);
            if (!fr.is_negative()) continue;
            if (!(r < lw.lo)) continue;
            Rational slope = Rational(2) * fr.abs() / (lw.lo - r);
            Rational rho = r + fr.abs() / slope;
            if (!(endpoint_cmp(Endpoint(rho), c.lo) == std::strong_ordering::less)) continue;
            Polynomial line = Polynomial{-rho, Rational(1)} * slope;  // s(x - rho)
            Polynomial diff = f - line;
            if (!is_nonneg_on(diff, K).nonnegative) continue;
            Polynomial h = poly_divexact(diff, Polynomial{-r, Rational(1)});
            if (!is_nonneg_on(h, K).nonnegative) continue;

            Certificate line_cert = cert_scale(disk_linear_general(rho, surd_pair_of(c), gens), slope);
            Certificate xr_cert = disk_linear_general(r, surd_pair_of(c), gens);
            Certificate out = cert_add(line_cert, cert_mul(xr_cert, rec(h, K, gens, depth + 1)));
            if (!(out.expand() == f)) throw InternalInconsistency("disk_peel_below: identity");
            return out;
        }
        throw InternalInconsistency("disk_peel_below: ladder exhausted");
    }

    Certificate disk_peel_above(const Polynomial& f, const SemiAlgSet& K, const Component& c,
                                const GeneratorSet& gens, certdetail::SignLayout& L, int depth) {
        int zone = -1;
        for (size_t i = L.windows.size(); i-- > 0;) {
            if (certdetail::window_vs_endpoint(L.windows[i], c.hi) <= 0) break;
            if (L.zone_signs[i + 1] < 0) zone = static_cast<int>(i);
        }
        if (zone < 0) throw InternalInconsistency("disk_peel_above: no negative zone");
        IsolatingInterval ww = L.windows[zone];  // its root w has f < 0 just right

        IsolatingInterval uw = surd_interval(c.hi.surd());
        for (int k = 1; k < cfg_.ladder_cap; ++k) {
            Rational step = Rational(1, 2).pow(static_cast<unsigned>(k));
            if (!ww.degenerate()) ww = refine(ww, step);
            uw = refine(uw, step);
            Rational rt = ww.degenerate() ? ww.lo + step : ww.hi;
            Rational frt = f(rt);
            if (!frt.is_negative()) continue;
            if (!(uw.hi < rt)) continue;
            Rational slope = Rational(2) * frt.abs() / (rt - uw.hi);
            Rational rho = rt - frt.abs() / slope;
            if (!(endpoint_cmp(Endpoint(rho), c.hi) == std::strong_ordering::greater)) continue;
            Polynomial line = Polynomial{rho, Rational(-1)} * slope;  // s(rho - x)
            Polynomial diff = f - line;
            if (!is_nonneg_on(diff, K).nonnegative) continue;
            Polynomial h = poly_divexact(diff, Polynomial{rt, Rational(-1)});
            if (!is_nonneg_on(h, K).nonnegative) continue;

            Certificate line_cert = cert_scale(disk_linear_general(rho, surd_pair_of(c), gens), slope);
            Certificate xr_cert = disk_linear_general(rt, surd_pair_of(c), gens);
            Certificate out = cert_add(line_cert, cert_mul(xr_cert, rec(h, K, gens, depth + 1)));
            if (!(out.expand() == f)) throw InternalInconsistency("disk_peel_above: identity");
            return out;
        }
        throw InternalInconsistency("disk_peel_above: ladder exhausted");
    }

    static QuadSurd surd_pair_of(const Component& c) {
        return c.lo.is_surd() ? c.lo.surd() : c.hi.surd();
    }

    /// x - a (a below the disk) or a - x (a above it) over the DiskQuadratic
    /// generator, via the shifted disk-linear identity.
    Certificate disk_linear_general(const Rational& a, const QuadSurd& surd,
                                    const GeneratorSet& gens) {
        const Rational S = surd.s;
        const Rational alpha = S * S / Rational(4) - surd.p;
        Certificate shifted = disk_linear(a - S / Rational(2), alpha);  // over {alpha - y^2}
        Certificate back = cert_affine(shifted, Rational(1), -S / Rational(2));
        size_t idx = find_generator_role(gens, GenRole::DiskQuadratic);
        if (!(back.generators().generators[0] == gens.generators[idx]))
            throw InternalInconsistency("disk_linear_general: generator mismatch");
        return embed(back, gens, {idx});
    }

    // ---- multi-component, all boundary rational ----

    Certificate rational_multi(const Polynomial& f, const SemiAlgSet& K, const GeneratorSet& gens,
                               int depth) {
        auto minimum = K.minimum();
        auto maximum = K.maximum();

        // hull reduction (a1)-(a3)
        if (minimum && !maximum) {
            SemiAlgSet hull = SemiAlgSet::from_components({make_ray_above(*minimum)});
            if (is_nonneg_on(f, hull).nonnegative)
                return halfline_cert(f, gens, find_generator_role(gens, GenRole::LowerLinear),
                                     Rational(1), minimum->rational());
        } else if (maximum && !minimum) {
            SemiAlgSet hull = SemiAlgSet::from_components({make_ray_below(*maximum)});
            if (is_nonneg_on(f, hull).nonnegative)
                return halfline_cert(f, gens, find_generator_role(gens, GenRole::UpperLinear),
                                     Rational(-1), maximum->rational());
        } else if (minimum && maximum) {
            SemiAlgSet hull = SemiAlgSet::from_components({make_segment(*minimum, *maximum)});
            if (is_nonneg_on(f, hull).nonnegative) {
                Certificate sub = decompose_interval(f, minimum->rational(), maximum->rational(),
                                                     cfg_.degree_cap);
                return embed(sub, gens,
                             {find_generator_role(gens, GenRole::LowerLinear),
                              find_generator_role(gens, GenRole::UpperLinear)});
            }
        } else {
            if (is_nonneg_on_line(f).nonnegative)
                return from_sos(f, sos_on_line(f, cfg_.degree_cap), gens);
        }

        // the club condition holds: f < 0 in some bounded gap
        auto roots = classify_roots(f, K, cfg_.degree_cap);
        bool has_interior = false;
        std::vector<Endpoint> boundary_zeros;
        for (const auto& r : roots) {
            if (r.location == ClassifiedRoot::Location::Interior) has_interior = true;
            if (r.location == ClassifiedRoot::Location::Boundary)
                boundary_zeros.push_back(*r.boundary_point);
        }

        if (has_interior) {
            auto step = interior_zero_step(f, K);
            Certificate sq = Certificate::square(
                Rational(1), step.minimal_poly.pow(static_cast<unsigned>(step.half_multiplicity)),
                gens);
            return cert_mul(sq, rec(step.quotient, K, gens, depth + 1));
        }

        if (!boundary_zeros.empty()) return boundary_route(f, K, gens, boundary_zeros, depth);

        // f > 0 on K: minimum location, ties broken toward the boundary
        {
            std::optional<Rational> best;
            for (const auto& e : K.boundary()) {
                Rational v = f(e.rational());
                if (!best || v < *best) best = v;
            }
            if (best && is_nonneg_on(f - Polynomial(*best), K).nonnegative) {
                Certificate base = rec(f - Polynomial(*best), K, gens, depth + 1);
                return cert_add(base, Certificate::constant(*best, gens));
            }
        }

        // interior minimum: quadratic interpolation in a dipping gap
        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);
        for (const auto& [glo, ghi] : K.gaps()) {
            if (!certdetail::dips_inside(L, glo, ghi)) continue;
            auto probe = interior_min_step(f, K, glo, ghi);
            Certificate hq = bm_pair_cert(probe.r, probe.s, glo, ghi, gens);
            Certificate rest = cert_mul(hq, rec(probe.quotient, K, gens, depth + 1));
            if (probe.G.is_zero()) return rest;
            return cert_add(rec(probe.G, K, gens, depth + 1), rest);
        }
        throw InternalInconsistency("rational_multi: no dipping gap despite failed hull check");
    }

    /// (x-r)(x-s) over the gap generator of (glo, ghi) via Berg-Maserick.
    Certificate bm_pair_cert(const Rational& r, const Rational& s, const Endpoint& glo,
                             const Endpoint& ghi, const GeneratorSet& gens) {
        BergMaserick bm = berg_maserick(r, s, glo, ghi);
        Polynomial gap_gen = detail::pair_quadratic(glo, ghi);
        size_t idx = find_generator(gens, gap_gen);
        Polynomial target = Polynomial{-r, Rational(1)} * Polynomial{-s, Rational(1)};
        Certificate cert(target, gens);
        cert.add_term(ExponentVector::zero(gens.size()), bm.sigma0);
        if (!bm.t.is_zero())
            cert.add_term(ExponentVector::unit(gens.size(), idx),
                          WeightedSOS(bm.t, Polynomial(Rational(1))));
        if (!(cert.expand() == target)) throw InternalInconsistency("bm_pair_cert: identity");
        return cert;
    }

    Certificate boundary_route(const Polynomial& f, const SemiAlgSet& K, const GeneratorSet& gens,
                               std::vector<Endpoint>& zeros, int depth) {
        std::sort(zeros.begin(), zeros.end(), [](const Endpoint& a, const Endpoint& b) {
            return a.rational() < b.rational();
        });

        if (f.degree() <= 2) return boundary_deg2(f, K, gens, zeros);

        auto sel = select_gap_generators(f, K, zeros);
        if (std::holds_alternative<ShortCircuit>(sel)) {
            const Polynomial& hp = std::get<ShortCircuit>(sel).factor;
            Polynomial h = poly_divexact(f, hp);
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("short-circuit quotient not nonnegative");
            return cert_mul(short_circuit_cert(hp, gens), rec(h, K, gens, depth + 1));
        }

        const auto& selection = std::get<std::vector<GapContext>>(sel);
        BoundaryStep step = boundary_step(f, K, selection);

        Certificate gterm = Certificate::unit(gens);
        for (const auto& ctx : selection) {
            if (ctx.choice == GapContext::Choice::One) continue;
            const Endpoint& other =
                ctx.choice == GapContext::Choice::RightQuadratic ? ctx.right : ctx.left;
            Polynomial gi = Polynomial{-ctx.zero.rational(), Rational(1)} *
                            Polynomial{-other.rational(), Rational(1)};
            gterm = cert_mul(gterm, Certificate::generator(gens, find_generator(gens, gi)));
        }
        Rational scale =
            step.G.leading_coefficient() / gterm.target().leading_coefficient();
        gterm = cert_scale(gterm, scale);
        if (!(gterm.target() == step.G)) throw InternalInconsistency("boundary G mismatch");

        Rational lo = std::min(step.b_prime, step.c1);
        Rational hi = std::max(step.b_prime, step.c1);
        Certificate hq = bm_pair_cert(lo, hi, step.gap_lo, step.gap_hi, gens);
        Certificate rest = cert_mul(hq, rec(step.quotient, K, gens, depth + 1));
        return cert_add(gterm, rest);
    }

    Certificate short_circuit_cert(const Polynomial& hp, const GeneratorSet& gens) {
        for (size_t i = 0; i < gens.size(); ++i)
            if (gens.generators[i] == hp) return Certificate::generator(gens, i);
        // otherwise (x-c)^2
        Factorization fac = factor_over_rationals(hp, cfg_.degree_cap);
        if (hp.degree() == 2 && fac.factors.size() == 1 && fac.factors[0].multiplicity == 2)
            return Certificate::square(fac.scalar, fac.factors[0].poly, gens);
        throw InternalInconsistency("short_circuit_cert: unexpected factor");
    }

    Certificate boundary_deg2(const Polynomial& f, const SemiAlgSet& K, const GeneratorSet& gens,
                              const std::vector<Endpoint>& zeros) {
        // (f1)/(f2): f = beta (x-c)(x-e), negative inside one gap
        Rational beta = f.leading_coefficient();
        if (!beta.is_positive())
            throw InternalInconsistency("boundary_deg2: nonpositive leading coefficient");
        Polynomial monic = f.monic();
        Rational c = zeros.front().rational();
        Rational e = -monic.coeff(1) - c;  // Vieta
        Rational lo = std::min(c, e), hi = std::max(c, e);
        if (lo == hi) throw InternalInconsistency("boundary_deg2: double root escaped (h1)");
        for (const auto& [glo, ghi] : K.gaps()) {
            if (endpoint_cmp(glo, Endpoint(lo)) == std::strong_ordering::greater) continue;
            if (endpoint_cmp(Endpoint(hi), ghi) == std::strong_ordering::greater) continue;
            return cert_scale(bm_pair_cert(lo, hi, glo, ghi, gens), beta);
        }
        throw InternalInconsistency("boundary_deg2: enclosing gap not found");
    }

    // ---- surd gaps: divide out or shrink to a rational problem ----

    struct Replacement {
        Polynomial from;    // (x-r)(x-s), the K' gap generator
        Polynomial to_gen;  // the surd gap quadratic in N(K)
        Rational r, s;
        Endpoint c_lo, c_hi;
    };

    Certificate mixed(const Polynomial& f, const SemiAlgSet& K, const GeneratorSet& gens,
                      int depth) {
        // divide out minimal polynomials of surd gap endpoints where f vanishes
        for (const auto& [glo, ghi] : K.gaps()) {
            if (!glo.is_surd()) continue;
            Polynomial q = glo.surd().min_poly();
            if (!poly_divrem(f, q).second.is_zero()) continue;
            Polynomial h = poly_divexact(f, q);
            if (!is_nonneg_on(h, K).nonnegative)
                throw InternalInconsistency("mixed: quotient not nonnegative");
            size_t idx = find_generator(gens, q);
            return cert_mul(Certificate::generator(gens, idx), rec(h, K, gens, depth + 1));
        }

        // shrink every surd gap to a rational sub-gap (or merge it away)
        certdetail::SignLayout L = certdetail::sign_layout(f, cfg_.degree_cap);
        const auto& comps = K.components();
        auto gap_list = K.gaps();

        std::vector<std::pair<ExtBound, ExtBound>> bounds;  // new component bounds
        bounds.emplace_back(comps[0].lower_bound(), comps[0].upper_bound());
        std::vector<Replacement> repl;

        for (size_t gi = 0; gi < gap_list.size(); ++gi) {
            const auto& [glo, ghi] = gap_list[gi];
            ExtBound next_lo = comps[gi + 1].lower_bound();
            ExtBound next_hi = comps[gi + 1].upper_bound();
            if (!glo.is_surd()) {
                bounds.emplace_back(next_lo, next_hi);
                continue;
            }
            if (certdetail::dips_inside(L, glo, ghi)) {
                auto [first, past] = certdetail::windows_in_gap(L, glo, ghi);
                if (first < 0) throw InternalInconsistency("mixed: dip without zeros");
                IsolatingInterval wl = L.windows[first];
                IsolatingInterval wr = L.windows[past - 1];
                while (!(endpoint_cmp(Endpoint(wl.lo), glo) == std::strong_ordering::greater))
                    wl = refine(wl, wl.width() / Rational(4));
                while (!(endpoint_cmp(Endpoint(wr.hi), ghi) == std::strong_ordering::less))
                    wr = refine(wr, wr.width() / Rational(4));
                Rational r = rational_between(glo, Endpoint(wl.lo));
                Rational s = rational_between(Endpoint(wr.hi), ghi);
                bounds.back().second = ExtBound::at(Endpoint(r));
                bounds.emplace_back(ExtBound::at(Endpoint(s)), next_hi);
                repl.push_back({Polynomial{-r, Rational(1)} * Polynomial{-s, Rational(1)},
                                detail::pair_quadratic(glo, ghi), r, s, glo, ghi});
            } else {
                // f >= 0 across the closed gap: merge the flanking components
                bounds.back().second = next_hi;
            }
        }

        std::vector<Component> new_comps;
        for (auto& [blo, bhi] : bounds) new_comps.push_back(component_from_bounds(blo, bhi));
        SemiAlgSet Kp = SemiAlgSet::from_components(std::move(new_comps));
        if (!is_nonneg_on(f, Kp).nonnegative)
            throw InternalInconsistency("mixed: enlarged set lost nonnegativity");
        auto gensp = natural_generators(Kp);
        if (!gensp.ok()) throw InternalInconsistency("mixed: enlarged set not representable");
        Certificate sub = rec(f, Kp, gensp.value(), depth + 1);
        return transform_back(sub, gens, gensp.value(), repl, f);
    }

    static Component component_from_bounds(const ExtBound& lo, const ExtBound& hi) {
        using K = ExtBound::Kind;
        if (lo.kind == K::NegInf && hi.kind == K::PosInf) return {Component::Kind::Line, {}, {}};
        if (lo.kind == K::NegInf) return make_ray_below(hi.point);
        if (hi.kind == K::PosInf) return make_ray_above(lo.point);
        if (endpoint_eq(lo.point, hi.point)) return make_point(lo.point);
        return make_segment(lo.point, hi.point);
    }

    /// Rewrites a certificate over N(K') into one over N(K): identical
    /// generators map across; each shrunk gap generator (x-r)(x-s) expands
    /// to sigma0 + t * (surd gap quadratic) via Berg-Maserick.
    Certificate transform_back(const Certificate& sub, const GeneratorSet& gens,
                               const GeneratorSet& gensp, const std::vector<Replacement>& repl,
                               const Polynomial& f) {
        struct GenMap {
            bool substitute = false;
            size_t target_index = 0;
            WeightedSOS sigma0;
            Rational t;
        };
        constexpr size_t kDropBit = static_cast<size_t>(-1);
        std::vector<GenMap> maps(gensp.size());
        for (size_t j = 0; j < gensp.size(); ++j) {
            const Polynomial& gj = gensp.generators[j];
            if (gj.degree() == 0) {  // Unit generator (K' collapsed to R): no bit
                maps[j] = {false, kDropBit, {}, Rational(0)};
                continue;
            }
            bool mapped = false;
            for (const auto& rep : repl) {
                if (gj == rep.from) {
                    BergMaserick bm = berg_maserick(rep.r, rep.s, rep.c_lo, rep.c_hi);
                    maps[j] = {true, find_generator(gens, rep.to_gen), bm.sigma0, bm.t};
                    mapped = true;
                    break;
                }
            }
            if (!mapped) maps[j] = {false, find_generator(gens, gj), {}, Rational(0)};
        }

        Certificate out(f, gens);
        for (const auto& [e, sos] : sub.terms()) {
            struct Partial {
                WeightedSOS sos;
                ExponentVector exp;
            };
            std::vector<Partial> parts{{sos, ExponentVector::zero(gens.size())}};
            for (size_t j = 0; j < e.size(); ++j) {
                if (!e.bits[j]) continue;
                const GenMap& m = maps[j];
                if (!m.substitute) {
                    if (m.target_index == kDropBit) continue;  // unit bit carries nothing
                    for (auto& p : parts) p.exp.bits[m.target_index] ^= 1;
                    continue;
                }
                std::vector<Partial> next;
                for (auto& p : parts) {
                    if (!m.sigma0.empty())
                        next.push_back(
                            {p.sos.multiplied(m.sigma0, Polynomial(Rational(1))), p.exp});
                    if (!m.t.is_zero()) {
                        Partial q{p.sos.scaled(m.t), p.exp};
                        q.exp.bits[m.target_index] ^= 1;
                        next.push_back(std::move(q));
                    }
                }
                parts = std::move(next);
            }
            for (auto& p : parts) out.add_term(p.exp, p.sos);
        }
        if (!(out.expand() == f)) throw InternalInconsistency("transform_back: identity failed");
        return out;
    }

    CertifyConfig cfg_;
};

inline Result<Certificate> certify(const Polynomial& f, const SemiAlgSet& K,
                                   const CertifyConfig& cfg = {}) {
    Certifier c(cfg);
    return c.certify(f, K);
}

}  // namespace pcert
