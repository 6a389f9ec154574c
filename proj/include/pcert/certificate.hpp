#pragma once

/**
 * @file certificate.hpp
 * @brief Preordering membership certificates f = sum_e sigma_e g^e and their
 *        algebra (add, multiply, affine transport) plus the exact verifier.
 *
 * A certificate stores its target explicitly, so verification never depends
 * on caller context. Exponent vectors live in {0,1}^s over the generator
 * list; products of certificates use g^e * g^e' = (g^(e&e'))^2 * g^(e^e')
 * with the squared part absorbed into the weighted squares.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semialg.hpp"
#include "wsos.hpp"

namespace pcert {

struct ExponentVector {
    std::vector<uint8_t> bits;

    static ExponentVector zero(size_t s) { return {std::vector<uint8_t>(s, 0)}; }
    static ExponentVector unit(size_t s, size_t i) {
        ExponentVector e = zero(s);
        e.bits[i] = 1;
        return e;
    }

    size_t size() const { return bits.size(); }
    int popcount() const {
        int c = 0;
        for (auto b : bits) c += b;
        return c;
    }
    ExponentVector operator^(const ExponentVector& o) const {
        ExponentVector r = *this;
        for (size_t i = 0; i < bits.size(); ++i) r.bits[i] ^= o.bits[i];
        return r;
    }
    ExponentVector operator&(const ExponentVector& o) const {
        ExponentVector r = *this;
        for (size_t i = 0; i < bits.size(); ++i) r.bits[i] &= o.bits[i];
        return r;
    }
    bool operator==(const ExponentVector& o) const { return bits == o.bits; }
    bool operator<(const ExponentVector& o) const { return bits < o.bits; }
};

struct CertMetadata {
    std::string provenance;
};

class Certificate {
public:
    Certificate() = default;
    Certificate(Polynomial target, GeneratorSet gens)
        : target_(std::move(target)), gens_(std::move(gens)) {}

    /// target = c >= 0 as the empty-exponent constant certificate.
    static Certificate constant(const Rational& c, GeneratorSet gens) {
        Certificate cert(Polynomial(c), std::move(gens));
        if (!c.is_zero()) cert.add_term(ExponentVector::zero(cert.gens_.size()),
                                        WeightedSOS(c, Polynomial(Rational(1))));
        return cert;
    }

    /// target = 1 on the empty exponent (multiplicative unit).
    static Certificate unit(GeneratorSet gens) { return constant(Rational(1), std::move(gens)); }

    /// target = g_i as a single-generator term with weight 1, square 1.
    static Certificate generator(const GeneratorSet& gens, size_t i) {
        Certificate cert(gens.generators[i], gens);
        cert.add_term(ExponentVector::unit(gens.size(), i),
                      WeightedSOS(Rational(1), Polynomial(Rational(1))));
        return cert;
    }

    /// target = w * q^2 as a pure-square certificate.
    static Certificate square(const Rational& w, const Polynomial& q, GeneratorSet gens) {
        Certificate cert(q * q * w, std::move(gens));
        cert.add_term(ExponentVector::zero(cert.gens_.size()), WeightedSOS(w, q));
        return cert;
    }

    const Polynomial& target() const { return target_; }
    const GeneratorSet& generators() const { return gens_; }
    const std::map<ExponentVector, WeightedSOS>& terms() const { return terms_; }
    CertMetadata& metadata() { return meta_; }
    const CertMetadata& metadata() const { return meta_; }

    void set_target(Polynomial t) { target_ = std::move(t); }

    void add_term(const ExponentVector& e, const WeightedSOS& sos) {
        if (sos.empty()) return;
        if (e.size() != gens_.size())
            throw std::logic_error("Certificate: exponent length != generator count");
        terms_[e].append(sos);
    }

    Polynomial generator_product(const ExponentVector& e) const {
        Polynomial p{Rational(1)};
        for (size_t i = 0; i < e.size(); ++i)
            if (e.bits[i]) p *= gens_.generators[i];
        return p;
    }

    Polynomial expand() const {
        Polynomial sum;
        for (const auto& [e, sos] : terms_) sum += sos.expand() * generator_product(e);
        return sum;
    }

    /// True iff every nonzero exponent vector has at most one set bit
    /// (the certificate lies in the quadratic module M_S).
    bool module_shaped() const {
        for (const auto& [e, sos] : terms_)
            if (e.popcount() > 1 && !sos.empty()) return false;
        return true;
    }

    int term_degree(const ExponentVector& e) const {
        auto it = terms_.find(e);
        if (it == terms_.end() || it->second.empty()) return -1;
        return it->second.degree() + generator_product(e).degree();
    }

    std::vector<size_t> square_counts() const {
        std::vector<size_t> counts;
        for (const auto& [e, sos] : terms_) counts.push_back(sos.square_count());
        return counts;
    }

private:
    Polynomial target_;
    GeneratorSet gens_;
    std::map<ExponentVector, WeightedSOS> terms_;
    CertMetadata meta_;
};

struct VerifyReport {
    bool identity = false;
    bool weights_nonneg = false;
    bool degree_bound = false;
    bool module_shaped = false;
    std::optional<bool> generators_natural;  // set iff a set was supplied
    std::string detail;

    bool valid() const { return identity && weights_nonneg; }
};

namespace detail {

inline bool generators_match_up_to_scaling(const GeneratorSet& have, const GeneratorSet& natural) {
    if (have.size() != natural.size()) return false;
    std::vector<bool> used(natural.size(), false);
    for (const auto& g : have.generators) {
        bool found = false;
        for (size_t j = 0; j < natural.size(); ++j) {
            if (used[j]) continue;
            const Polynomial& n = natural.generators[j];
            if (n.degree() != g.degree() || g.is_zero() || n.is_zero()) {
                if (n == g) {
                    used[j] = true;
                    found = true;
                    break;
                }
                continue;
            }
            Rational lambda = g.leading_coefficient() / n.leading_coefficient();
            if (lambda.is_positive() && n * lambda == g) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace detail

/// Exact verification. All findings are independent report fields; overall
/// validity is identity && weights.
inline VerifyReport cert_verify(const Certificate& c,
                                const std::optional<SemiAlgSet>& K = std::nullopt) {
    VerifyReport rep;
    rep.identity = (c.expand() == c.target());
    if (!rep.identity) rep.detail += "expansion differs from target; ";
    rep.weights_nonneg = true;
    for (const auto& [e, sos] : c.terms()) {
        if (!sos.weights_nonnegative()) {
            rep.weights_nonneg = false;
            rep.detail += "negative weight present; ";
            break;
        }
    }
    rep.degree_bound = true;
    int n = c.target().degree();
    for (const auto& [e, sos] : c.terms()) {
        if (sos.empty()) continue;
        if (sos.degree() + c.generator_product(e).degree() > n) {
            rep.degree_bound = false;
            rep.detail += "term degree exceeds deg(target); ";
            break;
        }
    }
    rep.module_shaped = c.module_shaped();
    if (K) {
        auto nat = natural_generators(*K);
        rep.generators_natural =
            nat.ok() && detail::generators_match_up_to_scaling(c.generators(), nat.value());
    }
    return rep;
}

/// Termwise sum; requires identical generator lists.
inline Certificate cert_add(const Certificate& a, const Certificate& b) {
    if (!(a.generators().generators == b.generators().generators))
        throw std::domain_error("cert_add: generator mismatch");
    Certificate out(a.target() + b.target(), a.generators());
    for (const auto& [e, sos] : a.terms()) out.add_term(e, sos);
    for (const auto& [e, sos] : b.terms()) out.add_term(e, sos);
    return out;
}

/// Product: distributes over term pairs with exponent XOR and the shared
/// part absorbed as a square.
inline Certificate cert_mul(const Certificate& a, const Certificate& b) {
    if (!(a.generators().generators == b.generators().generators))
        throw std::domain_error("cert_mul: generator mismatch");
    Certificate out(a.target() * b.target(), a.generators());
    for (const auto& [ea, sa] : a.terms()) {
        for (const auto& [eb, sb] : b.terms()) {
            Polynomial shared = a.generator_product(ea & eb);
            out.add_term(ea ^ eb, sa.multiplied(sb, shared));
        }
    }
    return out;
}

/// Scales target and all weights by c >= 0.
inline Certificate cert_scale(const Certificate& a, const Rational& c) {
    if (c.is_negative()) throw std::domain_error("cert_scale: negative scalar");
    Certificate out(a.target() * c, a.generators());
    for (const auto& [e, sos] : a.terms()) out.add_term(e, sos.scaled(c));
    return out;
}

/// Substitutes x -> alpha*x + beta in target, generators and squares.
inline Certificate cert_affine(const Certificate& a, const Rational& alpha, const Rational& beta) {
    if (alpha.is_zero()) throw std::domain_error("cert_affine: alpha = 0");
    GeneratorSet gens = a.generators();
    for (auto& g : gens.generators) g = affine_substitute(g, alpha, beta);
    Certificate out(affine_substitute(a.target(), alpha, beta), gens);
    for (const auto& [e, sos] : a.terms()) out.add_term(e, sos.affine(alpha, beta));
    return out;
}

}  // namespace pcert
