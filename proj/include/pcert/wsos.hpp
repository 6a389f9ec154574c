#pragma once

/// Weighted sums of squares: sigma = sum_i w_i * q_i^2 with w_i rational.
/// Nonnegativity of the weights is a verifier finding, not a constructor
/// constraint, so deliberately invalid certificates remain representable.

#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace pcert {

struct SquareTerm {
    Rational weight;
    Polynomial root;  // the polynomial being squared

    bool operator==(const SquareTerm& o) const { return weight == o.weight && root == o.root; }
};

class WeightedSOS {
public:
    WeightedSOS() = default;
    WeightedSOS(Rational weight, Polynomial root) { add(std::move(weight), std::move(root)); }

    void add(Rational weight, Polynomial root) {
        if (weight.is_zero() || root.is_zero()) return;
        terms_.push_back({std::move(weight), std::move(root)});
    }
    void append(const WeightedSOS& o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    }

    const std::vector<SquareTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    size_t square_count() const { return terms_.size(); }

    bool weights_nonnegative() const {
        for (const auto& t : terms_)
            if (t.weight.is_negative()) return false;
        return true;
    }

    Polynomial expand() const {
        Polynomial sum;
        for (const auto& t : terms_) sum += t.root * t.root * t.weight;
        return sum;
    }

    /// max deg(w_i q_i^2); -1 when empty.
    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, 2 * t.root.degree());
        return d;
    }

    WeightedSOS scaled(const Rational& c) const {
        WeightedSOS out;
        if (c.is_zero()) return out;
        out.terms_ = terms_;
        for (auto& t : out.terms_) t.weight *= c;
        return out;
    }

    /// Product: (sum w q^2)(sum v r^2) = sum (wv) (qr)^2, each square root
    /// multiplied by extra (for absorbing squared generator products).
    WeightedSOS multiplied(const WeightedSOS& o, const Polynomial& extra) const {
        WeightedSOS out;
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) out.add(a.weight * b.weight, a.root * b.root * extra);
        return out;
    }

    WeightedSOS affine(const Rational& alpha, const Rational& beta) const {
        WeightedSOS out;
        out.terms_ = terms_;
        for (auto& t : out.terms_) t.root = affine_substitute(t.root, alpha, beta);
        return out;
    }

    bool operator==(const WeightedSOS& o) const { return terms_ == o.terms_; }

private:
    std::vector<SquareTerm> terms_;
};

}  // namespace pcert
