#pragma once

/**
 * @file semialg.hpp
 * @brief Basic closed semi-algebraic subsets of R: ordered disjoint unions of
 *        points, segments, rays and the full line; natural-generator
 *        synthesis, solving a set from generators, and the saturation
 *        predicates.
 *
 * Surd endpoints are accepted exactly in the shapes the theory covers: a
 * conjugate pair may bound a gap, form the whole set [c,c'], or cap a single
 * segment whose other endpoint is rational (with the conjugate outside).
 * Everything else refuses rather than approximates.
 */

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "endpoint.hpp"

namespace pcert {

struct Refusal {
    enum class Reason {
        UnsupportedEndpointDegree,
        NotFinitelyGenerated,
        NotNonnegative,
        DegreeLimitExceeded,
        EmptySet,
        Inconclusive,
    };
    Reason reason;
    std::string detail;
    std::string citation;
    std::optional<Rational> witness;
};

inline const char* refusal_reason_name(Refusal::Reason r) {
    switch (r) {
        case Refusal::Reason::UnsupportedEndpointDegree: return "UnsupportedEndpointDegree";
        case Refusal::Reason::NotFinitelyGenerated: return "NotFinitelyGenerated";
        case Refusal::Reason::NotNonnegative: return "NotNonnegative";
        case Refusal::Reason::DegreeLimitExceeded: return "DegreeLimitExceeded";
        case Refusal::Reason::EmptySet: return "EmptySet";
        case Refusal::Reason::Inconclusive: return "Inconclusive";
    }
    return "?";
}

template <class T>
class Result {
public:
    Result(T value) : v_(std::move(value)) {}
    Result(Refusal r) : v_(std::move(r)) {}
    bool ok() const { return std::holds_alternative<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    T& value() { return std::get<T>(v_); }
    const Refusal& refusal() const { return std::get<Refusal>(v_); }

private:
    std::variant<T, Refusal> v_;
};

struct Component {
    enum class Kind { Point, Segment, RayBelow, RayAbove, Line };
    Kind kind;
    Endpoint lo;  // Point: lo == hi; RayBelow: only hi meaningful
    Endpoint hi;

    ExtBound lower_bound() const {
        return (kind == Kind::RayBelow || kind == Kind::Line) ? ExtBound::neg_inf()
                                                              : ExtBound::at(lo);
    }
    ExtBound upper_bound() const {
        return (kind == Kind::RayAbove || kind == Kind::Line) ? ExtBound::pos_inf()
                                                              : ExtBound::at(hi);
    }
};

inline Component make_point(Endpoint p) { return {Component::Kind::Point, p, p}; }
inline Component make_segment(Endpoint lo, Endpoint hi) {
    return {Component::Kind::Segment, std::move(lo), std::move(hi)};
}
inline Component make_ray_below(Endpoint hi) { return {Component::Kind::RayBelow, hi, hi}; }
inline Component make_ray_above(Endpoint lo) { return {Component::Kind::RayAbove, lo, lo}; }

class SemiAlgSet {
public:
    SemiAlgSet() = default;  // empty set

    static SemiAlgSet empty() { return {}; }
    static SemiAlgSet line() {
        SemiAlgSet k;
        k.comps_.push_back({Component::Kind::Line, {}, {}});
        return k;
    }

    /// Normalizes: sorts, merges overlapping/touching components. Components
    /// with lo > hi are rejected; lo == hi collapses to a point.
    static SemiAlgSet from_components(std::vector<Component> comps) {
        for (auto& c : comps) {
            if (c.kind == Component::Kind::Line) return line();
            if (c.kind == Component::Kind::Segment) {
                auto cmp = endpoint_cmp(c.lo, c.hi);
                if (cmp == std::strong_ordering::greater)
                    throw std::domain_error("segment requires lo <= hi");
                if (cmp == std::strong_ordering::equal) c = make_point(c.lo);
            }
        }
        std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
            auto c = ext_cmp(a.lower_bound(), b.lower_bound());
            if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
            return ext_cmp(a.upper_bound(), b.upper_bound()) == std::strong_ordering::less;
        });
        std::vector<Component> merged;
        for (auto& c : comps) {
            if (merged.empty()) {
                merged.push_back(c);
                continue;
            }
            Component& last = merged.back();
            // merge when c.lo <= last.hi (closed sets touch-merge)
            if (ext_cmp(c.lower_bound(), last.upper_bound()) != std::strong_ordering::greater) {
                if (ext_cmp(c.upper_bound(), last.upper_bound()) == std::strong_ordering::greater) {
                    ExtBound lo = last.lower_bound();
                    ExtBound hi = c.upper_bound();
                    last = from_bounds(lo, hi);
                }
            } else {
                merged.push_back(c);
            }
        }
        SemiAlgSet k;
        k.comps_ = std::move(merged);
        return k;
    }

    const std::vector<Component>& components() const { return comps_; }
    bool is_empty() const { return comps_.empty(); }
    bool is_line() const {
        return comps_.size() == 1 && comps_[0].kind == Component::Kind::Line;
    }

    bool is_compact() const {
        for (const auto& c : comps_)
            if (c.kind == Component::Kind::RayBelow || c.kind == Component::Kind::RayAbove ||
                c.kind == Component::Kind::Line)
                return false;
        return !is_empty();
    }

    /// Minimum of K when it exists (no component unbounded below).
    std::optional<Endpoint> minimum() const {
        if (is_empty() || comps_.front().kind == Component::Kind::RayBelow ||
            comps_.front().kind == Component::Kind::Line)
            return std::nullopt;
        return comps_.front().lo;
    }
    std::optional<Endpoint> maximum() const {
        if (is_empty() || comps_.back().kind == Component::Kind::RayAbove ||
            comps_.back().kind == Component::Kind::Line)
            return std::nullopt;
        return comps_.back().hi;
    }

    /// Gaps between consecutive components (the bounded open intervals of the
    /// complement).
    std::vector<std::pair<Endpoint, Endpoint>> gaps() const {
        std::vector<std::pair<Endpoint, Endpoint>> g;
        for (size_t i = 0; i + 1 < comps_.size(); ++i)
            g.emplace_back(comps_[i].hi, comps_[i + 1].lo);
        return g;
    }

    bool has_isolated_point() const {
        for (const auto& c : comps_)
            if (c.kind == Component::Kind::Point) return true;
        return false;
    }

    /// All boundary points (isolated points included once).
    std::vector<Endpoint> boundary() const {
        std::vector<Endpoint> b;
        for (const auto& c : comps_) {
            switch (c.kind) {
                case Component::Kind::Point: b.push_back(c.lo); break;
                case Component::Kind::Segment:
                    b.push_back(c.lo);
                    b.push_back(c.hi);
                    break;
                case Component::Kind::RayBelow: b.push_back(c.hi); break;
                case Component::Kind::RayAbove: b.push_back(c.lo); break;
                case Component::Kind::Line: break;
            }
        }
        return b;
    }

    bool boundary_all_rational() const {
        for (const auto& e : boundary())
            if (!e.is_rational()) return false;
        return true;
    }

    bool contains(const Endpoint& x) const {
        for (const auto& c : comps_) {
            bool above_lo = c.kind == Component::Kind::RayBelow || c.kind == Component::Kind::Line ||
                            ext_cmp(ExtBound::at(x), c.lower_bound()) != std::strong_ordering::less;
            bool below_hi = c.kind == Component::Kind::RayAbove || c.kind == Component::Kind::Line ||
                            ext_cmp(ExtBound::at(x), c.upper_bound()) != std::strong_ordering::greater;
            if (above_lo && below_hi) return true;
        }
        return false;
    }

    /// Strict interior membership.
    bool interior_contains(const Endpoint& x) const {
        for (const auto& c : comps_) {
            if (c.kind == Component::Kind::Point) continue;
            bool above = c.kind == Component::Kind::RayBelow || c.kind == Component::Kind::Line ||
                         ext_cmp(ExtBound::at(x), c.lower_bound()) == std::strong_ordering::greater;
            bool below = c.kind == Component::Kind::RayAbove || c.kind == Component::Kind::Line ||
                         ext_cmp(ExtBound::at(x), c.upper_bound()) == std::strong_ordering::less;
            if (above && below) return true;
        }
        return false;
    }

    bool operator==(const SemiAlgSet& o) const {
        if (comps_.size() != o.comps_.size()) return false;
        for (size_t i = 0; i < comps_.size(); ++i) {
            const auto& a = comps_[i];
            const auto& b = o.comps_[i];
            if (a.kind != b.kind) return false;
            if (a.kind == Component::Kind::Line) continue;
            if (a.kind != Component::Kind::RayBelow && !endpoint_eq(a.lo, b.lo)) return false;
            if (a.kind != Component::Kind::RayAbove && !endpoint_eq(a.hi, b.hi)) return false;
        }
        return true;
    }

private:
    static Component from_bounds(const ExtBound& lo, const ExtBound& hi) {
        using K = ExtBound::Kind;
        if (lo.kind == K::NegInf && hi.kind == K::PosInf) return {Component::Kind::Line, {}, {}};
        if (lo.kind == K::NegInf) return make_ray_below(hi.point);
        if (hi.kind == K::PosInf) return make_ray_above(lo.point);
        if (endpoint_eq(lo.point, hi.point)) return make_point(lo.point);
        return make_segment(lo.point, hi.point);
    }

    std::vector<Component> comps_;
};

// ---- natural generators ----

enum class GenRole { LowerLinear, UpperLinear, GapQuadratic, DiskQuadratic, Unit, Foreign };

struct GeneratorSet {
    std::vector<Polynomial> generators;
    std::vector<GenRole> roles;

    size_t size() const { return generators.size(); }
    void add(Polynomial g, GenRole r) {
        generators.push_back(std::move(g));
        roles.push_back(r);
    }
};

namespace detail {

/// (x - a)(x - b) as a rational polynomial; a, b rational or a conjugate pair.
inline Polynomial pair_quadratic(const Endpoint& a, const Endpoint& b) {
    if (a.is_rational() && b.is_rational())
        return Polynomial{a.rational() * b.rational(), -(a.rational() + b.rational()), Rational(1)};
    // conjugate surds share (s, p)
    const QuadSurd& q = a.is_surd() ? a.surd() : b.surd();
    return q.min_poly();
}

inline bool conjugate_pair(const Endpoint& a, const Endpoint& b) {
    return a.is_surd() && b.is_surd() && a.surd().s == b.surd().s && a.surd().p == b.surd().p &&
           !a.surd().upper && b.surd().upper;
}

}  // namespace detail

/// The natural choice of generators (Definition-style cases plus the
/// quadratic-endpoint forms). Refuses when a surd endpoint's conjugate
/// pairing violates the supported hypotheses.
inline Result<GeneratorSet> natural_generators(const SemiAlgSet& K) {
    if (K.is_empty()) throw std::domain_error("natural_generators: empty set");
    GeneratorSet out;
    if (K.is_line()) {
        out.add(Polynomial(Rational(1)), GenRole::Unit);
        return out;
    }

    auto refuse = [&](const std::string& detail) {
        return Refusal{Refusal::Reason::UnsupportedEndpointDegree, detail,
                       "quadratic-endpoint theorem hypothesis: a surd endpoint's conjugate must "
                       "bound the adjacent gap, or the pair must bound the (single) segment"};
    };

    const auto& comps = K.components();

    // single-component quadratic-endpoint forms
    if (comps.size() == 1 && comps[0].kind == Component::Kind::Segment &&
        (!comps[0].lo.is_rational() || !comps[0].hi.is_rational())) {
        const Endpoint& lo = comps[0].lo;
        const Endpoint& hi = comps[0].hi;
        if (detail::conjugate_pair(lo, hi)) {
            out.add(-lo.surd().min_poly(), GenRole::DiskQuadratic);
            return out;
        }
        if (lo.is_rational() && hi.is_surd()) {
            const QuadSurd& u = hi.surd();
            if (!u.upper || !endpoint_lt(Endpoint(u.conjugate()), lo))
                return refuse("segment [a,u]: conjugate of the surd maximum must lie below a");
            out.add(Polynomial{-lo.rational(), Rational(1)}, GenRole::LowerLinear);
            out.add(-u.min_poly(), GenRole::DiskQuadratic);
            return out;
        }
        if (lo.is_surd() && hi.is_rational()) {
            const QuadSurd& l = lo.surd();
            if (l.upper || !endpoint_lt(hi, Endpoint(l.conjugate())))
                return refuse("segment [l,b]: conjugate of the surd minimum must lie above b");
            out.add(-l.min_poly(), GenRole::DiskQuadratic);
            out.add(Polynomial{hi.rational(), Rational(-1)}, GenRole::UpperLinear);
            return out;
        }
        return refuse("segment with two non-conjugate surd endpoints");
    }

    // general case: extreme endpoints rational, surds only in conjugate gaps
    if (auto mn = K.minimum()) {
        if (!mn->is_rational()) return refuse("surd minimum outside supported shapes");
        out.add(Polynomial{-mn->rational(), Rational(1)}, GenRole::LowerLinear);
    }
    for (const auto& [a, b] : K.gaps()) {
        if (a.is_rational() != b.is_rational())
            return refuse("gap with one rational and one surd endpoint");
        if (a.is_surd()) {
            if (!detail::conjugate_pair(a, b))
                return refuse("gap endpoints are surds but not a conjugate pair");
        }
        out.add(detail::pair_quadratic(a, b), GenRole::GapQuadratic);
    }
    if (auto mx = K.maximum()) {
        if (!mx->is_rational()) return refuse("surd maximum outside supported shapes");
        out.add(Polynomial{mx->rational(), Rational(-1)}, GenRole::UpperLinear);
    }
    return out;
}

// ---- solving K_S from generators ----

namespace detail {

/// Exact real algebraic number: an irreducible monic factor plus an isolating
/// interval (degenerate for rationals).
struct AlgNumber {
    Polynomial factor;
    IsolatingInterval iv;

    bool is_rational() const { return iv.degenerate(); }
};

inline std::strong_ordering alg_cmp(AlgNumber& a, AlgNumber& b) {
    if (a.factor == b.factor) {
        // same irreducible: equal iff same isolating window (windows of one
        // factor's roots are disjoint by construction)
        if (!(a.iv.hi < b.iv.lo) && !(b.iv.hi < a.iv.lo)) return std::strong_ordering::equal;
    }
    while (true) {
        if (a.iv.hi < b.iv.lo) return std::strong_ordering::less;
        if (b.iv.hi < a.iv.lo) return std::strong_ordering::greater;
        if (a.iv.degenerate() && b.iv.degenerate()) {
            return a.iv.lo <=> b.iv.lo;  // distinct rationals
        }
        if (!a.iv.degenerate()) a.iv = refine(a.iv, a.iv.width() / Rational(4));
        if (!b.iv.degenerate()) b.iv = refine(b.iv, b.iv.width() / Rational(4));
    }
}

struct AlgBound {
    enum class Kind { NegInf, Point, PosInf } kind;
    AlgNumber pt;  // valid iff kind == Point
};

inline std::strong_ordering alg_bound_cmp(AlgBound& x, AlgBound& y) {
    using K = AlgBound::Kind;
    auto rank = [](K k) { return k == K::NegInf ? -1 : (k == K::PosInf ? 1 : 0); };
    if (x.kind != K::Point || y.kind != K::Point) {
        int rx = rank(x.kind), ry = rank(y.kind);
        if (rx != ry) return rx <=> ry;
        if (x.kind != K::Point) return std::strong_ordering::equal;
    }
    return alg_cmp(x.pt, y.pt);
}

struct AlgInterval {
    AlgBound lo, hi;
};

/// {x : g(x) >= 0} as closed intervals with exact algebraic endpoints.
inline std::vector<AlgInterval> nonneg_region(const Polynomial& g, int degree_cap) {
    std::vector<AlgInterval> out;
    if (g.degree() <= 0) {
        if (!g.is_zero() && g.leading_coefficient().is_negative()) return out;
        out.push_back({{AlgBound::Kind::NegInf, {}}, {AlgBound::Kind::PosInf, {}}});
        return out;
    }
    Factorization fac = factor_over_rationals(g, degree_cap);

    struct Root {
        AlgNumber num;
        int multiplicity;
    };
    std::vector<Root> roots;
    for (const auto& [p, mult] : fac.factors) {
        if (p.degree() == 1) {
            Rational r = -p.coeff(0);
            roots.push_back({{p, {r, r, p}}, mult});
            continue;
        }
        auto chain = sturm_chain(p);
        Rational b = root_bound(p);
        std::vector<IsolatingInterval> ivs;
        isolate_no_rational_roots(p, -b, b, count_roots_halfopen(chain, -b, b), chain, ivs);
        for (auto& iv : ivs) roots.push_back({{p, iv}, mult});
    }
    std::sort(roots.begin(), roots.end(), [](Root& a, Root& b) {
        return alg_cmp(a.num, b.num) == std::strong_ordering::less;
    });
    // disjoint windows for sampling
    for (size_t i = 0; i + 1 < roots.size(); ++i) {
        while (!(roots[i].num.iv.hi < roots[i + 1].num.iv.lo)) {
            auto& a = roots[i].num.iv;
            auto& b = roots[i + 1].num.iv;
            if (!a.degenerate()) a = refine(a, a.width() / Rational(4));
            if (!b.degenerate()) b = refine(b, b.width() / Rational(4));
        }
    }

    // sign of g on each open region between consecutive roots
    const size_t r = roots.size();
    std::vector<int> region_sign(r + 1);
    for (size_t i = 0; i <= r; ++i) {
        Rational sample;
        if (i == 0)
            sample = (r == 0 ? Rational(0) : roots[0].num.iv.lo - Rational(1));
        else if (i == r)
            sample = roots[r - 1].num.iv.hi + Rational(1);
        else
            sample = (roots[i - 1].num.iv.hi + roots[i].num.iv.lo) / Rational(2);
        region_sign[i] = g(sample).sign();
    }

    // assemble closed intervals
    std::optional<AlgBound> open_lo;
    for (size_t i = 0; i <= r; ++i) {
        bool pos = region_sign[i] > 0;
        if (pos && !open_lo) {
            open_lo = (i == 0) ? AlgBound{AlgBound::Kind::NegInf, {}}
                               : AlgBound{AlgBound::Kind::Point, roots[i - 1].num};
        }
        if (!pos && open_lo) {
            // region i is negative; close at the root separating it from the
            // positive run (roots[i-1]; i >= 1 whenever open_lo is set)
            out.push_back({*open_lo, {AlgBound::Kind::Point, roots[i - 1].num}});
            open_lo.reset();
        }
    }
    if (open_lo) out.push_back({*open_lo, {AlgBound::Kind::PosInf, {}}});

    // isolated roots surrounded by negative regions are point components
    for (size_t i = 0; i < r; ++i)
        if (region_sign[i] < 0 && region_sign[i + 1] < 0)
            out.push_back({{AlgBound::Kind::Point, roots[i].num},
                           {AlgBound::Kind::Point, roots[i].num}});

    std::sort(out.begin(), out.end(), [](AlgInterval& a, AlgInterval& b) {
        return alg_bound_cmp(a.lo, b.lo) == std::strong_ordering::less;
    });
    return out;
}

inline std::vector<AlgInterval> intersect_regions(std::vector<AlgInterval>& a,
                                                  std::vector<AlgInterval>& b) {
    std::vector<AlgInterval> out;
    for (auto& x : a) {
        for (auto& y : b) {
            AlgBound lo = alg_bound_cmp(x.lo, y.lo) == std::strong_ordering::less ? y.lo : x.lo;
            AlgBound hi = alg_bound_cmp(x.hi, y.hi) == std::strong_ordering::less ? x.hi : y.hi;
            if (alg_bound_cmp(lo, hi) != std::strong_ordering::greater) out.push_back({lo, hi});
        }
    }
    std::sort(out.begin(), out.end(), [](AlgInterval& p, AlgInterval& q) {
        return alg_bound_cmp(p.lo, q.lo) == std::strong_ordering::less;
    });
    return out;
}

/// Converts an algebraic point to a set Endpoint; nullopt when degree >= 3.
inline std::optional<Endpoint> alg_to_endpoint(const AlgNumber& n) {
    if (n.factor.degree() == 1) return Endpoint(-n.factor.coeff(0));
    if (n.factor.degree() == 2) {
        Rational s = -n.factor.coeff(1);
        Rational p = n.factor.coeff(0);
        // branch: compare the isolating window against s/2
        IsolatingInterval iv = n.iv;
        Rational half = s / Rational(2);
        while (!(iv.hi < half) && !(half < iv.lo)) iv = refine(iv, iv.width() / Rational(4));
        return Endpoint(make_quad_surd(s, p, half < iv.lo));
    }
    return std::nullopt;
}

}  // namespace detail

/// The exact solution set {x : g(x) >= 0 for all g in S}. Boundary points of
/// degree >= 3 refuse; the empty set is a legal outcome.
inline Result<SemiAlgSet> solve_generators(const GeneratorSet& S, int degree_cap = 64) {
    if (S.generators.empty()) throw std::domain_error("solve_generators: empty generator list");
    std::vector<detail::AlgInterval> acc{
        {{detail::AlgBound::Kind::NegInf, {}}, {detail::AlgBound::Kind::PosInf, {}}}};
    for (const auto& g : S.generators) {
        if (g.is_zero()) throw std::domain_error("solve_generators: zero generator");
        auto region = detail::nonneg_region(g, degree_cap);
        acc = detail::intersect_regions(acc, region);
        if (acc.empty()) return SemiAlgSet::empty();
    }
    std::vector<Component> comps;
    for (auto& iv : acc) {
        using K = detail::AlgBound::Kind;
        std::optional<Endpoint> lo, hi;
        if (iv.lo.kind == K::Point) {
            lo = detail::alg_to_endpoint(iv.lo.pt);
            if (!lo)
                return Refusal{Refusal::Reason::UnsupportedEndpointDegree,
                               "boundary point with minimal polynomial of degree >= 3: " +
                                   poly_to_string(iv.lo.pt.factor),
                               "Pos(K) is not finitely generated for such boundary points "
                               "(non-compact case); the set is outside the representable class"};
        }
        if (iv.hi.kind == K::Point) {
            hi = detail::alg_to_endpoint(iv.hi.pt);
            if (!hi)
                return Refusal{Refusal::Reason::UnsupportedEndpointDegree,
                               "boundary point with minimal polynomial of degree >= 3: " +
                                   poly_to_string(iv.hi.pt.factor),
                               "Pos(K) is not finitely generated for such boundary points "
                               "(non-compact case); the set is outside the representable class"};
        }
        if (iv.lo.kind == K::NegInf && iv.hi.kind == K::PosInf) {
            comps.push_back({Component::Kind::Line, {}, {}});
        } else if (iv.lo.kind == K::NegInf) {
            comps.push_back(make_ray_below(*hi));
        } else if (iv.hi.kind == K::PosInf) {
            comps.push_back(make_ray_above(*lo));
        } else if (endpoint_eq(*lo, *hi)) {
            comps.push_back(make_point(*lo));
        } else {
            comps.push_back(make_segment(*lo, *hi));
        }
    }
    return SemiAlgSet::from_components(std::move(comps));
}

// ---- saturation predicates ----

/// True iff g equals a positive rational multiple of some element of S
/// (the Unit generator is contained by convention: g_0 = 1 is always adjoined).
inline bool contained_up_to_positive_scaling(const Polynomial& g, const GeneratorSet& S) {
    if (g.degree() == 0 && g.leading_coefficient().is_positive()) return true;
    for (const auto& s : S.generators) {
        if (s.degree() != g.degree() || s.is_zero()) continue;
        Rational lambda = g.leading_coefficient() / s.leading_coefficient();
        if (!lambda.is_positive()) continue;
        if (s * lambda == g) return true;
    }
    return false;
}

/// Theorem-4.2(1)-style test: T_S is saturated (K_S noncompact, rational
/// boundary) iff S contains the natural generators of K_S up to positive
/// scaling. Preconditions violated -> std::domain_error.
inline bool saturation_preordering_noncompact(const GeneratorSet& S, int degree_cap = 64) {
    auto solved = solve_generators(S, degree_cap);
    if (!solved.ok())
        throw std::domain_error("saturation predicate unsupported: " + solved.refusal().detail);
    const SemiAlgSet& K = solved.value();
    if (K.is_empty()) throw std::domain_error("saturation predicate unsupported: empty K_S");
    if (K.is_compact()) throw std::domain_error("saturation predicate requires noncompact K_S");
    if (!K.boundary_all_rational())
        throw std::domain_error("saturation predicate requires rational boundary");
    auto gens = natural_generators(K);
    if (!gens.ok()) throw std::domain_error("saturation predicate: " + gens.refusal().detail);
    for (const auto& g : gens.value().generators)
        if (!contained_up_to_positive_scaling(g, S)) return false;
    return true;
}

/// Theorem-4.2(2)-style test for the quadratic module M_N: compact K is
/// always saturated; noncompact K iff |N| <= 1, or |N| = 2 with an isolated
/// point.
inline bool saturation_module(const SemiAlgSet& K) {
    if (K.is_empty()) throw std::domain_error("saturation_module: empty set");
    if (!K.boundary_all_rational())
        throw std::domain_error("saturation_module requires rational boundary");
    if (K.is_compact()) return true;
    auto gens = natural_generators(K);
    if (!gens.ok()) throw std::domain_error("saturation_module: " + gens.refusal().detail);
    size_t n = gens.value().size();
    if (K.is_line()) return true;  // N = {1}
    if (n <= 1) return true;
    return n == 2 && K.has_isolated_point();
}

}  // namespace pcert
