#pragma once

/**
 * @file rational.hpp
 * @brief Arbitrary-precision rational numbers over boost cpp_int.
 *
 * Canonical form: denominator > 0, gcd(|num|, den) = 1, zero is 0/1.
 * Every operation returns a canonical value; there is no unreduced state.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcert {

using Integer = boost::multiprecision::cpp_int;

inline Integer int_gcd(Integer a, Integer b) { return boost::multiprecision::gcd(a, b); }

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const Integer& n) : num_(n), den_(1) {}
    Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return Rational(raw_tag{}, -num_, den_); }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(num_ * o.den_, den_ * o.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        Integer lhs = num_ * o.den_;
        Integer rhs = o.num_ * den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (num_ == 0) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    Rational pow(unsigned e) const {
        Rational r(1), base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1u;
        }
        return r;
    }

    /// Largest integer <= value.
    Integer floor() const {
        Integer q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    /// Canonical text: "p" for integers, "p/q" otherwise.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    /// Parses the grammar -?[0-9]+(/[1-9][0-9]*)?  (exactly the certificate
    /// schema's rational strings). Throws std::invalid_argument otherwise.
    static Rational from_string(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("malformed rational: '" + std::string(s) + "'"); };
        size_t i = 0;
        if (i < s.size() && s[i] == '-') ++i;
        size_t num_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == num_begin) bad();
        Integer n(std::string(s.substr(0, i)));
        if (i == s.size()) return Rational(n);
        if (s[i] != '/') bad();
        ++i;
        if (i == s.size() || s[i] < '1' || s[i] > '9') bad();
        size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i != s.size()) bad();
        return Rational(n, Integer(std::string(s.substr(den_begin))));
    }

private:
    struct raw_tag {};
    Rational(raw_tag, Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Integer g = int_gcd(num_ < 0 ? Integer(-num_) : num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Integer num_;  // carries the sign
    Integer den_;  // always > 0
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

/// gcd on rationals: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d); used for polynomial content.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    Integer g = int_gcd(a.num() < 0 ? Integer(-a.num()) : a.num(),
                        b.num() < 0 ? Integer(-b.num()) : b.num());
    Integer l = a.den() / int_gcd(a.den(), b.den()) * b.den();
    return Rational(g, l);
}

}  // namespace pcert
