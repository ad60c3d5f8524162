#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tfm {

/// Exact rational arithmetic for bids, payments, burns and utilities.
///
/// All incentive checks compare utilities for strict inequality, so every
/// quantity that enters a verdict is kept as an exact fraction; floating
/// point appears only in the bounds module. Values are normalized
/// (den > 0, gcd(num, den) == 1) and intermediate products go through
/// 128-bit integers; anything that cannot be reduced back into 64 bits
/// throws instead of silently wrapping.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "7" for integers, "7/4" otherwise. Round-trips through parse().
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts "p", "p/q", and plain decimals such as "0.25".
    static Rational parse(const std::string& text);

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_)
            return make(i128(a.num_) + i128(b.num_), a.den_);
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_)
            return make(i128(a.num_) - i128(b.num_), a.den_);
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { Rational r; r.num_ = -num_; r.den_ = den_; return r; }

    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() { *this = make(num_, den_); }

    std::int64_t num_;
    std::int64_t den_;
};

/// Non-negative quantities (bids, payments, burns) and signed utilities
/// share the representation; non-negativity is a per-context invariant
/// enforced where profiles and outcomes are validated.
using Money = Rational;

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::size_t p1 = 0, p2 = 0;
        std::int64_t n = std::stoll(text.substr(0, slash), &p1);
        std::int64_t d = std::stoll(text.substr(slash + 1), &p2);
        if (p1 != slash || p2 != text.size() - slash - 1)
            throw std::invalid_argument("Rational: bad fraction '" + text + "'");
        return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        if (frac_len == 0 || frac_len > 18)
            throw std::invalid_argument("Rational: bad decimal '" + text + "'");
        std::size_t pos = 0;
        std::int64_t n = std::stoll(digits, &pos);
        if (pos != digits.size())
            throw std::invalid_argument("Rational: bad decimal '" + text + "'");
        std::int64_t d = 1;
        for (std::size_t i = 0; i < frac_len; ++i) d *= 10;
        return Rational(n, d);
    }
    std::size_t pos = 0;
    std::int64_t n = std::stoll(text, &pos);
    if (pos != text.size())
        throw std::invalid_argument("Rational: bad integer '" + text + "'");
    return Rational(n);
}

}  // namespace tfm
