#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cayspec/int128.hpp"

namespace cayspec {

// Exact rational with 64-bit numerator and positive 64-bit denominator.
// All intermediate products run through 128 bits.  Every quantity handled
// here is bounded by edge counts (< 2^48 for the supported graph orders)
// and tolerance denominators (<= 10^18 from decimal parsing), so the
// 128-bit cross products never overflow; arithmetic that would leave the
// 64-bit range after reduction throws instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(i64 value) : num_(value), den_(1) {}  // implicit: integers promote
    Rational(i64 num, i64 den) { assign(num, den); }

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const { return double(num_) / double(den_); }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

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

    // Accepts an optional sign, then either "123", "123.456", or "p/q".
    static Rational parse(std::string_view text) {
        std::string_view s = text;
        bool neg = false;
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
            neg = s[0] == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) throw std::invalid_argument("Rational: empty literal");
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            i64 p = parse_digits(s.substr(0, slash));
            i64 q = parse_digits(s.substr(slash + 1));
            if (q == 0) throw std::invalid_argument("Rational: zero denominator");
            return Rational(neg ? -p : p, q);
        }
        auto dot = s.find('.');
        std::string_view whole = dot == std::string_view::npos ? s : s.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw std::invalid_argument("Rational: bad literal");
        if (frac.size() > 18) throw std::invalid_argument("Rational: more than 18 fractional digits");
        i64 w = whole.empty() ? 0 : parse_digits(whole);
        i64 f = frac.empty() ? 0 : parse_digits(frac);
        i64 scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        i128 num = i128(w) * scale + f;
        return from128(neg ? -num : num, scale);
    }

    std::string to_string() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    static i64 parse_digits(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: bad literal");
        i64 v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw std::invalid_argument("Rational: bad literal");
            if (v > (INT64_MAX - 9) / 10) throw std::overflow_error("Rational: literal too large");
            v = v * 10 + (c - '0');
        }
        return v;
    }

    static Rational from128(i128 num, i128 den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        u128 g = gcd128(uabs128(num), u128(den));
        if (g > 1) {
            num /= i128(g);
            den /= i128(g);
        }
        if (num > i128(INT64_MAX) || num < i128(INT64_MIN) || den > i128(INT64_MAX))
            throw std::overflow_error("Rational: value out of 64-bit range");
        Rational r;
        r.num_ = i64(num);
        r.den_ = i64(den);
        return r;
    }

    void assign(i64 num, i64 den) {
        Rational r = from128(num, den);
        num_ = r.num_;
        den_ = r.den_;
    }

    i64 num_;
    i64 den_;
};

// (1 - tol) * target <= value <= (1 + tol) * target, evaluated exactly.
// The relation the discrepancy definitions are built on; target >= 0 in
// every use here.
inline bool within_sim(const Rational& value, const Rational& target, const Rational& tol) {
    i128 lhs = i128(value.num()) * target.den() * tol.den();
    i128 lo = i128(target.num()) * value.den() * (i128(tol.den()) - tol.num());
    i128 hi = i128(target.num()) * value.den() * (i128(tol.den()) + tol.num());
    return lo <= lhs && lhs <= hi;
}

}  // namespace cayspec
