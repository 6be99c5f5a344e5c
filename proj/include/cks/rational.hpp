#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cks {

/// Exact rational number backed by 64-bit numerator/denominator.
/// Always normalized: gcd(|num|, den) == 1 and den > 0.  Arithmetic runs
/// through 128-bit intermediates; a result that does not fit 64 bits after
/// reduction throws std::overflow_error instead of silently wrapping.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        *this = reduce128(n, d);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rat operator-() const { return Rat(-num_, den_, normal_tag{}); }
    Rat operator+(const Rat& o) const {
        return reduce128((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                         (__int128)den_ * o.den_);
    }
    Rat operator-(const Rat& o) const { return *this + (-o); }
    Rat operator*(const Rat& o) const {
        return reduce128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rat: division by zero");
        return reduce128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    Rat abs() const { return num_ < 0 ? -*this : *this; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Nearest rational with the given denominator (round half away from zero).
    static Rat nearest(double x, long long grid_den) {
        if (grid_den <= 0) throw std::invalid_argument("Rat::nearest: bad denominator");
        double scaled = x * static_cast<double>(grid_den);
        if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18)
            throw std::overflow_error("Rat::nearest: value out of range");
        long long p = static_cast<long long>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
        return Rat(p, grid_den);
    }

    /// Parses "p/q", an integer, or a plain decimal such as "0.25" / "-1.5".
    static Rat parse(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("Rat::parse: empty string");
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            long long p = parse_int(text.substr(0, slash));
            long long q = parse_int(text.substr(slash + 1));
            return Rat(p, q);
        }
        auto dot = text.find('.');
        if (dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            size_t frac_len = text.size() - dot - 1;
            if (frac_len == 0 || frac_len > 18)
                throw std::invalid_argument("Rat::parse: bad decimal: " + text);
            long long den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rat(parse_int(digits), den);
        }
        return Rat(parse_int(text));
    }

    /// "p/q" when the denominator is not 1, else just "p".
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    struct normal_tag {};
    Rat(long long n, long long d, normal_tag) : num_(n), den_(d) {}

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rat reduce128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) return Rat();
        __int128 g = gcd128(n, d);
        n /= g;
        d /= g;
        constexpr __int128 lo = std::numeric_limits<long long>::min();
        constexpr __int128 hi = std::numeric_limits<long long>::max();
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rat: 64-bit overflow after reduction");
        return Rat(static_cast<long long>(n), static_cast<long long>(d), normal_tag{});
    }

    static long long parse_int(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rat::parse: empty number");
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("Rat::parse: trailing junk: " + s);
        return v;
    }

    long long num_;
    long long den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

inline Rat operator*(long long a, const Rat& b) { return Rat(a) * b; }
inline Rat operator+(long long a, const Rat& b) { return Rat(a) + b; }
inline Rat operator-(long long a, const Rat& b) { return Rat(a) - b; }

}  // namespace cks
