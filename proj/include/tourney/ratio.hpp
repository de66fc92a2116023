#pragma once

// Exact rationals for density arithmetic. Certificates compare densities by
// integer cross-multiplication only; no floating point is involved in any
// pass/fail decision.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace tourney {

struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Ratio() = default;
    Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw InvalidParameter("ratio with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        reduce();
    }

    void reduce() {
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    bool is_zero() const { return num == 0; }
    bool positive() const { return num > 0; }

    // Accepts "p/q", plain integers, and decimals ("0.15" -> 3/20).
    static Ratio parse(const std::string& s) {
        if (s.empty()) throw InvalidParameter("empty rational");
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            std::int64_t p = parse_int(s.substr(0, slash));
            std::int64_t q = parse_int(s.substr(slash + 1));
            return Ratio(p, q);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Ratio(parse_int(s), 1);
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.size() > 17) throw InvalidParameter("too many decimal digits: " + s);
        bool neg = !whole.empty() && whole[0] == '-';
        std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
        if (neg) w = -w;
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        std::int64_t n = w * scale + f;
        return Ratio(neg ? -n : n, scale);
    }

private:
    static std::int64_t parse_int(const std::string& s) {
        if (s.empty()) throw InvalidParameter("empty integer");
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw InvalidParameter("bad integer: " + s);
        }
        if (pos != s.size()) throw InvalidParameter("bad integer: " + s);
        return v;
    }
};

using Int128 = __int128;

inline bool operator==(const Ratio& a, const Ratio& b) {
    return Int128(a.num) * b.den == Int128(b.num) * a.den;
}
inline bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
inline bool operator<(const Ratio& a, const Ratio& b) {
    return Int128(a.num) * b.den < Int128(b.num) * a.den;
}
inline bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
inline bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
inline bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

// Builds num/den from 128-bit intermediates, reducing first; throws if the
// reduced value still overflows 64 bits.
inline Ratio make_ratio_128(Int128 num, Int128 den) {
    if (den == 0) throw InvalidParameter("ratio with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int128 a = num < 0 ? -num : num;
    Int128 b = den;
    while (b != 0) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    const Int128 lo = -Int128(INT64_MAX), hi = Int128(INT64_MAX);
    if (num < lo || num > hi || den > hi) throw InvalidParameter("rational overflow");
    Ratio r;
    r.num = static_cast<std::int64_t>(num);
    r.den = static_cast<std::int64_t>(den);
    return r;
}

inline Ratio operator*(const Ratio& a, const Ratio& b) {
    return make_ratio_128(Int128(a.num) * b.num, Int128(a.den) * b.den);
}

inline Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num == 0) throw InvalidParameter("division by zero ratio");
    return make_ratio_128(Int128(a.num) * b.den, Int128(a.den) * b.num);
}

}  // namespace tourney
