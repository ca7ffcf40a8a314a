#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "nfold/errors.hpp"

namespace nfold {

using i64 = long long;

// Saturation sentinel for norm-bound formulas: "no useful cap".
inline constexpr i64 huge = std::numeric_limits<i64>::max();

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_exception("integer overflow in addition");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_exception("integer overflow in subtraction");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_exception("integer overflow in multiplication");
    return r;
}

inline i64 checked_neg(i64 a) {
    if (a == std::numeric_limits<i64>::min()) throw overflow_exception("integer overflow in negation");
    return -a;
}

// Saturating variants: results clamp to `huge` instead of failing.
inline i64 sat_add(i64 a, i64 b) {
    if (a == huge || b == huge) return huge;
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) return huge;
    return r;
}

inline i64 sat_mul(i64 a, i64 b) {
    if ((a == huge && b != 0) || (b == huge && a != 0)) return huge;
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) return huge;
    return r;
}

// base^exp with saturation; exp >= 0.
inline i64 sat_pow(i64 base, i64 exp) {
    i64 r = 1;
    for (i64 i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, rem = a % b;
    return (rem != 0 && ((rem < 0) != (b < 0))) ? q - 1 : q;
}

inline i64 ceil_div(i64 a, i64 b) {
    i64 q = a / b, rem = a % b;
    return (rem != 0 && ((rem < 0) == (b < 0))) ? q + 1 : q;
}

// Exact rational, reduced, positive denominator. Only what the schedulers need.
struct rational {
    i64 num = 0;
    i64 den = 1;

    rational() = default;
    rational(i64 n, i64 d) : num(n), den(d) {
        if (den == 0) throw invalid_input("rational with zero denominator");
        if (den < 0) { num = checked_neg(num); den = checked_neg(den); }
        i64 g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static rational whole(i64 n) { return rational(n, 1); }

    rational plus(const rational& o) const {
        return rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                        checked_mul(den, o.den));
    }

    bool operator==(const rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const rational& o) const { return !(*this == o); }

    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace nfold
