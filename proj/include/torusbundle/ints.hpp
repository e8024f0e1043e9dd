#pragma once

#include <cstdint>
#include <tuple>

#include "torusbundle/errors.hpp"

namespace torusbundle {

// All coefficient arithmetic runs on checked 64-bit integers: any overflow
// raises OverflowError instead of wrapping.
using Int = long long;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

inline Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

/// Exact halving; the argument must be even.
inline Int exact_half(Int a) {
    if (a % 2 != 0) throw NonIntegralCoefficientError("odd value where an even one is required");
    return a / 2;
}

/// Exact division; throws when b does not divide a.
inline Int exact_div(Int a, Int b) {
    if (b == 0 || a % b != 0) throw NonIntegralCoefficientError("non-exact integer division");
    return a / b;
}

/// gcd(a, b) >= 0, gcd(0, 0) = 0.
inline Int gcd(Int a, Int b) {
    a = checked_abs(a);
    b = checked_abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int gcd(Int a, Int b, Int c) { return gcd(gcd(a, b), c); }

inline Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(checked_abs(a) / gcd(a, b), checked_abs(b));
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> extended_gcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_x = 1, x = 0;
    Int old_y = 0, y = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = checked_sub(old_r, checked_mul(q, r));
        old_r = r;
        r = t;
        t = checked_sub(old_x, checked_mul(q, x));
        old_x = x;
        x = t;
        t = checked_sub(old_y, checked_mul(q, y));
        old_y = y;
        y = t;
    }
    if (old_r < 0) {
        old_r = checked_neg(old_r);
        old_x = checked_neg(old_x);
        old_y = checked_neg(old_y);
    }
    return {old_r, old_x, old_y};
}

/// Nonnegative remainder mod m > 0.
inline Int mod_floor(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

/// Integer square root of a perfect square; throws otherwise.
inline Int exact_sqrt(Int a) {
    if (a < 0) throw NonIntegralCoefficientError("square root of a negative value");
    Int r = 0;
    while (checked_mul(r + 1, r + 1) <= a) ++r;
    if (checked_mul(r, r) != a) throw NonIntegralCoefficientError("value is not a perfect square");
    return r;
}

inline bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; checked_mul(d, d) <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace torusbundle
