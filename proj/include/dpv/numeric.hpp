#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace dpv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Residue of x modulo m, always in [0, m).  m > 0.
inline BigInt mod_floor(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt int_pow(BigInt base, unsigned e) {
    BigInt r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

// Exact p-adic valuation of a nonzero integer.
inline unsigned padic_valuation(BigInt x, const BigInt& p) {
    if (x == 0) throw std::domain_error("padic_valuation: zero has no finite valuation");
    if (x < 0) x = -x;
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// v_p extended to nonzero rationals: v_p(a/b) = v_p(a) - v_p(b).
inline long padic_valuation(const BigRat& q, const BigInt& p) {
    if (q == 0) throw std::domain_error("padic_valuation: zero has no finite valuation");
    long vn = static_cast<long>(padic_valuation(numerator(q), p));
    long vd = static_cast<long>(padic_valuation(denominator(q), p));
    return vn - vd;
}

// Digit sum of n written in base p.
inline BigInt digit_sum(BigInt n, const BigInt& p) {
    BigInt s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

// Modular inverse in Z/m; returns false when gcd(a, m) != 1.
inline bool mod_inverse(const BigInt& a, const BigInt& m, BigInt& out) {
    BigInt r0 = m, r1 = mod_floor(a, m);
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        BigInt t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) return false;
    out = mod_floor(t0, m);
    return true;
}

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (BigInt d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace dpv
