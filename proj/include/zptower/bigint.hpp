#pragma once

// Exact integer and rational scalars used throughout the library.
// All polygon geometry and cyclotomic coefficients are exact; there is
// no floating point anywhere in the computational core.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace zptower {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// p-adic valuation of a nonzero integer; calling with n == 0 is a bug.
inline long vp_int(BigInt n, long p) {
    if (n == 0) throw std::invalid_argument("vp_int: zero input");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline BigInt pow_int(BigInt base, unsigned long e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline std::int64_t pow_i64(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
            throw std::overflow_error("pow_i64 overflow");
        r *= base;
    }
    return r;
}

inline bool is_prime_small(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

// Inverse of x modulo m (m need not be prime; x must be a unit).
inline std::int64_t inv_mod_i64(std::int64_t x, std::int64_t m) {
    std::int64_t a = mod_floor(x, m), b = m;
    std::int64_t u = 1, v = 0;
    while (b) {
        std::int64_t q = a / b;
        a -= q * b;
        std::swap(a, b);
        u -= q * v;
        std::swap(u, v);
    }
    if (a != 1) throw std::domain_error("inv_mod_i64: not a unit mod " + std::to_string(m));
    return mod_floor(u, m);
}

inline std::int64_t mulmod_i64(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t powmod_i64(std::int64_t base, std::uint64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    base = mod_floor(base, m);
    while (e) {
        if (e & 1) r = mulmod_i64(r, base, m);
        base = mulmod_i64(base, base, m);
        e >>= 1;
    }
    return r;
}

// Reduce an exact rational with p-integral value into Z/p^N. Throws if the
// denominator is divisible by p.
inline std::int64_t rat_to_residue(const Rat& r, long p, std::int64_t pN) {
    BigInt num = rat_num(r), den = rat_den(r);
    if (den % p == 0) throw std::domain_error("rat_to_residue: not p-integral");
    BigInt nm = num % pN;
    if (nm < 0) nm += pN;
    BigInt dm = den % pN;
    std::int64_t d = inv_mod_i64(static_cast<std::int64_t>(dm), pN);
    return mulmod_i64(static_cast<std::int64_t>(nm), d, pN);
}

}  // namespace zptower
