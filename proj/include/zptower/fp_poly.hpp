#pragma once

// Dense polynomial arithmetic over the prime field F_p, plus the
// deterministic search for defining irreducible polynomials. Coefficients
// are int64 residues in [0, p); polynomials are coefficient vectors with
// the constant term first and no trailing zeros (zero = empty vector).

#include "zptower/bigint.hpp"

#include <cstdint>
#include <vector>

namespace zptower {

using FpPoly = std::vector<std::int64_t>;

inline void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FpPoly fp_add(const FpPoly& f, const FpPoly& g, long p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::int64_t v = (i < f.size() ? f[i] : 0) + (i < g.size() ? g[i] : 0);
        r[i] = v % p;
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_sub(const FpPoly& f, const FpPoly& g, long p) {
    FpPoly r(std::max(f.size(), g.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::int64_t v = (i < f.size() ? f[i] : 0) - (i < g.size() ? g[i] : 0);
        r[i] = mod_floor(v, p);
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_mul(const FpPoly& f, const FpPoly& g, long p) {
    if (f.empty() || g.empty()) return {};
    FpPoly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = (r[i + j] + f[i] * g[j]) % p;
    }
    fp_trim(r);
    return r;
}

// Remainder of f modulo monic m.
inline FpPoly fp_rem(FpPoly f, const FpPoly& m, long p) {
    const int dm = fp_deg(m);
    while (fp_deg(f) >= dm) {
        std::int64_t lc = f.back();
        int shift = fp_deg(f) - dm;
        for (int i = 0; i <= dm; ++i)
            f[i + shift] = mod_floor(f[i + shift] - lc * m[i], p);
        fp_trim(f);
    }
    return f;
}

inline FpPoly fp_mulmod(const FpPoly& f, const FpPoly& g, const FpPoly& m, long p) {
    return fp_rem(fp_mul(f, g, p), m, p);
}

inline FpPoly fp_powmod(FpPoly base, BigInt e, const FpPoly& m, long p) {
    FpPoly r{1};
    base = fp_rem(std::move(base), m, p);
    while (e > 0) {
        if ((e & 1) != 0) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
    while (!b.empty()) {
        // make b monic so fp_rem applies
        std::int64_t inv = inv_mod_i64(b.back(), p);
        FpPoly bm = b;
        for (auto& c : bm) c = (c * inv) % p;
        a = fp_rem(std::move(a), bm, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::int64_t inv = inv_mod_i64(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

// x^(p^k) mod m, by k-fold Frobenius powering.
inline FpPoly fp_frob_power(const FpPoly& m, long p, unsigned k) {
    FpPoly x{0, 1};
    FpPoly r = fp_rem(x, m, p);
    for (unsigned i = 0; i < k; ++i) r = fp_powmod(r, p, m, p);
    return r;
}

// Monic degree-n polynomial irreducibility over F_p: x^(p^n) == x mod f and
// gcd(x^(p^(n/l)) - x, f) = 1 for every prime l | n.
inline bool fp_irreducible(const FpPoly& f, long p) {
    const int n = fp_deg(f);
    if (n <= 0) return false;
    FpPoly x{0, 1};
    FpPoly xq = fp_frob_power(f, p, static_cast<unsigned>(n));
    if (fp_sub(xq, x, p) != FpPoly{}) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_small(l)) continue;
        FpPoly xql = fp_frob_power(f, p, static_cast<unsigned>(n / l));
        FpPoly g = fp_gcd(fp_sub(xql, x, p), f, p);
        if (fp_deg(g) != 0) return false;
    }
    return true;
}

// Deterministic defining polynomial: the monic irreducible of degree n whose
// non-leading coefficient vector (c_0,...,c_{n-1}), read as the base-p
// integer sum c_i p^i, is least. Degree 1 returns x.
inline FpPoly fp_least_irreducible(long p, int n) {
    if (n == 1) return FpPoly{0, 1};
    BigInt bound = pow_int(p, static_cast<unsigned long>(n));
    for (BigInt code = 0; code < bound; ++code) {
        FpPoly f(static_cast<size_t>(n) + 1, 0);
        BigInt c = code;
        for (int i = 0; i < n; ++i) {
            f[i] = static_cast<std::int64_t>(c % p);
            c /= p;
        }
        f[n] = 1;
        if (f[0] == 0) continue;  // reducible: divisible by x
        if (fp_irreducible(f, p)) return f;
    }
    throw std::logic_error("fp_least_irreducible: search exhausted");
}

}  // namespace zptower
