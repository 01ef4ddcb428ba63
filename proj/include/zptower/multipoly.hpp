#pragma once

// Sparse multivariate polynomials with exact integer coefficients, just
// enough for deriving the universal Witt addition/multiplication laws by
// ghost-solving and for specializing them over concrete rings.

#include "zptower/bigint.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace zptower {

struct MultiPoly {
    using Expo = std::vector<std::uint16_t>;  // one exponent per variable
    int nvars = 0;
    std::map<Expo, BigInt> terms;

    static MultiPoly zero(int nvars) { return {nvars, {}}; }

    static MultiPoly constant(int nvars, BigInt c) {
        MultiPoly r = zero(nvars);
        if (c != 0) r.terms[Expo(static_cast<size_t>(nvars), 0)] = std::move(c);
        return r;
    }

    static MultiPoly variable(int nvars, int idx) {
        MultiPoly r = zero(nvars);
        Expo e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(idx)] = 1;
        r.terms[e] = 1;
        return r;
    }

    bool is_zero() const { return terms.empty(); }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = (it->second == 0) ? terms.erase(it) : std::next(it);
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms) r.terms[e] += c;
        r.prune();
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms) r.terms[e] -= c;
        r.prune();
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r = zero(nvars);
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                Expo e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + e2[i]);
                r.terms[e] += c1 * c2;
            }
        r.prune();
        return r;
    }

    MultiPoly scaled(const BigInt& s) const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms) c *= s;
        r.prune();
        return r;
    }

    MultiPoly power(unsigned k) const {
        MultiPoly r = constant(nvars, 1), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // Exact division by an integer; every coefficient must be divisible.
    MultiPoly divided_exact(const BigInt& d) const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms) {
            if (c % d != 0) throw std::logic_error("MultiPoly: inexact integer division");
            c /= d;
        }
        return r;
    }

    // Specialize over a ring context. R must provide: value type V, zero(),
    // one(), add(V,V), mul(V,V), from_bigint(BigInt).
    template <typename R>
    typename R::V evaluate(const R& ring, const std::vector<typename R::V>& vars) const {
        using V = typename R::V;
        // lazily grown power tables, one per variable
        std::vector<std::vector<V>> pows(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) pows[i].push_back(ring.one());
        auto var_pow = [&](size_t i, unsigned e) -> const V& {
            while (pows[i].size() <= e) pows[i].push_back(ring.mul(pows[i].back(), vars[i]));
            return pows[i][e];
        };
        V acc = ring.zero();
        for (const auto& [e, c] : terms) {
            V t = ring.from_bigint(c);
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) t = ring.mul(t, var_pow(i, e[i]));
            acc = ring.add(acc, t);
        }
        return acc;
    }
};

}  // namespace zptower
