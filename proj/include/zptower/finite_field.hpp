#pragma once

// Finite field extensions F_{p^n} presented over the prime field by the
// deterministic defining polynomials of fp_poly.hpp. A context holds the
// modulus and provides arithmetic on coefficient vectors; a registry caches
// contexts per degree and the embeddings between them (computed by
// root-finding of the smaller defining polynomial in the larger field).

#include "zptower/bigint.hpp"
#include "zptower/fp_poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace zptower {

struct FqElem {
    std::vector<std::int64_t> c;  // length n, entries in [0, p)

    bool operator==(const FqElem&) const = default;
    bool operator<(const FqElem& o) const { return c < o.c; }
};

class FqCtx {
  public:
    FqCtx(long p, int n, FpPoly modulus) : p_(p), n_(n), mod_(std::move(modulus)) {
        if (fp_deg(mod_) != n) throw std::invalid_argument("FqCtx: modulus degree mismatch");
    }

    long p() const { return p_; }
    int degree() const { return n_; }
    const FpPoly& modulus() const { return mod_; }
    BigInt card() const { return pow_int(p_, static_cast<unsigned long>(n_)); }

    FqElem zero() const { return {std::vector<std::int64_t>(n_, 0)}; }
    FqElem one() const { return from_int(1); }
    FqElem gen() const {
        FqElem g = zero();
        if (n_ == 1) return g;  // F_p[x]/(x): the generator is 0
        g.c[1] = 1;
        return g;
    }

    FqElem from_int(std::int64_t v) const {
        FqElem r = zero();
        r.c[0] = mod_floor(v, p_);
        return r;
    }

    // Enumeration index: sum c_i p^i in [0, p^n).
    FqElem from_index(std::uint64_t idx) const {
        FqElem r = zero();
        for (int i = 0; i < n_; ++i) {
            r.c[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(p_));
            idx /= static_cast<std::uint64_t>(p_);
        }
        if (idx != 0) throw std::out_of_range("FqCtx::from_index");
        return r;
    }

    std::uint64_t to_index(const FqElem& x) const {
        std::uint64_t idx = 0;
        for (int i = n_ - 1; i >= 0; --i)
            idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(x.c[i]);
        return idx;
    }

    bool is_zero(const FqElem& x) const {
        for (auto v : x.c)
            if (v != 0) return false;
        return true;
    }

    FqElem add(const FqElem& x, const FqElem& y) const {
        FqElem r = x;
        for (int i = 0; i < n_; ++i) r.c[i] = (r.c[i] + y.c[i]) % p_;
        return r;
    }

    FqElem sub(const FqElem& x, const FqElem& y) const {
        FqElem r = x;
        for (int i = 0; i < n_; ++i) r.c[i] = mod_floor(r.c[i] - y.c[i], p_);
        return r;
    }

    FqElem neg(const FqElem& x) const { return sub(zero(), x); }

    FqElem mul(const FqElem& x, const FqElem& y) const {
        FpPoly r = fp_mulmod(trim(x), trim(y), mod_, p_);
        return pad(r);
    }

    FqElem pow(const FqElem& x, BigInt e) const {
        if (e < 0) return pow(inv(x), -e);
        return pad(fp_powmod(trim(x), e, mod_, p_));
    }

    FqElem inv(const FqElem& x) const {
        if (is_zero(x)) throw std::domain_error("FqCtx::inv of zero");
        return pow(x, card() - 2);
    }

    // Absolute Frobenius x -> x^p.
    FqElem frobenius(const FqElem& x) const { return pow(x, p_); }

    FqElem trace(const FqElem& x) const {  // to F_p, returned as constant
        FqElem s = zero(), y = x;
        for (int i = 0; i < n_; ++i) {
            s = add(s, y);
            y = frobenius(y);
        }
        return s;
    }

    FqElem norm(const FqElem& x) const {
        FqElem s = one(), y = x;
        for (int i = 0; i < n_; ++i) {
            s = mul(s, y);
            y = frobenius(y);
        }
        return s;
    }

    std::int64_t eval_poly(const FpPoly& f, const FqElem& x, FqElem* out) const {
        FqElem acc = zero();
        for (size_t i = f.size(); i-- > 0;) {
            acc = mul(acc, x);
            acc = add(acc, from_int(f[i]));
        }
        if (out) *out = acc;
        return is_zero(acc) ? 0 : 1;
    }

  private:
    FpPoly trim(const FqElem& x) const {
        FpPoly f = x.c;
        fp_trim(f);
        return f;
    }
    FqElem pad(const FpPoly& f) const {
        FqElem r = zero();
        for (size_t i = 0; i < f.size(); ++i) r.c[i] = f[i];
        return r;
    }

    long p_;
    int n_;
    FpPoly mod_;
};

// Per-run registry of field contexts and embeddings. Both caches are
// write-once under a mutex; returned references stay valid for the
// registry's lifetime.
class FieldRegistry {
  public:
    explicit FieldRegistry(long p) : p_(p) {
        if (!is_prime_small(p)) throw std::invalid_argument("FieldRegistry: p not prime");
    }

    long p() const { return p_; }

    const FqCtx& field(int n) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = fields_.find(n);
        if (it == fields_.end()) {
            auto ctx = std::make_unique<FqCtx>(p_, n, fp_least_irreducible(p_, n));
            it = fields_.emplace(n, std::move(ctx)).first;
        }
        return *it->second;
    }

    // Image of the degree-d generator under the embedding F_{p^d} -> F_{p^n}
    // (d | n): the least-index root of the degree-d defining polynomial.
    const FqElem& embedding_root(int d, int n) {
        if (n % d != 0) throw std::invalid_argument("embedding_root: d does not divide n");
        const FqCtx& big = field(n);
        const FqCtx& small = field(d);
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(d, n);
        auto it = roots_.find(key);
        if (it == roots_.end()) {
            const FpPoly& h = small.modulus();
            BigInt csize = big.card();
            FqElem root = big.zero();
            bool found = false;
            for (std::uint64_t idx = 0; BigInt(idx) < csize; ++idx) {
                FqElem cand = big.from_index(idx);
                FqElem val;
                big.eval_poly(h, cand, &val);
                if (big.is_zero(val)) {
                    root = cand;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("embedding_root: no root found");
            it = roots_.emplace(key, std::move(root)).first;
        }
        return it->second;
    }

    FqElem embed(const FqElem& x, int d, int n) {
        if (d == n) return x;
        const FqCtx& big = field(n);
        if (d == 1) {
            return big.from_int(x.c[0]);
        }
        const FqElem& r = embedding_root(d, n);
        FqElem acc = big.zero();
        for (size_t i = x.c.size(); i-- > 0;) {
            acc = big.mul(acc, r);
            acc = big.add(acc, big.from_int(x.c[i]));
        }
        return acc;
    }

  private:
    long p_;
    std::mutex mu_;
    std::map<int, std::unique_ptr<FqCtx>> fields_;
    std::map<std::pair<int, int>, FqElem> roots_;
};

}  // namespace zptower
