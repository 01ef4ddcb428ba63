#pragma once

// Truncated unramified extensions Zq/p^N = (Z/p^N)[u]/(h_n), where h_n is
// the monic integer lift of the deterministic defining polynomial of the
// residue field. Provides the Frobenius lift (computed by Hensel from the
// residue Frobenius), Teichmuller lifts and digit expansions, traces to
// Z/p^N, and embeddings between extensions lifted from the residue ones.

#include "zptower/bigint.hpp"
#include "zptower/errors.hpp"
#include "zptower/finite_field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace zptower {

struct ZqElem {
    std::vector<std::int64_t> c;  // length n, entries in [0, p^N)

    bool operator==(const ZqElem&) const = default;
};

class ZqCtx {
  public:
    ZqCtx(const FqCtx& residue, int prec) : res_(residue), N_(prec) {
        if (prec < 1) throw std::invalid_argument("ZqCtx: precision must be >= 1");
        p_ = res_.p();
        n_ = res_.degree();
        pN_ = 1;
        for (int i = 0; i < N_; ++i) {
            if (pN_ > (std::int64_t{1} << 31) / p_)
                throw PrecisionError("ZqCtx: p^N exceeds the 2^31 working bound");
            pN_ *= p_;
        }
        hlift_ = std::vector<std::int64_t>(res_.modulus().begin(), res_.modulus().end());
        init_frobenius();
    }

    long p() const { return p_; }
    int degree() const { return n_; }
    int precision() const { return N_; }
    std::int64_t pN() const { return pN_; }
    const FqCtx& residue_field() const { return res_; }

    ZqElem zero() const { return {std::vector<std::int64_t>(n_, 0)}; }
    ZqElem one() const { return from_int(1); }

    ZqElem from_int(std::int64_t v) const {
        ZqElem r = zero();
        r.c[0] = mod_floor(v, pN_);
        return r;
    }

    ZqElem from_coeffs(const std::vector<std::int64_t>& v) const {
        if (v.size() > static_cast<size_t>(n_)) throw std::invalid_argument("ZqCtx: coefficient list too long");
        ZqElem r = zero();
        for (size_t i = 0; i < v.size(); ++i) r.c[i] = mod_floor(v[i], pN_);
        return r;
    }

    bool is_zero(const ZqElem& x) const {
        for (auto v : x.c)
            if (v != 0) return false;
        return true;
    }

    FqElem reduce_mod_p(const ZqElem& x) const {
        FqElem r = res_.zero();
        for (int i = 0; i < n_; ++i) r.c[i] = x.c[i] % p_;
        return r;
    }

    ZqElem naive_lift(const FqElem& x) const {
        ZqElem r = zero();
        for (int i = 0; i < n_; ++i) r.c[i] = x.c[i];
        return r;
    }

    ZqElem add(const ZqElem& x, const ZqElem& y) const {
        ZqElem r = x;
        for (int i = 0; i < n_; ++i) r.c[i] = (r.c[i] + y.c[i]) % pN_;
        return r;
    }

    ZqElem sub(const ZqElem& x, const ZqElem& y) const {
        ZqElem r = x;
        for (int i = 0; i < n_; ++i) r.c[i] = mod_floor(r.c[i] - y.c[i], pN_);
        return r;
    }

    ZqElem neg(const ZqElem& x) const { return sub(zero(), x); }

    ZqElem scalar_mul(std::int64_t s, const ZqElem& x) const {
        s = mod_floor(s, pN_);
        ZqElem r = x;
        for (int i = 0; i < n_; ++i) r.c[i] = mulmod_i64(r.c[i], s, pN_);
        return r;
    }

    ZqElem mul(const ZqElem& x, const ZqElem& y) const {
        std::vector<__int128> acc(2 * n_ - 1, 0);
        for (int i = 0; i < n_; ++i) {
            if (x.c[i] == 0) continue;
            for (int j = 0; j < n_; ++j) acc[i + j] += static_cast<__int128>(x.c[i]) * y.c[j];
        }
        // reduce mod the monic lift of the defining polynomial
        for (int d = 2 * n_ - 2; d >= n_; --d) {
            __int128 lc = acc[d] % pN_;
            if (lc == 0) continue;
            for (int i = 0; i < n_; ++i) acc[d - n_ + i] -= lc * hlift_[i];
            acc[d] = 0;
        }
        ZqElem r = zero();
        for (int i = 0; i < n_; ++i) {
            __int128 v = acc[i] % pN_;
            if (v < 0) v += pN_;
            r.c[i] = static_cast<std::int64_t>(v);
        }
        return r;
    }

    ZqElem pow(const ZqElem& x, BigInt e) const {
        if (e < 0) return pow(inv(x), -e);
        ZqElem r = one(), b = x;
        while (e > 0) {
            if ((e & 1) != 0) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    bool is_unit(const ZqElem& x) const { return !res_.is_zero(reduce_mod_p(x)); }

    ZqElem inv(const ZqElem& x) const {
        if (!is_unit(x)) throw std::domain_error("ZqCtx::inv of non-unit");
        ZqElem y = naive_lift(res_.inv(reduce_mod_p(x)));
        for (int i = 0; i < 6 && !(mul(x, y) == one()); ++i)
            y = mul(y, sub(from_int(2), mul(x, y)));  // Newton: y <- y(2 - xy)
        if (!(mul(x, y) == one())) throw std::logic_error("ZqCtx::inv did not converge");
        return y;
    }

    // p-adic valuation, capped at N (all-zero elements report N).
    int vp(const ZqElem& x) const {
        int best = N_;
        for (auto v : x.c) {
            if (v == 0) continue;
            int w = 0;
            std::int64_t t = v;
            while (t % p_ == 0) {
                t /= p_;
                ++w;
            }
            best = std::min(best, w);
        }
        return best;
    }

    // Exact division by p^k; throws PrecisionError when not exactly divisible.
    // The result is only trustworthy modulo p^(N-k); the caller tracks that.
    ZqElem divide_exact_p(const ZqElem& x, int k) const {
        std::int64_t pk = pow_i64(p_, static_cast<unsigned>(k));
        ZqElem r = x;
        for (int i = 0; i < n_; ++i) {
            if (r.c[i] % pk != 0) throw PrecisionError("divide_exact_p: not divisible by p^k");
            r.c[i] /= pk;
        }
        return r;
    }

    // Frobenius lift and its inverse (sigma has order n).
    ZqElem frobenius(const ZqElem& x) const { return apply_powers(x, sigma_pow_); }
    ZqElem frobenius_inv(const ZqElem& x) const { return apply_powers(x, sigma_inv_pow_); }

    ZqElem sigma_iter(const ZqElem& x, int k) const {
        k = mod_floor(k, n_);
        ZqElem r = x;
        for (int i = 0; i < k; ++i) r = frobenius(r);
        return r;
    }

    // Trace of the n Frobenius conjugates; the result is a constant and is
    // returned as an integer residue mod p^N.
    std::int64_t trace_to_prime(const ZqElem& x) const {
        ZqElem s = zero(), y = x;
        for (int i = 0; i < n_; ++i) {
            s = add(s, y);
            y = frobenius(y);
        }
        for (int i = 1; i < n_; ++i)
            if (s.c[i] != 0) throw std::logic_error("trace_to_prime: non-constant trace");
        return s.c[0];
    }

    // Teichmuller lift: the unique z with z = x mod p and z^(p^n) = z.
    ZqElem teichmuller(const FqElem& x) const {
        ZqElem z = naive_lift(x);
        BigInt q = res_.card();
        for (int i = 0; i + 1 < N_; ++i) z = pow(z, q);
        return z;
    }

    bool is_teichmuller(const ZqElem& z) const { return pow(z, res_.card()) == z; }

    // Teichmuller digit expansion c = sum [c_j] p^j, valid for j < N.
    std::vector<FqElem> teichmuller_digits(const ZqElem& x) const {
        std::vector<FqElem> digits;
        ZqElem cur = x;
        for (int j = 0; j < N_; ++j) {
            FqElem d = reduce_mod_p(cur);
            digits.push_back(d);
            cur = sub(cur, teichmuller(d));
            cur = divide_exact_p(cur, 1);
            // mask to the honest remaining precision
            std::int64_t mask = pN_;
            for (int t = 0; t <= j; ++t) mask /= p_;
            for (int i = 0; i < n_; ++i) cur.c[i] %= std::max<std::int64_t>(mask, 1);
        }
        return digits;
    }

  private:
    void init_frobenius() {
        // Hensel-lift the residue Frobenius u -> u^p to a root of the
        // defining polynomial, then tabulate its powers.
        ZqElem z = pow(make_u(), p_);
        z = hensel_root(hlift_, z);
        sigma_pow_ = power_table(z);
        // sigma^(n-1) = sigma^(-1)
        ZqElem zi = make_u();
        for (int i = 0; i < n_ - 1; ++i) zi = apply_powers(zi, sigma_pow_);
        sigma_inv_pow_ = power_table(zi);
    }

    ZqElem make_u() const {
        ZqElem r = zero();
        if (n_ == 1) return r;  // u = 0 in the degree-1 presentation
        r.c[1] = 1;
        return r;
    }

    ZqElem eval_int_poly(const std::vector<std::int64_t>& f, const ZqElem& x) const {
        ZqElem acc = zero();
        for (size_t i = f.size(); i-- > 0;) {
            acc = mul(acc, x);
            acc = add(acc, from_int(f[i]));
        }
        return acc;
    }

    ZqElem hensel_root(const std::vector<std::int64_t>& f, ZqElem z) const {
        std::vector<std::int64_t> df;
        for (size_t i = 1; i < f.size(); ++i) df.push_back(mod_floor(static_cast<std::int64_t>(i) * f[i], pN_));
        for (int it = 0; it < 40; ++it) {
            ZqElem fv = eval_int_poly(f, z);
            if (is_zero(fv)) return z;
            z = sub(z, mul(fv, inv(eval_int_poly(df, z))));
        }
        throw std::logic_error("hensel_root: no convergence");
    }

    std::vector<ZqElem> power_table(const ZqElem& z) const {
        std::vector<ZqElem> t(n_);
        t[0] = one();
        for (int i = 1; i < n_; ++i) t[i] = mul(t[i - 1], z);
        return t;
    }

    ZqElem apply_powers(const ZqElem& x, const std::vector<ZqElem>& pows) const {
        ZqElem acc = zero();
        for (int i = 0; i < n_; ++i)
            if (x.c[i] != 0) acc = add(acc, scalar_mul(x.c[i], pows[i]));
        return acc;
    }

    const FqCtx& res_;
    int N_;
    long p_;
    int n_;
    std::int64_t pN_;
    std::vector<std::int64_t> hlift_;
    std::vector<ZqElem> sigma_pow_;
    std::vector<ZqElem> sigma_inv_pow_;
};

// Registry of unramified contexts keyed by (degree, precision), plus
// Hensel-lifted embedding roots. Shares the residue registry.
class ZqRegistry {
  public:
    explicit ZqRegistry(FieldRegistry& fields) : fields_(fields) {}

    FieldRegistry& fields() { return fields_; }

    const ZqCtx& ring(int n, int N) {
        const FqCtx& res = fields_.field(n);
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(n, N);
        auto it = rings_.find(key);
        if (it == rings_.end())
            it = rings_.emplace(key, std::make_unique<ZqCtx>(res, N)).first;
        return *it->second;
    }

    // Embedding Zq(d)/p^N -> Zq(n)/p^N determined by the Hensel lift of the
    // residue embedding root.
    ZqElem embed(const ZqElem& x, int d, int n, int N) {
        const ZqCtx& big = ring(n, N);
        if (d == n) return x;
        if (d == 1) {
            ZqElem r = big.zero();
            r.c[0] = mod_floor(x.c[0], big.pN());
            return r;
        }
        ZqElem root = embed_root(d, n, N);
        ZqElem acc = big.zero();
        for (size_t i = x.c.size(); i-- > 0;) {
            acc = big.mul(acc, root);
            acc = big.add(acc, big.from_int(x.c[i]));
        }
        return acc;
    }

  private:
    ZqElem embed_root(int d, int n, int N) {
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_tuple(d, n, N);
        auto it = roots_.find(key);
        if (it != roots_.end()) return it->second;
        const FqElem& rbar = fields_.embedding_root(d, n);
        const ZqCtx& big = *rings_.at(std::make_pair(n, N));
        const FpPoly& h = fields_.field(d).modulus();
        std::vector<std::int64_t> hl(h.begin(), h.end());
        std::vector<std::int64_t> dh;
        for (size_t i = 1; i < hl.size(); ++i) dh.push_back(static_cast<std::int64_t>(i) * hl[i]);
        ZqElem z = big.naive_lift(rbar);
        for (int it2 = 0; it2 < 40; ++it2) {
            ZqElem fv = eval(big, hl, z);
            if (big.is_zero(fv)) break;
            z = big.sub(z, big.mul(fv, big.inv(eval(big, dh, z))));
        }
        if (!big.is_zero(eval(big, hl, z))) throw std::logic_error("embed_root: Hensel failed");
        roots_.emplace(key, z);
        return z;
    }

    static ZqElem eval(const ZqCtx& R, const std::vector<std::int64_t>& f, const ZqElem& x) {
        ZqElem acc = R.zero();
        for (size_t i = f.size(); i-- > 0;) {
            acc = R.mul(acc, x);
            acc = R.add(acc, R.from_int(f[i]));
        }
        return acc;
    }

    FieldRegistry& fields_;
    std::mutex mu_;
    std::map<std::pair<int, int>, std::unique_ptr<ZqCtx>> rings_;
    std::map<std::tuple<int, int, int>, ZqElem> roots_;
};

}  // namespace zptower
