#pragma once

// Truncated p-typical Witt vectors over a generic coefficient ring. The ring
// laws are the universal polynomials obtained once per (p, m) by solving the
// ghost equations over Z[X_0..X_{m-1}, Y_0..Y_{m-1}]; they are cached behind
// a mutex. The length cap (WITT_MAX_LEN) exists because the polynomials grow
// quickly with m.
//
// Ring adapters: a coefficient ring R exposes V/zero/one/add/mul/from_bigint
// (as in MultiPoly::evaluate); rings used with wp()/witt_trace() additionally
// expose frobenius(V).

#include "zptower/bigint.hpp"
#include "zptower/finite_field.hpp"
#include "zptower/multipoly.hpp"
#include "zptower/unramified.hpp"

#include <mutex>
#include <vector>

namespace zptower {

inline constexpr int WITT_MAX_LEN = 4;

struct WittLaws {
    long p;
    int m;
    std::vector<MultiPoly> add;  // S_0..S_{m-1} in X_0.., Y_0..
    std::vector<MultiPoly> mul;  // P_0..P_{m-1}
    std::vector<MultiPoly> neg;  // N_0..N_{m-1} in X_0.. only (2m vars, Y unused)
};

namespace detail {

inline MultiPoly ghost_poly(int nvars, int base, long p, int i) {
    // w_i = sum_{j<=i} p^j Z_j^(p^(i-j))
    MultiPoly w = MultiPoly::zero(nvars);
    BigInt pj = 1;
    for (int j = 0; j <= i; ++j) {
        unsigned e = 1;
        for (int t = 0; t < i - j; ++t) e *= static_cast<unsigned>(p);
        w = w + MultiPoly::variable(nvars, base + j).power(e).scaled(pj);
        pj *= p;
    }
    return w;
}

inline const WittLaws& witt_laws(long p, int m) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<WittLaws>> cache;
    if (m < 1 || m > WITT_MAX_LEN)
        throw std::invalid_argument("witt_laws: length must be in [1, " + std::to_string(WITT_MAX_LEN) + "]");
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    const int nv = 2 * m;
    auto laws = std::make_unique<WittLaws>();
    laws->p = p;
    laws->m = m;
    std::vector<MultiPoly> wx(m), wy(m);
    for (int i = 0; i < m; ++i) {
        wx[i] = ghost_poly(nv, 0, p, i);
        wy[i] = ghost_poly(nv, m, p, i);
    }
    auto solve = [&](auto rhs_of) {
        // p^i Z_i = rhs_i - sum_{j<i} p^j Z_j^(p^(i-j)), solved upward with
        // exact divisibility at every step.
        std::vector<MultiPoly> out;
        for (int i = 0; i < m; ++i) {
            MultiPoly rhs = rhs_of(i);
            BigInt pj = 1;
            for (int j = 0; j < i; ++j) {
                unsigned e = 1;
                for (int t = 0; t < i - j; ++t) e *= static_cast<unsigned>(p);
                rhs = rhs - out[static_cast<size_t>(j)].power(e).scaled(pj);
                pj *= p;
            }
            out.push_back(rhs.divided_exact(pj));
        }
        return out;
    };
    laws->add = solve([&](int i) { return wx[i] + wy[i]; });
    laws->mul = solve([&](int i) { return wx[i] * wy[i]; });
    laws->neg = solve([&](int i) { return MultiPoly::zero(nv) - wx[i]; });
    it = cache.emplace(key, std::move(laws)).first;
    return *it->second;
}

}  // namespace detail

// --- ring adapters ----------------------------------------------------------

struct FqRing {
    const FqCtx& F;
    using V = FqElem;
    V zero() const { return F.zero(); }
    V one() const { return F.one(); }
    V add(const V& a, const V& b) const { return F.add(a, b); }
    V mul(const V& a, const V& b) const { return F.mul(a, b); }
    V from_bigint(const BigInt& c) const {
        return F.from_int(static_cast<std::int64_t>(c % F.p()));
    }
    V frobenius(const V& a) const { return F.frobenius(a); }
};

struct ZqRing {
    const ZqCtx& R;
    using V = ZqElem;
    V zero() const { return R.zero(); }
    V one() const { return R.one(); }
    V add(const V& a, const V& b) const { return R.add(a, b); }
    V mul(const V& a, const V& b) const { return R.mul(a, b); }
    V from_bigint(const BigInt& c) const {
        return R.from_int(static_cast<std::int64_t>(c % R.pN()));
    }
    V frobenius(const V& a) const { return R.frobenius(a); }
};

// Z/p^N as a bare ring (the natural home of ghost components in tests).
struct IntModRing {
    std::int64_t modulus;
    using V = std::int64_t;
    V zero() const { return 0; }
    V one() const { return 1 % modulus; }
    V add(V a, V b) const { return (a + b) % modulus; }
    V mul(V a, V b) const { return mulmod_i64(a, b, modulus); }
    V from_bigint(const BigInt& c) const {
        BigInt r = c % modulus;
        if (r < 0) r += modulus;
        return static_cast<V>(r);
    }
};

// --- Witt operations --------------------------------------------------------

template <typename R>
struct WittVec {
    std::vector<typename R::V> a;
    bool operator==(const WittVec&) const = default;
};

template <typename R>
class WittOps {
  public:
    WittOps(const R& ring, long p, int m) : ring_(ring), laws_(detail::witt_laws(p, m)), m_(m) {}

    int length() const { return m_; }

    WittVec<R> zero() const { return {std::vector<typename R::V>(static_cast<size_t>(m_), ring_.zero())}; }

    WittVec<R> teichmuller(const typename R::V& c) const {
        WittVec<R> r = zero();
        r.a[0] = c;
        return r;
    }

    WittVec<R> add(const WittVec<R>& x, const WittVec<R>& y) const { return apply(laws_.add, x, y); }
    WittVec<R> mul(const WittVec<R>& x, const WittVec<R>& y) const { return apply(laws_.mul, x, y); }
    WittVec<R> neg(const WittVec<R>& x) const { return apply(laws_.neg, x, zero()); }
    WittVec<R> sub(const WittVec<R>& x, const WittVec<R>& y) const { return add(x, neg(y)); }

    // Ghost component w_i = sum p^j a_j^(p^(i-j)); meaningful when the ring
    // retains the needed p-powers.
    typename R::V ghost(const WittVec<R>& x, int i) const {
        if (i < 0 || i >= m_) throw std::out_of_range("ghost: index out of range");
        typename R::V acc = ring_.zero();
        BigInt pj = 1;
        for (int j = 0; j <= i; ++j) {
            typename R::V t = x.a[static_cast<size_t>(j)];
            unsigned e = 1;
            for (int k = 0; k < i - j; ++k) e *= static_cast<unsigned>(laws_.p);
            typename R::V tp = ring_.one();
            for (unsigned k = 0; k < e; ++k) tp = ring_.mul(tp, t);
            acc = ring_.add(acc, ring_.mul(ring_.from_bigint(pj), tp));
            pj *= laws_.p;
        }
        return acc;
    }

    // wp = F - id with F acting componentwise through the ring's designated
    // Frobenius (exact for perfect coefficient fields).
    WittVec<R> wp(const WittVec<R>& x) const {
        WittVec<R> fx = x;
        for (auto& v : fx.a) v = ring_.frobenius(v);
        return sub(fx, x);
    }

  private:
    WittVec<R> apply(const std::vector<MultiPoly>& laws, const WittVec<R>& x, const WittVec<R>& y) const {
        std::vector<typename R::V> vars;
        vars.reserve(static_cast<size_t>(2 * m_));
        for (const auto& v : x.a) vars.push_back(v);
        for (const auto& v : y.a) vars.push_back(v);
        WittVec<R> r = zero();
        for (int i = 0; i < m_; ++i) r.a[static_cast<size_t>(i)] = laws[static_cast<size_t>(i)].evaluate(ring_, vars);
        return r;
    }

    R ring_;
    const WittLaws& laws_;
    int m_;
};

// Teichmuller lift of b in F_p into Z/p^m: iterate the p-th power map.
inline std::int64_t teichmuller_residue(std::int64_t b, long p, int m) {
    std::int64_t pm = pow_i64(p, static_cast<unsigned>(m));
    std::int64_t z = mod_floor(b, pm);
    for (int i = 0; i + 1 < m; ++i) z = powmod_i64(z, static_cast<std::uint64_t>(p), pm);
    return z;
}

// Witt-vector trace: sum of the [k(x):F_p] componentwise-Frobenius conjugates
// of x over F_{p^n}; all components of the sum land in F_p and the result is
// returned through the canonical W_m(F_p) = Z/p^m identification
// (a_0,..,a_{m-1}) -> sum p^i [a_i].
inline std::int64_t witt_trace(const FqCtx& F, const std::vector<FqElem>& comps, int m) {
    FqRing ring{F};
    WittOps<FqRing> ops(ring, F.p(), m);
    WittVec<FqRing> acc = ops.zero();
    WittVec<FqRing> cur{comps};
    for (int i = 0; i < F.degree(); ++i) {
        acc = ops.add(acc, cur);
        for (auto& v : cur.a) v = F.frobenius(v);
    }
    std::int64_t pm = pow_i64(F.p(), static_cast<unsigned>(m));
    std::int64_t out = 0;
    std::int64_t pi = 1;
    for (int i = 0; i < m; ++i) {
        const FqElem& ci = acc.a[static_cast<size_t>(i)];
        for (size_t j = 1; j < ci.c.size(); ++j)
            if (ci.c[j] != 0) throw std::logic_error("witt_trace: component not in F_p");
        out = (out + pi * teichmuller_residue(ci.c[0], F.p(), m)) % pm;
        pi *= F.p();
    }
    return out;
}

}  // namespace zptower
