#pragma once

// The cyclotomic ring Z[zeta_{p^m}] written in the uniformizer pi = zeta - 1:
// polynomials in pi of degree < e = p^(m-1)(p-1) reduced modulo the minimal
// polynomial Phi_{p^m}(1+x), which is Eisenstein at p. Coefficients are exact
// big integers (a rational-coefficient twin supports the power-sum
// exponential, whose intermediate values are honest rationals).
//
// The pi-adic valuation is computed through the norm: v_pi(z) = v_p(Res(Phi,
// z)) in the totally ramified extension. A direct divide-by-pi routine
// cross-checks it in the tests.

#include "zptower/bigint.hpp"

#include <optional>
#include <vector>

namespace zptower {

template <typename S>
struct CycPoly {
    std::vector<S> c;  // length e

    bool operator==(const CycPoly&) const = default;
};

using CycloInt = CycPoly<BigInt>;
using CycloRat = CycPoly<Rat>;

class CycloCtx {
  public:
    CycloCtx(long p, int m) : p_(p), m_(m) {
        e_ = 1;
        for (int i = 0; i < m - 1; ++i) e_ *= static_cast<int>(p);
        e_ *= static_cast<int>(p - 1);
        build_minpoly();
    }

    long p() const { return p_; }
    int level() const { return m_; }
    int e() const { return e_; }  // absolute ramification index v_pi(p)
    const std::vector<BigInt>& minpoly() const { return phi_; }

    template <typename S>
    CycPoly<S> zero() const {
        return {std::vector<S>(static_cast<size_t>(e_), S(0))};
    }

    template <typename S>
    CycPoly<S> from_int(const BigInt& v) const {
        CycPoly<S> r = zero<S>();
        r.c[0] = S(v);
        return r;
    }

    template <typename S>
    CycPoly<S> pi() const {
        CycPoly<S> r = zero<S>();
        if (e_ == 1) {
            // p = 2, m = 1: pi = -2 since zeta_2 = -1
            r.c[0] = S(-2);
        } else {
            r.c[1] = S(1);
        }
        return r;
    }

    template <typename S>
    bool is_zero(const CycPoly<S>& x) const {
        for (const auto& v : x.c)
            if (v != 0) return false;
        return true;
    }

    template <typename S>
    CycPoly<S> add(const CycPoly<S>& x, const CycPoly<S>& y) const {
        CycPoly<S> r = x;
        for (int i = 0; i < e_; ++i) r.c[i] += y.c[i];
        return r;
    }

    template <typename S>
    CycPoly<S> sub(const CycPoly<S>& x, const CycPoly<S>& y) const {
        CycPoly<S> r = x;
        for (int i = 0; i < e_; ++i) r.c[i] -= y.c[i];
        return r;
    }

    template <typename S>
    CycPoly<S> neg(const CycPoly<S>& x) const {
        return sub(zero<S>(), x);
    }

    template <typename S>
    CycPoly<S> mul(const CycPoly<S>& x, const CycPoly<S>& y) const {
        std::vector<S> acc(static_cast<size_t>(2 * e_ - 1), S(0));
        for (int i = 0; i < e_; ++i) {
            if (x.c[i] == 0) continue;
            for (int j = 0; j < e_; ++j) acc[i + j] += x.c[i] * y.c[j];
        }
        reduce(acc);
        CycPoly<S> r = zero<S>();
        for (int i = 0; i < e_; ++i) r.c[i] = acc[i];
        return r;
    }

    template <typename S>
    CycPoly<S> pow(const CycPoly<S>& x, BigInt k) const {
        CycPoly<S> r = from_int<S>(1), b = x;
        while (k > 0) {
            if ((k & 1) != 0) r = mul(r, b);
            b = mul(b, b);
            k >>= 1;
        }
        return r;
    }

    // chi(a) = (1 + pi)^a; a enters modulo p^m since 1+pi has order p^m.
    CycloInt char_value(BigInt a) const {
        BigInt pm = pow_int(p_, static_cast<unsigned long>(m_));
        a %= pm;
        if (a < 0) a += pm;
        CycloInt base = add(from_int<BigInt>(1), pi<BigInt>());
        return pow(base, a);
    }

    // v_pi via the norm: v_pi(z) = v_p(Res(Phi, z)). Empty optional on z = 0.
    std::optional<long> valuation(const CycloInt& z) const {
        if (is_zero(z)) return std::nullopt;
        std::vector<Rat> f(phi_.begin(), phi_.end());
        std::vector<Rat> g(z.c.begin(), z.c.end());
        Rat res = resultant(f, g);
        BigInt num = rat_num(res);
        if (num == 0 || rat_den(res) != 1)
            throw std::logic_error("cyclo valuation: norm not a nonzero integer");
        return vp_int(num, p_);
    }

    // Fallback valuation by repeated exact division by pi (see tests).
    long valuation_by_division(CycloInt z) const {
        if (is_zero(z)) throw std::invalid_argument("valuation_by_division: zero");
        CycloInt pie = pow(pi<BigInt>(), e_ - 1);
        CycloInt uinv = unit_inverse();
        long k = 0;
        for (;;) {
            // z/pi = -z * pi^(e-1) * u^{-1} / p
            CycloInt w = neg(mul(mul(z, pie), uinv));
            bool divisible = true;
            for (const auto& cc : w.c)
                if (cc % p_ != 0) {
                    divisible = false;
                    break;
                }
            if (!divisible) return k;
            for (auto& cc : w.c) cc /= p_;
            z = w;
            ++k;
            if (k > 64 * e_) throw std::logic_error("valuation_by_division: runaway");
        }
    }

  private:
    void build_minpoly() {
        // Phi_{p^m}(y) = sum_{i<p} y^{i p^(m-1)}, then substitute y = 1 + x.
        unsigned long pm1 = 1;
        for (int i = 0; i < m_ - 1; ++i) pm1 *= static_cast<unsigned long>(p_);
        std::vector<BigInt> phi(static_cast<size_t>(e_) + 1, BigInt(0));
        // (1+x)^k accumulated incrementally over k
        std::vector<BigInt> pw{BigInt(1)};  // (1+x)^0
        unsigned long next = 0;
        for (long i = 0; i < p_; ++i) {
            unsigned long target = static_cast<unsigned long>(i) * pm1;
            while (next < target) {
                // multiply pw by (1+x)
                std::vector<BigInt> nw(pw.size() + 1, BigInt(0));
                for (size_t j = 0; j < pw.size(); ++j) {
                    nw[j] += pw[j];
                    nw[j + 1] += pw[j];
                }
                pw = std::move(nw);
                ++next;
            }
            for (size_t j = 0; j < pw.size(); ++j) phi[j] += pw[j];
        }
        phi_ = std::move(phi);
    }

    template <typename S>
    void reduce(std::vector<S>& acc) const {
        for (int d = static_cast<int>(acc.size()) - 1; d >= e_; --d) {
            S lc = acc[d];
            if (lc == 0) continue;
            acc[d] = S(0);
            for (int i = 0; i < e_; ++i) acc[d - e_ + i] -= lc * S(phi_[i]);
        }
    }

    // Resultant over Q by the Euclidean recursion; only |Res| matters here.
    static Rat resultant(std::vector<Rat> f, std::vector<Rat> g) {
        auto deg = [](const std::vector<Rat>& h) {
            int d = static_cast<int>(h.size()) - 1;
            while (d >= 0 && h[static_cast<size_t>(d)] == 0) --d;
            return d;
        };
        Rat acc(1);
        int df = deg(f), dg = deg(g);
        if (dg < 0) return Rat(0);
        while (true) {
            if (dg == 0) {
                Rat r(1);
                for (int i = 0; i < df; ++i) r *= g[0];
                return acc * r;
            }
            // f mod g
            std::vector<Rat> r = f;
            Rat lg = g[static_cast<size_t>(dg)];
            for (int d = deg(r); d >= dg; d = deg(r)) {
                Rat q = r[static_cast<size_t>(d)] / lg;
                for (int i = 0; i <= dg; ++i) r[static_cast<size_t>(d - dg + i)] -= q * g[static_cast<size_t>(i)];
                r[static_cast<size_t>(d)] = Rat(0);
            }
            int dr = deg(r);
            if (dr < 0) return Rat(0);
            Rat lgp(1);
            for (int i = 0; i < df - dr; ++i) lgp *= lg;
            acc *= lgp;  // sign ignored: only the p-valuation is consumed
            f = std::move(g);
            df = dg;
            g.assign(r.begin(), r.begin() + dr + 1);
            dg = dr;
        }
    }

    CycloInt unit_inverse() const {
        // pi^e = -p*u with u = Phi(1+x)/p minus the leading term; u is a unit
        // congruent to 1 mod pi. Invert it over Q and check integrality.
        CycloInt u = zero<BigInt>();
        for (int i = 0; i < e_; ++i) {
            if (phi_[i] % p_ != 0) throw std::logic_error("minpoly not Eisenstein");
            u.c[i] = phi_[i] / p_;
        }
        std::vector<Rat> a(phi_.begin(), phi_.end());
        std::vector<Rat> b(u.c.begin(), u.c.end());
        std::vector<Rat> inv = invert_mod(b, a);
        CycloInt r = zero<BigInt>();
        for (int i = 0; i < e_ && i < static_cast<int>(inv.size()); ++i) {
            if (rat_den(inv[static_cast<size_t>(i)]) != 1)
                throw std::logic_error("unit inverse not integral");
            r.c[i] = rat_num(inv[static_cast<size_t>(i)]);
        }
        return r;
    }

    // Extended Euclid inverse of b modulo the monic polynomial a, over Q.
    static std::vector<Rat> invert_mod(std::vector<Rat> b, std::vector<Rat> a) {
        auto deg = [](const std::vector<Rat>& h) {
            int d = static_cast<int>(h.size()) - 1;
            while (d >= 0 && h[static_cast<size_t>(d)] == 0) --d;
            return d;
        };
        auto rem_div = [&](std::vector<Rat> num, const std::vector<Rat>& den, std::vector<Rat>& quot) {
            quot.assign(num.size(), Rat(0));
            int dd = deg(den);
            Rat ld = den[static_cast<size_t>(dd)];
            for (int d = deg(num); d >= dd; d = deg(num)) {
                Rat q = num[static_cast<size_t>(d)] / ld;
                quot[static_cast<size_t>(d - dd)] += q;
                for (int i = 0; i <= dd; ++i) num[static_cast<size_t>(d - dd + i)] -= q * den[static_cast<size_t>(i)];
                num[static_cast<size_t>(d)] = Rat(0);
            }
            return num;
        };
        std::vector<Rat> r0 = a, r1 = b;
        std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};
        while (deg(r1) > 0) {
            std::vector<Rat> q;
            std::vector<Rat> r2 = rem_div(r0, r1, q);
            // t2 = t0 - q*t1
            std::vector<Rat> t2(std::max(t0.size(), q.size() + t1.size()), Rat(0));
            for (size_t i = 0; i < t0.size(); ++i) t2[i] += t0[i];
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (deg(r1) != 0) throw std::domain_error("invert_mod: not coprime");
        Rat scale = Rat(1) / r1[0];
        for (auto& v : t1) v *= scale;
        return t1;
    }

    long p_;
    int m_;
    int e_;
    std::vector<BigInt> phi_;
};

}  // namespace zptower
