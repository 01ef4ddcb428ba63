#pragma once

// Laurent polynomials over a truncated unramified ring, with the Frobenius
// lift sigma(t) = t^p (coefficients through the ring's own lift), and the
// ghost-solving map D_sigma from a flat lifting into Witt coordinates.

#include "zptower/errors.hpp"
#include "zptower/unramified.hpp"

#include <map>
#include <vector>

namespace zptower {

struct LaurentZq {
    std::map<int, ZqElem> c;  // exponent -> coefficient, zeros omitted
};

class LaurentOps {
  public:
    explicit LaurentOps(const ZqCtx& R) : R_(R) {}

    const ZqCtx& ring() const { return R_; }

    LaurentZq zero() const { return {}; }

    LaurentZq monomial(int k, const ZqElem& coef) const {
        LaurentZq r;
        if (!R_.is_zero(coef)) r.c[k] = coef;
        return r;
    }

    LaurentZq add(const LaurentZq& x, const LaurentZq& y) const {
        LaurentZq r = x;
        for (const auto& [k, v] : y.c) {
            auto it = r.c.find(k);
            if (it == r.c.end()) {
                r.c[k] = v;
            } else {
                it->second = R_.add(it->second, v);
                if (R_.is_zero(it->second)) r.c.erase(it);
            }
        }
        return r;
    }

    LaurentZq sub(const LaurentZq& x, const LaurentZq& y) const { return add(x, negate(y)); }

    LaurentZq negate(const LaurentZq& x) const {
        LaurentZq r;
        for (const auto& [k, v] : x.c) r.c[k] = R_.neg(v);
        return r;
    }

    LaurentZq mul(const LaurentZq& x, const LaurentZq& y) const {
        LaurentZq r;
        for (const auto& [k1, v1] : x.c)
            for (const auto& [k2, v2] : y.c) {
                ZqElem prod = R_.mul(v1, v2);
                auto it = r.c.find(k1 + k2);
                if (it == r.c.end()) {
                    if (!R_.is_zero(prod)) r.c[k1 + k2] = prod;
                } else {
                    it->second = R_.add(it->second, prod);
                    if (R_.is_zero(it->second)) r.c.erase(it);
                }
            }
        return r;
    }

    LaurentZq power(const LaurentZq& x, unsigned e) const {
        LaurentZq r = monomial(0, R_.one());
        LaurentZq b = x;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // sigma: t -> t^p, Frobenius lift on coefficients.
    LaurentZq sigma(const LaurentZq& x) const {
        LaurentZq r;
        long p = R_.p();
        for (const auto& [k, v] : x.c) r.c[static_cast<int>(p) * k] = R_.frobenius(v);
        return r;
    }

    LaurentZq divide_exact_p(const LaurentZq& x, int k) const {
        LaurentZq r;
        for (const auto& [e, v] : x.c) {
            ZqElem d = R_.divide_exact_p(v, k);
            if (!R_.is_zero(d)) r.c[e] = d;
        }
        return r;
    }

  private:
    const ZqCtx& R_;
};

// D_sigma of a flat-lifting element, solved recursively from the ghost
// equations. Component a_i is exact modulo p^(prec[i]) = p^(N-i); requesting
// Witt length m therefore needs input precision N >= m (plus whatever
// precision the caller wants left over).
struct DSigmaResult {
    std::vector<LaurentZq> comps;
    std::vector<int> prec;
};

inline DSigmaResult d_sigma(const LaurentOps& L, const LaurentZq& f, int m) {
    const ZqCtx& R = L.ring();
    if (m < 1) throw std::invalid_argument("d_sigma: length must be >= 1");
    if (R.precision() < m)
        throw PrecisionError("d_sigma: input precision " + std::to_string(R.precision()) +
                             " below Witt length " + std::to_string(m));
    DSigmaResult out;
    out.comps.push_back(f);
    out.prec.push_back(R.precision());
    LaurentZq sig = f;
    for (int i = 1; i < m; ++i) {
        sig = L.sigma(sig);  // sigma^i(f)
        LaurentZq rhs = sig;
        std::int64_t pj = 1;
        for (int j = 0; j < i; ++j) {
            unsigned e = 1;
            for (int t = 0; t < i - j; ++t) e *= static_cast<unsigned>(R.p());
            LaurentZq term = L.power(out.comps[static_cast<size_t>(j)], e);
            LaurentZq scaled;
            for (const auto& [k, v] : term.c) {
                ZqElem sv = R.scalar_mul(pj, v);
                if (!R.is_zero(sv)) scaled.c[k] = sv;
            }
            rhs = L.sub(rhs, scaled);
            pj *= R.p();
        }
        out.comps.push_back(L.divide_exact_p(rhs, i));
        out.prec.push_back(R.precision() - i);
    }
    return out;
}

// Reduce a Witt component mod p and evaluate at a residue point theta in a
// field extension of the coefficient residue field.
inline FqElem laurent_eval_mod_p(const ZqCtx& R, const LaurentZq& comp, FieldRegistry& fields,
                                 const FqCtx& big, const FqElem& theta) {
    const int d = R.degree();
    FqElem acc = big.zero();
    FqElem theta_inv = big.zero();
    bool have_inv = false;
    for (const auto& [k, v] : comp.c) {
        FqElem coef = fields.embed(R.reduce_mod_p(v), d, big.degree());
        FqElem tpow;
        if (k >= 0) {
            tpow = big.pow(theta, k);
        } else {
            if (!have_inv) {
                theta_inv = big.inv(theta);
                have_inv = true;
            }
            tpow = big.pow(theta_inv, -k);
        }
        acc = big.add(acc, big.mul(coef, tpow));
    }
    return acc;
}

}  // namespace zptower
