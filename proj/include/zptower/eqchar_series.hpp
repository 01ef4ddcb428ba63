#pragma once

// Truncated power series over F_q in the variable T, cut at T^M. These carry
// the values of the equicharacteristic character a -> (1+T)^a and the
// coefficients of equicharacteristic L-functions.

#include "zptower/errors.hpp"
#include "zptower/finite_field.hpp"

#include <optional>
#include <vector>

namespace zptower {

struct EqSeries {
    std::vector<FqElem> c;  // length M

    bool operator==(const EqSeries&) const = default;
};

class EqCharCtx {
  public:
    EqCharCtx(const FqCtx& field, int M) : F_(field), M_(M) {
        if (M < 1) throw std::invalid_argument("EqCharCtx: M must be >= 1");
    }

    const FqCtx& field() const { return F_; }
    int order() const { return M_; }

    EqSeries zero() const { return {std::vector<FqElem>(static_cast<size_t>(M_), F_.zero())}; }

    EqSeries one() const {
        EqSeries r = zero();
        r.c[0] = F_.one();
        return r;
    }

    EqSeries from_int(std::int64_t v) const {
        EqSeries r = zero();
        r.c[0] = F_.from_int(v);
        return r;
    }

    bool is_zero(const EqSeries& x) const {
        for (const auto& v : x.c)
            if (!F_.is_zero(v)) return false;
        return true;
    }

    bool is_unit(const EqSeries& x) const { return !F_.is_zero(x.c[0]); }

    // T-adic order; empty when zero to working truncation.
    std::optional<int> t_order(const EqSeries& x) const {
        for (int i = 0; i < M_; ++i)
            if (!F_.is_zero(x.c[static_cast<size_t>(i)])) return i;
        return std::nullopt;
    }

    EqSeries add(const EqSeries& x, const EqSeries& y) const {
        EqSeries r = x;
        for (int i = 0; i < M_; ++i) r.c[i] = F_.add(r.c[i], y.c[i]);
        return r;
    }

    EqSeries sub(const EqSeries& x, const EqSeries& y) const {
        EqSeries r = x;
        for (int i = 0; i < M_; ++i) r.c[i] = F_.sub(r.c[i], y.c[i]);
        return r;
    }

    EqSeries mul(const EqSeries& x, const EqSeries& y) const {
        EqSeries r = zero();
        for (int i = 0; i < M_; ++i) {
            if (F_.is_zero(x.c[i])) continue;
            for (int j = 0; i + j < M_; ++j)
                r.c[i + j] = F_.add(r.c[i + j], F_.mul(x.c[i], y.c[j]));
        }
        return r;
    }

    EqSeries pow(EqSeries x, BigInt k) const {
        EqSeries r = one();
        while (k > 0) {
            if ((k & 1) != 0) r = mul(r, x);
            x = mul(x, x);
            k >>= 1;
        }
        return r;
    }

    EqSeries inv(const EqSeries& x) const {
        if (!is_unit(x)) throw std::domain_error("EqCharCtx::inv of non-unit series");
        EqSeries r = zero();
        FqElem c0inv = F_.inv(x.c[0]);
        r.c[0] = c0inv;
        for (int i = 1; i < M_; ++i) {
            FqElem s = F_.zero();
            for (int j = 1; j <= i; ++j) s = F_.add(s, F_.mul(x.c[j], r.c[i - j]));
            r.c[i] = F_.neg(F_.mul(c0inv, s));
        }
        return r;
    }

    // chi_0(a) = (1+T)^a = prod_i (1+T^(p^i))^(a_i) over the base-p digits of
    // a. Requires enough digits to settle everything below T^M.
    EqSeries char_value(std::int64_t a, int digit_count) const {
        long p = F_.p();
        int needed = 0;
        std::int64_t pw = 1;
        while (pw < M_) {
            pw *= p;
            ++needed;
        }
        if (digit_count < needed)
            throw PrecisionError("eqchar char_value: need ceil(log_p M) base-p digits");
        EqSeries r = one();
        std::int64_t cur = a;
        std::int64_t tpow = 1;
        for (int i = 0; i < digit_count && tpow < M_; ++i) {
            std::int64_t digit = mod_floor(cur, p);
            cur = (cur - digit) / p;
            if (digit != 0) {
                EqSeries base = one();
                base.c[static_cast<size_t>(tpow)] = F_.one();
                r = mul(r, pow(base, digit));
            }
            tpow *= p;
        }
        return r;
    }

  private:
    const FqCtx& F_;
    int M_;
};

}  // namespace zptower
