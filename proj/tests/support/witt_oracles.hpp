#pragma once

// Test-only oracles around Witt vectors:
//  - the coordinate between W_m(F_{p^n}) and Zq/p^m
//    ((a_0,..) <-> sum p^j [a_j^(p^-j)]),
//  - constructive wp-preimages over the degree-p^m extension, via the
//    F_p-linearity of x -> x^p - x.
// Kept out of the library: preimage solving is never used algorithmically.

#include "zptower/finite_field.hpp"
#include "zptower/unramified.hpp"
#include "zptower/witt.hpp"

#include <optional>
#include <vector>

namespace zptower::testsupport {

inline FqElem inverse_frobenius(const FqCtx& F, const FqElem& x) {
    FqElem y = x;
    for (int i = 0; i + 1 < F.degree(); ++i) y = F.frobenius(y);
    return y;
}

inline ZqElem witt_to_zq(const ZqCtx& R, const FqCtx& F, const std::vector<FqElem>& a) {
    ZqElem acc = R.zero();
    std::int64_t pj = 1;
    for (size_t j = 0; j < a.size(); ++j) {
        FqElem tw = a[j];
        for (size_t t = 0; t < j; ++t) tw = inverse_frobenius(F, tw);
        acc = R.add(acc, R.scalar_mul(pj, R.teichmuller(tw)));
        pj *= R.p();
    }
    return acc;
}

inline std::vector<FqElem> zq_to_witt(const ZqCtx& R, const FqCtx& F, const ZqElem& z, int m) {
    auto digits = R.teichmuller_digits(z);
    std::vector<FqElem> a;
    for (int j = 0; j < m; ++j) {
        FqElem tw = digits[static_cast<size_t>(j)];
        for (int t = 0; t < j; ++t) tw = F.frobenius(tw);
        a.push_back(tw);
    }
    return a;
}

// Solve x^p - x = c over F by Gaussian elimination of the F_p-linear map in
// the power basis. Empty when inconsistent (possible only if Tr(c) != 0).
class ArtinSchreierSolver {
  public:
    explicit ArtinSchreierSolver(const FqCtx& F) : F_(F) {
        const int n = F.degree();
        mat_.assign(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
        for (int j = 0; j < n; ++j) {
            FqElem e = F.zero();
            e.c[static_cast<size_t>(j)] = 1;
            FqElem im = F.sub(F.frobenius(e), e);
            for (int i = 0; i < n; ++i) mat_[static_cast<size_t>(i)][static_cast<size_t>(j)] = im.c[static_cast<size_t>(i)];
        }
    }

    std::optional<FqElem> solve(const FqElem& c) const {
        const int n = F_.degree();
        const long p = F_.p();
        auto a = mat_;
        std::vector<std::int64_t> rhs = c.c;
        std::vector<int> pivot_col;
        int row = 0;
        for (int col = 0; col < n && row < n; ++col) {
            int pr = -1;
            for (int r = row; r < n; ++r)
                if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(a[static_cast<size_t>(pr)], a[static_cast<size_t>(row)]);
            std::swap(rhs[static_cast<size_t>(pr)], rhs[static_cast<size_t>(row)]);
            std::int64_t inv = inv_mod_i64(a[static_cast<size_t>(row)][static_cast<size_t>(col)], p);
            for (int cc = 0; cc < n; ++cc)
                a[static_cast<size_t>(row)][static_cast<size_t>(cc)] =
                    (a[static_cast<size_t>(row)][static_cast<size_t>(cc)] * inv) % p;
            rhs[static_cast<size_t>(row)] = (rhs[static_cast<size_t>(row)] * inv) % p;
            for (int r = 0; r < n; ++r) {
                if (r == row) continue;
                std::int64_t f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int cc = 0; cc < n; ++cc)
                    a[static_cast<size_t>(r)][static_cast<size_t>(cc)] = mod_floor(
                        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] - f * a[static_cast<size_t>(row)][static_cast<size_t>(cc)], p);
                rhs[static_cast<size_t>(r)] = mod_floor(rhs[static_cast<size_t>(r)] - f * rhs[static_cast<size_t>(row)], p);
            }
            pivot_col.push_back(col);
            ++row;
        }
        for (int r = row; r < n; ++r)
            if (rhs[static_cast<size_t>(r)] != 0) return std::nullopt;
        FqElem x = F_.zero();
        for (int r = 0; r < row; ++r) x.c[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = rhs[static_cast<size_t>(r)];
        return x;
    }

  private:
    const FqCtx& F_;
    std::vector<std::vector<std::int64_t>> mat_;
};

// wp-preimage of y in W_m(F_q) over the degree-p^m extension, solved digit by
// digit through the unramified ring (sigma - 1 side). Returns the components
// over the big field.
inline std::vector<FqElem> wp_preimage(FieldRegistry& fields, ZqRegistry& zrings, int q_degree, int m,
                                       const std::vector<FqElem>& y) {
    const long p = fields.p();
    int big_degree = q_degree;
    for (int i = 0; i < m; ++i) big_degree *= static_cast<int>(p);
    const FqCtx& big = fields.field(big_degree);
    const ZqCtx& Rbig = zrings.ring(big_degree, m);
    ArtinSchreierSolver solver(big);

    // embed y into the big ring through the Witt coordinate
    std::vector<FqElem> ybig;
    for (const auto& v : y) ybig.push_back(fields.embed(v, q_degree, big_degree));
    ZqElem w = witt_to_zq(Rbig, big, ybig);

    ZqElem z = Rbig.zero();
    std::int64_t pj = 1;
    for (int j = 0; j < m; ++j) {
        ZqElem resid = Rbig.sub(w, Rbig.sub(Rbig.frobenius(z), z));
        resid = Rbig.divide_exact_p(resid, j);
        FqElem c = Rbig.reduce_mod_p(resid);
        auto xj = solver.solve(c);
        if (!xj) throw std::logic_error("wp_preimage: AS equation inconsistent");
        z = Rbig.add(z, Rbig.scalar_mul(pj, Rbig.naive_lift(*xj)));
        pj *= p;
    }
    return zq_to_witt(Rbig, big, z, m);
}

}  // namespace zptower::testsupport
