#pragma once

// Quadratic forms Q_{u,v,w}(x) = Tr(u x^2 + v x^(p^k+1) + w x^(p^2k+1))
// over F_p: Gram matrices, congruence diagonalization (rank and
// discriminant class), exhaustive residue profiles, and the closed-form
// profile a form of given rank and discriminant must have.
//
// Cyclotomic sums never appear as floating point anywhere: a sum
// sum_x zeta^Q(x) is carried as the integer vector N_t = #{x : Q(x) = t},
// which determines it exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "field.hpp"

namespace fivezero {

struct FormParams {
    FieldElement u, v, w;
    int64_t k = 1;

    bool is_zero() const { return u.is_zero() && v.is_zero() && w.is_zero(); }
};

/// The exponents p^k+1 and p^2k+1 reduced mod p^m-1 (valid on nonzero x).
struct FormExponents {
    int64_t d1 = 0, d2 = 0;
};

inline FormExponents form_exponents(const ExtensionField& F, int64_t k) {
    if (k < 1) throw ParameterError("InvalidParameters", "k must be >= 1");
    auto powmod = [&](int64_t e) {
        int64_t r = 1 % F.n, b = F.p() % F.n;
        while (e > 0) {
            if (e & 1) r = r * b % F.n;
            b = b * b % F.n;
            e >>= 1;
        }
        return r;
    };
    return FormExponents{(powmod(k) + 1) % F.n, (powmod(2 * k) + 1) % F.n};
}

inline int32_t form_value(const ExtensionField& F, const FormParams& q, FieldElement x) {
    if (x.is_zero()) return 0;
    const FormExponents e = form_exponents(F, q.k);
    int64_t acc = 0;
    if (!q.u.is_zero()) acc = F.packed(F.mul(q.u, F.pow(x, 2)));
    if (!q.v.is_zero()) acc = F.packed_add(acc, F.packed(F.mul(q.v, F.pow(x, e.d1))));
    if (!q.w.is_zero()) acc = F.packed_add(acc, F.packed(F.mul(q.w, F.pow(x, e.d2))));
    return F.trace_packed(acc);
}

struct GramMatrix {
    int64_t p = 0;
    int64_t dim = 0;
    std::vector<int32_t> a;  // row-major dim x dim, symmetric

    int32_t at(int64_t i, int64_t j) const { return a[static_cast<size_t>(i * dim + j)]; }
    int32_t& at(int64_t i, int64_t j) { return a[static_cast<size_t>(i * dim + j)]; }
};

inline std::vector<FieldElement> power_basis(const ExtensionField& F) {
    std::vector<FieldElement> b;
    for (int64_t i = 0; i < F.m; ++i) b.push_back(F.from_log(i));
    return b;
}

/// Coordinates of x in base p; digit j is the coefficient of pi^j only for
/// the power basis, but rank checks below work on any coordinate vectors.
inline bool basis_independent(const ExtensionField& F, const std::vector<FieldElement>& basis) {
    const int64_t p = F.p(), m = F.m;
    std::vector<std::vector<int64_t>> rows;
    for (FieldElement e : basis) {
        std::vector<int64_t> r(static_cast<size_t>(m));
        int64_t v = F.packed(e);
        for (int64_t j = 0; j < m; ++j, v /= p) r[static_cast<size_t>(j)] = v % p;
        rows.push_back(std::move(r));
    }
    int64_t rank = 0;
    for (int64_t col = 0; col < m && rank < static_cast<int64_t>(rows.size()); ++col) {
        int64_t piv = -1;
        for (int64_t i = rank; i < static_cast<int64_t>(rows.size()); ++i)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[static_cast<size_t>(piv)], rows[static_cast<size_t>(rank)]);
        const int64_t inv = F.base.inv(rows[static_cast<size_t>(rank)][static_cast<size_t>(col)]);
        for (int64_t i = 0; i < static_cast<int64_t>(rows.size()); ++i) {
            if (i == rank || rows[static_cast<size_t>(i)][static_cast<size_t>(col)] == 0) continue;
            const int64_t f = F.base.mul(rows[static_cast<size_t>(i)][static_cast<size_t>(col)], inv);
            for (int64_t j = 0; j < m; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = F.base.sub(
                    rows[static_cast<size_t>(i)][static_cast<size_t>(j)],
                    F.base.mul(f, rows[static_cast<size_t>(rank)][static_cast<size_t>(j)]));
        }
        ++rank;
    }
    return rank == static_cast<int64_t>(basis.size());
}

/// Gram matrix of Q in the given F_p-basis: A_ii = Q(e_i),
/// A_ij = (Q(e_i+e_j) - Q(e_i) - Q(e_j)) / 2.
inline GramMatrix gram_matrix(const ExtensionField& F, const FormParams& q, const std::vector<FieldElement>& basis) {
    const int64_t m = static_cast<int64_t>(basis.size());
    if (m != F.m || !basis_independent(F, basis)) throw ParameterError("DependentBasis", "basis is not F_p-linearly independent");
    GramMatrix A;
    A.p = F.p();
    A.dim = m;
    A.a.assign(static_cast<size_t>(m * m), 0);
    const int64_t inv2 = F.base.inv(2);
    std::vector<int32_t> qe(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i) qe[static_cast<size_t>(i)] = form_value(F, q, basis[static_cast<size_t>(i)]);
    for (int64_t i = 0; i < m; ++i) {
        A.at(i, i) = qe[static_cast<size_t>(i)];
        for (int64_t j = i + 1; j < m; ++j) {
            const int32_t qij = form_value(F, q, F.add(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]));
            const int64_t b = F.base.sub(F.base.sub(qij, qe[static_cast<size_t>(i)]), qe[static_cast<size_t>(j)]);
            const int32_t half = static_cast<int32_t>(F.base.mul(b, inv2));
            A.at(i, j) = half;
            A.at(j, i) = half;
        }
    }
    return A;
}

inline GramMatrix gram_matrix(const ExtensionField& F, const FormParams& q) { return gram_matrix(F, q, power_basis(F)); }

struct DiagonalForm {
    std::vector<int32_t> diag;  // the r nonzero diagonal entries
    int64_t rank = 0;
    int32_t disc_class = 0;  // Legendre symbol of the product, 0 when rank 0
};

enum class PivotOrder { FirstFound, LastFound };

/// Symmetric congruence elimination H A H^T. When every remaining diagonal
/// entry vanishes but the block is nonzero, adding row j to row i and
/// column j to column i creates the pivot 2 A_ij != 0 (p is odd).
inline DiagonalForm rank_and_disc(const PrimeField& P, const GramMatrix& gm, PivotOrder order = PivotOrder::FirstFound) {
    const int64_t m = gm.dim;
    std::vector<int64_t> a(gm.a.begin(), gm.a.end());
    auto at = [&](int64_t i, int64_t j) -> int64_t& { return a[static_cast<size_t>(i * m + j)]; };
    auto row_addmul = [&](int64_t dst, int64_t src, int64_t f) {
        for (int64_t j = 0; j < m; ++j) at(dst, j) = P.add(at(dst, j), P.mul(f, at(src, j)));
    };
    auto col_addmul = [&](int64_t dst, int64_t src, int64_t f) {
        for (int64_t i = 0; i < m; ++i) at(i, dst) = P.add(at(i, dst), P.mul(f, at(i, src)));
    };
    auto swap_rc = [&](int64_t i, int64_t j) {
        for (int64_t t = 0; t < m; ++t) std::swap(at(i, t), at(j, t));
        for (int64_t t = 0; t < m; ++t) std::swap(at(t, i), at(t, j));
    };

    DiagonalForm out;
    for (int64_t col = 0; col < m; ++col) {
        int64_t piv = -1;
        for (int64_t i = col; i < m; ++i) {
            if (at(i, i) != 0) {
                piv = i;
                if (order == PivotOrder::FirstFound) break;
            }
        }
        if (piv < 0) {
            int64_t oi = -1, oj = -1;
            for (int64_t i = col; i < m; ++i)
                for (int64_t j = i + 1; j < m; ++j)
                    if (at(i, j) != 0) {
                        oi = i;
                        oj = j;
                        if (order == PivotOrder::FirstFound) goto found;
                    }
        found:
            if (oi < 0) break;  // remaining block is zero
            row_addmul(oi, oj, 1);
            col_addmul(oi, oj, 1);
            piv = oi;
        }
        if (piv != col) swap_rc(piv, col);
        const int64_t d = at(col, col);
        out.diag.push_back(static_cast<int32_t>(d));
        const int64_t dinv = P.inv(d);
        for (int64_t r = col + 1; r < m; ++r) {
            const int64_t f = P.mul(at(r, col), dinv);
            if (f == 0) continue;
            row_addmul(r, col, P.neg(f));
            col_addmul(r, col, P.neg(f));
        }
    }
    out.rank = static_cast<int64_t>(out.diag.size());
    if (out.rank == 0) {
        out.disc_class = 0;
    } else {
        int64_t prod = 1;
        for (int32_t d : out.diag) prod = P.mul(prod, d);
        out.disc_class = P.legendre[static_cast<size_t>(prod)];
    }
    return out;
}

struct ResidueProfile {
    std::vector<int64_t> counts;  // counts[t] = #{x : Q(x) = t}, size p

    friend bool operator==(const ResidueProfile& a, const ResidueProfile& b) { return a.counts == b.counts; }
};

inline ResidueProfile residue_profile(const ExtensionField& F, const FormParams& q) {
    ResidueProfile prof;
    prof.counts.assign(static_cast<size_t>(F.p()), 0);
    const FormExponents e = form_exponents(F, q.k);
    // direct evaluation of every x; zero coefficients drop out up front
    for (int64_t v = 0; v < F.q; ++v) {
        if (v == 0) {
            ++prof.counts[0];
            continue;
        }
        const int64_t lx = F.log_of_packed(v);
        int64_t acc = 0;
        if (!q.u.is_zero()) acc = F.antilog_packed((q.u.lg + 2 * lx) % F.n);
        if (!q.v.is_zero()) acc = F.packed_add(acc, F.antilog_packed((q.v.lg + e.d1 * lx) % F.n));
        if (!q.w.is_zero()) acc = F.packed_add(acc, F.antilog_packed((q.w.lg + e.d2 * lx) % F.n));
        ++prof.counts[static_cast<size_t>(F.trace_packed(acc))];
    }
    return prof;
}

namespace detail {

// eta with sum_x zeta^Q(x) = eta * p^(m - r/2) for even rank r, derived by
// writing the diagonalized sum as a product of quadratic Gauss sums g with
// g^2 = (-1/p) p.
inline int64_t even_rank_sign(int64_t p, int64_t r, int32_t disc_class) {
    int64_t eta = disc_class;
    if (p % 4 == 3 && ((r / 2) % 2 == 1)) eta = -eta;
    return eta;
}

// eta' with N_t = p^(m-1) + eta' (t/p) p^(m-(r+1)/2) for odd rank r.
inline int64_t odd_rank_sign(int64_t p, int64_t r, int32_t disc_class) {
    const int64_t eps = (p % 4 == 1) ? 1 : -1;
    int64_t eta = disc_class;
    if (((r - 1) / 2) % 2 == 1) eta *= eps;
    return eta;
}

inline int64_t ipow(int64_t b, int64_t e) {
    int64_t r = 1;
    for (int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace detail

/// The unique residue profile compatible with a rank-r, discriminant-class
/// eta quadratic form in m variables over F_p.
inline ResidueProfile profile_from_rank(int64_t p, int64_t m, int64_t r, int32_t disc_class) {
    if (r < 0 || r > m) throw ParameterError("InvalidRank", "rank must lie in [0, m]");
    if ((r == 0) != (disc_class == 0)) throw ParameterError("InvalidRank", "disc_class must be 0 exactly when rank is 0");
    const int64_t q = detail::ipow(p, m);
    ResidueProfile prof;
    prof.counts.assign(static_cast<size_t>(p), 0);
    if (r % 2 == 0) {
        const int64_t c = (r == 0) ? q : detail::even_rank_sign(p, r, disc_class) * detail::ipow(p, m - r / 2);
        const int64_t base = (q - c) / p;
        for (int64_t t = 0; t < p; ++t) prof.counts[static_cast<size_t>(t)] = base;
        prof.counts[0] += c;
    } else {
        const int64_t amp = detail::odd_rank_sign(p, r, disc_class) * detail::ipow(p, m - (r + 1) / 2);
        prof.counts[0] = q / p;
        PrimeField P = make_prime_field(p);
        for (int64_t t = 1; t < p; ++t) prof.counts[static_cast<size_t>(t)] = q / p + amp * P.legendre[static_cast<size_t>(t)];
    }
    return prof;
}

/// sum over y in F_p^*, x in F_{p^m} of zeta^(y Q(x)), which collapses to
/// the integer p N_0 - p^m. Asserted against the rank parity rule: zero for
/// odd rank, +-(p-1) p^(m-r/2) for even rank.
inline int64_t y_twisted_sum(const ExtensionField& F, const FormParams& q) {
    const ResidueProfile prof = residue_profile(F, q);
    const int64_t val = F.p() * prof.counts[0] - F.q;
    const DiagonalForm d = rank_and_disc(F.base, gram_matrix(F, q));
    if (d.rank % 2 == 1) {
        if (val != 0)
            throw CheckError("AssertionFailure", "odd-rank form has nonzero twisted sum " + std::to_string(val));
    } else {
        const int64_t c = (d.rank == 0) ? F.q : detail::even_rank_sign(F.p(), d.rank, d.disc_class) * detail::ipow(F.p(), F.m - d.rank / 2);
        if (val != (F.p() - 1) * c)
            throw CheckError("AssertionFailure", "even-rank twisted sum " + std::to_string(val) + " != " +
                                                     std::to_string((F.p() - 1) * c));
    }
    return val;
}

}  // namespace fivezero
