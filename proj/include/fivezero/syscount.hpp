#pragma once

// Brute-force solution counts for the systems
//
//   y_1 x_1^2   + ... + y_j x_j^2   = 0
//   y_1 x_1^d1  + ... + y_j x_j^d1  = 0        (d1 = p^k+1, d2 = p^2k+1)
//  [y_1 x_1^d2  + ... + y_j x_j^d2  = 0]       (3-equation variant)
//
// over (x_i) in F_{p^m}^j, (y_i) in F_p^*'^j, for j = 2, 3, plus the
// moment-derived route N_j = p^(-2m) sum_(u,v) D(u,v,0)^j. The 4-variable
// count is out of brute-force budget and is produced by the moment route
// only, which is also how the closed form arises.

#include <cstdint>
#include <thread>
#include <vector>

#include "charsum.hpp"

namespace fivezero {

inline BigInt closed_n2(int64_t p, int64_t m) { return BigInt(p - 1) * (p - 1) * big_pow(p, m); }

inline BigInt closed_n3(int64_t p, int64_t m) {
    return BigInt(p - 1) * (p - 1) * (p - 1) * (big_pow(p, m + 1) + big_pow(p, m) - p);
}

inline BigInt closed_n4(int64_t p, int64_t m) {
    return big_pow(p, m) * (big_pow(p, m + 1) + big_pow(p, m) - p) * BigInt(p - 1) * (p - 1) * (p - 1) * (p - 1);
}

struct SystemCounts {
    int64_t two_eq = 0;
    int64_t three_eq = 0;
};

namespace detail {

struct SysTables {
    int64_t p, q;
    std::vector<int32_t> sq, pd1, pd2;  // packed x^2, x^d1, x^d2
    std::vector<int32_t> scal;          // [y * q + v] -> packed y*v, y in [0,p)

    SysTables(const ExtensionField& F, int64_t k) : p(F.p()), q(F.q) {
        const FormExponents e = form_exponents(F, k);
        sq.resize(static_cast<size_t>(q));
        pd1.resize(static_cast<size_t>(q));
        pd2.resize(static_cast<size_t>(q));
        for (int64_t x = 1; x < q; ++x) {
            const int64_t lx = F.log_of_packed(x);
            sq[static_cast<size_t>(x)] = static_cast<int32_t>(F.antilog_packed(2 * lx % F.n));
            pd1[static_cast<size_t>(x)] = static_cast<int32_t>(F.antilog_packed(lx * e.d1 % F.n));
            pd2[static_cast<size_t>(x)] = static_cast<int32_t>(F.antilog_packed(lx * e.d2 % F.n));
        }
        scal.assign(static_cast<size_t>(p * q), 0);
        for (int64_t y = 1; y < p; ++y) {
            const FieldElement ye = F.from_base(y);
            for (int64_t v = 1; v < q; ++v)
                scal[static_cast<size_t>(y * q + v)] =
                    static_cast<int32_t>(F.packed(F.mul(ye, F.from_packed(v))));
        }
    }
};

}  // namespace detail

/// Exhaustive count of the 2-variable system, both the 2-equation and the
/// 3-equation variants in one pass.
inline SystemCounts count_system2(const ExtensionField& F, int64_t k) {
    const detail::SysTables T(F, k);
    const int64_t p = F.p(), q = F.q;
    SystemCounts out;
    for (int64_t y1 = 1; y1 < p; ++y1) {
        for (int64_t y2 = 1; y2 < p; ++y2) {
            const int32_t* s1 = &T.scal[static_cast<size_t>(y1 * q)];
            const int32_t* s2 = &T.scal[static_cast<size_t>(y2 * q)];
            for (int64_t x1 = 0; x1 < q; ++x1) {
                const int64_t a1 = s1[T.sq[static_cast<size_t>(x1)]];
                const int64_t b1 = s1[T.pd1[static_cast<size_t>(x1)]];
                const int64_t c1 = s1[T.pd2[static_cast<size_t>(x1)]];
                for (int64_t x2 = 0; x2 < q; ++x2) {
                    if (F.packed_add(a1, s2[T.sq[static_cast<size_t>(x2)]]) != 0) continue;
                    if (F.packed_add(b1, s2[T.pd1[static_cast<size_t>(x2)]]) != 0) continue;
                    ++out.two_eq;
                    if (F.packed_add(c1, s2[T.pd2[static_cast<size_t>(x2)]]) == 0) ++out.three_eq;
                }
            }
        }
    }
    return out;
}

/// Exhaustive count of the 3-variable system; parallel over x1.
inline SystemCounts count_system3(const ExtensionField& F, int64_t k, int64_t threads = 1) {
    const detail::SysTables T(F, k);
    const int64_t p = F.p(), q = F.q;
    const int64_t nthreads = std::max<int64_t>(1, std::min<int64_t>(threads, q));
    std::vector<SystemCounts> partial(static_cast<size_t>(nthreads));

    auto work = [&](int64_t ti) {
        SystemCounts local;
        const int64_t lo = q * ti / nthreads, hi = q * (ti + 1) / nthreads;
        for (int64_t y1 = 1; y1 < p; ++y1) {
            const int32_t* s1 = &T.scal[static_cast<size_t>(y1 * q)];
            for (int64_t x1 = lo; x1 < hi; ++x1) {
                const int64_t a1 = s1[T.sq[static_cast<size_t>(x1)]];
                const int64_t b1 = s1[T.pd1[static_cast<size_t>(x1)]];
                const int64_t c1 = s1[T.pd2[static_cast<size_t>(x1)]];
                for (int64_t y2 = 1; y2 < p; ++y2) {
                    const int32_t* s2 = &T.scal[static_cast<size_t>(y2 * q)];
                    for (int64_t x2 = 0; x2 < q; ++x2) {
                        const int64_t a12 = F.packed_add(a1, s2[T.sq[static_cast<size_t>(x2)]]);
                        const int64_t b12 = F.packed_add(b1, s2[T.pd1[static_cast<size_t>(x2)]]);
                        const int64_t c12 = F.packed_add(c1, s2[T.pd2[static_cast<size_t>(x2)]]);
                        for (int64_t y3 = 1; y3 < p; ++y3) {
                            const int32_t* s3 = &T.scal[static_cast<size_t>(y3 * q)];
                            for (int64_t x3 = 0; x3 < q; ++x3) {
                                if (F.packed_add(a12, s3[T.sq[static_cast<size_t>(x3)]]) != 0) continue;
                                if (F.packed_add(b12, s3[T.pd1[static_cast<size_t>(x3)]]) != 0) continue;
                                ++local.two_eq;
                                if (F.packed_add(c12, s3[T.pd2[static_cast<size_t>(x3)]]) == 0) ++local.three_eq;
                            }
                        }
                    }
                }
            }
        }
        partial[static_cast<size_t>(ti)] = local;
    };
    std::vector<std::thread> pool;
    for (int64_t t = 1; t < nthreads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    SystemCounts out;
    for (const auto& c : partial) {
        out.two_eq += c.two_eq;
        out.three_eq += c.three_eq;
    }
    return out;
}

inline int64_t count_n2(const ExtensionField& F, int64_t k) {
    const SystemCounts c = count_system2(F, k);
    if (BigInt(c.two_eq) != closed_n2(F.p(), F.m))
        throw CheckError("MismatchWithClosedForm",
                         "N2 brute force " + std::to_string(c.two_eq) + " != " + closed_n2(F.p(), F.m).str());
    return c.two_eq;
}

inline int64_t count_n3(const ExtensionField& F, int64_t k, int64_t threads = 1) {
    const SystemCounts c = count_system3(F, k, threads);
    if (BigInt(c.two_eq) != closed_n3(F.p(), F.m))
        throw CheckError("MismatchWithClosedForm",
                         "N3 brute force " + std::to_string(c.two_eq) + " != " + closed_n3(F.p(), F.m).str());
    return c.two_eq;
}

/// The 2-equation and 3-equation variants have the same solution count.
inline bool equivalence_check(const ExtensionField& F, int64_t k, int arity, int64_t threads = 1) {
    SystemCounts c;
    if (arity == 2)
        c = count_system2(F, k);
    else if (arity == 3)
        c = count_system3(F, k, threads);
    else
        throw ParameterError("InvalidParameters", "arity must be 2 or 3");
    if (c.two_eq != c.three_eq)
        throw CheckError("EquivalenceViolation", "arity " + std::to_string(arity) + ": 2-equation count " +
                                                     std::to_string(c.two_eq) + " != 3-equation count " +
                                                     std::to_string(c.three_eq));
    return true;
}

struct MomentDerivedCounts {
    BigInt n2, n3, n4;
};

/// N_j = p^(-2m) sum_(u,v) D(u,v,0)^j from the w = 0 distribution; the
/// divisions must be exact.
inline MomentDerivedCounts moment_derived_counts(const ValueDistribution& dist_w0, int64_t p, int64_t m) {
    BigInt s2 = 0, s3 = 0, s4 = 0;
    for (const auto& [val, f] : dist_w0.freq) {
        const BigInt v2 = BigInt(val) * val;
        s2 += f * v2;
        s3 += f * v2 * val;
        s4 += f * v2 * v2;
    }
    const BigInt p2m = big_pow(p, 2 * m);
    MomentDerivedCounts out;
    for (auto [src, dst] : {std::pair<BigInt*, BigInt*>{&s2, &out.n2}, {&s3, &out.n3}, {&s4, &out.n4}}) {
        if (*src % p2m != 0) throw CheckError("NonIntegralDivision", "moment sum not divisible by p^(2m)");
        *dst = *src / p2m;
    }
    return out;
}

/// N4 via the moment identity; the direct 10-digit brute force is out of
/// budget and not attempted.
inline BigInt count_n4(const ValueDistribution& dist_w0, int64_t p, int64_t m) {
    const BigInt n4 = moment_derived_counts(dist_w0, p, m).n4;
    if (n4 != closed_n4(p, m))
        throw CheckError("MismatchWithClosedForm", "N4 moment route " + n4.str() + " != " + closed_n4(p, m).str());
    return n4;
}

struct SystemCountReport {
    int64_t p = 0, m = 0, k = 0;
    int64_t n2_brute = 0, n3_brute = 0;
    BigInt n2_moment, n3_moment, n4_moment;
    BigInt n2_closed, n3_closed, n4_closed;
    bool equivalence2 = false, equivalence3 = false;
    bool all_passed = false;
};

inline SystemCountReport syscount_report(const ExtensionField& F, int64_t k, const ValueDistribution& dist_w0,
                                         int64_t threads = 1) {
    SystemCountReport rep;
    rep.p = F.p();
    rep.m = F.m;
    rep.k = k;
    const SystemCounts c2 = count_system2(F, k);
    const SystemCounts c3 = count_system3(F, k, threads);
    rep.n2_brute = c2.two_eq;
    rep.n3_brute = c3.two_eq;
    rep.equivalence2 = (c2.two_eq == c2.three_eq);
    rep.equivalence3 = (c3.two_eq == c3.three_eq);
    const MomentDerivedCounts md = moment_derived_counts(dist_w0, F.p(), F.m);
    rep.n2_moment = md.n2;
    rep.n3_moment = md.n3;
    rep.n4_moment = md.n4;
    rep.n2_closed = closed_n2(F.p(), F.m);
    rep.n3_closed = closed_n3(F.p(), F.m);
    rep.n4_closed = closed_n4(F.p(), F.m);
    rep.all_passed = rep.equivalence2 && rep.equivalence3 && BigInt(rep.n2_brute) == rep.n2_closed &&
                     BigInt(rep.n3_brute) == rep.n3_closed && md.n2 == rep.n2_closed && md.n3 == rep.n3_closed &&
                     md.n4 == rep.n4_closed;
    return rep;
}

}  // namespace fivezero
