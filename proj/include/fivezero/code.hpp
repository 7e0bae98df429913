#pragma once

// The cyclic code C_(p,m,k) of length n = p^m - 1 and dimension 5m whose
// parity-check polynomial is the product of the minimal polynomials of the
// inverses of the five zeros
//
//   pi, -pi, pi^((p^k+1)/2), -pi^((p^k+1)/2), pi^((p^2k+1)/2).
//
// Codewords are the trace sequences c_t = Tr(a1 g1^t + a2 g2^t + b1 g3^t +
// b2 g4^t + c g5^t) over those zero inverses g_i; note g4 is the field
// element -(pi^((p^k+1)/2)), so its term carries the factor (-1)^t.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "charsum.hpp"

namespace fivezero {

struct MessageTuple {
    FieldElement a1, a2, b1, b2, c;
};

struct CodeSpec {
    int64_t p = 0, m = 0, k = 0;
    int64_t n = 0;                               // p^m - 1
    std::array<FieldElement, 5> zero_inverses;   // g1..g5
    std::array<Polynomial, 5> parity_factors;    // h0, h-0, h1, h-1, h2
    Polynomial h;                                // product, degree 5m
    Polynomial g;                                // (X^n - 1) / h

    int64_t dimension() const { return 5 * m; }
};

inline CodeSpec build_code(const ExtensionField& F, int64_t k) {
    const int64_t p = F.p(), m = F.m;
    if (m < 5 || m % 2 == 0) throw ParameterError("InvalidParameters", "m must be odd and at least 5");
    if (k < 1 || std::gcd(m, k) != 1) throw ParameterError("InvalidParameters", "k must satisfy k >= 1 and gcd(m,k) = 1");

    CodeSpec spec;
    spec.p = p;
    spec.m = m;
    spec.k = k;
    spec.n = F.n;

    // exponents (p^k+1)/2 and (p^2k+1)/2 reduced mod n: p^k is odd, so
    // reducing p^k mod 2n keeps the half-integer exact
    const int64_t two_n = 2 * F.n;
    auto half_exponent = [&](int64_t kk) {
        int64_t r = 1 % two_n, b = p % two_n, e = kk;
        while (e > 0) {
            if (e & 1) r = r * b % two_n;
            b = b * b % two_n;
            e >>= 1;
        }
        return ((r + 1) / 2) % F.n;
    };
    const int64_t e1 = half_exponent(k), e2 = half_exponent(2 * k);
    const int64_t half = F.n / 2;  // log of -1

    spec.zero_inverses[0] = F.from_log(1);
    spec.zero_inverses[1] = F.from_log(1 + half);
    spec.zero_inverses[2] = F.from_log(e1);
    spec.zero_inverses[3] = F.from_log(e1 + half);
    spec.zero_inverses[4] = F.from_log(e2);

    for (size_t i = 0; i < 5; ++i) {
        spec.parity_factors[i] = minimal_poly(F, F.inv(spec.zero_inverses[i]));
        if (spec.parity_factors[i].degree() != m)
            throw CheckError("DegenerateZeros", "parity factor " + std::to_string(i) + " has degree " +
                                                    std::to_string(spec.parity_factors[i].degree()));
    }
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j)
            if (spec.parity_factors[i] == spec.parity_factors[j])
                throw CheckError("DegenerateZeros",
                                 "parity factors " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

    spec.h = spec.parity_factors[0];
    for (size_t i = 1; i < 5; ++i) spec.h = poly_mul(F.base, spec.h, spec.parity_factors[i]);

    Polynomial xn_minus_1;
    xn_minus_1.c.assign(static_cast<size_t>(F.n) + 1, 0);
    xn_minus_1.c[0] = static_cast<int32_t>(p - 1);
    xn_minus_1.c[static_cast<size_t>(F.n)] = 1;
    const PolyDivRem dr = poly_divrem(F.base, xn_minus_1, spec.h);
    if (!dr.remainder.is_zero()) throw CheckError("AssertionFailure", "h does not divide X^n - 1");
    spec.g = dr.quotient;
    if (spec.g.degree() != F.n - 5 * m) throw CheckError("AssertionFailure", "generator degree mismatch");
    return spec;
}

using Codeword = std::vector<int32_t>;

inline Codeword codeword(const ExtensionField& F, const CodeSpec& spec, const MessageTuple& t) {
    Codeword cw(static_cast<size_t>(spec.n), 0);
    const std::array<FieldElement, 5> msg{t.a1, t.a2, t.b1, t.b2, t.c};
    for (size_t j = 0; j < 5; ++j) {
        if (msg[j].is_zero()) continue;
        const int64_t step = spec.zero_inverses[j].lg;
        int64_t lg = msg[j].lg;  // log of msg_j * g_j^t, advanced additively
        for (int64_t tt = 0; tt < spec.n; ++tt) {
            cw[static_cast<size_t>(tt)] += F.trace(FieldElement{static_cast<int32_t>(lg)});
            lg += step;
            if (lg >= F.n) lg -= F.n;
        }
    }
    for (auto& c : cw) c = static_cast<int32_t>(c % F.p());
    return cw;
}

inline int64_t weight(const Codeword& cw) {
    int64_t w = 0;
    for (int32_t c : cw) w += (c != 0);
    return w;
}

/// Weight from the character-sum formula W = p^m - p^(m-1) - S/(2p), with S
/// (k even) or T (k odd); must equal the directly counted Hamming weight.
inline int64_t weight_via_charsum(const ExtensionField& F, const CodeSpec& spec, const MessageTuple& t) {
    const int64_t val = (spec.k % 2 == 0) ? s_sum(F, spec.k, t.a1, t.a2, t.b1, t.b2, t.c)
                                          : t_sum(F, spec.k, t.a1, t.a2, t.b1, t.b2, t.c);
    const int64_t twop = 2 * F.p();
    if (val % twop != 0)
        throw CheckError("DivisibilityFailure", "character sum " + std::to_string(val) + " not divisible by 2p");
    const int64_t w = F.q - F.q / F.p() - val / twop;
    if (w < 0 || w > spec.n) throw CheckError("AssertionFailure", "weight " + std::to_string(w) + " out of range");
    return w;
}

/// Membership by polynomial division: the codeword polynomial must be a
/// multiple of g.
inline bool is_codeword(const PrimeField& P, const CodeSpec& spec, const Codeword& cw) {
    Polynomial c;
    c.c.assign(cw.begin(), cw.end());
    c.trim();
    if (c.is_zero()) return true;
    return poly_divrem(P, c, spec.g).remainder.is_zero();
}

struct DualZeroReport {
    int64_t factor_count = 0;
    std::vector<int64_t> degrees;
    bool all_degree_m = false;
    bool pairwise_distinct = false;
    bool product_is_h = false;

    bool five_zeros() const { return factor_count == 5 && all_degree_m && pairwise_distinct && product_is_h; }
};

/// Confirms h splits into exactly five distinct monic irreducible factors
/// of degree m (irreducible by the conjugate-orbit construction, since each
/// factor is a minimal polynomial whose degree equals its orbit size).
inline DualZeroReport dual_zero_report(const ExtensionField& F, const CodeSpec& spec) {
    DualZeroReport rep;
    rep.factor_count = 5;
    rep.all_degree_m = true;
    for (const auto& f : spec.parity_factors) {
        rep.degrees.push_back(f.degree());
        if (f.degree() != F.m || !f.is_monic()) rep.all_degree_m = false;
    }
    rep.pairwise_distinct = true;
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j)
            if (spec.parity_factors[i] == spec.parity_factors[j]) rep.pairwise_distinct = false;
    Polynomial prod = spec.parity_factors[0];
    for (size_t i = 1; i < 5; ++i) prod = poly_mul(F.base, prod, spec.parity_factors[i]);
    rep.product_is_h = (prod == spec.h);
    return rep;
}

inline std::string codeword_to_string(const Codeword& cw) {
    std::string s;
    s.reserve(cw.size() * 2);
    for (size_t i = 0; i < cw.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cw[i]);
    }
    return s;
}

}  // namespace fivezero
