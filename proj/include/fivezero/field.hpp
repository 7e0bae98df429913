#pragma once

// Exact arithmetic in F_p and F_{p^m}.
//
// Extension-field elements are held as discrete-log indices relative to a
// primitive element pi (with a sentinel for zero); a parallel "packed"
// representation (coefficient vector in base p, little-endian) carries the
// additive structure. All tables are built once and immutable afterwards,
// so a field object is safe to share read-only across threads.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fivezero {

// ---------------------------------------------------------------------------
// prime field

struct PrimeField {
    int64_t p = 0;
    std::vector<int8_t> legendre;  // legendre[a] in {-1,0,+1} for a in [0,p)

    int64_t add(int64_t a, int64_t b) const { return (a + b) % p; }
    int64_t sub(int64_t a, int64_t b) const { return ((a - b) % p + p) % p; }
    int64_t mul(int64_t a, int64_t b) const { return (a * b) % p; }
    int64_t neg(int64_t a) const { return (p - a % p) % p; }
    int64_t pow(int64_t a, int64_t e) const {
        a %= p;
        if (a < 0) a += p;
        int64_t r = 1;
        while (e > 0) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    }
    int64_t inv(int64_t a) const {
        a %= p;
        if (a < 0) a += p;
        if (a == 0) throw ParameterError("DivisionByZero", "inverse of 0 in F_p");
        return pow(a, p - 2);
    }
};

inline bool is_prime(int64_t v) {
    if (v < 2) return false;
    for (int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline PrimeField make_prime_field(int64_t p) {
    if (!is_prime(p) || p % 2 == 0) throw ParameterError("NotPrime", "p must be an odd prime, got " + std::to_string(p));
    PrimeField F;
    F.p = p;
    F.legendre.assign(static_cast<size_t>(p), -1);
    F.legendre[0] = 0;
    for (int64_t a = 1; a < p; ++a) F.legendre[static_cast<size_t>(a * a % p)] = 1;
    return F;
}

/// Smallest positive non-square residue mod p (the fixed choice of lambda).
inline int64_t lambda_select(const PrimeField& F) {
    for (int64_t a = 1; a < F.p; ++a)
        if (F.legendre[static_cast<size_t>(a)] == -1) return a;
    throw CheckError("AssertionFailure", "no non-square residue found");
}

/// lambda^((1+p^k)/2) mod p. Must come out +lambda for even k and -lambda
/// for odd k; a violation is reported, not silently accepted.
inline int64_t lambda_power_check(const PrimeField& F, int64_t k) {
    if (k < 1) throw ParameterError("InvalidParameters", "k must be >= 1");
    const int64_t lam = lambda_select(F);
    // reduce the exponent (1+p^k)/2 modulo p-1 via p^k mod 2(p-1)
    const int64_t two_ord = 2 * (F.p - 1);
    int64_t pk = 1 % two_ord;
    for (int64_t i = 0, b = F.p % two_ord, e = k; i < 63 && e > 0; ++i, e >>= 1) {
        if (e & 1) pk = pk * b % two_ord;
        b = b * b % two_ord;
    }
    const int64_t expo = (1 + pk) / 2;
    const int64_t got = F.pow(lam, expo);
    const int64_t want = (k % 2 == 0) ? lam : F.neg(lam);
    if (got != want)
        throw CheckError("AssertionFailure", "lambda^((1+p^k)/2) != " + std::string(k % 2 ? "-" : "+") + "lambda at p=" +
                                                 std::to_string(F.p) + " k=" + std::to_string(k));
    return got;
}

// ---------------------------------------------------------------------------
// polynomials over F_p, coefficients ascending, no trailing zeros

struct Polynomial {
    std::vector<int32_t> c;

    Polynomial() = default;
    explicit Polynomial(std::vector<int32_t> coeffs) : c(std::move(coeffs)) { trim(); }

    bool is_zero() const { return c.empty(); }
    int64_t degree() const { return static_cast<int64_t>(c.size()) - 1; }  // -1 for zero
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c == b.c; }
};

inline Polynomial poly_x() { return Polynomial({0, 1}); }

inline Polynomial poly_add(const PrimeField& F, const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        int64_t s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = static_cast<int32_t>(s % F.p);
    }
    r.trim();
    return r;
}

inline Polynomial poly_sub(const PrimeField& F, const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        int64_t s = (i < a.c.size() ? a.c[i] : 0) - (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = static_cast<int32_t>(((s % F.p) + F.p) % F.p);
    }
    r.trim();
    return r;
}

inline Polynomial poly_mul(const PrimeField& F, const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    Polynomial r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = static_cast<int32_t>((r.c[i + j] + int64_t(a.c[i]) * b.c[j]) % F.p);
    }
    r.trim();
    return r;
}

inline Polynomial poly_scale(const PrimeField& F, const Polynomial& a, int64_t s) {
    Polynomial r = a;
    for (auto& x : r.c) x = static_cast<int32_t>(F.mul(x, s));
    r.trim();
    return r;
}

struct PolyDivRem {
    Polynomial quotient, remainder;
};

inline PolyDivRem poly_divrem(const PrimeField& F, const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw ParameterError("DivisionByZeroPolynomial", "division by the zero polynomial");
    PolyDivRem out;
    out.remainder = a;
    if (a.degree() < b.degree()) return out;
    out.quotient.c.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, 0);
    const int64_t inv_lead = F.inv(b.c.back());
    for (int64_t i = a.degree() - b.degree(); i >= 0; --i) {
        const size_t top = static_cast<size_t>(i) + b.c.size() - 1;
        if (top >= out.remainder.c.size()) continue;
        const int64_t f = F.mul(out.remainder.c[top], inv_lead);
        if (f == 0) continue;
        out.quotient.c[static_cast<size_t>(i)] = static_cast<int32_t>(f);
        for (size_t j = 0; j < b.c.size(); ++j) {
            auto& cc = out.remainder.c[static_cast<size_t>(i) + j];
            cc = static_cast<int32_t>(F.sub(cc, F.mul(f, b.c[j])));
        }
    }
    out.quotient.trim();
    out.remainder.trim();
    return out;
}

inline Polynomial poly_gcd(const PrimeField& F, Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_divrem(F, a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = poly_scale(F, a, F.inv(a.c.back()));  // monic
    return a;
}

inline std::string poly_to_string(const Polynomial& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(a.c[i]);
    }
    return s;
}

inline Polynomial poly_parse(const PrimeField& F, const std::string& s) {
    Polynomial r;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != tok.size()) throw ParameterError("InvalidParameters", "bad polynomial coefficient '" + tok + "'");
        r.c.push_back(static_cast<int32_t>(((v % F.p) + F.p) % F.p));
    }
    r.trim();
    return r;
}

// ---------------------------------------------------------------------------
// extension field

struct FieldElement {
    int32_t lg = -1;  // log index in [0, n), or -1 for zero

    bool is_zero() const { return lg < 0; }
    friend bool operator==(FieldElement a, FieldElement b) { return a.lg == b.lg; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.lg != b.lg; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.lg < b.lg; }
};

class ExtensionField {
   public:
    PrimeField base;
    int64_t m = 0;
    int64_t q = 0;  // p^m
    int64_t n = 0;  // q - 1, multiplicative order
    Polynomial modulus;

    int64_t p() const { return base.p; }

    FieldElement zero() const { return FieldElement{-1}; }
    FieldElement one() const { return FieldElement{0}; }
    FieldElement generator() const { return FieldElement{1 % static_cast<int32_t>(n)}; }

    FieldElement from_log(int64_t lg) const { return FieldElement{static_cast<int32_t>(((lg % n) + n) % n)}; }
    FieldElement from_packed(int64_t v) const {
        if (v == 0) return zero();
        return FieldElement{log_[static_cast<size_t>(v)]};
    }
    int64_t packed(FieldElement e) const { return e.is_zero() ? 0 : antilog_[static_cast<size_t>(e.lg)]; }

    /// Embeds a in F_p as a constant field element.
    FieldElement from_base(int64_t a) const {
        a = ((a % p()) + p()) % p();
        return from_packed(a);
    }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.is_zero() || b.is_zero()) return zero();
        int64_t l = a.lg + b.lg;
        if (l >= n) l -= n;
        return FieldElement{static_cast<int32_t>(l)};
    }
    FieldElement inv(FieldElement a) const {
        if (a.is_zero()) throw ParameterError("DivisionByZero", "inverse of the zero element");
        return FieldElement{static_cast<int32_t>(a.lg == 0 ? 0 : n - a.lg)};
    }
    FieldElement pow(FieldElement a, int64_t e) const {
        if (a.is_zero()) {
            if (e <= 0) throw ParameterError("DivisionByZero", "0 raised to a non-positive power");
            return zero();
        }
        const int64_t l = (static_cast<int64_t>(a.lg) % n * (((e % n) + n) % n)) % n;
        return FieldElement{static_cast<int32_t>(l)};
    }
    FieldElement neg(FieldElement a) const {
        if (a.is_zero()) return a;
        return mul(a, minus_one_);
    }
    FieldElement add(FieldElement a, FieldElement b) const { return from_packed(packed_add(packed(a), packed(b))); }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement scalar_mul(int64_t s, FieldElement a) const { return mul(from_base(s), a); }
    FieldElement frobenius(FieldElement a) const { return pow(a, p()); }

    int32_t trace(FieldElement a) const { return a.is_zero() ? 0 : trace_[static_cast<size_t>(antilog_[static_cast<size_t>(a.lg)])]; }

    // packed-space operations (coefficient vectors coded in base p)
    int64_t packed_add(int64_t a, int64_t b) const {
        if (!add_table_.empty()) return add_table_[static_cast<size_t>(a * q + b)];
        const int64_t p_ = p();
        int64_t r = 0, scale = 1;
        while (a || b) {
            r += (a % p_ + b % p_) % p_ * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    }
    int32_t trace_packed(int64_t v) const { return trace_[static_cast<size_t>(v)]; }
    int64_t antilog_packed(int64_t lg) const { return antilog_[static_cast<size_t>(lg)]; }
    int32_t log_of_packed(int64_t v) const { return log_[static_cast<size_t>(v)]; }

    /// Independent product in coefficient space (schoolbook modulo the
    /// modulus polynomial); used to validate the log tables.
    int64_t packed_mul_direct(int64_t a, int64_t b) const {
        const int64_t p_ = p();
        std::vector<int64_t> da(static_cast<size_t>(m)), db(static_cast<size_t>(m));
        for (int64_t i = 0; i < m; ++i, a /= p_, b /= p_) {
            da[static_cast<size_t>(i)] = a % p_;
            db[static_cast<size_t>(i)] = b % p_;
        }
        std::vector<int64_t> prod(static_cast<size_t>(2 * m - 1), 0);
        for (int64_t i = 0; i < m; ++i)
            for (int64_t j = 0; j < m; ++j) prod[static_cast<size_t>(i + j)] += da[static_cast<size_t>(i)] * db[static_cast<size_t>(j)];
        for (int64_t i = 2 * m - 2; i >= m; --i) {
            const int64_t t = prod[static_cast<size_t>(i)] % p_;
            if (t == 0) continue;
            prod[static_cast<size_t>(i)] = 0;
            for (int64_t j = 0; j < m; ++j)
                prod[static_cast<size_t>(i - m + j)] -= t * modulus.c[static_cast<size_t>(j)];
        }
        int64_t r = 0, scale = 1;
        for (int64_t i = 0; i < m; ++i, scale *= p_) r += (((prod[static_cast<size_t>(i)] % p_) + p_) % p_) * scale;
        return r;
    }

    friend ExtensionField build_field(int64_t, int64_t, const std::optional<Polynomial>&, int64_t);

   private:
    std::vector<int32_t> antilog_;    // log -> packed, size n
    std::vector<int32_t> log_;       // packed -> log, size q, log_[0] = -1
    std::vector<int8_t> trace_;      // packed -> F_p, size q
    std::vector<int32_t> add_table_;  // packed x packed -> packed, small fields only
    FieldElement minus_one_;
};

namespace detail {

inline int64_t checked_pow(int64_t p, int64_t m, int64_t cap) {
    int64_t r = 1;
    for (int64_t i = 0; i < m; ++i) {
        if (r > cap / p) return -1;
        r *= p;
    }
    return r;
}

inline std::vector<int64_t> prime_factors(int64_t v) {
    std::vector<int64_t> f;
    for (int64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            f.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) f.push_back(v);
    return f;
}

// (a*b) mod f over F_p, all degree < m, f monic of degree m
inline void poly_mulmod(const PrimeField& F, const std::vector<int32_t>& a, const std::vector<int32_t>& b,
                        const std::vector<int32_t>& f, std::vector<int32_t>& out) {
    const size_t m = f.size() - 1;
    std::vector<int64_t> prod(2 * m - 1, 0);
    for (size_t i = 0; i < m; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < m; ++j) prod[i + j] += int64_t(a[i]) * b[j];
    }
    for (size_t i = 0; i < prod.size(); ++i) prod[i] %= F.p;
    for (size_t i = 2 * m - 2; i >= m && i < prod.size(); --i) {
        const int64_t t = prod[i];
        if (t) {
            prod[i] = 0;
            for (size_t j = 0; j < m; ++j) prod[i - m + j] = ((prod[i - m + j] - t * f[j]) % F.p + F.p) % F.p;
        }
        if (i == m) break;
    }
    out.assign(m, 0);
    for (size_t i = 0; i < m; ++i) out[i] = static_cast<int32_t>(((prod[i] % F.p) + F.p) % F.p);
}

// x^e mod f
inline std::vector<int32_t> poly_x_powmod(const PrimeField& F, int64_t e, const std::vector<int32_t>& f) {
    const size_t m = f.size() - 1;
    std::vector<int32_t> result(m, 0), base(m, 0), tmp;
    result[0] = 1;
    if (m == 1) {
        // x = -f0 as a constant
        base[0] = static_cast<int32_t>(F.neg(f[0]));
    } else {
        base[1] = 1;
    }
    while (e > 0) {
        if (e & 1) {
            poly_mulmod(F, result, base, f, tmp);
            result = tmp;
        }
        poly_mulmod(F, base, base, f, tmp);
        base = tmp;
        e >>= 1;
    }
    return result;
}

inline bool is_one(const std::vector<int32_t>& v) {
    if (v.empty() || v[0] != 1) return false;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i]) return false;
    return true;
}

// true iff x has multiplicative order exactly p^m - 1 in F_p[x]/(f); this
// forces f irreducible and x primitive.
inline bool x_has_full_order(const PrimeField& F, const Polynomial& f, int64_t n, const std::vector<int64_t>& n_factors) {
    if (f.c[0] == 0) return false;
    std::vector<int32_t> fc(f.c.begin(), f.c.end());
    if (!is_one(poly_x_powmod(F, n, fc))) return false;
    for (int64_t ell : n_factors)
        if (is_one(poly_x_powmod(F, n / ell, fc))) return false;
    return true;
}

}  // namespace detail

/// Builds F_{p^m} with full antilog/log/trace tables. When no override is
/// given the modulus is the smallest monic primitive polynomial of degree m
/// (coefficients compared from the highest degree down), so the result is
/// identical across runs and machines.
inline ExtensionField build_field(int64_t p, int64_t m, const std::optional<Polynomial>& override_poly = std::nullopt,
                                  int64_t mem_cap = int64_t(1) << 27) {
    ExtensionField F;
    F.base = make_prime_field(p);
    if (m < 1) throw ParameterError("InvalidParameters", "m must be >= 1");
    const int64_t q = detail::checked_pow(p, m, mem_cap);
    if (q < 0)
        throw ParameterError("MemoryCapExceeded",
                             "p^m exceeds the table cap of " + std::to_string(mem_cap) + " elements");
    F.m = m;
    F.q = q;
    F.n = q - 1;
    const auto n_factors = detail::prime_factors(F.n);

    if (override_poly) {
        const Polynomial& f = *override_poly;
        if (f.degree() != m || !f.is_monic())
            throw ParameterError("InvalidParameters", "override modulus must be monic of degree m");
        if (!detail::x_has_full_order(F.base, f, F.n, n_factors))
            throw ParameterError("NotPrimitive", "override modulus fails the order-" + std::to_string(F.n) + " root test");
        F.modulus = f;
    } else {
        for (int64_t val = 1; val < q; ++val) {
            if (val % p == 0) continue;  // constant term must be nonzero
            Polynomial f;
            f.c.assign(static_cast<size_t>(m) + 1, 0);
            int64_t v = val;
            for (int64_t i = 0; i < m; ++i, v /= p) f.c[static_cast<size_t>(i)] = static_cast<int32_t>(v % p);
            f.c[static_cast<size_t>(m)] = 1;
            if (detail::x_has_full_order(F.base, f, F.n, n_factors)) {
                F.modulus = f;
                break;
            }
        }
        if (F.modulus.is_zero()) throw CheckError("AssertionFailure", "no primitive polynomial found");
    }

    // antilog by repeated multiplication with x, reducing by the monic modulus
    F.antilog_.assign(static_cast<size_t>(F.n), 0);
    F.log_.assign(static_cast<size_t>(q), -1);
    std::vector<int32_t> cur(static_cast<size_t>(m), 0);
    cur[0] = 1;
    for (int64_t i = 0; i < F.n; ++i) {
        int64_t packed = 0, scale = 1;
        for (int64_t j = 0; j < m; ++j, scale *= p) packed += cur[static_cast<size_t>(j)] * scale;
        if (packed == 0 || F.log_[static_cast<size_t>(packed)] != -1)
            throw ParameterError("NotPrimitive", "modulus root has order smaller than " + std::to_string(F.n));
        F.antilog_[static_cast<size_t>(i)] = static_cast<int32_t>(packed);
        F.log_[static_cast<size_t>(packed)] = static_cast<int32_t>(i);
        // cur *= x
        const int64_t top = cur[static_cast<size_t>(m - 1)];
        for (int64_t j = m - 1; j > 0; --j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)];
        cur[0] = 0;
        if (top) {
            for (int64_t j = 0; j < m; ++j) {
                int64_t cc = cur[static_cast<size_t>(j)] - top * F.modulus.c[static_cast<size_t>(j)];
                cur[static_cast<size_t>(j)] = static_cast<int32_t>(((cc % p) + p) % p);
            }
        }
    }

    // trace of the power basis, then extend F_p-linearly to all elements
    std::vector<int32_t> basis_trace(static_cast<size_t>(m), 0);
    for (int64_t i = 0; i < m; ++i) {
        int64_t acc = 0;
        int64_t lg = i;
        for (int64_t j = 0; j < m; ++j) {
            // add the conjugate pi^(i p^j)
            int64_t a = acc, b = F.antilog_[static_cast<size_t>(lg)];
            int64_t r = 0, scale = 1;
            while (a || b) {
                r += (a % p + b % p) % p * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            acc = r;
            lg = (lg * p) % F.n;
        }
        if (acc >= p) throw CheckError("AssertionFailure", "trace of basis element not in F_p");
        basis_trace[static_cast<size_t>(i)] = static_cast<int32_t>(acc);
    }
    F.trace_.assign(static_cast<size_t>(q), 0);
    for (int64_t v = 0; v < q; ++v) {
        int64_t t = 0, x = v;
        for (int64_t j = 0; j < m; ++j, x /= p) t += (x % p) * basis_trace[static_cast<size_t>(j)];
        F.trace_[static_cast<size_t>(v)] = static_cast<int8_t>(t % p);
    }

    if (q <= 1024) {
        F.add_table_.assign(static_cast<size_t>(q * q), 0);
        for (int64_t a = 0; a < q; ++a)
            for (int64_t b = 0; b < q; ++b) {
                int64_t aa = a, bb = b, r = 0, scale = 1;
                while (aa || bb) {
                    r += (aa % p + bb % p) % p * scale;
                    aa /= p;
                    bb /= p;
                    scale *= p;
                }
                F.add_table_[static_cast<size_t>(a * q + b)] = static_cast<int32_t>(r);
            }
    }

    F.minus_one_ = F.from_packed(p - 1);
    return F;
}

/// Minimal polynomial of x over F_p: the product of (X - c) over the
/// Frobenius orbit of x. minimal_poly(0) is X itself.
inline Polynomial minimal_poly(const ExtensionField& F, FieldElement x) {
    if (x.is_zero()) return poly_x();
    std::vector<int32_t> orbit;
    int64_t lg = x.lg;
    do {
        orbit.push_back(static_cast<int32_t>(lg));
        lg = lg * F.p() % F.n;
    } while (lg != x.lg);

    // coefficients live in the extension while multiplying, in packed form
    std::vector<int64_t> poly{1};
    for (int32_t l : orbit) {
        const int64_t neg_c = F.packed(F.neg(FieldElement{l}));
        std::vector<int64_t> next(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = F.packed_add(next[i + 1], poly[i]);
            const FieldElement prod = F.mul(F.from_packed(poly[i]), F.from_packed(neg_c));
            next[i] = F.packed_add(next[i], F.packed(prod));
        }
        poly = std::move(next);
    }
    Polynomial out;
    out.c.reserve(poly.size());
    for (int64_t v : poly) {
        if (v >= F.p()) throw CheckError("AssertionFailure", "minimal polynomial coefficient not in F_p");
        out.c.push_back(static_cast<int32_t>(v));
    }
    out.trim();
    return out;
}

/// Evaluates an F_p polynomial at a field element.
inline FieldElement poly_eval(const ExtensionField& F, const Polynomial& f, FieldElement x) {
    FieldElement acc = F.zero();
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = F.mul(acc, x);
        if (f.c[i]) acc = F.add(acc, F.from_base(f.c[i]));
    }
    return acc;
}

}  // namespace fivezero
