#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fivezero;
using testsupport::field35;

namespace {

MessageTuple random_tuple(const ExtensionField& F, std::mt19937_64& rng) {
    return MessageTuple{testsupport::random_element(F, rng), testsupport::random_element(F, rng),
                        testsupport::random_element(F, rng), testsupport::random_element(F, rng),
                        testsupport::random_element(F, rng)};
}

}  // namespace

TEST_CASE("code construction at (3,5,1)") {
    const ExtensionField& F = field35();
    const CodeSpec spec = build_code(F, 1);
    CHECK(spec.n == 242);
    CHECK(spec.dimension() == 25);
    CHECK(spec.h.degree() == 25);
    CHECK(spec.g.degree() == 217);

    // the five parity factors, frozen from an independent construction
    const PrimeField& P = F.base;
    CHECK(spec.parity_factors[0] == poly_parse(P, "1,0,0,0,2,1"));
    CHECK(spec.parity_factors[1] == poly_parse(P, "2,0,0,0,1,1"));
    CHECK(spec.parity_factors[2] == poly_parse(P, "2,0,2,0,2,1"));
    CHECK(spec.parity_factors[3] == poly_parse(P, "1,0,1,0,1,1"));
    CHECK(spec.parity_factors[4] == poly_parse(P, "1,2,1,1,1,1"));

    // g h = X^n - 1 exactly
    Polynomial xn1;
    xn1.c.assign(243, 0);
    xn1.c[0] = 2;
    xn1.c[242] = 1;
    CHECK(poly_mul(P, spec.g, spec.h) == xn1);

    const DualZeroReport rep = dual_zero_report(F, spec);
    CHECK(rep.five_zeros());
    CHECK(rep.degrees == std::vector<int64_t>{5, 5, 5, 5, 5});
}

TEST_CASE("code construction at (3,5,2) and parameter validation") {
    const ExtensionField& F = field35();
    const CodeSpec spec = build_code(F, 2);
    CHECK(spec.h.degree() == 25);
    CHECK(dual_zero_report(F, spec).five_zeros());

    const ExtensionField F36 = build_field(3, 6);
    CHECK_THROWS_MATCHES(build_code(F36, 1), ParameterError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("InvalidParameters")));
    CHECK_THROWS_AS(build_code(F, 5), ParameterError);   // gcd(5,5) != 1
    CHECK_THROWS_AS(build_code(F, 0), ParameterError);
    const ExtensionField F33 = build_field(3, 3);
    CHECK_THROWS_AS(build_code(F33, 1), ParameterError);  // m < 5
}

TEST_CASE("codewords: linearity, membership, cyclic closure") {
    const ExtensionField& F = field35();
    const CodeSpec spec = build_code(F, 1);

    const MessageTuple zero{F.zero(), F.zero(), F.zero(), F.zero(), F.zero()};
    const Codeword zcw = codeword(F, spec, zero);
    CHECK(weight(zcw) == 0);

    const MessageTuple e1{F.one(), F.zero(), F.zero(), F.zero(), F.zero()};
    const Codeword cw1 = codeword(F, spec, e1);
    CHECK(weight(cw1) == 162);
    CHECK(is_codeword(F.base, spec, cw1));

    std::mt19937_64 rng(59);
    for (int t = 0; t < 50; ++t) {
        const MessageTuple a = random_tuple(F, rng), b = random_tuple(F, rng);
        const MessageTuple sum{F.add(a.a1, b.a1), F.add(a.a2, b.a2), F.add(a.b1, b.b1), F.add(a.b2, b.b2),
                               F.add(a.c, b.c)};
        const Codeword ca = codeword(F, spec, a), cb = codeword(F, spec, b), cs = codeword(F, spec, sum);
        for (size_t i = 0; i < ca.size(); ++i) REQUIRE(cs[i] == (ca[i] + cb[i]) % 3);
    }
    for (int t = 0; t < 20; ++t) {
        Codeword cw = codeword(F, spec, random_tuple(F, rng));
        REQUIRE(is_codeword(F.base, spec, cw));
        std::rotate(cw.begin(), cw.end() - 1, cw.end());
        REQUIRE(is_codeword(F.base, spec, cw));
    }
    // distinct tuples give distinct codewords
    for (int t = 0; t < 50; ++t) {
        const MessageTuple a = random_tuple(F, rng), b = random_tuple(F, rng);
        const bool same_tuple = a.a1 == b.a1 && a.a2 == b.a2 && a.b1 == b.b1 && a.b2 == b.b2 && a.c == b.c;
        if (!same_tuple) REQUIRE(codeword(F, spec, a) != codeword(F, spec, b));
    }
}

TEST_CASE("weight counting basics") {
    CHECK(weight(Codeword(242, 0)) == 0);
    Codeword one(242, 0);
    one[17] = 2;
    CHECK(weight(one) == 1);
}

TEST_CASE("weight bridge: direct count equals the character-sum formula") {
    const ExtensionField& F = field35();
    std::mt19937_64 rng(61);
    for (int64_t k : {1, 2}) {
        const CodeSpec spec = build_code(F, k);
        const MessageTuple zero{F.zero(), F.zero(), F.zero(), F.zero(), F.zero()};
        CHECK(weight_via_charsum(F, spec, zero) == 0);
        for (int t = 0; t < 200; ++t) {
            const MessageTuple tup = random_tuple(F, rng);
            REQUIRE(weight_via_charsum(F, spec, tup) == weight(codeword(F, spec, tup)));
        }
    }
}

TEST_CASE("diagonal tuples reduce to a single D evaluation") {
    const ExtensionField& F = field35();
    const CodeSpec spec = build_code(F, 1);
    std::mt19937_64 rng(67);
    for (int t = 0; t < 30; ++t) {
        const FieldElement a = testsupport::random_element(F, rng), b = testsupport::random_element(F, rng);
        const MessageTuple tup{a, a, b, b, F.zero()};
        const int64_t s = d_sum(F, 1, F.scalar_mul(2, a), F.scalar_mul(2, b), F.zero()) + 486;
        CHECK(weight(codeword(F, spec, tup)) == 243 - 81 - s / 6);
    }
}

TEST_CASE("codeword serialization") {
    Codeword cw{0, 1, 2, 0, 1};
    CHECK(codeword_to_string(cw) == "0,1,2,0,1");
}
