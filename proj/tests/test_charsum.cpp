#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "support.hpp"

using namespace fivezero;
using testsupport::field35;
using testsupport::scan35;

TEST_CASE("single D evaluations") {
    const ExtensionField& F = field35();
    CHECK(d_sum(F, 1, F.zero(), F.zero(), F.zero()) == 486);
    CHECK(d_sum(F, 1, F.one(), F.zero(), F.zero()) == 0);

    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t) {
        const FieldElement u = testsupport::random_element(F, rng), v = testsupport::random_element(F, rng),
                           w = testsupport::random_element(F, rng);
        CHECK(d_sum(F, 1, u, v, w) == y_twisted_sum(F, FormParams{u, v, w, 1}));
    }
}

TEST_CASE("substitution symmetry of D") {
    const ExtensionField& F = field35();
    std::mt19937_64 rng(47);
    for (int64_t k : {1, 2}) {
        const FormExponents e = form_exponents(F, k);
        for (int t = 0; t < 25; ++t) {
            const FieldElement u = testsupport::random_element(F, rng), v = testsupport::random_element(F, rng),
                               w = testsupport::random_element(F, rng);
            const FieldElement tt = F.from_log(static_cast<int64_t>(rng() % 242));
            const FieldElement u2 = F.mul(F.pow(tt, 2), u), v2 = F.mul(F.pow(tt, e.d1), v),
                               w2 = F.mul(F.pow(tt, e.d2), w);
            CHECK(d_sum(F, k, u, v, w) == d_sum(F, k, u2, v2, w2));
        }
    }
}

TEST_CASE("S and T match their literal definitions") {
    const ExtensionField& F = field35();
    CHECK(s_sum(F, 2, F.zero(), F.zero(), F.zero(), F.zero(), F.zero()) == 972);
    CHECK(t_sum(F, 1, F.zero(), F.zero(), F.zero(), F.zero(), F.zero()) == 972);

    std::mt19937_64 rng(53);
    for (int t = 0; t < 100; ++t) {
        FieldElement a = testsupport::random_element(F, rng), b = testsupport::random_element(F, rng);
        // S(a,a,b,b,0) = D(2a,2b,0) + D(0,0,0)
        CHECK(s_sum(F, 2, a, a, b, b, F.zero()) ==
              d_sum(F, 2, F.scalar_mul(2, a), F.scalar_mul(2, b), F.zero()) + 486);
        CHECK(t_sum(F, 1, a, a, b, b, F.zero()) ==
              d_sum(F, 1, F.scalar_mul(2, a), F.scalar_mul(2, b), F.zero()) + 486);
    }
    for (int t = 0; t < 100; ++t) {
        FieldElement tup[5];
        for (auto& e : tup) e = testsupport::random_element(F, rng);
        const FieldElement u1 = F.add(tup[0], tup[1]), v1 = F.add(tup[2], tup[3]);
        const FieldElement u2 = F.sub(tup[0], tup[1]), v2 = F.sub(tup[2], tup[3]);
        CHECK(s_sum(F, 2, tup[0], tup[1], tup[2], tup[3], tup[4]) ==
              st_literal_sum(F, 2, u1, v1, u2, v2, tup[4]));
        CHECK(t_sum(F, 1, tup[0], tup[1], tup[2], tup[3], tup[4]) ==
              st_literal_sum(F, 1, u1, v1, u2, F.neg(v2), tup[4]));
    }
}

TEST_CASE("the printed T decomposition is adjudicated against the literal sum") {
    const TRemarkReport rep = t_remark_report(field35(), 1, 60, 7);
    CHECK(rep.derivation_matches == 60);
    CHECK(rep.remark_matches < 60);
    CHECK(rep.adopted == "D(a1-a2,-(b1-b2),c)");
    CHECK_THROWS_AS(t_remark_report(field35(), 2, 1, 7), ParameterError);
}

TEST_CASE("fixed-w scans reproduce the two closed-form tables") {
    const ExtensionField& F = field35();
    for (int64_t k : {1, 2}) {
        const ValueDistribution w0 = scan_fixed_w(F, k, F.zero(), testsupport::test_threads());
        CHECK(testsupport::dist_equals(w0, testsupport::table1_w0()));
        CHECK(w0.total() == 59049);
        const ValueDistribution w1 = scan_fixed_w(F, k, F.generator(), testsupport::test_threads());
        CHECK(testsupport::dist_equals(w1, testsupport::table2_wnz()));
        const ValueDistribution w7 = scan_fixed_w(F, k, F.from_log(7), testsupport::test_threads());
        CHECK(w7 == w1);
    }
}

TEST_CASE("the full scan is per-w exact and w-independent") {
    for (int64_t k : {1, 2}) {
        const ScanResult& scan = scan35(k);
        REQUIRE(scan.per_w.size() == 243);
        CHECK(testsupport::dist_equals(scan.per_w[0], testsupport::table1_w0()));
        for (size_t wi = 1; wi < scan.per_w.size(); ++wi)
            REQUIRE(testsupport::dist_equals(scan.per_w[wi], testsupport::table2_wnz()));
        CHECK(w_independent(scan));
        CHECK(scan.lemmas.all_passed());
        CHECK(scan.lemmas.forms == 14348907);
    }
}

TEST_CASE("moment identities at fixed nonzero w") {
    const MomentReport rep = moments(scan35(1).per_w[1], 3, 5);
    CHECK(rep.actual[0] == 118098);
    CHECK(rep.actual[1] == 57395628);
    CHECK(rep.actual[2] == 457747848);
    CHECK(rep.actual[3] == 222465454128);
    CHECK(rep.all_passed());
    CHECK_NOTHROW(assert_moments(rep));

    ValueDistribution tampered = scan35(1).per_w[1];
    tampered.freq[54] += 1;
    tampered.freq[0] -= 1;
    const MomentReport bad = moments(tampered, 3, 5);
    CHECK(!bad.all_passed());
    CHECK_THROWS_MATCHES(assert_moments(bad), CheckError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("IdentityViolation")));
}

TEST_CASE("the S oracle convolution") {
    const ValueDistribution so = s_distribution_oracle(scan35(2));
    CHECK(so.total() == BigInt("847288609443"));
    CHECK(testsupport::dist_equals(so, testsupport::s_values35()));
    CHECK(so.freq.at(972) == 1);
    CHECK(so.freq.at(486) == 78892);

    // parity-of-k equivalence: the oracle built on the odd-k scan agrees
    const ValueDistribution to = s_distribution_oracle(scan35(1));
    CHECK(to == so);
}

TEST_CASE("scan cache round-trips exactly") {
    const ScanResult& scan = scan35(1);
    const std::string path = (std::filesystem::temp_directory_path() / "fivezero-cache-test.txt").string();
    write_scan_cache_file(path, scan);

    const auto loaded = read_scan_cache_file(path, scan.meta);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->per_w.size() == scan.per_w.size());
    for (size_t wi = 0; wi < scan.per_w.size(); ++wi) REQUIRE(loaded->per_w[wi] == scan.per_w[wi]);

    // writing the reload gives the same bytes
    std::ostringstream a, b;
    write_scan_cache(a, scan);
    write_scan_cache(b, *loaded);
    CHECK(a.str() == b.str());

    // header mismatch invalidates
    ScanMeta other = scan.meta;
    other.k = 2;
    CHECK(!read_scan_cache_file(path, other).has_value());
    ScanMeta otherpoly = scan.meta;
    otherpoly.poly = "1,1,0,0,0,1";
    CHECK(!read_scan_cache_file(path, otherpoly).has_value());

    // corrupting a row invalidates
    {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        const size_t pos = text.find("39446");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 5, "39447");
        std::ofstream out(path, std::ios::trunc);
        out << text;
    }
    CHECK(!read_scan_cache_file(path, scan.meta).has_value());
    std::remove(path.c_str());
}

TEST_CASE("scans are deterministic in the worker count") {
    ScanOptions single;
    single.threads = 1;
    const ScanResult one = scan_all(field35(), 1, single);
    std::ostringstream a, b;
    write_scan_cache(a, one);
    write_scan_cache(b, scan35(1));
    CHECK(a.str() == b.str());
}

TEST_CASE("budget estimate") {
    CHECK(estimated_form_evaluations(field35()) == Catch::Approx(3486784401.0));
}
