#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fivezero;
using testsupport::field35;
using testsupport::scan35;

TEST_CASE("closed forms at desk scale") {
    CHECK(closed_n2(3, 5) == 972);
    CHECK(closed_n3(3, 5) == 7752);
    CHECK(closed_n4(3, 5) == 3767472);
}

TEST_CASE("two-variable system by brute force") {
    const ExtensionField& F = field35();
    for (int64_t k : {1, 2}) {
        const SystemCounts c = count_system2(F, k);
        CHECK(c.two_eq == 972);
        CHECK(c.three_eq == 972);
        CHECK(count_n2(F, k) == 972);
        CHECK(equivalence_check(F, k, 2));
    }

    // the all-zero x part contributes (p-1)^2 solutions on its own
    int64_t zeros = 0;
    for (int64_t y1 = 1; y1 < 3; ++y1)
        for (int64_t y2 = 1; y2 < 3; ++y2) ++zeros;
    CHECK(zeros == 4);
}

TEST_CASE("three-variable system by brute force") {
    const ExtensionField& F = field35();
    const SystemCounts c = count_system3(F, 1, testsupport::test_threads());
    CHECK(c.two_eq == 7752);
    CHECK(c.three_eq == 7752);
    CHECK(count_n3(F, 1, testsupport::test_threads()) == 7752);
    CHECK(equivalence_check(F, 1, 3, testsupport::test_threads()));
    CHECK_THROWS_AS(equivalence_check(F, 1, 4), ParameterError);
}

TEST_CASE("brute force is independent of the worker split") {
    const ExtensionField& F = field35();
    const SystemCounts a = count_system3(F, 1, 1);
    const SystemCounts b = count_system3(F, 1, 8);
    CHECK(a.two_eq == b.two_eq);
    CHECK(a.three_eq == b.three_eq);
}

TEST_CASE("moment-derived counts agree with brute force and closed forms") {
    for (int64_t k : {1, 2}) {
        const MomentDerivedCounts md = moment_derived_counts(scan35(k).per_w[0], 3, 5);
        CHECK(md.n2 == 972);
        CHECK(md.n3 == 7752);
        CHECK(md.n4 == 3767472);
        CHECK(count_n4(scan35(k).per_w[0], 3, 5) == 3767472);
    }

    ValueDistribution bad = scan35(1).per_w[0];
    bad.freq[54] += 1;
    CHECK_THROWS_MATCHES(moment_derived_counts(bad, 3, 5), CheckError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("NonIntegralDivision")));
}

TEST_CASE("the full report passes at both k") {
    for (int64_t k : {1, 2}) {
        const SystemCountReport rep = syscount_report(field35(), k, scan35(k).per_w[0], testsupport::test_threads());
        CHECK(rep.all_passed);
        CHECK(rep.n2_brute == 972);
        CHECK(rep.n3_brute == 7752);
        CHECK(rep.n4_moment == 3767472);
        CHECK(rep.equivalence2);
        CHECK(rep.equivalence3);
    }
}
