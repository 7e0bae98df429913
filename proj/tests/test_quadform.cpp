#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fivezero;
using testsupport::field35;
using testsupport::field53;

namespace {

FormParams random_form(const ExtensionField& F, int64_t k, std::mt19937_64& rng) {
    return FormParams{testsupport::random_element(F, rng), testsupport::random_element(F, rng),
                      testsupport::random_element(F, rng), k};
}

// independent rank: m minus the kernel dimension of A over F_p
int64_t kernel_corank(const PrimeField& P, const GramMatrix& A) {
    const int64_t m = A.dim;
    std::vector<std::vector<int64_t>> rows(static_cast<size_t>(m), std::vector<int64_t>(static_cast<size_t>(m)));
    for (int64_t i = 0; i < m; ++i)
        for (int64_t j = 0; j < m; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = A.at(i, j);
    int64_t rank = 0;
    for (int64_t col = 0; col < m; ++col) {
        int64_t piv = -1;
        for (int64_t i = rank; i < m; ++i)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[static_cast<size_t>(piv)], rows[static_cast<size_t>(rank)]);
        const int64_t inv = P.inv(rows[static_cast<size_t>(rank)][static_cast<size_t>(col)]);
        for (int64_t i = 0; i < m; ++i) {
            if (i == rank) continue;
            const int64_t f = P.mul(rows[static_cast<size_t>(i)][static_cast<size_t>(col)], inv);
            if (!f)
                continue;
            for (int64_t j = 0; j < m; ++j)
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    P.sub(rows[static_cast<size_t>(i)][static_cast<size_t>(j)],
                          P.mul(f, rows[static_cast<size_t>(rank)][static_cast<size_t>(j)]));
        }
        ++rank;
    }
    return rank;
}

int32_t eval_through_gram(const ExtensionField& F, const GramMatrix& A, int64_t packed) {
    std::vector<int64_t> x(static_cast<size_t>(F.m));
    for (int64_t j = 0; j < F.m; ++j, packed /= F.p()) x[static_cast<size_t>(j)] = packed % F.p();
    int64_t acc = 0;
    for (int64_t i = 0; i < F.m; ++i)
        for (int64_t j = 0; j < F.m; ++j) acc += x[static_cast<size_t>(i)] * A.at(i, j) % F.p() * x[static_cast<size_t>(j)];
    return static_cast<int32_t>(acc % F.p());
}

}  // namespace

TEST_CASE("form values at the edges") {
    const ExtensionField& F = field35();
    const FormParams zero{F.zero(), F.zero(), F.zero(), 1};
    CHECK(form_value(F, zero, F.generator()) == 0);
    CHECK(form_value(F, FormParams{F.one(), F.generator(), F.one(), 1}, F.zero()) == 0);
    CHECK(form_value(F, FormParams{F.one(), F.zero(), F.zero(), 1}, F.one()) == 2);  // Tr(1)
}

TEST_CASE("scaling law Q(ax) = a^2 Q(x)") {
    const ExtensionField& F = field35();
    std::mt19937_64 rng(19);
    for (int t = 0; t < 100; ++t) {
        const FormParams q = random_form(F, 1 + static_cast<int64_t>(rng() % 2), rng);
        const FieldElement x = testsupport::random_element(F, rng);
        const int64_t a = static_cast<int64_t>(rng() % 3);
        const int64_t lhs = form_value(F, q, F.scalar_mul(a, x));
        CHECK(lhs == a * a % 3 * form_value(F, q, x) % 3);
    }
}

TEST_CASE("gram matrix reproduces the form on every point") {
    const ExtensionField& F = field35();
    const FormParams zero{F.zero(), F.zero(), F.zero(), 1};
    const GramMatrix Z = gram_matrix(F, zero);
    for (int32_t e : Z.a) CHECK(e == 0);

    // the u = 1 form in the power basis is the trace form Tr(pi^(i+j))
    const FormParams trace_form{F.one(), F.zero(), F.zero(), 1};
    const GramMatrix A = gram_matrix(F, trace_form);
    for (int64_t i = 0; i < 5; ++i)
        for (int64_t j = 0; j < 5; ++j) CHECK(A.at(i, j) == F.trace(F.from_log(i + j)));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const FormParams q = random_form(F, 1, rng);
        const GramMatrix G = gram_matrix(F, q);
        for (int64_t i = 0; i < 5; ++i)
            for (int64_t j = 0; j < 5; ++j) CHECK(G.at(i, j) == G.at(j, i));
        for (int64_t v = 0; v < F.q; ++v) REQUIRE(eval_through_gram(F, G, v) == form_value(F, q, F.from_packed(v)));
    }
}

TEST_CASE("dependent bases are rejected") {
    const ExtensionField& F = field35();
    std::vector<FieldElement> basis = power_basis(F);
    basis[4] = F.add(basis[0], basis[1]);
    CHECK_THROWS_MATCHES(gram_matrix(F, FormParams{F.one(), F.zero(), F.zero(), 1}, basis), ParameterError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("DependentBasis")));
}

TEST_CASE("rank and discriminant by congruence elimination") {
    const ExtensionField& F = field35();
    const PrimeField& P = F.base;

    const DiagonalForm z = rank_and_disc(P, gram_matrix(F, FormParams{F.zero(), F.zero(), F.zero(), 1}));
    CHECK(z.rank == 0);
    CHECK(z.disc_class == 0);

    const DiagonalForm tr = rank_and_disc(P, gram_matrix(F, FormParams{F.one(), F.zero(), F.zero(), 1}));
    CHECK(tr.rank == 5);

    // zero-diagonal pivot path: Q(x,y) = 2xy over F_3 has rank 2 and
    // non-square discriminant
    GramMatrix H;
    H.p = 3;
    H.dim = 2;
    H.a = {0, 1, 1, 0};
    const DiagonalForm hd = rank_and_disc(P, H);
    CHECK(hd.rank == 2);
    CHECK(hd.disc_class == -1);
}

TEST_CASE("diagonalization invariants on random forms") {
    const ExtensionField& F = field35();
    std::mt19937_64 rng(29);
    for (int t = 0; t < 300; ++t) {
        const FormParams q = random_form(F, 1 + static_cast<int64_t>(rng() % 2), rng);
        const GramMatrix A = gram_matrix(F, q);
        const DiagonalForm d1 = rank_and_disc(F.base, A, PivotOrder::FirstFound);
        const DiagonalForm d2 = rank_and_disc(F.base, A, PivotOrder::LastFound);
        CHECK(d1.rank == d2.rank);
        CHECK(d1.disc_class == d2.disc_class);
        CHECK(d1.rank == kernel_corank(F.base, A));
        CHECK(static_cast<int64_t>(d1.diag.size()) == d1.rank);
    }
}

TEST_CASE("residue profiles and the rank template") {
    const ExtensionField& F = field35();
    const ResidueProfile z = residue_profile(F, FormParams{F.zero(), F.zero(), F.zero(), 1});
    CHECK(z.counts == std::vector<int64_t>{243, 0, 0});

    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const FormParams q = random_form(F, 1 + static_cast<int64_t>(rng() % 2), rng);
        const ResidueProfile prof = residue_profile(F, q);
        CHECK(prof.counts[0] + prof.counts[1] + prof.counts[2] == 243);
        const DiagonalForm d = rank_and_disc(F.base, gram_matrix(F, q));
        REQUIRE(profile_from_rank(3, 5, d.rank, d.disc_class) == prof);
        if (d.rank % 2 == 1) CHECK(prof.counts[0] == 81);
        if (d.rank % 2 == 0 && d.rank > 0) CHECK(prof.counts[1] == prof.counts[2]);
    }
}

TEST_CASE("rank template on the p = 1 mod 4 branch") {
    const ExtensionField& G = field53();
    std::mt19937_64 rng(37);
    for (int t = 0; t < 250; ++t) {
        const FormParams q{testsupport::random_element(G, rng), testsupport::random_element(G, rng),
                           testsupport::random_element(G, rng), 1 + static_cast<int64_t>(rng() % 2)};
        const DiagonalForm d = rank_and_disc(G.base, gram_matrix(G, q));
        REQUIRE(profile_from_rank(5, 3, d.rank, d.disc_class) == residue_profile(G, q));
    }
    // rank-1 template hand check at m = 1: Q = a x^2 over F_5
    const ExtensionField F51 = build_field(5, 1);
    for (int64_t a = 1; a < 5; ++a) {
        const FormParams q{F51.from_packed(a), F51.zero(), F51.zero(), 1};
        const DiagonalForm d = rank_and_disc(F51.base, gram_matrix(F51, q));
        CHECK(d.rank <= 1);
        REQUIRE(profile_from_rank(5, 1, d.rank, d.disc_class) == residue_profile(F51, q));
    }
}

TEST_CASE("profile_from_rank validates its inputs") {
    CHECK(profile_from_rank(3, 5, 0, 0).counts == std::vector<int64_t>{243, 0, 0});
    CHECK_THROWS_MATCHES(profile_from_rank(3, 5, 6, 1), ParameterError,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("InvalidRank")));
    CHECK_THROWS_AS(profile_from_rank(3, 5, -1, 0), ParameterError);
    CHECK_THROWS_AS(profile_from_rank(3, 5, 0, 1), ParameterError);
    CHECK_THROWS_AS(profile_from_rank(3, 5, 2, 0), ParameterError);
}

TEST_CASE("twisted sum obeys the parity dichotomy") {
    const ExtensionField& F = field35();
    CHECK(y_twisted_sum(F, FormParams{F.zero(), F.zero(), F.zero(), 1}) == 486);
    CHECK(y_twisted_sum(F, FormParams{F.one(), F.zero(), F.zero(), 1}) == 0);

    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
        const FormParams q = random_form(F, 1, rng);
        const int64_t val = y_twisted_sum(F, q);  // throws on any parity violation
        // independent zero count
        int64_t n0 = 0;
        for (int64_t v = 0; v < F.q; ++v) n0 += (form_value(F, q, F.from_packed(v)) == 0);
        CHECK(val == 3 * n0 - 243);
        const bool ok = val == 0 || val == 54 || val == -54 || val == 162 || val == -162 || val == 486;
        CHECK(ok);
    }
}
