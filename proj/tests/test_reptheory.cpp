// Symmetric-group character machinery: exact orthogonality, known dimension
// identities, trace extraction from count polynomials, decomposition
// round-trips, and the Poincare polynomials of both moduli spaces.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "moduli/closedform.hpp"
#include "moduli/partition.hpp"
#include "moduli/reptheory.hpp"

using namespace moduli;
using reptheory::character_table;
using reptheory::CharacterTable;

namespace {

reptheory::PolyClassFunction quartic_counts() {
    reptheory::PolyClassFunction f{7, {}};
    for (const Partition& lam : all_partitions(7)) f.values[lam] = closedform::quartic_locus_count(lam);
    return f;
}

reptheory::PolyClassFunction hyperelliptic_counts() {
    reptheory::PolyClassFunction f{7, {}};
    for (const Partition& lam : all_partitions(7))
        f.values[lam] = closedform::h3_count(lam, closedform::SymGroup::S7);
    return f;
}

}  // namespace

TEST_CASE("factorials and class sizes") {
    CHECK(reptheory::factorial(0) == 1);
    CHECK(reptheory::factorial(7) == 5040);
    CHECK(reptheory::factorial(8) == 40320);
    CHECK_THROWS_AS(reptheory::factorial(-1), std::invalid_argument);
    CHECK_THROWS_AS(reptheory::factorial(30), std::overflow_error);

    for (int n = 1; n <= 8; ++n) {
        long long total = 0;
        for (const Partition& mu : all_partitions(n)) total += reptheory::class_size(mu);
        CHECK(total == reptheory::factorial(n));
        CHECK(reptheory::class_size(Partition(static_cast<std::size_t>(n), 1)) == 1);
        CHECK(reptheory::class_size({n}) == reptheory::factorial(n - 1));
    }
    // transpositions in S_8: 8 choose 2
    Partition transposition{2, 1, 1, 1, 1, 1, 1};
    CHECK(reptheory::class_size(transposition) == 28);
}

TEST_CASE("character tables: structure and known dimensions") {
    for (int n = 1; n <= 8; ++n) {
        const CharacterTable& t = character_table(n);
        std::size_t classes = all_partitions(n).size();
        CHECK(t.n == n);
        CHECK(t.irreps.size() == classes);
        CHECK(t.classes.size() == classes);
        CHECK(t.group_order == reptheory::factorial(n));
        long long dim_square_sum = 0;
        for (std::size_t i = 0; i < t.irreps.size(); ++i) {
            CHECK(t.dims[i] == t.values[i][static_cast<std::size_t>(t.class_index(Partition(static_cast<std::size_t>(n), 1)))]);
            CHECK(t.dims[i] > 0);
            dim_square_sum += t.dims[i] * t.dims[i];
            for (std::size_t j = 0; j < t.classes.size(); ++j)
                CHECK(t.values[i][j] == reptheory::mn_character(t.irreps[i], t.classes[j]));
        }
        CHECK(dim_square_sum == reptheory::factorial(n));  // Burnside
    }
    // hook-length dimensions of familiar S_7 irreducibles
    const CharacterTable& t7 = character_table(7);
    auto dim = [&](const Partition& lam) { return t7.dims[static_cast<std::size_t>(t7.irrep_index(lam))]; };
    CHECK(dim({7}) == 1);
    CHECK(dim({6, 1}) == 6);
    CHECK(dim({5, 2}) == 14);
    CHECK(dim({5, 1, 1}) == 15);
    CHECK(dim({4, 3}) == 14);
    CHECK(dim({4, 2, 1}) == 35);
    CHECK(dim({3, 2, 1, 1}) == 35);
    CHECK(dim(Partition(7, 1)) == 1);
    // the sign character alternates
    CHECK(reptheory::mn_character(Partition(7, 1), {2, 1, 1, 1, 1, 1}) == -1);
    CHECK(reptheory::mn_character(Partition(7, 1), {2, 2, 1, 1, 1}) == 1);

    CHECK_THROWS_AS(character_table(0), std::invalid_argument);
    CHECK_THROWS_AS(character_table(9), std::invalid_argument);
    CHECK_THROWS_AS(reptheory::mn_character({3, 2}, {4, 4}), std::invalid_argument);
}

TEST_CASE("row and column orthogonality for n = 7 and n = 8") {
    for (int n : {7, 8}) {
        const CharacterTable& t = character_table(n);
        std::size_t k = t.irreps.size();
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) {
                long long inner = 0;
                for (std::size_t j = 0; j < k; ++j)
                    inner += t.class_sizes[j] * t.values[a][j] * t.values[b][j];
                CHECK(inner == (a == b ? t.group_order : 0));
            }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                long long inner = 0;
                for (std::size_t a = 0; a < k; ++a) inner += t.values[a][i] * t.values[a][j];
                if (i == j)
                    CHECK(inner == t.group_order / t.class_sizes[i]);
                else
                    CHECK(inner == 0);
            }
    }
}

TEST_CASE("trace extraction sign convention and degree guard") {
    // a one-class function with value q^2 + 3q + 5 on a point of dimension 2:
    // traces are +coeff(q^2), -coeff(q^1), +coeff(q^0) on H^0, H^1, H^2
    reptheory::PolyClassFunction f{1, {{Partition{1}, CountPolynomial{5, 3, 1}}}};
    auto traces = reptheory::counts_to_traces(f, 2);
    REQUIRE(traces.size() == 3);
    CHECK(traces[0].values.at({1}) == 1);
    CHECK(traces[1].values.at({1}) == -3);
    CHECK(traces[2].values.at({1}) == 5);

    CHECK_THROWS_AS(reptheory::counts_to_traces(f, 1), reptheory::DegreeOverflow);
    reptheory::PolyClassFunction missing{2, {{Partition{2}, CountPolynomial{1}}}};
    CHECK_THROWS_AS(reptheory::counts_to_traces(missing, 1), std::invalid_argument);
}

TEST_CASE("decompose enforces integrality and nonnegativity") {
    const CharacterTable& t2 = character_table(2);
    // trace 1 on the transposition, 0 on the identity: multiplicities 1/2
    std::vector<reptheory::IntClassFunction> half{{2, {{{1, 1}, 0}, {{2}, 1}}}};
    CHECK_THROWS_AS(reptheory::decompose(half, t2), reptheory::NonIntegralMultiplicity);
    // trace -2 on the identity: both multiplicities -1
    std::vector<reptheory::IntClassFunction> neg{{2, {{{1, 1}, -2}, {{2}, 0}}}};
    CHECK_THROWS_AS(reptheory::decompose(neg, t2), reptheory::NegativeMultiplicity);
    // the regular representation decomposes with multiplicity = dimension
    std::vector<reptheory::IntClassFunction> reg{{2, {{{1, 1}, 2}, {{2}, 0}}}};
    auto table = reptheory::decompose(reg, t2);
    CHECK(table.rows[0] == std::vector<long long>{1, 1});
}

TEST_CASE("decompose-synthesize round trip on random tables") {
    std::mt19937 rng(2026);
    for (int n : {3, 4, 5}) {
        const CharacterTable& t = character_table(n);
        for (int trial = 0; trial < 10; ++trial) {
            reptheory::CohomologyTable original;
            original.n = n;
            original.dim = 3;
            original.irreps = t.irreps;
            original.dims = t.dims;
            original.rows.assign(4, std::vector<long long>(t.irreps.size(), 0));
            for (auto& row : original.rows)
                for (auto& m : row) m = static_cast<long long>(rng() % 6);
            auto traces = reptheory::synthesize_traces(original, t);
            auto back = reptheory::decompose(traces, t);
            CHECK(back.rows == original.rows);
            // identity-class trace of each degree equals the dim-weighted row sum
            for (std::size_t k = 0; k < traces.size(); ++k) {
                long long s = 0;
                for (std::size_t i = 0; i < t.irreps.size(); ++i) s += original.rows[k][i] * t.dims[i];
                CHECK(traces[k].values.at(Partition(static_cast<std::size_t>(n), 1)) == s);
            }
        }
    }
}

TEST_CASE("the two moduli decompositions have nonnegative multiplicities and exact sizes") {
    auto q2 = reptheory::decompose_counts(quartic_counts(), 6);
    CHECK(q2.n == 7);
    CHECK(q2.dim == 6);
    REQUIRE(q2.rows.size() == 7);
    auto h3 = reptheory::decompose_counts(hyperelliptic_counts(), 5);
    CHECK(h3.dim == 5);
    REQUIRE(h3.rows.size() == 6);
    for (const auto& row : q2.rows)
        for (long long m : row) CHECK(m >= 0);
    for (const auto& row : h3.rows)
        for (long long m : row) CHECK(m >= 0);

    // anchor rows: H^0 of the quartic space is trivial; H^0 of the
    // hyperelliptic space has dimension 36
    const CharacterTable& t7 = character_table(7);
    CHECK(q2.rows[0][static_cast<std::size_t>(t7.irrep_index({7}))] == 1);
    long long h0 = 0;
    for (std::size_t i = 0; i < h3.irreps.size(); ++i) h0 += h3.rows[0][i] * h3.dims[i];
    CHECK(h0 == 36);

    // the corrected fourth-degree multiplicity (the row sum forces 8)
    CHECK(q2.rows[4][static_cast<std::size_t>(t7.irrep_index({2, 1, 1, 1, 1, 1}))] == 8);
}

TEST_CASE("Poincare polynomials of both spaces") {
    auto q2 = reptheory::decompose_counts(quartic_counts(), 6);
    CHECK(reptheory::poincare_polynomial(q2) ==
          CountPolynomial{1, 35, 490, 3485, 13174, 24920, 18375});
    auto h3 = reptheory::decompose_counts(hyperelliptic_counts(), 5);
    CHECK(reptheory::poincare_polynomial(h3) ==
          CountPolynomial{36, 720, 5580, 20880, 37584, 25920});
}

TEST_CASE("restriction of class functions drops one fixed letter") {
    reptheory::PolyClassFunction f{8, {}};
    for (const Partition& mu : all_partitions(8))
        f.values[mu] = closedform::h3_count(mu, closedform::SymGroup::S8);
    auto restricted = reptheory::restrict_class_function(f);
    CHECK(restricted.n == 7);
    REQUIRE(restricted.values.size() == 15);
    for (const auto& [mu, poly] : restricted.values)
        CHECK(poly == closedform::h3_count(mu, closedform::SymGroup::S7));
    CHECK_THROWS_AS(reptheory::restrict_class_function(reptheory::PolyClassFunction{1, {}}),
                    std::invalid_argument);
}
