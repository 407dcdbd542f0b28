// Exhaustive Frobenius-twisted enumeration: cycle layouts, strategy behavior
// and agreement, representative independence, the boundary-component census,
// and the genus-zero line counts, all checked against closed forms or
// independent small-case oracles.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "moduli/brute.hpp"
#include "moduli/closedform.hpp"
#include "moduli/gf.hpp"
#include "moduli/partition.hpp"
#include "moduli/projgeom.hpp"

using namespace moduli;
using brute::CycleLayout;
using brute::Strategy;

TEST_CASE("cycle layouts: canonical form and explicit permutations") {
    CycleLayout c = CycleLayout::canonical({5, 2});
    CHECK(c.n == 7);
    CHECK(c.lcm == 10);
    REQUIRE(c.cycles.size() == 2);
    CHECK(c.cycles[0].length == 5);
    CHECK(c.cycles[0].positions == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(c.cycles[1].length == 2);
    CHECK(c.cycles[1].positions == std::vector<int>{5, 6});
    CHECK(c.partition() == Partition{5, 2});

    // layouts from one-line permutations keep the cycle type
    CycleLayout a = CycleLayout::from_permutation({1, 0, 3, 4, 5, 6, 2});
    CHECK(a.partition() == Partition{5, 2});
    CycleLayout b = CycleLayout::from_permutation({1, 2, 3, 4, 0, 6, 5});
    CHECK(b.partition() == Partition{5, 2});
    CHECK(CycleLayout::from_permutation({0, 1, 2}).partition() == Partition{1, 1, 1});

    CHECK_THROWS_AS(CycleLayout::canonical({2, 5}), std::invalid_argument);   // not weakly decreasing
    CHECK_THROWS_AS(CycleLayout::canonical({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(CycleLayout::from_permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(CycleLayout::from_permutation({0, 2}), std::invalid_argument);
}

TEST_CASE("plane counts at q = 3 match the closed forms for all fifteen types") {
    for (const Partition& lam : all_partitions(7)) {
        auto rep = brute::count_fixed_septuples(lam, 3);
        INFO(partition_display(lam));
        CHECK(rep.quotient_count == closedform::quartic_locus_count(lam).eval(3));
        CHECK(rep.pgl_order == 5616);
        CHECK(rep.raw_general_position == rep.pgl_order * rep.quotient_count);
    }
}

TEST_CASE("representative independence for the [5,2] cycle type") {
    long long canonical = brute::count_fixed_septuples(Partition{5, 2}, 3).quotient_count;
    CHECK(canonical == 720);
    // a two-cycle first, the five-cycle spread over the remaining positions
    long long alt1 =
        brute::count_fixed_septuples(CycleLayout::from_permutation({1, 0, 3, 4, 5, 6, 2}), 3).quotient_count;
    // the two-cycle at the far end instead
    long long alt2 =
        brute::count_fixed_septuples(CycleLayout::from_permutation({1, 2, 3, 4, 0, 6, 5}), 3).quotient_count;
    CHECK(alt1 == canonical);
    CHECK(alt2 == canonical);
}

TEST_CASE("frame fixing agrees with quotient division where both apply") {
    for (const Partition& lam : {Partition{1, 1, 1, 1, 1, 1, 1}, Partition{2, 1, 1, 1, 1, 1},
                                 Partition{3, 1, 1, 1, 1}}) {
        INFO(partition_display(lam));
        auto qd = brute::count_fixed_septuples(lam, 3, Strategy::QuotientDivide);
        auto ff = brute::count_fixed_septuples(lam, 3, Strategy::FrameFix);
        CHECK(qd.quotient_count == ff.quotient_count);
        CHECK(qd.strategy == Strategy::QuotientDivide);
        CHECK(ff.strategy == Strategy::FrameFix);
        CHECK(ff.raw_general_position == ff.pgl_order * ff.quotient_count);
    }
    // the nonzero case of the three
    CHECK(brute::count_fixed_septuples(Partition{3, 1, 1, 1, 1}, 3).quotient_count == 120);
}

TEST_CASE("automatic strategy selection") {
    CHECK(brute::count_fixed_septuples(Partition(7, 1), 9, Strategy::Auto).strategy == Strategy::FrameFix);
    CHECK(brute::count_fixed_septuples({7}, 3, Strategy::Auto).strategy == Strategy::QuotientDivide);
    CHECK_THROWS_AS(brute::count_fixed_septuples({7}, 3, Strategy::FrameFix), brute::StrategyNotApplicable);
    CHECK_THROWS_AS(brute::count_fixed_septuples({4, 1, 1, 1}, 3, Strategy::FrameFix),
                    brute::StrategyNotApplicable);  // only three fixed points
    CHECK_THROWS_AS(brute::count_fixed_septuples({4, 1, 1}, 3), std::invalid_argument);  // sums to 6
}

TEST_CASE("frame-fixed spot values over larger fields") {
    auto nine = brute::count_fixed_septuples(Partition(7, 1), 9, Strategy::FrameFix);
    CHECK(nine.quotient_count == 240);
    auto eleven = brute::count_fixed_septuples(Partition(7, 1), 11, Strategy::FrameFix);
    CHECK(eleven.quotient_count == 8640);
}

TEST_CASE("boundary component census ties to the headline count") {
    for (const Partition& lam : {Partition{7}, Partition{6, 1}}) {
        INFO(partition_display(lam));
        auto census = brute::count_fixed_delta_components(lam, 3, closedform::case_uspec(lam));
        REQUIRE(census.count("U") == 1);
        REQUIRE(census.count("Δ_l") == 1);
        REQUIRE(census.count("Δ_c") == 1);
        REQUIRE(census.count("Δ_l∩Δ_c") == 1);
        REQUIRE(census.count("GP") == 1);
        // inclusion-exclusion inside the census
        CHECK(census["U"] - census["Δ_l"] - census["Δ_c"] + census["Δ_l∩Δ_c"] == census["GP"]);
        // each aggregate piece matches its closed form (the transcription also
        // holds finer sub-pieces the census does not track)
        for (const char* name : {"U", "Δ_l", "Δ_c", "Δ_l∩Δ_c"})
            CHECK(census[name] == closedform::delta_component_formula(lam, name).poly.eval(3));
        // the general-position total is the raw headline total
        CHECK(census["GP"] == brute::count_fixed_septuples(lam, 3).raw_general_position);
    }
}

TEST_CASE("line counts match the genus-zero table and an elementary oracle") {
    CHECK(brute::count_m0n_fixed({8}, 3) == 270);
    CHECK(brute::count_m0n_fixed(Partition(8, 1), 7) == closedform::m08_count(Partition(8, 1)).eval(7));
    // all distinct rational points, genus 2: (q-2)(q-3)(q-4) ordered 6-tuples
    // on the line modulo the triply transitive group action
    for (long long q : {5, 7, 9}) {
        CHECK(brute::count_m0n_fixed(Partition(6, 1), q, 2) == (q - 2) * (q - 3) * (q - 4));
    }
    CHECK_THROWS_AS(brute::count_m0n_fixed({7}, 3), std::invalid_argument);    // 2g+2 = 8
    CHECK_THROWS_AS(brute::count_m0n_fixed({6}, 3, 1), std::invalid_argument); // genus >= 2
    CHECK_THROWS_AS(brute::count_m0n_fixed(Partition(18, 1), 3, 8), std::invalid_argument);
}

TEST_CASE("infeasible towers are refused loudly") {
    CHECK_THROWS_AS(brute::count_fixed_septuples({4, 3}, 5), gf::ExtensionTooLarge);  // 5^12 over cap
    CHECK_THROWS_AS(brute::count_fixed_septuples({7}, 23), gf::ExtensionTooLarge);    // 23^7 over cap
    CHECK_THROWS_AS(brute::count_m0n_fixed({8}, 23), gf::ExtensionTooLarge);          // 23^8 over cap
    brute::Options tiny;
    tiny.tower_cap = 100;
    CHECK_THROWS_AS(brute::count_fixed_septuples({7}, 3, Strategy::Auto, tiny), gf::ExtensionTooLarge);
}

TEST_CASE("worker count does not change any total") {
    brute::Options one, four;
    one.threads = 1;
    four.threads = 4;
    CHECK(brute::count_fixed_septuples({7}, 3, Strategy::Auto, one).quotient_count ==
          brute::count_fixed_septuples({7}, 3, Strategy::Auto, four).quotient_count);
    CHECK(brute::count_m0n_fixed({4, 4}, 5, 3, one) == brute::count_m0n_fixed({4, 4}, 5, 3, four));
}

TEST_CASE("conjugate tuple walker visits the expected leads") {
    brute::Options opts;
    long long visits = 0;
    std::vector<projgeom::ProjPoint> last;
    brute::enumerate_conjugate_tuples(
        CycleLayout::canonical({1}), 2, 3,
        [&](const std::vector<projgeom::ProjPoint>& pts) {
            ++visits;
            last = pts;
        },
        opts);
    CHECK(visits == 13);  // |P^2(F_3)|
    REQUIRE(last.size() == 1);

    // strict degree-2 leads on the line: |P^1(F_9)| - |P^1(F_3)| = 6
    visits = 0;
    brute::enumerate_conjugate_tuples(CycleLayout::canonical({2}), 1, 3,
                                      [&](const std::vector<projgeom::ProjPoint>&) { ++visits; }, opts);
    CHECK(visits == 6);

    // one strict pair and one rational point, no cross-cycle filtering: 6 * 4
    visits = 0;
    brute::enumerate_conjugate_tuples(
        CycleLayout::canonical({2, 1}), 1, 3,
        [&](const std::vector<projgeom::ProjPoint>& pts) {
            ++visits;
            REQUIRE(pts.size() == 3);
        },
        opts);
    CHECK(visits == 24);

    // tuples satisfy the Frobenius chaining along each cycle
    auto T = gf::FieldTower::build(3, 2);
    brute::enumerate_conjugate_tuples(
        CycleLayout::canonical({2, 1}), 1, 3,
        [&](const std::vector<projgeom::ProjPoint>& pts) {
            CHECK(projgeom::frobenius_point(*T, pts[0]) == pts[1]);
            CHECK(projgeom::frobenius_point(*T, pts[1]) == pts[0]);
            CHECK(projgeom::frobenius_point(*T, pts[2]) == pts[2]);
        },
        opts);
}
