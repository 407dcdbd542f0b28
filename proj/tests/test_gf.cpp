// Arithmetic in towers of odd-characteristic finite fields: structural
// invariants (subfield lattice, Frobenius orbits, exp/log), exhaustive
// axiom checks on small towers, and the error taxonomy.
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "moduli/gf.hpp"

using namespace moduli;

namespace {

int mobius_of(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

gf::TowerPtr tower(long long q, int m) { return gf::FieldTower::build(q, m); }

} // namespace

TEST_CASE("prime power parsing") {
    auto pp = gf::parse_prime_power(3);
    CHECK(pp.p == 3);
    CHECK(pp.n == 1);
    CHECK(pp.q == 3);

    pp = gf::parse_prime_power(9);
    CHECK(pp.p == 3);
    CHECK(pp.n == 2);

    pp = gf::parse_prime_power(125);
    CHECK(pp.p == 5);
    CHECK(pp.n == 3);

    pp = gf::parse_prime_power(169);
    CHECK(pp.p == 13);
    CHECK(pp.n == 2);

    CHECK_THROWS_AS(gf::parse_prime_power(2), gf::EvenCharacteristic);
    CHECK_THROWS_AS(gf::parse_prime_power(4), gf::EvenCharacteristic);
    CHECK_THROWS_AS(gf::parse_prime_power(16), gf::EvenCharacteristic);
    CHECK_THROWS_AS(gf::parse_prime_power(15), std::invalid_argument);  // 3 * 5
    CHECK_THROWS_AS(gf::parse_prime_power(45), std::invalid_argument);  // 3^2 * 5
    CHECK_THROWS_AS(gf::parse_prime_power(0), std::invalid_argument);
    CHECK_THROWS_AS(gf::parse_prime_power(-3), std::invalid_argument);
}

TEST_CASE("prime field arithmetic matches integers mod p") {
    for (long long p : {3, 5, 7, 11, 13}) {
        auto T = tower(p, 1);
        REQUIRE(T->Q == static_cast<std::uint64_t>(p));
        for (long long a = 0; a < p; ++a) {
            for (long long b = 0; b < p; ++b) {
                gf::Elt ea = T->from_int(a), eb = T->from_int(b);
                CHECK(T->add(ea, eb) == T->from_int(a + b));
                CHECK(T->sub(ea, eb) == T->from_int(a - b));
                CHECK(T->mul(ea, eb) == T->from_int(a * b));
            }
        }
    }
}

TEST_CASE("field axioms hold exhaustively on small towers") {
    for (auto [q, m] : std::vector<std::pair<long long, int>>{{3, 1}, {3, 2}, {3, 3}, {5, 2}, {9, 1}, {7, 2}}) {
        auto T = tower(q, m);
        INFO("tower F_" << q << "^" << m);
        const auto Q = static_cast<gf::Elt>(T->Q);
        // identities and inverses, all elements
        for (gf::Elt a = 0; a < Q; ++a) {
            CHECK(T->add(a, T->zero()) == a);
            CHECK(T->mul(a, T->one()) == a);
            CHECK(T->add(a, T->neg(a)) == gf::kZero);
            if (a != gf::kZero) CHECK(T->mul(a, T->inv(a)) == T->one());
        }
        // commutativity, associativity, distributivity over all pairs with a
        // fixed third element, plus full pair coverage for the binary laws
        gf::Elt c = T->gen();
        for (gf::Elt a = 0; a < Q; ++a) {
            for (gf::Elt b = 0; b < Q; ++b) {
                CHECK(T->add(a, b) == T->add(b, a));
                CHECK(T->mul(a, b) == T->mul(b, a));
                CHECK(T->add(T->add(a, b), c) == T->add(a, T->add(b, c)));
                CHECK(T->mul(T->mul(a, b), c) == T->mul(a, T->mul(b, c)));
                CHECK(T->mul(a, T->add(b, c)) == T->add(T->mul(a, b), T->mul(a, c)));
            }
        }
    }
}

TEST_CASE("exp and log round-trip over the whole unit group") {
    for (auto [q, m] : std::vector<std::pair<long long, int>>{{3, 6}, {5, 4}, {9, 2}, {3, 12}}) {
        auto T = tower(q, m);
        INFO("tower F_" << q << "^" << m);
        for (std::uint64_t i = 0; i < T->order_units(); ++i) {
            gf::Elt e = T->exp(i);
            REQUIRE(T->log(e) == i);
        }
        // packed round-trip on a stride of elements (full set for small towers)
        std::uint64_t step = T->Q > 100000 ? 101 : 1;
        for (std::uint64_t i = 0; i < T->order_units(); i += step) {
            gf::Elt e = T->exp(i);
            CHECK(T->from_packed(T->packed_of(e)) == e);
        }
        CHECK(T->packed_of(gf::kZero) == 0);
    }
}

TEST_CASE("subfield lattice has q^d elements per divisor degree") {
    for (auto [q, m] : std::vector<std::pair<long long, int>>{{3, 6}, {3, 12}, {5, 4}, {9, 2}, {7, 3}}) {
        auto T = tower(q, m);
        INFO("tower F_" << q << "^" << m);
        for (int d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            long long members = 0;
            for (gf::Elt a = 0; a < static_cast<gf::Elt>(T->Q); ++a)
                if (T->in_subfield(a, d)) ++members;
            CHECK(members == ipow(q, d));
        }
        // non-divisor degrees admit nothing beyond what divisors already give
        if (m == 6) {
            for (gf::Elt a = 0; a < static_cast<gf::Elt>(T->Q); ++a) CHECK_FALSE(T->in_subfield(a, 4));
        }
    }
}

TEST_CASE("Frobenius orbit census matches the Mobius count") {
    for (auto [q, m] : std::vector<std::pair<long long, int>>{{3, 6}, {3, 12}, {5, 4}, {9, 2}}) {
        auto T = tower(q, m);
        INFO("tower F_" << q << "^" << m);
        std::map<int, long long> orbit_size_census;
        for (std::uint64_t w = 0; w < T->Q; ++w) {  // exhaustive: 3^12 is still only 531k
            auto a = static_cast<gf::Elt>(w);
            int d = T->subfield_degree(a);
            CHECK(m % d == 0);
            // orbit size under x -> x^q equals the strict subfield degree
            gf::Elt x = a;
            int orbit = 0;
            do {
                x = T->frobenius(x);
                ++orbit;
            } while (x != a);
            CHECK(orbit == (a == gf::kZero ? 1 : d));
            ++orbit_size_census[d];
        }
        for (auto [d, count] : orbit_size_census) {
            // strict(d) = sum over e | d of mu(d/e) q^e; the zero element nets
            // out of every d > 1 and lands in d = 1, matching subfield_degree.
            long long strict = 0;
            for (int e = 1; e <= d; ++e)
                if (d % e == 0) strict += mobius_of(d / e) * ipow(q, e);
            CHECK(count == strict);
        }
    }
}

TEST_CASE("Frobenius is a field automorphism fixing the base field") {
    for (auto [q, m] : std::vector<std::pair<long long, int>>{{3, 2}, {3, 3}, {5, 2}, {9, 2}}) {
        auto T = tower(q, m);
        INFO("tower F_" << q << "^" << m);
        const auto Q = static_cast<gf::Elt>(T->Q);
        for (gf::Elt a = 0; a < Q; ++a) {
            // frobenius(x) = x^q, so base-field elements are exactly the fixed points
            CHECK((T->frobenius(a) == a) == T->in_subfield(a, 1));
            CHECK(T->frobenius(a) == T->pow(a, static_cast<long long>(T->q)));
            CHECK(T->frobenius(a, m) == a);
            for (gf::Elt b = 0; b < Q; ++b) {
                CHECK(T->frobenius(T->add(a, b)) == T->add(T->frobenius(a), T->frobenius(b)));
                CHECK(T->frobenius(T->mul(a, b)) == T->mul(T->frobenius(a), T->frobenius(b)));
            }
        }
        // iterated Frobenius composes: F^j = F applied j times
        std::mt19937 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            auto a = static_cast<gf::Elt>(rng() % T->Q);
            int j = static_cast<int>(rng() % (2 * m));
            gf::Elt it = a;
            for (int i = 0; i < j; ++i) it = T->frobenius(it);
            CHECK(T->frobenius(a, j) == it);
        }
    }
}

TEST_CASE("power map agrees with repeated multiplication") {
    auto T = tower(3, 3);
    for (gf::Elt a = 0; a < static_cast<gf::Elt>(T->Q); ++a) {
        gf::Elt acc = T->one();
        for (int e = 0; e <= 30; ++e) {
            CHECK(T->pow(a, e) == acc);
            acc = T->mul(acc, a);
        }
    }
    // negative exponents invert
    gf::Elt g = T->gen();
    CHECK(T->pow(g, -1) == T->inv(g));
    CHECK(T->pow(g, -5) == T->inv(T->pow(g, 5)));
    CHECK_THROWS_AS(T->pow(gf::kZero, -1), gf::DivisionByZero);
}

TEST_CASE("modulus selection is deterministic and base-independent") {
    auto a = tower(3, 2);
    auto b = tower(3, 2);
    CHECK(a->modulus == b->modulus);
    // F_9 built as a degree-2 tower over F_3 and as a degree-1 tower over F_9
    // scan the same polynomial space (both have prime-field degree 2).
    auto c = tower(9, 1);
    CHECK(a->modulus == c->modulus);
    CHECK(a->exp_packed == c->exp_packed);

    // the generator is primitive: its powers exhaust the unit group
    auto T = tower(5, 3);
    std::set<gf::Elt> seen;
    gf::Elt x = T->one();
    for (std::uint64_t i = 0; i < T->order_units(); ++i) {
        seen.insert(x);
        x = T->mul(x, T->gen());
    }
    CHECK(seen.size() == T->order_units());
}

TEST_CASE("table cap refuses oversized towers loudly") {
    CHECK_THROWS_AS(gf::FieldTower::build(3, 16), gf::ExtensionTooLarge);  // 3^16 > 2^24
    CHECK_THROWS_AS(gf::FieldTower::build(5, 11), gf::ExtensionTooLarge);
    CHECK_THROWS_AS(gf::FieldTower::build(3, 4, 50), gf::ExtensionTooLarge);  // custom cap
    CHECK_NOTHROW(gf::FieldTower::build(3, 4));
}

TEST_CASE("division by zero and mixed towers are rejected") {
    auto T = tower(3, 2);
    CHECK_THROWS_AS(T->inv(gf::kZero), gf::DivisionByZero);
    CHECK_THROWS_AS(T->div(T->one(), gf::kZero), gf::DivisionByZero);
    CHECK_THROWS_AS(T->log(gf::kZero), gf::DivisionByZero);

    auto S = tower(3, 3);
    gf::FieldElement a{T, T->one()};
    gf::FieldElement b{S, S->one()};
    CHECK_THROWS_AS(a + b, gf::TowerMismatch);
    CHECK_THROWS_AS(a * b, gf::TowerMismatch);
    CHECK_THROWS_AS(a == b, gf::TowerMismatch);

    gf::FieldElement c{T, T->gen()};
    CHECK((a + c) - c == a);
    CHECK((a + c) * (a + c) == (a + c) * a + (a + c) * c);
    CHECK((-c) + c == gf::FieldElement(T, gf::kZero));
    CHECK((a / c) * c == a);
}

TEST_CASE("subfield embedding is multiplicative and consistent across degrees") {
    auto T = tower(3, 6);
    // the degree-2 members form a field: closed under add/mul (sampled)
    std::vector<gf::Elt> members;
    for (gf::Elt a = 0; a < static_cast<gf::Elt>(T->Q); ++a)
        if (T->in_subfield(a, 2)) members.push_back(a);
    REQUIRE(members.size() == 9);
    for (gf::Elt a : members)
        for (gf::Elt b : members) {
            CHECK(T->in_subfield(T->add(a, b), 2));
            CHECK(T->in_subfield(T->mul(a, b), 2));
        }
    // subfield_degree is the minimal divisor
    for (gf::Elt a = 0; a < static_cast<gf::Elt>(T->Q); ++a) {
        int d = T->subfield_degree(a);
        CHECK(T->in_subfield(a, d));
        for (int e = 1; e < d; ++e)
            if (d % e == 0) CHECK_FALSE(T->in_subfield(a, e));
    }
}
