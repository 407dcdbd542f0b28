#include "moduli/closedform.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

#include "moduli/projgeom.hpp"

namespace moduli::closedform {

namespace {

using CP = CountPolynomial;

CP Q() { return CP::var(); }
CP qp(int k) { return CP::power(k); }

// Polynomial from descending coefficients, as the tables print them.
CP desc(std::initializer_list<long long> coeffs) {
    std::vector<long long> c(coeffs);
    std::reverse(c.begin(), c.end());
    return CP(std::move(c));
}

// |P^2(F_{q^d})| as a polynomial in q.
CP p2(int d) { return qp(2 * d) + qp(d) + 1; }

std::map<int, CP> p2_counts(int up_to) {
    std::map<int, CP> m;
    for (int d = 1; d <= up_to; ++d) m[d] = p2(d);
    return m;
}

struct Registry {
    std::vector<FormulaEntry> entries;
    std::map<Partition, CP> t1, t3, t4, t5;
    std::map<Partition, USpec> uspec;
    std::vector<Partition> complete;

    void add(Space s, const Partition& lam, const std::string& comp, USpec u, const CP& p,
             const std::string& anchor) {
        entries.push_back(FormulaEntry{s, lam, comp, u, p, anchor});
    }

    void add_case(const Partition& lam, USpec u,
                  std::vector<std::tuple<std::string, CP, std::string>> comps) {
        uspec[lam] = u;
        bool hasU = false, hasL = false, hasC = false, hasLC = false;
        for (auto& [name, p, anchor] : comps) {
            add(Space::DeltaComponent, lam, name, u, p, anchor);
            if (name == "U") hasU = true;
            if (name == "Δ_l") hasL = true;
            if (name == "Δ_c") hasC = true;
            if (name == "Δ_l∩Δ_c") hasLC = true;
        }
        if (hasU && hasL && hasC && hasLC) complete.push_back(lam);
    }
};

Registry build_registry() {
    Registry R;
    const CP q = Q();
    const CP PGL3 = qp(3) * (qp(3) - 1) * (qp(2) - 1);

    // ---- plane quartic rows (partitions of 7) ------------------------------
    auto t1row = [&](Partition lam, CP p, const std::string& text) {
        R.t1[lam] = p;
        R.add(Space::Q2, lam, "count", USpec::Full, p, text);
    };
    t1row({7}, desc({1, 0, 0, 1, 0, 0, 0}), "q^6 + q^3");
    t1row({6, 1}, desc({1, 0, 0, -2, 0, 0, 1}), "q^6 - 2q^3 + 1");
    t1row({5, 2}, desc({1, 0, 0, 0, -1, 0, 0}), "q^6 - q^2");
    t1row({5, 1, 1}, desc({1, 0, 0, 0, -1, 0, 0}), "q^6 - q^2");
    t1row({4, 3}, desc({1, -1, -2, 1, 1, 0, 0}), "q^6 - q^5 - 2q^4 + q^3 + q^2");
    t1row({4, 2, 1}, desc({1, -1, -2, 1, -2, 0, 3}), "q^6 - q^5 - 2q^4 + q^3 - 2q^2 + 3");
    t1row({4, 1, 1, 1}, desc({1, -1, -2, 1, -2, 0, 3}), "q^6 - q^5 - 2q^4 + q^3 - 2q^2 + 3");
    t1row({3, 3, 1}, desc({1, -2, -2, -8, 16, 10, 21}),
          "q^6 - 2q^5 - 2q^4 - 8q^3 + 16q^2 + 10q + 21");
    t1row({3, 2, 2}, desc({1, -1, -2, 3, 1, -2, 0}), "q^6 - q^5 - 2q^4 + 3q^3 + q^2 - 2q");
    t1row({3, 2, 1, 1}, desc({1, -3, 0, 5, -1, -2, 0}), "q^6 - 3q^5 + 5q^3 - q^2 - 2q");
    t1row({3, 1, 1, 1, 1}, desc({1, -5, 10, -5, -11, 10, 0}),
          "q^6 - 5q^5 + 10q^4 - 5q^3 - 11q^2 + 10q");
    t1row({2, 2, 2, 1}, desc({1, -3, -6, 19, 6, -24, 7}),
          "q^6 - 3q^5 - 6q^4 + 19q^3 + 6q^2 - 24q + 7");
    t1row({2, 2, 1, 1, 1}, desc({1, -7, 10, 15, -26, -8, 15}),
          "q^6 - 7q^5 + 10q^4 + 15q^3 - 26q^2 - 8q + 15");
    t1row({2, 1, 1, 1, 1, 1}, desc({1, -15, 90, -265, 374, -200, 15}),
          "q^6 - 15q^5 + 90q^4 - 265q^3 + 374q^2 - 200q + 15");
    t1row({1, 1, 1, 1, 1, 1, 1}, desc({1, -35, 490, -3485, 13174, -24920, 18375}),
          "q^6 - 35q^5 + 490q^4 - 3485q^3 + 13174q^2 - 24920q + 18375");

    // ---- ordered points on a line, n = 8 (partitions of 8) -----------------
    auto t3row = [&](Partition lam, CP p, const std::string& text) {
        R.t3[lam] = p;
        R.add(Space::M08, lam, "count", USpec::Full, p, text);
    };
    t3row({8}, (qp(2) + 1) * qp(3), "(q^2+1)q^3");
    t3row({7, 1}, (q + 1) * (qp(2) + q + 1) * (qp(2) - q + 1), "(q+1)(q^2+q+1)(q^2-q+1)");
    t3row({6, 2}, q * (q - 1) * (qp(3) + q - 1), "q(q-1)(q^3+q-1)");
    t3row({6, 1, 1}, q * (q + 1) * (qp(3) + q - 1), "q(q+1)(q^3+q-1)");
    t3row({5, 3}, q * (q - 1) * (q + 1) * (qp(2) + 1), "q(q-1)(q+1)(q^2+1)");
    t3row({5, 2, 1}, q * (q - 1) * (q + 1) * (qp(2) + 1), "q(q-1)(q+1)(q^2+1)");
    t3row({5, 1, 1, 1}, q * (q - 1) * (q + 1) * (qp(2) + 1), "q(q-1)(q+1)(q^2+1)");
    t3row({4, 4}, q * (qp(4) - qp(2) - 4), "q(q^4-q^2-4)");
    t3row({4, 3, 1}, (q - 1) * qp(2) * (q + 1) * (q + 1), "(q-1)q^2(q+1)^2");
    t3row({4, 2, 2}, (q - 1) * (q - 2) * (q + 1) * qp(2), "(q-1)(q-2)(q+1)q^2");
    t3row({4, 2, 1, 1}, (q - 1) * (q + 1) * qp(3), "(q-1)(q+1)q^3");
    t3row({4, 1, 1, 1, 1}, (q - 1) * (q - 2) * (q + 1) * qp(2), "(q-1)(q-2)(q+1)q^2");
    t3row({3, 3, 2}, q * (q - 1) * (qp(3) - q - 3), "q(q-1)(q^3-q-3)");
    t3row({3, 3, 1, 1}, q * (q + 1) * (qp(3) - q - 3), "q(q+1)(q^3-q-3)");
    t3row({3, 2, 2, 1}, q * (q - 1) * (q - 2) * (q + 1) * (q + 1), "q(q-1)(q-2)(q+1)^2");
    t3row({3, 2, 1, 1, 1}, (q + 1) * qp(2) * (q - 1) * (q - 1), "(q+1)q^2(q-1)^2");
    t3row({3, 1, 1, 1, 1, 1}, q * (q - 1) * (q - 2) * (q - 3) * (q + 1), "q(q-1)(q-2)(q-3)(q+1)");
    t3row({2, 2, 2, 2}, (q - 2) * (q - 3) * (q + 2) * (qp(2) - q - 4), "(q-2)(q-3)(q+2)(q^2-q-4)");
    t3row({2, 2, 2, 1, 1}, q * (q - 2) * (q + 1) * (qp(2) - q - 4), "q(q-2)(q+1)(q^2-q-4)");
    t3row({2, 2, 1, 1, 1, 1}, q * (q - 1) * (q + 1) * (q - 2) * (q - 2), "q(q-1)(q+1)(q-2)^2");
    t3row({2, 1, 1, 1, 1, 1, 1}, q * (q - 1) * (q - 2) * (q - 3) * (q - 4), "q(q-1)(q-2)(q-3)(q-4)");
    t3row({1, 1, 1, 1, 1, 1, 1, 1}, (q - 2) * (q - 3) * (q - 4) * (q - 5) * (q - 6),
          "(q-2)(q-3)(q-4)(q-5)(q-6)");

    // ---- hyperelliptic locus, S8-equivariant (partitions of 8) -------------
    auto t4row = [&](Partition lam, CP p, const std::string& text) {
        R.t4[lam] = p;
        R.add(Space::H3_S8, lam, "count", USpec::Full, p, text);
    };
    t4row({8}, desc({2, 0, 2, 0, 0, 0}), "2q^5 + 2q^3");
    t4row({7, 1}, desc({1, 1, 1, 1, 1, 1}), "q^5 + q^4 + q^3 + q^2 + q + 1");
    t4row({6, 2}, desc({3, -3, 3, -6, 3, 0}), "3q^5 - 3q^4 + 3q^3 - 6q^2 + 3q");
    t4row({6, 1, 1}, desc({1, 1, 1, 0, -1, 0}), "q^5 + q^4 + q^3 - q");
    t4row({5, 3}, desc({1, 0, 0, 0, -1, 0}), "q^5 - q");
    t4row({5, 2, 1}, desc({1, 0, 0, 0, -1, 0}), "q^5 - q");
    t4row({5, 1, 1, 1}, desc({1, 0, 0, 0, -1, 0}), "q^5 - q");
    t4row({4, 4}, desc({4, 0, -4, 0, -16, 0}), "4q^5 - 4q^3 - 16q");
    t4row({4, 3, 1}, desc({2, 2, -2, -2, 0, 0}), "2q^5 + 2q^4 - 2q^3 - 2q^2");
    t4row({4, 2, 2}, desc({6, -12, -6, 12, 0, 0}), "6q^5 - 12q^4 - 6q^3 + 12q^2");
    t4row({4, 2, 1, 1}, desc({2, 0, -2, 0, 0, 0}), "2q^5 - 2q^3");
    t4row({4, 1, 1, 1, 1}, desc({2, -4, -2, 4, 0, 0}), "2q^5 - 4q^4 - 2q^3 + 4q^2");
    t4row({3, 3, 2}, desc({1, -1, -1, -2, 3, 0}), "q^5 - q^4 - q^3 - 2q^2 + 3q");
    t4row({3, 3, 1, 1}, desc({3, 3, -3, -12, -9, 0}), "3q^5 + 3q^4 - 3q^3 - 12q^2 - 9q");
    t4row({3, 2, 2, 1}, desc({2, -2, -6, 2, 4, 0}), "2q^5 - 2q^4 - 6q^3 + 2q^2 + 4q");
    t4row({3, 2, 1, 1, 1}, desc({4, -4, -4, 4, 0, 0}), "4q^5 - 4q^4 - 4q^3 + 4q^2");
    t4row({3, 1, 1, 1, 1, 1}, desc({6, -30, 30, 30, -36, 0}), "6q^5 - 30q^4 + 30q^3 + 30q^2 - 36q");
    t4row({2, 2, 2, 2}, desc({12, -48, -60, 336, 48, -576}),
          "12q^5 - 48q^4 - 60q^3 + 336q^2 + 48q - 576");
    t4row({2, 2, 2, 1, 1}, desc({4, -8, -20, 24, 32, 0}), "4q^5 - 8q^4 - 20q^3 + 24q^2 + 32q");
    t4row({2, 2, 1, 1, 1, 1}, desc({8, -32, 24, 32, -32, 0}), "8q^5 - 32q^4 + 24q^3 + 32q^2 - 32q");
    t4row({2, 1, 1, 1, 1, 1, 1}, desc({16, -160, 560, -800, 384, 0}),
          "16q^5 - 160q^4 + 560q^3 - 800q^2 + 384q");
    t4row({1, 1, 1, 1, 1, 1, 1, 1}, desc({36, -720, 5580, -20880, 37584, -25920}),
          "36q^5 - 720q^4 + 5580q^3 - 20880q^2 + 37584q - 25920");

    // ---- hyperelliptic locus, S7-equivariant (partitions of 7) -------------
    // Row for mu equals the S8 row for mu + [1].
    auto t5row = [&](Partition lam, CP p, const std::string& text) {
        R.t5[lam] = p;
        R.add(Space::H3_S7, lam, "count", USpec::Full, p, text);
    };
    t5row({7}, desc({1, 1, 1, 1, 1, 1}), "q^5 + q^4 + q^3 + q^2 + q + 1");
    t5row({6, 1}, desc({1, 1, 1, 0, -1, 0}), "q^5 + q^4 + q^3 - q");
    t5row({5, 2}, desc({1, 0, 0, 0, -1, 0}), "q^5 - q");
    t5row({5, 1, 1}, desc({1, 0, 0, 0, -1, 0}), "q^5 - q");
    t5row({4, 3}, desc({2, 2, -2, -2, 0, 0}), "2q^5 + 2q^4 - 2q^3 - 2q^2");
    t5row({4, 2, 1}, desc({2, 0, -2, 0, 0, 0}), "2q^5 - 2q^3");
    t5row({4, 1, 1, 1}, desc({2, -4, -2, 4, 0, 0}), "2q^5 - 4q^4 - 2q^3 + 4q^2");
    t5row({3, 3, 1}, desc({3, 3, -3, -12, -9, 0}), "3q^5 + 3q^4 - 3q^3 - 12q^2 - 9q");
    t5row({3, 2, 2}, desc({2, -2, -6, 2, 4, 0}), "2q^5 - 2q^4 - 6q^3 + 2q^2 + 4q");
    t5row({3, 2, 1, 1}, desc({4, -4, -4, 4, 0, 0}), "4q^5 - 4q^4 - 4q^3 + 4q^2");
    t5row({3, 1, 1, 1, 1}, desc({6, -30, 30, 30, -36, 0}), "6q^5 - 30q^4 + 30q^3 + 30q^2 - 36q");
    t5row({2, 2, 2, 1}, desc({4, -8, -20, 24, 32, 0}), "4q^5 - 8q^4 - 20q^3 + 24q^2 + 32q");
    t5row({2, 2, 1, 1, 1}, desc({8, -32, 24, 32, -32, 0}), "8q^5 - 32q^4 + 24q^3 + 32q^2 - 32q");
    t5row({2, 1, 1, 1, 1, 1}, desc({16, -160, 560, -800, 384, 0}),
          "16q^5 - 160q^4 + 560q^3 - 800q^2 + 384q");
    t5row({1, 1, 1, 1, 1, 1, 1}, desc({36, -720, 5580, -20880, 37584, -25920}),
          "36q^5 - 720q^4 + 5580q^3 - 20880q^2 + 37584q - 25920");

    // ---- per-case boundary components (partitions of 7) --------------------
    // Each case records its ambient set U, the lines component Δ_l, the conics
    // component Δ_c, and their intersection, plus the individually displayed
    // sub-pieces of the derivation.  Assembled totals carry the full
    // inclusion-exclusion already applied.
    auto conj = [&](const Partition& lam) {
        return projgeom::count_conjugate_tuples<CP>(p2_counts(lam.front()), lam);
    };
    auto strictp = [&](int d) {
        CP s;
        for (int e = 1; e <= d; ++e) {
            if (d % e != 0) continue;
            int mu = projgeom::mobius(d / e);
            if (mu == 1) s += p2(e);
            if (mu == -1) s -= p2(e);
        }
        return s;
    };

    // [7]
    R.add_case({7}, USpec::Full,
               {{"U", conj({7}), "q^14 + q^7 - q^2 - q"},
                {"Δ_l", (qp(2) + q + 1) * (qp(7) - q), "(q^2+q+1)(q^7-q)"},
                {"Δ_c", (qp(5) - qp(2)) * (qp(7) - q), "(q^5-q^2)(q^7-q)"},
                {"Δ_l∩Δ_c", CP(), "0 (the two components are disjoint)"}});

    // [1,6]
    {
        CP l1 = (qp(2) + q + 1) * (qp(6) - qp(3) - qp(2) + q) * (qp(2) + q + 1);
        CP l2 = (qp(4) - q) * (qp(6) - qp(2)) * (qp(2) + q + 1);
        CP l3 = (qp(2) + q + 1) * (qp(3) - q) * (qp(6) - qp(3));
        CP l23 = (qp(4) - q) * (qp(2) + q) * (qp(3) - q);
        R.add_case({6, 1}, USpec::Full,
                   {{"U", conj({6, 1}), "conjugate [1,6]-tuple count on the plane"},
                    {"Δ_{l,1}", l1, "(q^2+q+1)(q^6-q^3-q^2+q)(q^2+q+1)"},
                    {"Δ_{l,2}", l2, "(q^4-q)(q^6-q^2)(q^2+q+1)"},
                    {"Δ_{l,3}", l3, "(q^2+q+1)(q^3-q)(q^6-q^3)"},
                    {"Δ_{l,2}∩Δ_{l,3}", l23, "(q^4-q)(q^2+q)(q^3-q)"},
                    {"Δ_l", l1 + l2 + l3 - l23, "Δ_{l,1}+Δ_{l,2}+Δ_{l,3}-Δ_{l,2}∩Δ_{l,3}"},
                    {"Δ_c", (qp(5) - qp(2)) * (qp(6) - qp(3) - qp(2) + q) * (qp(2) + q + 1),
                     "(q^5-q^2)(q^6-q^3-q^2+q)(q^2+q+1)"},
                    {"Δ_l∩Δ_c", (qp(5) - qp(2)) * qp(2) * (qp(3) - q), "(q^5-q^2)q^2(q^3-q)"}});
    }

    // [2,5] and [1,1,5]: the derivations reach the count by direct products in
    // prose; no boundary-component closed forms are displayed, so nothing is
    // transcribed for these two cases.
    R.uspec[{5, 2}] = USpec::Full;
    R.uspec[{5, 1, 1}] = USpec::Full;

    // [3,4]
    R.add_case({4, 3}, USpec::Full,
               {{"U", conj({4, 3}), "conjugate [3,4]-tuple count on the plane"},
                {"Δ_l",
                 desc({1, 2, 0, -3, -2, 1, 1, -1, -1, 1, 1, 0, 0, 0}),
                 "q^13+2q^12-3q^10-2q^9+q^8+q^7-q^6-q^5+q^4+q^3"},
                {"Δ_c", (qp(5) - qp(2)) * (qp(4) - qp(2)) * (qp(3) - q),
                 "(q^5-q^2)(q^4-q^2)(q^3-q)"},
                {"Δ_l∩Δ_c", CP(), "0 (the two components are disjoint)"}});

    // [1,2,4]
    {
        CP dl_total = qp(13) + 5 * qp(12) - 4 * qp(10) - 5 * qp(9) - 3 * qp(8) + 2 * qp(7) +
                      qp(6) + 3 * qp(5) + qp(4) - qp(3);
        CP dc = (qp(5) - qp(2)) * (qp(4) - qp(2)) * (qp(2) - q) * (qp(2) + q + 1);
        CP a3c = (qp(5) - qp(2)) * (qp(4) - qp(2)) * (qp(2) - q);
        CP b6c = a3c * (q + 1);
        CP half_sum = (qp(5) - qp(2)) * q * (q + 1) * (q - 1) * (qp(2) - 1) +
                      (qp(5) - qp(2)) * (qp(2) - q) * (q + 1) * (qp(2) - 1);
        CP dldc = a3c + b6c - half_sum.divexact(2);
        R.add_case(
            {4, 2, 1}, USpec::Full,
            {{"U", conj({4, 2, 1}), "conjugate [1,2,4]-tuple count on the plane"},
             {"Δ_{l,2}^1", (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(4) - qp(2)) * (qp(2) - q),
              "(q^2+q+1)^2(q^4-q^2)(q^2-q)"},
             {"Δ_{l,2}^2", 2 * (qp(4) - q) * (qp(4) - qp(2)) * qp(2) * (qp(2) + q + 1),
              "2(q^4-q)(q^4-q^2)q^2(q^2+q+1)"},
             {"Δ_{l,2}^3", 2 * (qp(4) - q) * (qp(4) - qp(2)) * (qp(2) + q + 1),
              "2(q^4-q)(q^4-q^2)(q^2+q+1)"},
             {"Δ_{l,3}^1", (qp(2) + q + 1) * (qp(4) - qp(2)) * (q + 1) * (qp(4) - q),
              "(q^2+q+1)(q^4-q^2)(q+1)(q^4-q)"},
             {"Δ_{l,3}^2", (qp(4) - q) * (qp(4) - q) * (qp(4) - qp(2)), "(q^4-q)^2(q^4-q^2)"},
             {"Δ_{l,2}^1∩Δ_{l,3}^1", (qp(2) + q + 1) * (qp(4) - qp(2)) * (qp(2) - q) * (q + 1),
              "(q^2+q+1)(q^4-q^2)(q^2-q)(q+1)"},
             {"Δ_{l,2}^2∩Δ_{l,3}^2", 2 * (qp(4) - q) * (qp(4) - qp(2)) * qp(2),
              "2(q^4-q)(q^4-q^2)q^2"},
             {"Δ_{l,2}^3∩Δ_{l,3}^2", 2 * (qp(4) - q) * (qp(4) - qp(2)), "2(q^4-q)(q^4-q^2)"},
             {"Δ_l", dl_total, "q^13+5q^12-4q^10-5q^9-3q^8+2q^7+q^6+3q^5+q^4-q^3"},
             {"Δ_c", dc, "(q^5-q^2)(q^4-q^2)(q^2-q)(q^2+q+1)"},
             {"Δ_l∩Δ_c", dldc, "q^12+q^11-4q^10-2q^9+3q^8+4q^7-4q^5+q^3"}});
    }

    // [1,1,1,4] — ambient set: the three rational points not collinear.
    {
        CP U = strictp(4) * (qp(2) + q + 1) * (qp(2) + q) * qp(2);
        CP dl1 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(4) - qp(2)) * (qp(2) + q) * qp(2);
        CP dl2 = 3 * (qp(2) + q + 1) * (qp(2) - q) * (qp(4) - qp(2)) * (qp(2) + q) * qp(2);
        CP dc = 3 * (qp(5) - qp(2)) * (qp(4) - qp(2)) * (q + 1) * q * qp(2) -
                2 * (qp(5) - qp(2)) * (qp(4) - qp(2)) * (q + 1) * q * (q - 1);
        CP i = 3 * (qp(5) - qp(2)) * (q + 1) * q * (qp(2) - 1) * q;
        CP ii = 3 * (qp(5) - qp(2)) * (q + 1) * q * (qp(2) - 1) * (q - 1) * (q - 1);
        CP iii = 3 * (qp(5) - qp(2)) * (qp(2) - q) * (qp(2) - 1) * (q + 1) * (q - 1);
        CP dldc = i + (ii + iii).divexact(2);
        R.add_case({4, 1, 1, 1}, USpec::LastThreeNotCollinear,
                   {{"U", U, "(strict quartic orbits)(q^2+q+1)(q^2+q)q^2"},
                    {"Δ_{l,1}", dl1, "(q^2+q+1)^2(q^4-q^2)(q^2+q)q^2"},
                    {"Δ_{l,2}", dl2, "3(q^2+q+1)(q^2-q)(q^4-q^2)(q^2+q)q^2"},
                    {"Δ_l", dl1 + dl2, "4q^12+6q^11+q^10-4q^9-5q^8-q^7-q^5"},
                    {"Δ_c", dc, "3q^13+q^12-3q^11-2q^10-q^9+q^8-q^7+2q^5"},
                    {"Δ_l∩Δ_c", dldc, "3q^11-3q^9-3q^5+3q^3"}});
    }

    // [1,3,3]
    {
        CP dl1 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(6) + qp(3) - qp(2) - q - 3);
        CP dl2 = 3 * (qp(6) - qp(5) - qp(4) + qp(3)) * (qp(3) - 1) * (qp(2) + q + 1);
        CP dl5 = 3 * (qp(2) + q + 1) * (qp(3) - q) * qp(3) * (qp(3) - 1);
        CP i13 = 3 * (qp(6) - qp(5) - qp(4) + qp(3)) * (qp(2) + q + 1) * (qp(2) + q + 1);
        CP i14 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(3) - q - 3) +
                 (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(2) + q) * (qp(3) - q) * (qp(3) - q);
        CP i15 = 3 * (qp(2) + q + 1) * (qp(3) - q) * qp(2) * (qp(3) - 1);
        CP i25 = 3 * (qp(6) - qp(5) - qp(4) + qp(3)) * (qp(2) + q + 1);
        CP t145 = 3 * (qp(2) + q + 1) * (qp(3) - q) * qp(2) * (qp(2) - 1);
        CP dl = 2 * dl1 + 2 * dl2 + dl5 - (2 * i13 + i14 + 2 * i15 + 2 * i25) + t145;
        R.add_case({3, 3, 1}, USpec::Full,
                   {{"U", conj({3, 3, 1}), "conjugate [1,3,3]-tuple count on the plane"},
                    {"Δ_{l,1}", dl1, "(q^2+q+1)^2(q^3-q)(q^6+q^3-q^2-q-3)"},
                    {"Δ_{l,2}", dl2, "3(q^6-q^5-q^4+q^3)(q^3-1)(q^2+q+1)"},
                    {"Δ_{l,5}", dl5, "3(q^2+q+1)(q^3-q)q^3(q^3-1)"},
                    {"Δ_{l,1}∩Δ_{l,3}", i13, "3(q^6-q^5-q^4+q^3)(q^2+q+1)^2"},
                    {"Δ_{l,1}∩Δ_{l,4}", i14,
                     "(q^2+q+1)^2(q^3-q)(q^3-q-3) + (q^2+q+1)^2(q^2+q)(q^3-q)^2"},
                    {"Δ_{l,1}∩Δ_{l,5}", i15, "3(q^2+q+1)(q^3-q)q^2(q^3-1)"},
                    {"Δ_{l,2}∩Δ_{l,5}", i25, "3(q^6-q^5-q^4+q^3)(q^2+q+1)"},
                    {"triple", t145, "3(q^2+q+1)(q^3-q)q^2(q^2-1)"},
                    {"Δ_l", dl, "2Δ_{l,1}+2Δ_{l,2}+Δ_{l,5} - (2I_13+I_14+2I_15+2I_25) + T"},
                    {"Δ_c", (qp(5) - qp(2)) * (qp(3) - q) * (qp(3) - q - 3) * (qp(2) + q + 1),
                     "(q^5-q^2)(q^3-q)(q^3-q-3)(q^2+q+1)"},
                    {"Δ_l∩Δ_c", 3 * (qp(5) - qp(2)) * qp(2) * (qp(3) - q),
                     "3(q^5-q^2)q^2(q^3-q)"}});
    }

    // [2,2,3]
    {
        CP dl1 = (qp(2) + q + 1) * (qp(3) - q) * (qp(4) - q) * (qp(4) - q - 2);
        CP dl2 = (qp(2) + q + 1) * (qp(2) - q) * (qp(2) - q - 2) * (qp(6) + qp(3) - qp(2) - q);
        CP i12 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(2) - q) * (qp(2) - q - 2);
        R.add_case({3, 2, 2}, USpec::Full,
                   {{"U", conj({3, 2, 2}), "conjugate [2,2,3]-tuple count on the plane"},
                    {"Δ_{l,1}", dl1, "(q^2+q+1)(q^3-q)(q^4-q)(q^4-q-2)"},
                    {"Δ_{l,2}", dl2, "(q^2+q+1)(q^2-q)(q^2-q-2)(q^6+q^3-q^2-q)"},
                    {"Δ_{l,1}∩Δ_{l,2}", i12, "(q^2+q+1)^2(q^3-q)(q^2-q)(q^2-q-2)"},
                    {"Δ_l", dl1 + dl2 - i12, "Δ_{l,1}+Δ_{l,2}-Δ_{l,1}∩Δ_{l,2}"},
                    {"Δ_c", (qp(5) - qp(2)) * (qp(3) - q) * (qp(2) - q) * (qp(2) - q - 2),
                     "(q^5-q^2)(q^3-q)(q^2-q)(q^2-q-2)"},
                    {"Δ_l∩Δ_c", CP(), "0 (the two components are disjoint)"}});
    }

    // [1,1,2,3] — the conics component is assembled from a two-term recipe.
    {
        CP dl1 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(4) - q) * (qp(2) + q);
        CP dl26 = (qp(2) + q + 1) * (qp(2) - q) * (q + 1) * (qp(6) + qp(3) - qp(2) - q) * (qp(2) + q);
        CP i126 = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(2) - q) * (q + 1) * (qp(2) + q);
        CP i2627 = (qp(2) + q + 1) * (qp(2) - q) * (q + 1) * q * (qp(6) + qp(3) - qp(2) - q);
        CP t = (qp(2) + q + 1) * (qp(2) + q + 1) * (qp(3) - q) * (qp(2) - q) * (q + 1) * q;
        CP dl = dl1 + 2 * dl26 - 2 * i126 - i2627 + t;
        CP dc = 2 * (qp(5) - qp(2)) * (qp(3) - q) * (qp(2) - q) * (q + 1) * (qp(2) + q) -
                (qp(5) - qp(2)) * (qp(3) - q) * (qp(2) - q) * (q + 1) * q;
        CP dldc = 2 * (qp(5) - qp(2)) * (qp(3) - q) * (qp(2) - q) * (q + 1) * (q + 1);
        R.add_case({3, 2, 1, 1}, USpec::Full,
                   {{"U", conj({3, 2, 1, 1}), "conjugate [1,1,2,3]-tuple count on the plane"},
                    {"Δ_{l,1}", dl1, "(q^2+q+1)^2(q^3-q)(q^4-q)(q^2+q)"},
                    {"Δ_{l,2}", dl26, "(q^2+q+1)(q^2-q)(q+1)(q^6+q^3-q^2-q)(q^2+q)"},
                    {"Δ_{l,1}∩Δ_{l,2}", i126, "(q^2+q+1)^2(q^3-q)(q^2-q)(q+1)(q^2+q)"},
                    {"Δ_{l,2}∩Δ_{l,2'}", i2627, "(q^2+q+1)(q^2-q)(q+1)q(q^6+q^3-q^2-q)"},
                    {"triple", t, "(q^2+q+1)^2(q^3-q)(q^2-q)(q+1)q"},
                    {"Δ_l", dl, "Δ_{l,1}+2Δ_{l,2}-2I_126-I_2627+T"},
                    {"Δ_c", dc,
                     "2(q^5-q^2)(q^3-q)(q^2-q)(q+1)(q^2+q) - (q^5-q^2)(q^3-q)(q^2-q)(q+1)q"},
                    {"Δ_l∩Δ_c", dldc, "2(q^5-q^2)(q^3-q)(q^2-q)(q+1)^2"}});
    }

    // [1,1,1,1,3] — ambient set: the four rational points in general position.
    {
        CP U = strictp(3) * (qp(2) + q + 1) * (qp(2) + q) * qp(2) * (q - 1) * (q - 1);
        CP dl = (qp(2) + q + 1) * (qp(2) + q) * qp(2) * (qp(2) - 2 * q + 1) * (qp(2) + q + 1) *
                (qp(3) - q);
        CP dc = 4 * (qp(5) - qp(2)) * (qp(3) - q) * (q + 1) * q * (q - 1) * (qp(2) - 2 * q + 1) -
                3 * (qp(5) - qp(2)) * (qp(3) - q) * (q + 1) * q * (q - 1) * (q - 2);
        R.add_case({3, 1, 1, 1, 1}, USpec::FirstFourGeneralPosition,
                   {{"U", U, "(strict cubic orbits)(q^2+q+1)(q^2+q)q^2(q-1)^2"},
                    {"Δ_l", dl, "(q^2+q+1)(q^2+q)q^2(q^2-2q+1)(q^2+q+1)(q^3-q)"},
                    {"Δ_c", dc,
                     "4(q^5-q^2)(q^3-q)(q+1)q(q-1)(q^2-2q+1) - 3(q^5-q^2)(q^3-q)(q+1)q(q-1)(q-2)"},
                    {"Δ_l∩Δ_c", CP(), "0 (the two components are disjoint)"}});
    }

    // [1,2,2,2] — ambient set: the six pair points with no three collinear.
    {
        CP W = (qp(4) - q) * (qp(4) - qp(2)) * (qp(4) - 6 * qp(2) + q + 8);
        CP U = W * (qp(2) + q + 1);
        CP dl1a = W * (q + 1);
        CP dl2 = W;
        CP iab = W;
        CP il1l2 = (qp(4) - q) * (qp(4) - qp(2)) * (qp(2) - q) +
                   (qp(4) - q) * (qp(4) - qp(2)) * q * (qp(2) - q - 2);
        CP tabc = 2 * (qp(4) - q) * (qp(4) - qp(2)) * (qp(2) - q - 2) +
                  (qp(4) - q) * (qp(4) - qp(2)) * (q - 3) * (qp(2) - q - 4);
        CP dl = 3 * dl1a + 6 * dl2 - 3 * iab - 6 * il1l2 + tabc;
        CP dc = (qp(5) - qp(2)) * (qp(2) - q) * (qp(2) - q - 2) * (qp(2) - q - 4) * (qp(2) + q + 1);
        CP A = (qp(5) - qp(2)) * (qp(2) - q) * (qp(2) - q - 2) * (qp(2) - q - 4) * (q + 1);
        CP B = (qp(5) - qp(2)) * (qp(2) - q) * (qp(2) - q - 2) * (qp(2) - q - 4);
        CP C = B;
        CP Dsum = (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (qp(2) - 2 * q + 1) +
                  (qp(5) - qp(2)) * (qp(2) - q) * (q + 1) * (qp(2) - 2 * q - 3);
        CP D = Dsum.divexact(2);
        // The inside-point half of E: the count of inside points is q(q-1)/2.
        CP Esum = (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 3) * (q - 5) +
                  (qp(5) - qp(2)) * q * (q - 1) * (q + 1) * (q - 1) * (q - 3);
        CP E = Esum.divexact(2);
        CP dldc = 3 * A + 6 * B - 3 * C - 6 * D + E;
        R.add_case({2, 2, 2, 1}, USpec::FirstSixNoThreeCollinear,
                   {{"U", U, "(q^4-q)(q^4-q^2)(q^4-6q^2+q+8)(q^2+q+1)"},
                    {"Δ_{l,1}", dl1a, "(q^4-q)(q^4-q^2)(q^4-6q^2+q+8)(q+1)"},
                    {"Δ_{l,2}", dl2, "(q^4-q)(q^4-q^2)(q^4-6q^2+q+8)"},
                    {"Δ_{l,1}∩Δ_{l,1'}", iab, "(q^4-q)(q^4-q^2)(q^4-6q^2+q+8)"},
                    {"Δ_{l,1}∩Δ_{l,2}", il1l2,
                     "(q^4-q)(q^4-q^2)(q^2-q) + (q^4-q)(q^4-q^2)q(q^2-q-2)"},
                    {"triple", tabc,
                     "2(q^4-q)(q^4-q^2)(q^2-q-2) + (q^4-q)(q^4-q^2)(q-3)(q^2-q-4)"},
                    {"Δ_l", dl, "3Δ_{l,1}+6Δ_{l,2}-3I_ab-6I_l1l2+T"},
                    {"Δ_c", dc, "(q^5-q^2)(q^2-q)(q^2-q-2)(q^2-q-4)(q^2+q+1)"},
                    {"Δ_l∩Δ_c", dldc, "3A+6B-3C-6D+E with halved tangency splits"}});
    }

    // [1,1,1,2,2] — ambient set: the three rational points and the first
    // conjugate pair in general position.
    {
        CP W5a = (qp(2) + q + 1) * (qp(2) + q) * qp(2) * (qp(4) - 3 * qp(3) + 3 * qp(2) - q);
        CP U = W5a * (qp(4) - q - 2);
        CP A = W5a * (q + 1) * (qp(2) - q);
        CP B = W5a * (qp(2) - q - 2);
        CP C = W5a * (qp(2) - 1);
        CP D = W5a * (qp(2) - q);
        CP E = W5a * q;
        CP F = W5a;
        CP G = W5a;
        CP H = (qp(2) + q + 1) * (qp(2) + q) * (qp(2) - q) * (qp(2) - q) * (q - 1);
        CP dl = 3 * A + B + 6 * C - (3 * D + 12 * E + 6 * F) + (6 * G + 6 * H);
        CP X = (qp(5) - qp(2)) * (q + 1) * q * (qp(2) - q) * (qp(2) - q - 2) * (qp(2) - q);
        CP Y2 = 2 * (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (qp(2) - q) * (qp(2) - q - 2);
        CP dc = 3 * X - Y2;
        CP l1c_out = (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (qp(2) + 1) * (qp(2) - 2 * q + 1);
        CP l1c_in = (qp(5) - qp(2)) * (qp(2) - q) * (q + 1) * (q + 1) * (q - 1) * (qp(2) - 2 * q - 1);
        CP l3c_out = (qp(5) - qp(2)) * (q + 1) * q * (qp(2) + 1) * (qp(2) - 2 * q + 1);
        CP l3c_in = (qp(5) - qp(2)) * (qp(2) - q) * (q + 1) * (q - 1) * (qp(2) - 2 * q - 3);
        CP dldc = (3 * (l1c_out + l1c_in) + 6 * (l3c_out + l3c_in)).divexact(2);
        R.add_case({2, 2, 1, 1, 1}, USpec::FirstFiveGeneralPosition,
                   {{"U", U, "W(q^4-q-2), W = (q^2+q+1)(q^2+q)q^2(q^4-3q^3+3q^2-q)"},
                    {"Δ_{l,1}", A, "W(q+1)(q^2-q)"},
                    {"Δ_{l,2}", B, "W(q^2-q-2)"},
                    {"Δ_{l,3}", C, "W(q^2-1)"},
                    {"Δ_{l,1}∩Δ_{l,1'}", D, "W(q^2-q)"},
                    {"Δ_{l,1}∩Δ_{l,3}", E, "Wq"},
                    {"Δ_{l,3}∩Δ_{l,3'}", F, "W"},
                    {"triple_1", G, "W"},
                    {"triple_2", H, "(q^2+q+1)(q^2+q)(q^2-q)^2(q-1)"},
                    {"Δ_l", dl, "3A+B+6C-(3D+12E+6F)+(6G+6H)"},
                    {"Δ_c", dc, "3X-2Y, X=(q^5-q^2)(q+1)q(q^2-q)(q^2-q-2)(q^2-q), "
                                "Y=(q^5-q^2)(q+1)q(q-1)(q^2-q)(q^2-q-2)"},
                    {"Δ_l∩Δ_c", dldc, "(3(l1c_out+l1c_in)+6(l3c_out+l3c_in))/2"}});
    }

    // [1,1,1,1,1,2] — ambient set: the five rational points in general position.
    {
        CP U = PGL3 * (qp(2) - 5 * q + 6) * (qp(4) - q);
        CP dl = (qp(2) + q + 1) * (qp(2) + q) * qp(2) * (qp(2) - 2 * q + 1) * (qp(2) - 5 * q + 6) *
                (5 * q - 5) * (qp(2) - q);
        CP dc = 5 * (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 2) * (qp(2) - q) *
                    (qp(2) - 5 * q + 6) -
                4 * (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 2) * (q - 3) * (qp(2) - q);
        // The four tangency splits are half-integers individually; their sum is
        // integral, so assemble doubled and divide once.
        CP Ai0_2 = (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 1) * (q - 3) * (q - 5) * (q - 7);
        CP Ai1_2 = 8 * (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 1) * (q - 3) * (q - 5);
        CP Ai2_2 = 12 * (qp(5) - qp(2)) * (q + 1) * q * (q - 1) * (q - 1) * (q - 3);
        CP Ain_2 = (qp(5) - qp(2)) * (qp(2) - q) * (q + 1) * (q + 1) * (q - 1) * (q - 3) * (q - 5);
        CP dldc = (5 * (Ai0_2 + Ai1_2 + Ai2_2 + Ain_2)).divexact(2);
        R.add_case({2, 1, 1, 1, 1, 1}, USpec::FirstFiveGeneralPosition,
                   {{"U", U, "|PGL3|(q^2-5q+6)(q^4-q)"},
                    {"Δ_l", dl, "(q^2+q+1)(q^2+q)q^2(q^2-2q+1)(q^2-5q+6)(5q-5)(q^2-q)"},
                    {"Δ_c", dc, "5(q^5-q^2)(q+1)q(q-1)(q-2)(q^2-q)(q^2-5q+6) - "
                                "4(q^5-q^2)(q+1)q(q-1)(q-2)(q-3)(q^2-q)"},
                    {"Δ_l∩Δ_c", dldc, "5(A_0+A_1+A_2+A_in) tangency split"}});
    }

    // [1^7] — ambient set: the first four points in general position.
    {
        CP U = PGL3 * (qp(2) + q - 3) * (qp(2) + q - 4) * (qp(2) + q - 5);
        CP dl1 = PGL3 * desc({18, -99, 252, -414, 417, -180});
        CP dl2 = PGL3 * desc({12, -212, 1504, -5320, 9296, -6360});
        CP dl3 = PGL3 * desc({1, -21, 173, -693, 1338, -990});
        CP dl = PGL3 * desc({31, -332, 1929, -6427, 11051, -7530});
        CP dc = PGL3 * desc({7, -74, 288, -517, 446, -168});
        CP dldc = PGL3 * desc({93, -1245, 6195, -13470, 10737});
        R.add_case({1, 1, 1, 1, 1, 1, 1}, USpec::FirstFourGeneralPosition,
                   {{"U", U, "|PGL3|(q^2+q-3)(q^2+q-4)(q^2+q-5)"},
                    {"Δ_{l,1}", dl1, "|PGL3|(18q^5-99q^4+252q^3-414q^2+417q-180)"},
                    {"Δ_{l,2}", dl2, "|PGL3|(12q^5-212q^4+1504q^3-5320q^2+9296q-6360)"},
                    {"Δ_{l,3}", dl3, "|PGL3|(q^5-21q^4+173q^3-693q^2+1338q-990)"},
                    {"Δ_l", dl, "|PGL3|(31q^5-332q^4+1929q^3-6427q^2+11051q-7530)"},
                    {"Δ_c", dc, "|PGL3|(7q^5-74q^4+288q^3-517q^2+446q-168)"},
                    {"Δ_l∩Δ_c", dldc, "|PGL3|(93q^4-1245q^3+6195q^2-13470q+10737)"}});
    }

    return R;
}

const Registry& the_registry() {
    static const Registry R = build_registry();
    return R;
}

void require_partition_of(const Partition& lam, int n, const char* what) {
    if (!is_valid_partition(lam) || partition_sum(lam) != n)
        throw UnknownPartition(std::string(what) + " requires a partition of " + std::to_string(n) +
                               ", got " + partition_display(lam));
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            out += buf;
        } else {
            out += ch;
        }
    }
    return out;
}

} // namespace

const std::vector<FormulaEntry>& registry() { return the_registry().entries; }

CountPolynomial quartic_locus_count(const Partition& lambda) {
    require_partition_of(lambda, 7, "quartic locus count");
    return the_registry().t1.at(lambda);
}

CountPolynomial m08_count(const Partition& lambda) {
    require_partition_of(lambda, 8, "genus-0 count");
    return the_registry().t3.at(lambda);
}

CountPolynomial h3_count(const Partition& lambda, SymGroup group) {
    if (group == SymGroup::S8) {
        require_partition_of(lambda, 8, "hyperelliptic S8 count");
        return the_registry().t4.at(lambda);
    }
    require_partition_of(lambda, 7, "hyperelliptic S7 count");
    return the_registry().t5.at(lambda);
}

long long group_order(GroupKind kind, long long q) { return group_order_poly(kind).eval(q); }

CountPolynomial group_order_poly(GroupKind kind) {
    using CP = CountPolynomial;
    switch (kind) {
    case GroupKind::PGL3:
        return CP::power(3) * (CP::power(3) - 1) * (CP::power(2) - 1);
    case GroupKind::PGL2:
        return CP::power(3) - CP::var();
    case GroupKind::Sp6F2:
        return CP::constant(1451520);
    }
    throw std::logic_error("unknown group kind");
}

const FormulaEntry& delta_component_formula(const Partition& lambda, const std::string& component) {
    require_partition_of(lambda, 7, "boundary component formula");
    for (const auto& e : the_registry().entries) {
        if (e.space != Space::DeltaComponent || e.lambda != lambda) continue;
        if (e.component == component) return e;
    }
    throw NotTranscribed("no transcribed closed form for component '" + component + "' of case " +
                         partition_display(lambda));
}

std::vector<FormulaEntry> delta_components(const Partition& lambda) {
    require_partition_of(lambda, 7, "boundary components");
    std::vector<FormulaEntry> out;
    for (const auto& e : the_registry().entries)
        if (e.space == Space::DeltaComponent && e.lambda == lambda) out.push_back(e);
    return out;
}

USpec case_uspec(const Partition& lambda) {
    require_partition_of(lambda, 7, "case ambient set");
    return the_registry().uspec.at(lambda);
}

std::vector<Partition> complete_delta_cases() { return the_registry().complete; }

std::string uspec_name(USpec u) {
    switch (u) {
    case USpec::Full:
        return "Full";
    case USpec::LastThreeNotCollinear:
        return "LastThreeNotCollinear";
    case USpec::FirstFourGeneralPosition:
        return "FirstFourGeneralPosition";
    case USpec::FirstFiveGeneralPosition:
        return "FirstFiveGeneralPosition";
    case USpec::FirstSixNoThreeCollinear:
        return "FirstSixNoThreeCollinear";
    }
    throw std::logic_error("unknown USpec");
}

std::string space_name(Space s) {
    switch (s) {
    case Space::Q2:
        return "Q2";
    case Space::M08:
        return "M08";
    case Space::H3_S8:
        return "H3_S8";
    case Space::H3_S7:
        return "H3_S7";
    case Space::DeltaComponent:
        return "DeltaComponent";
    }
    throw std::logic_error("unknown space");
}

void dump_formulas_json(std::ostream& os) {
    os << "[\n";
    const auto& entries = registry();
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        os << "  {\"space\": \"" << space_name(e.space) << "\", \"lambda\": [";
        for (size_t j = 0; j < e.lambda.size(); ++j) os << (j ? "," : "") << e.lambda[j];
        os << "], \"component\": \"" << json_escape(e.component) << "\", \"uspec\": \""
           << uspec_name(e.u_spec) << "\", \"coeffs\": [";
        const auto& c = e.poly.coeffs();
        for (size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
        os << "], \"anchor\": \"" << json_escape(e.anchor) << "\"}";
        os << (i + 1 < entries.size() ? ",\n" : "\n");
    }
    os << "]\n";
}

} // namespace moduli::closedform
