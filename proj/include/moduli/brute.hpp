#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli/closedform.hpp"
#include "moduli/gf.hpp"
#include "moduli/partition.hpp"
#include "moduli/projgeom.hpp"

namespace moduli::brute {

struct StrategyNotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// The exhaustive total failed the required divisibility by the group order;
// this always signals an enumeration bug, never bad input.
struct NonDivisibleTotal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Strategy {
    Auto,           // FrameFix when it applies, QuotientDivide otherwise
    QuotientDivide, // enumerate everything, divide by the group order
    FrameFix,       // pin four rational points to the standard frame
};

// Frobenius cycle structure laid over tuple positions.  For each cycle
// (c_0 c_1 ... c_{m-1}), the enumeration enforces P_{c_{j+1}} = F(P_{c_j})
// and P_{c_0} = F(P_{c_{m-1}}).
struct CycleLayout {
    struct Cycle {
        int length = 0;
        std::vector<int> positions;
    };
    std::vector<Cycle> cycles;
    int n = 0;
    int lcm = 1;

    // Cycles in decreasing length, positions consecutive and increasing.
    static CycleLayout canonical(const Partition& lambda);
    // Layout induced by an explicit permutation sigma (one-line notation,
    // 0-indexed images): the cycles of sigma^{-1} in walk order.
    static CycleLayout from_permutation(const std::vector<int>& sigma);
    Partition partition() const;
};

struct Options {
    int threads = 1;
    std::uint64_t tower_cap = gf::kDefaultTowerCap;
    // Ceiling on the dense orbit table |P^2(F_{q^d})| used by the
    // quotient-splitting scan; larger cases are refused as too large.
    std::uint64_t max_orbit_table = 1ull << 28;
};

struct BruteReport {
    Partition lambda;
    long long q = 0;
    long long raw_general_position = 0; // tuples in general position, before the group quotient
    long long pgl_order = 0;
    long long quotient_count = 0;
    Strategy strategy = Strategy::QuotientDivide; // the strategy actually used
    double elapsed_seconds = 0.0;
};

// Count PGL3-orbits of Frobenius-fixed conjugate lambda-tuples of the plane in
// general position (lambda a partition of 7).
BruteReport count_fixed_septuples(const Partition& lambda, long long q,
                                  Strategy strategy = Strategy::Auto, const Options& opts = {});
BruteReport count_fixed_septuples(const CycleLayout& layout, long long q,
                                  Strategy strategy = Strategy::Auto, const Options& opts = {});

// Exhaustive boundary-component census over the ambient set selected by
// u_spec.  Returns {"U", "Δ_l", "Δ_c", "Δ_l∩Δ_c", "GP"}: tuples in the
// ambient set; with some three points collinear; with some six on a smooth
// conic; with both; with neither.
std::map<std::string, long long> count_fixed_delta_components(const Partition& lambda, long long q,
                                                              closedform::USpec u_spec,
                                                              const Options& opts = {});

// Count PGL2-orbits of Frobenius-fixed conjugate lambda-tuples of distinct
// points on the line (lambda a partition of 2g+2; g = 3 is the target).
long long count_m0n_fixed(const Partition& lambda, long long q, int g = 3, const Options& opts = {});

// Visit every Frobenius-fixed tuple with strict orbit leads, one per cycle,
// with no distinctness filtering across cycles (dim 1 or 2).
void enumerate_conjugate_tuples(const CycleLayout& layout, int dim, long long q,
                                const std::function<void(const std::vector<projgeom::ProjPoint>&)>& visit,
                                const Options& opts = {});

} // namespace moduli::brute
