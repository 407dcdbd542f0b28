#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli/partition.hpp"
#include "moduli/reptheory.hpp"

namespace moduli::gysin {

// ---------------------------------------------------------------------------
// Lower bounds on equivariant cohomology multiplicities obtained by playing
// the two decomposition tables (the smooth-quartic locus, complex dimension 6,
// and the hyperelliptic locus, complex dimension 5) against each other through
// the four-term pieces of the Gysin sequence of the hyperelliptic divisor.
//
// For each degree k = 0..7 and each irreducible lambda of S7:
//     n^k(lambda) = m^k_quartic(lambda) - m^{k-2}_hyperelliptic(lambda)
// with out-of-range multiplicities read as zero.  A positive value is a lower
// bound on the multiplicity of lambda in W_k H^k of the full moduli space with
// level-2 structure; a negative value bounds W_k H^{k+1} from below by -n^k.
// The module performs pure integer bookkeeping; no Hodge theory is computed.
// ---------------------------------------------------------------------------

struct TableShapeMismatch : std::runtime_error {
    explicit TableShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

enum class BoundTarget { Hk, HkPlus1 };

struct BoundEntry {
    int k = 0;
    Partition lambda;
    long long n_k = 0;
    BoundTarget target = BoundTarget::Hk;  // HkPlus1 exactly when n_k < 0
    long long bound_value = 0;             // |n_k|
};

struct BoundsTable {
    std::vector<Partition> irreps;
    std::vector<long long> dims;
    std::vector<BoundEntry> entries;  // degree-major, then irrep order

    const BoundEntry& at(int k, const Partition& lambda) const;
};

// Requires: q_table has dim 6, h_table dim 5, both over S7 with identical
// irrep lists; throws TableShapeMismatch otherwise.
BoundsTable compute_bounds(const reptheory::CohomologyTable& q_table,
                           const reptheory::CohomologyTable& h_table);

// weighted_sums(b)[k] = sum over lambda of n^k(lambda) * dim(lambda); equals
// coefficient k of the first Poincare polynomial minus coefficient k-2 of the
// second, a pure bookkeeping identity asserted in the test suite.
std::vector<long long> weighted_sums(const BoundsTable& bounds);

// ">=2 in W_2H^3" — the prose form of one bound (empty claim when n_k = 0).
std::string bound_statement(const BoundEntry& entry);

// CSV: header "k,lambda,n_k,bound_target,bound_value"; bound_target is the
// token Hk or Hk_plus_1; lambda is the quoted comma-separated part list.
void bounds_csv(const BoundsTable& bounds, std::ostream& os);

}  // namespace moduli::gysin
