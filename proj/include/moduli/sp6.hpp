#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "moduli/partition.hpp"
#include "moduli/poly.hpp"

namespace moduli::sp6 {

// ---------------------------------------------------------------------------
// The finite symplectic group Sp(6,F2), its full enumeration, the standard
// embedding of the symmetric group S8, and induction / restriction of
// polynomial-valued class functions along that embedding.
// ---------------------------------------------------------------------------

// Thrown when the on-disk group cache fails its header or checksum test.
struct CacheCorrupt : std::runtime_error {
    explicit CacheCorrupt(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when symplectic Gram-Schmidt cannot complete; indicates a bug in
// the pairing or basis-extraction logic, not bad user input.
struct FormReductionFailure : std::runtime_error {
    explicit FormReductionFailure(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an induced class-function coefficient is not divisible by |S8|;
// indicates a fusion-lookup bug.
struct NonIntegralInduction : std::runtime_error {
    explicit NonIntegralInduction(const std::string& what) : std::runtime_error(what) {}
};

// A 6x6 matrix over F2 packed into one 64-bit word: row i occupies bits
// [6*i, 6*i+6), row 0 in the low 6 bits.  Vectors of F2^6 are 6-bit values
// acted on from the right: y = x * M selects and XORs the rows of M named
// by the bits of x, so composition reads left-to-right and matrix products
// compose group actions homomorphically.
using SpMatrix = std::uint64_t;

inline constexpr std::uint32_t kRowMask = 0x3F;

constexpr std::uint32_t sp_row(SpMatrix m, int i) {
    return static_cast<std::uint32_t>(m >> (6 * i)) & kRowMask;
}

constexpr SpMatrix sp_from_rows(const std::array<std::uint32_t, 6>& rows) {
    SpMatrix m = 0;
    for (int i = 0; i < 6; ++i) m |= static_cast<SpMatrix>(rows[i] & kRowMask) << (6 * i);
    return m;
}

constexpr SpMatrix sp_identity() {
    SpMatrix m = 0;
    for (int i = 0; i < 6; ++i) m |= static_cast<SpMatrix>(1u << i) << (6 * i);
    return m;
}

inline constexpr SpMatrix kIdentity = sp_identity();

// Row vector times matrix: XOR of the rows of m selected by the bits of x.
constexpr std::uint32_t sp_apply(std::uint32_t x, SpMatrix m) {
    std::uint32_t y = 0;
    for (int i = 0; i < 6; ++i)
        if ((x >> i) & 1u) y ^= sp_row(m, i);
    return y;
}

constexpr SpMatrix sp_mul(SpMatrix a, SpMatrix b) {
    SpMatrix c = 0;
    for (int i = 0; i < 6; ++i) c |= static_cast<SpMatrix>(sp_apply(sp_row(a, i), b)) << (6 * i);
    return c;
}

SpMatrix sp_transpose(SpMatrix m);
// Inverse over F2 by Gaussian elimination; throws std::domain_error if singular.
SpMatrix sp_inverse(SpMatrix m);

// The standard symplectic pairing with Gram matrix J = [[0,I3],[I3,0]]:
// <x,y> = sum_i x_i y_{i+3} + x_{i+3} y_i  (mod 2).
constexpr int symplectic_pairing(std::uint32_t x, std::uint32_t y) {
    std::uint32_t swapped = ((y >> 3) | (y << 3)) & kRowMask;
    return __builtin_popcount(x & swapped) & 1;
}

// Checks that m preserves the standard pairing (equivalently M^T J M = J).
bool is_symplectic(SpMatrix m);

// The symplectic transvection t_v : x -> x + <x,v> v  for v != 0.
SpMatrix transvection(std::uint32_t v);

// ---------------------------------------------------------------------------
// Full enumeration of Sp(6,F2).
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kGroupOrder = 1451520;  // |Sp(6,F2)|
inline constexpr std::uint64_t kImageOrder = 40320;    // |S8|
inline constexpr std::uint64_t kImageIndex = 36;       // [Sp(6,F2) : S8]

struct GroupEnumeration {
    std::vector<SpMatrix> elements;                     // all 1,451,520 matrices
    std::unordered_map<SpMatrix, std::uint32_t> index;  // matrix -> ordinal in `elements`

    std::size_t size() const { return elements.size(); }
    bool contains(SpMatrix m) const { return index.find(m) != index.end(); }
    std::uint32_t ordinal(SpMatrix m) const { return index.at(m); }
};

// Breadth-first closure from the 63 transvections.  No disk access.
GroupEnumeration generate_group();

// Cached variant: tries `<cache_dir>/sp6f2.cache` first; on a missing,
// unreadable, or corrupt cache it rebuilds from scratch and rewrites the file.
GroupEnumeration generate_group(const std::filesystem::path& cache_dir);

// Raw cache I/O.  load throws CacheCorrupt on any header/checksum/size
// mismatch and std::runtime_error when the file cannot be opened.
void save_group_cache(const GroupEnumeration& group, const std::filesystem::path& file);
GroupEnumeration load_group_cache(const std::filesystem::path& file);

inline constexpr const char* kCacheFileName = "sp6f2.cache";

// ---------------------------------------------------------------------------
// The embedding S8 -> Sp(6,F2).
//
// S8 permutes the coordinates of F2^8; the even-weight subspace modulo the
// all-ones vector is a 6-dimensional quotient carrying the dot-product
// pairing, which is nondegenerate and alternating.  A symplectic basis is
// extracted greedily and every permutation matrix is rewritten in those
// coordinates, landing in the standard-form group above.
// ---------------------------------------------------------------------------

// A permutation of {0..7} stored as images: sigma[i] = sigma(i).
using Permutation = std::array<int, 8>;

Permutation identity_permutation();
// Function composition: (a*b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);
// Cycle type as a partition of 8.
Partition cycle_type(const Permutation& sigma);
// Canonical representative of a cycle type: cycles laid out left to right on
// 0..7, longest first.  `variant` selects between two distinct
// representatives of the same class (used for independence checks).
Permutation permutation_of_type(const Partition& type, int variant = 0);

struct S8Embedding {
    // Symplectic basis (u1,u2,u3,w1,w2,w3) of the even-weight quotient,
    // each stored as the lexicographically smaller of the two 8-bit
    // even-weight coset representatives.
    std::array<std::uint8_t, 6> basis{};

    // reverse lookup: embedded matrix -> cycle type; domain is exactly the
    // 40,320-element image.
    std::unordered_map<SpMatrix, Partition> reverse;

    // Coordinates of an even-weight coset in the symplectic basis.
    std::uint32_t coords(std::uint8_t even_vector) const;
    // Forward map: the matrix of sigma acting on the quotient.
    SpMatrix matrix_of(const Permutation& sigma) const;
};

// Builds the embedding and verifies every image matrix is symplectic and a
// member of `group`.  Throws FormReductionFailure if no symplectic basis can
// be extracted, std::logic_error if the image is not exactly 40,320 matrices.
S8Embedding embed_s8(const GroupEnumeration& group);

// ---------------------------------------------------------------------------
// Induction of class functions along S8 -> Sp(6,F2), and restriction to S7.
// ---------------------------------------------------------------------------

// A polynomial-valued class function on S8, keyed by cycle type.
using S8ClassFunction = std::map<Partition, CountPolynomial>;
// The induced class function, recorded on the Sp-classes of the embedded
// S8-class representatives; keyed by the S8 cycle type of the representative.
using InducedClassFunction = std::map<Partition, CountPolynomial>;

struct InduceOptions {
    int threads = 1;
    // When set, each class is additionally evaluated at a second embedded
    // representative and the two results are required to match.
    bool check_representative_independence = false;
};

// psi-hat(alpha) = (1/|S8|) sum over g in G of psi~(g^-1 alpha g), where
// psi~ vanishes off the image and is evaluated by reverse cycle-type lookup.
// Exact integer arithmetic throughout; the final division by 40,320 must be
// exact coefficientwise or NonIntegralInduction is thrown.
InducedClassFunction induce_class_function(const S8ClassFunction& psi,
                                           const GroupEnumeration& group,
                                           const S8Embedding& embedding,
                                           const InduceOptions& options = {});

// Restriction to S7: the value at a partition mu of 7 is the induced value
// at the S8 class of mu with a fixed point appended.
std::map<Partition, CountPolynomial> restrict_induced_to_s7(const InducedClassFunction& induced);

}  // namespace moduli::sp6
