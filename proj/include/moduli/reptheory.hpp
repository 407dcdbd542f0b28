#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli/partition.hpp"
#include "moduli/poly.hpp"

namespace moduli::reptheory {

// A count polynomial exceeds the complex dimension of the space.
struct DegreeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// An inner product with an irreducible character is not divisible by n!.
struct NonIntegralMultiplicity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A decomposition produced a negative multiplicity.
struct NegativeMultiplicity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long factorial(int n);

// |conjugacy class of cycle type mu| inside S_n, n = |mu|.
long long class_size(const Partition& mu);

// chi_lambda(mu) by recursive border-strip removal (Murnaghan-Nakayama).
long long mn_character(const Partition& lambda, const Partition& mu);

struct CharacterTable {
    int n = 0;
    std::vector<Partition> irreps;  // descending lexicographic order
    std::vector<Partition> classes; // same order
    std::vector<std::vector<long long>> values; // values[i][j] = chi_{irreps[i]}(classes[j])
    std::vector<long long> class_sizes;
    std::vector<long long> dims; // chi(identity), hook-length dimensions
    long long group_order = 1;   // n!

    int class_index(const Partition& mu) const;
    int irrep_index(const Partition& lambda) const;
};

// Cached complete table; 1 <= n <= 8.
const CharacterTable& character_table(int n);

// Class function with polynomial values (a Frobenius-twisted point count per
// cycle type).
struct PolyClassFunction {
    int n = 0;
    std::map<Partition, CountPolynomial> values;
};

// Integer-valued class function (the trace of each cycle type on one
// cohomology degree).
struct IntClassFunction {
    int n = 0;
    std::map<Partition, long long> values;
};

// Per-degree traces from a count polynomial on a smooth space of complex
// dimension d: trace on H^k = (-1)^k * (coefficient of q^{d-k}).
// Requires a value for every partition of n, each of degree <= d.
std::vector<IntClassFunction> counts_to_traces(const PolyClassFunction& counts, int d);

struct CohomologyTable {
    int n = 0;   // symmetric group degree
    int dim = 0; // top cohomology degree d
    std::vector<Partition> irreps;
    std::vector<long long> dims;
    std::vector<std::vector<long long>> rows; // rows[k][i] = multiplicity of irreps[i] in H^k
};

// m^k(lambda) = (1/n!) sum_mu |class mu| * trace_k(mu) * chi_lambda(mu),
// exact integer arithmetic; every multiplicity must be a nonnegative integer.
CohomologyTable decompose(const std::vector<IntClassFunction>& traces, const CharacterTable& table);

// counts_to_traces followed by decompose against character_table(counts.n).
CohomologyTable decompose_counts(const PolyClassFunction& counts, int d);

// Inverse direction, for round-trip checking: trace_k(mu) = sum_lambda
// m^k(lambda) * chi_lambda(mu).
std::vector<IntClassFunction> synthesize_traces(const CohomologyTable& t, const CharacterTable& table);

// Coefficient of t^k = sum_lambda m^k(lambda) * dim(lambda).
CountPolynomial poincare_polynomial(const CohomologyTable& t);

// Restriction from S_n to S_{n-1}: value at mu = value at mu with an extra
// part 1 (the standard embedding fixing the last letter).
PolyClassFunction restrict_class_function(const PolyClassFunction& f);

// CSV columns: degree,irrep_partition,multiplicity (partition labels quoted).
void cohomology_csv(const CohomologyTable& t, std::ostream& os);
// LaTeX tabular with one row per H^k and one column per s_lambda.
void cohomology_latex(const CohomologyTable& t, std::ostream& os);

} // namespace moduli::reptheory
