#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli/partition.hpp"
#include "moduli/poly.hpp"

namespace moduli::closedform {

struct UnknownPartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Requested component exists in the derivation only as prose, not as a
// displayed closed form.
struct NotTranscribed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Space { Q2, M08, H3_S8, H3_S7, DeltaComponent };

// Ambient-set convention of a per-case derivation: which distinguished points
// carry an extra "no three collinear" restriction on top of distinctness.
enum class USpec {
    Full,                      // no restriction beyond distinctness
    LastThreeNotCollinear,     // the three rational points
    FirstFourGeneralPosition,  // four designated points, no three collinear
    FirstFiveGeneralPosition,  // five designated points, no three collinear
    FirstSixNoThreeCollinear,  // six designated points, no three collinear
};

struct FormulaEntry {
    Space space = Space::Q2;
    Partition lambda;
    std::string component; // "count" for table rows; "Δ_l", "Δ_c", ... for case pieces
    USpec u_spec = USpec::Full;
    CountPolynomial poly;
    std::string anchor; // verbatim formula text for traceability
};

enum class SymGroup { S8, S7 };
enum class GroupKind { PGL3, PGL2, Sp6F2 };

// Every transcribed closed form: 15 plane-quartic rows, 22 genus-0 rows,
// 22 + 15 hyperelliptic rows, and the per-case boundary components.
const std::vector<FormulaEntry>& registry();

// Table row accessors -----------------------------------------------------

// Equivariant point count of the plane-quartic moduli space (partition of 7).
CountPolynomial quartic_locus_count(const Partition& lambda);
// Equivariant point count of the space of 8 ordered points on a line (partition of 8).
CountPolynomial m08_count(const Partition& lambda);
// Equivariant point count of the hyperelliptic locus (partition of 8 or 7).
CountPolynomial h3_count(const Partition& lambda, SymGroup group);

long long group_order(GroupKind kind, long long q);
CountPolynomial group_order_poly(GroupKind kind);

// Boundary-component formulas of the per-case derivations (partition of 7).
const FormulaEntry& delta_component_formula(const Partition& lambda, const std::string& component);
// All components transcribed for one case (empty when nothing is transcribed).
std::vector<FormulaEntry> delta_components(const Partition& lambda);

// Ambient-set convention of the case derivation for lambda (partition of 7).
USpec case_uspec(const Partition& lambda);
// Cases with a complete decomposition: U, Δ_l, Δ_c, Δ_l∩Δ_c all transcribed.
std::vector<Partition> complete_delta_cases();

std::string uspec_name(USpec u);
std::string space_name(Space s);

// formulas.json: array of {space, lambda, component, uspec, coeffs, anchor},
// coefficients in ascending degree order.
void dump_formulas_json(std::ostream& os);

} // namespace moduli::closedform
