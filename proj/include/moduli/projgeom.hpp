#pragma once

#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "moduli/gf.hpp"
#include "moduli/partition.hpp"
#include "moduli/poly.hpp"

namespace moduli::projgeom {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CoincidentPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnderdeterminedSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PointNotOnConic : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularConic : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingDegree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point of P^1 or P^2 in normalized homogeneous coordinates: the first
// nonzero coordinate is scaled to 1, making the representation canonical and
// equality a plain coordinate comparison.
struct ProjPoint {
    int dim = 2;                      // 1 or 2
    std::array<gf::Elt, 3> c{0, 0, 0}; // c[2] unused when dim == 1
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.dim == b.dim && a.c == b.c;
    }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.c < b.c;
    }
};

// Line of P^2 as normalized dual coordinates [a:b:c] for ax+by+cz = 0.
struct Line {
    std::array<gf::Elt, 3> c{0, 0, 0};
    friend bool operator==(const Line& a, const Line& b) { return a.c == b.c; }
};

// Conic ax^2 + by^2 + cz^2 + dxy + exz + fyz = 0, normalized coefficients in
// the fixed monomial order (x^2, y^2, z^2, xy, xz, yz).
struct Conic {
    std::array<gf::Elt, 6> c{0, 0, 0, 0, 0, 0};
    friend bool operator==(const Conic& a, const Conic& b) { return a.c == b.c; }
};

struct Septuple {
    std::array<ProjPoint, 7> pts;
};

enum class TangencyClass { On, Inside, Outside };

// --- construction -----------------------------------------------------------

ProjPoint make_point(const gf::FieldTower& T, gf::Elt x, gf::Elt y);             // P^1
ProjPoint make_point(const gf::FieldTower& T, gf::Elt x, gf::Elt y, gf::Elt z); // P^2
ProjPoint frobenius_point(const gf::FieldTower& T, const ProjPoint& p, int k = 1);

// --- predicates --------------------------------------------------------------

bool collinear(const gf::FieldTower& T, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3);
bool six_on_a_conic(const gf::FieldTower& T, std::span<const ProjPoint, 6> pts);
// No three of the seven collinear and no six on a conic (degenerate conics
// included: the test is "some nonzero quadratic form vanishes on all six").
bool in_general_position(const gf::FieldTower& T, const Septuple& s);

Line line_through(const gf::FieldTower& T, const ProjPoint& p, const ProjPoint& q);
bool on_line(const gf::FieldTower& T, const Line& l, const ProjPoint& p);
Conic conic_through_five(const gf::FieldTower& T, std::span<const ProjPoint, 5> pts);
bool on_conic(const gf::FieldTower& T, const Conic& c, const ProjPoint& p);
// Nonsingularity of the associated symmetric matrix (odd characteristic).
bool is_smooth_conic(const gf::FieldTower& T, const Conic& c);
Line tangent_line(const gf::FieldTower& T, const Conic& c, const ProjPoint& p);
// On / Inside (no tangent through p) / Outside (two tangents through p),
// with rationality meaning coordinates in the full field of T.
TangencyClass classify_point(const gf::FieldTower& T, const Conic& c, const ProjPoint& p);

// --- enumeration -------------------------------------------------------------

// |P^dim(F_q)|
long long count_projective_points(int dim, long long q);
CountPolynomial count_projective_points_poly(int dim);

// All points of P^dim with coordinates in the degree-d subfield of T (d | T.m),
// in a fixed canonical order.
std::vector<ProjPoint> enumerate_points(const gf::FieldTower& T, int dim, int d);

// Minimal d (dividing T.m) with all coordinates of p in F_{q^d}.
int point_degree(const gf::FieldTower& T, const ProjPoint& p);

// Number of conjugate lambda-tuples of distinct points, from the per-degree
// point counts of the ambient variety: counts[d] = |X(F_{q^d})|.  Works for
// exact integers and for count polynomials alike.
template <typename T>
T count_conjugate_tuples(const std::map<int, T>& counts, const Partition& lambda);

int mobius(int n);

// --- implementation of the template -----------------------------------------

template <typename T>
T count_conjugate_tuples(const std::map<int, T>& counts, const Partition& lambda) {
    if (!is_valid_partition(lambda)) throw std::invalid_argument("invalid partition");
    // multiplicity of each part size
    std::map<int, int> mult;
    for (int part : lambda) ++mult[part];
    T total = [] {
        if constexpr (std::is_same_v<T, CountPolynomial>)
            return CountPolynomial::constant(1);
        else
            return T(1);
    }();
    for (auto [size, k] : mult) {
        // Strict count: points of degree exactly `size`, by Mobius inversion
        // over the subfield lattice.
        T strict = [] {
            if constexpr (std::is_same_v<T, CountPolynomial>)
                return CountPolynomial();
            else
                return T(0);
        }();
        for (int d = 1; d <= size; ++d) {
            if (size % d != 0) continue;
            auto it = counts.find(d);
            if (it == counts.end())
                throw MissingDegree("point count for degree " + std::to_string(d) +
                                    " is required by partition part " + std::to_string(size));
            int mu = mobius(size / d);
            if (mu == 1)
                strict = strict + it->second;
            else if (mu == -1)
                strict = strict - it->second;
        }
        // Ordered choices of k distinct Frobenius orbits of this size, each
        // with a distinguished lead point: (M)(M - s)(M - 2s)...
        for (int j = 0; j < k; ++j) {
            T term = strict - [&] {
                if constexpr (std::is_same_v<T, CountPolynomial>)
                    return CountPolynomial::constant(static_cast<long long>(size) * j);
                else
                    return T(static_cast<long long>(size) * j);
            }();
            total = total * term;
        }
    }
    return total;
}

} // namespace moduli::projgeom
