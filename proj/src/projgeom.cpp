#include "moduli/projgeom.hpp"

#include <algorithm>

namespace moduli::projgeom {

using gf::Elt;
using gf::FieldTower;
using gf::kZero;

namespace {

ProjPoint normalized(const FieldTower& T, int dim, std::array<Elt, 3> c) {
    int count = dim + 1;
    int lead = -1;
    for (int i = 0; i < count; ++i)
        if (c[i] != kZero) {
            lead = i;
            break;
        }
    if (lead < 0) throw std::invalid_argument("all-zero homogeneous coordinates");
    Elt s = T.inv(c[lead]);
    for (int i = 0; i < count; ++i) c[i] = T.mul(c[i], s);
    for (int i = count; i < 3; ++i) c[i] = kZero;
    return ProjPoint{dim, c};
}

void require_plane(const ProjPoint& p, const char* what) {
    if (p.dim != 2) throw DimensionMismatch(std::string(what) + " requires points of the projective plane");
}

// Gaussian elimination rank over the tower; rows are modified in place.
int matrix_rank(const FieldTower& T, std::vector<std::vector<Elt>>& rows) {
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
        size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == kZero) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        Elt inv = T.inv(rows[r][col]);
        for (size_t j = col; j < ncols; ++j) rows[r][j] = T.mul(rows[r][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == kZero) continue;
            Elt f = rows[i][col];
            for (size_t j = col; j < ncols; ++j) rows[i][j] = T.sub(rows[i][j], T.mul(f, rows[r][j]));
        }
        ++r;
    }
    return static_cast<int>(r);
}

std::array<Elt, 6> conic_monomials(const FieldTower& T, const ProjPoint& p) {
    Elt x = p.c[0], y = p.c[1], z = p.c[2];
    return {T.mul(x, x), T.mul(y, y), T.mul(z, z), T.mul(x, y), T.mul(x, z), T.mul(y, z)};
}

Elt det3(const FieldTower& T, const std::array<std::array<Elt, 3>, 3>& M) {
    auto mul3 = [&](Elt a, Elt b, Elt c) { return T.mul(T.mul(a, b), c); };
    Elt pos = T.add(T.add(mul3(M[0][0], M[1][1], M[2][2]), mul3(M[0][1], M[1][2], M[2][0])),
                    mul3(M[0][2], M[1][0], M[2][1]));
    Elt neg = T.add(T.add(mul3(M[0][2], M[1][1], M[2][0]), mul3(M[0][0], M[1][2], M[2][1])),
                    mul3(M[0][1], M[1][0], M[2][2]));
    return T.sub(pos, neg);
}

} // namespace

ProjPoint make_point(const FieldTower& T, Elt x, Elt y) { return normalized(T, 1, {x, y, kZero}); }
ProjPoint make_point(const FieldTower& T, Elt x, Elt y, Elt z) { return normalized(T, 2, {x, y, z}); }

ProjPoint frobenius_point(const FieldTower& T, const ProjPoint& p, int k) {
    // The lead coordinate is 1, which Frobenius fixes, so the image is
    // already normalized.
    ProjPoint r = p;
    for (int i = 0; i <= p.dim; ++i) r.c[i] = T.frobenius(p.c[i], k);
    return r;
}

bool collinear(const FieldTower& T, const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
    require_plane(p1, "collinear");
    require_plane(p2, "collinear");
    require_plane(p3, "collinear");
    std::array<std::array<Elt, 3>, 3> M{{{p1.c[0], p1.c[1], p1.c[2]},
                                         {p2.c[0], p2.c[1], p2.c[2]},
                                         {p3.c[0], p3.c[1], p3.c[2]}}};
    return det3(T, M) == kZero;
}

bool six_on_a_conic(const FieldTower& T, std::span<const ProjPoint, 6> pts) {
    std::vector<std::vector<Elt>> rows;
    rows.reserve(6);
    for (const ProjPoint& p : pts) {
        require_plane(p, "six_on_a_conic");
        auto mon = conic_monomials(T, p);
        rows.emplace_back(mon.begin(), mon.end());
    }
    return matrix_rank(T, rows) < 6;
}

bool in_general_position(const FieldTower& T, const Septuple& s) {
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            if (s.pts[i] == s.pts[j]) return false;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            for (int k = j + 1; k < 7; ++k)
                if (collinear(T, s.pts[i], s.pts[j], s.pts[k])) return false;
    std::array<ProjPoint, 6> six;
    for (int omit = 0; omit < 7; ++omit) {
        int t = 0;
        for (int i = 0; i < 7; ++i)
            if (i != omit) six[t++] = s.pts[i];
        if (six_on_a_conic(T, std::span<const ProjPoint, 6>(six))) return false;
    }
    return true;
}

Line line_through(const FieldTower& T, const ProjPoint& p, const ProjPoint& q) {
    require_plane(p, "line_through");
    require_plane(q, "line_through");
    if (p == q) throw CoincidentPoints("line through two coincident points is not determined");
    // Cross product of the coordinate vectors.
    std::array<Elt, 3> l{T.sub(T.mul(p.c[1], q.c[2]), T.mul(p.c[2], q.c[1])),
                         T.sub(T.mul(p.c[2], q.c[0]), T.mul(p.c[0], q.c[2])),
                         T.sub(T.mul(p.c[0], q.c[1]), T.mul(p.c[1], q.c[0]))};
    ProjPoint n = normalized(T, 2, l);
    return Line{n.c};
}

bool on_line(const FieldTower& T, const Line& l, const ProjPoint& p) {
    require_plane(p, "on_line");
    Elt s = T.add(T.add(T.mul(l.c[0], p.c[0]), T.mul(l.c[1], p.c[1])), T.mul(l.c[2], p.c[2]));
    return s == kZero;
}

Conic conic_through_five(const FieldTower& T, std::span<const ProjPoint, 5> pts) {
    std::vector<std::vector<Elt>> rows;
    rows.reserve(5);
    for (const ProjPoint& p : pts) {
        require_plane(p, "conic_through_five");
        auto mon = conic_monomials(T, p);
        rows.emplace_back(mon.begin(), mon.end());
    }
    // Reduce and read off the one-dimensional null space.
    int rank = matrix_rank(T, rows);
    if (rank < 5)
        throw UnderdeterminedSystem("five points do not determine a unique conic (coefficient rank " +
                                    std::to_string(rank) + ")");
    // Columns are in echelon form after full reduction; find pivot columns.
    std::array<int, 6> pivot_row;
    pivot_row.fill(-1);
    std::array<bool, 6> is_pivot{};
    int r = 0;
    for (int col = 0; col < 6 && r < 5; ++col) {
        if (rows[r][col] != kZero) {
            is_pivot[col] = true;
            pivot_row[col] = r;
            ++r;
        }
    }
    int freeCol = -1;
    for (int col = 0; col < 6; ++col)
        if (!is_pivot[col]) {
            freeCol = col;
            break;
        }
    std::array<Elt, 6> sol{};
    sol[freeCol] = T.one();
    for (int col = 0; col < 6; ++col)
        if (is_pivot[col]) sol[col] = T.neg(rows[pivot_row[col]][freeCol]);
    // Normalize: first nonzero coefficient scaled to 1.
    int lead = 0;
    while (sol[lead] == kZero) ++lead;
    Elt inv = T.inv(sol[lead]);
    for (auto& v : sol) v = T.mul(v, inv);
    return Conic{sol};
}

bool on_conic(const FieldTower& T, const Conic& c, const ProjPoint& p) {
    require_plane(p, "on_conic");
    auto mon = conic_monomials(T, p);
    Elt s = kZero;
    for (int i = 0; i < 6; ++i) s = T.add(s, T.mul(c.c[i], mon[i]));
    return s == kZero;
}

bool is_smooth_conic(const FieldTower& T, const Conic& c) {
    // Symmetric matrix of the quadratic form (odd characteristic):
    // [[2a, d, e], [d, 2b, f], [e, f, 2c]]
    Elt two = T.from_int(2);
    std::array<std::array<Elt, 3>, 3> M{{{T.mul(two, c.c[0]), c.c[3], c.c[4]},
                                         {c.c[3], T.mul(two, c.c[1]), c.c[5]},
                                         {c.c[4], c.c[5], T.mul(two, c.c[2])}}};
    return det3(T, M) != kZero;
}

Line tangent_line(const FieldTower& T, const Conic& c, const ProjPoint& p) {
    require_plane(p, "tangent_line");
    if (!is_smooth_conic(T, c)) throw SingularConic("tangent line of a singular conic");
    if (!on_conic(T, c, p)) throw PointNotOnConic("tangent line at a point not on the conic");
    Elt two = T.from_int(2);
    Elt x = p.c[0], y = p.c[1], z = p.c[2];
    std::array<Elt, 3> g{
        T.add(T.add(T.mul(T.mul(two, c.c[0]), x), T.mul(c.c[3], y)), T.mul(c.c[4], z)),
        T.add(T.add(T.mul(c.c[3], x), T.mul(T.mul(two, c.c[1]), y)), T.mul(c.c[5], z)),
        T.add(T.add(T.mul(c.c[4], x), T.mul(c.c[5], y)), T.mul(T.mul(two, c.c[2]), z))};
    ProjPoint n = normalized(T, 2, g);
    return Line{n.c};
}

TangencyClass classify_point(const FieldTower& T, const Conic& c, const ProjPoint& p) {
    require_plane(p, "classify_point");
    if (!is_smooth_conic(T, c)) throw SingularConic("tangency classification for a singular conic");
    if (on_conic(T, c, p)) return TangencyClass::On;
    int tangents = 0;
    for (const ProjPoint& r : enumerate_points(T, 2, T.m)) {
        if (!on_conic(T, c, r)) continue;
        Line t = tangent_line(T, c, r);
        if (on_line(T, t, p)) ++tangents;
    }
    if (tangents == 0) return TangencyClass::Inside;
    if (tangents == 2) return TangencyClass::Outside;
    throw std::logic_error("point off a smooth conic lies on " + std::to_string(tangents) + " tangents");
}

long long count_projective_points(int dim, long long q) {
    long long total = 0, power = 1;
    for (int i = 0; i <= dim; ++i) {
        total += power;
        power *= q;
    }
    return total;
}

CountPolynomial count_projective_points_poly(int dim) {
    std::vector<long long> c(static_cast<size_t>(dim) + 1, 1);
    return CountPolynomial(std::move(c));
}

std::vector<ProjPoint> enumerate_points(const FieldTower& T, int dim, int d) {
    if (dim != 1 && dim != 2) throw DimensionMismatch("projective dimension must be 1 or 2");
    if (d < 1 || T.m % d != 0)
        throw std::invalid_argument("degree " + std::to_string(d) + " is not a subfield of the tower");
    std::uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= T.q;
    std::uint64_t step = T.subfield_step(d);
    std::vector<Elt> sub;
    sub.reserve(qd);
    sub.push_back(kZero);
    for (std::uint64_t t = 0; t + 1 < qd; ++t) sub.push_back(T.exp(t * step));

    std::vector<ProjPoint> out;
    if (dim == 1) {
        out.reserve(qd + 1);
        out.push_back(ProjPoint{1, {kZero, T.one(), kZero}}); // [0:1]
        for (Elt t : sub) out.push_back(ProjPoint{1, {T.one(), t, kZero}});
    } else {
        out.reserve(qd * qd + qd + 1);
        out.push_back(ProjPoint{2, {kZero, kZero, T.one()}}); // [0:0:1]
        for (Elt t : sub) out.push_back(ProjPoint{2, {kZero, T.one(), t}});
        for (Elt s : sub)
            for (Elt t : sub) out.push_back(ProjPoint{2, {T.one(), s, t}});
    }
    return out;
}

int point_degree(const FieldTower& T, const ProjPoint& p) {
    for (int d = 1; d <= T.m; ++d) {
        if (T.m % d != 0) continue;
        bool ok = true;
        for (int i = 0; i <= p.dim; ++i)
            if (!T.in_subfield(p.c[i], d)) {
                ok = false;
                break;
            }
        if (ok) return d;
    }
    throw std::logic_error("point_degree: no subfield matched");
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

} // namespace moduli::projgeom
