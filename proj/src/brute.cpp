#include "moduli/brute.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace moduli::brute {
namespace {

using closedform::GroupKind;
using closedform::USpec;
using gf::Elt;
using gf::FieldTower;
using gf::kZero;
using projgeom::ProjPoint;

// ---------------------------------------------------------------------------
// Point-set utilities
// ---------------------------------------------------------------------------

// Number of points of P^dim(F_{q^d}) whose field of definition is exactly
// F_{q^d}, by Moebius inversion over the subfield lattice.
long long strict_point_count(long long q, int dim, int d) {
    long long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        long long qe = 1;
        for (int i = 0; i < e; ++i) qe *= q;
        total += projgeom::mobius(d / e) * projgeom::count_projective_points(dim, qe);
    }
    return total;
}

// A point with coordinates in F_{q^d} is strict of degree d iff its
// coordinates do not all lie in F_{q^{d/p}} for some prime p dividing d.
struct StrictFilter {
    std::vector<std::uint64_t> steps;

    StrictFilter(const FieldTower& T, int d) {
        for (int p = 2; p <= d; ++p) {
            if (d % p != 0) continue;
            bool prime = true;
            for (int f = 2; f * f <= p; ++f)
                if (p % f == 0) {
                    prime = false;
                    break;
                }
            if (prime) steps.push_back(T.subfield_step(d / p));
        }
    }
    static bool in_step(Elt e, std::uint64_t step) {
        return e == kZero || static_cast<std::uint64_t>(e - 1) % step == 0;
    }
    bool strict(const ProjPoint& p) const {
        for (std::uint64_t s : steps) {
            bool all = true;
            for (int i = 0; i <= p.dim; ++i)
                if (!in_step(p.c[i], s)) {
                    all = false;
                    break;
                }
            if (all) return false;
        }
        return true;
    }
};

std::vector<ProjPoint> strict_points(const FieldTower& T, int dim, int d) {
    StrictFilter filter(T, d);
    std::vector<ProjPoint> out;
    for (const ProjPoint& p : projgeom::enumerate_points(T, dim, d))
        if (filter.strict(p)) out.push_back(p);
    return out;
}

// Stream the points of P^2(F_{q^d}) in canonical order without materializing
// them ([0:0:1], then [0:1:t], then [1:s:t] with s, t over the subfield).
template <typename Fn>
void for_each_plane_point(const FieldTower& T, int d, Fn&& fn) {
    std::uint64_t qd = 1;
    for (int i = 0; i < d; ++i) qd *= T.q;
    std::uint64_t step = T.subfield_step(d);
    auto elt = [&](std::uint64_t r) -> Elt {
        return r == 0 ? kZero : T.exp((r - 1) * step);
    };
    fn(ProjPoint{2, {kZero, kZero, T.one()}});
    for (std::uint64_t rt = 0; rt < qd; ++rt) fn(ProjPoint{2, {kZero, T.one(), elt(rt)}});
    for (std::uint64_t rs = 0; rs < qd; ++rs) {
        Elt s = elt(rs);
        for (std::uint64_t rt = 0; rt < qd; ++rt) fn(ProjPoint{2, {T.one(), s, elt(rt)}});
    }
}

// Dense perfect index for the points of P^2(F_{q^d}).
struct PointCoder {
    std::uint64_t B = 0;
    std::uint64_t step = 0;
    std::uint64_t size = 0;

    PointCoder(const FieldTower& T, int d) {
        B = 1;
        for (int i = 0; i < d; ++i) B *= T.q;
        step = T.subfield_step(d);
        size = B * B + B + 1;
    }
    std::uint64_t rank(Elt e) const { return e == kZero ? 0 : 1 + (e - 1) / step; }
    std::uint64_t code(const ProjPoint& p) const {
        if (p.c[0] == kZero) {
            if (p.c[1] == kZero) return 0;
            return 1 + rank(p.c[2]);
        }
        return 1 + B + rank(p.c[1]) * B + rank(p.c[2]);
    }
};

// ---------------------------------------------------------------------------
// The projective linear group over the base field, one matrix per class
// (first nonzero entry scaled to 1), entries as tower elements.
// ---------------------------------------------------------------------------

std::vector<std::array<Elt, 9>> pgl3_elements(const FieldTower& T) {
    std::vector<Elt> F;
    F.reserve(static_cast<std::size_t>(T.q));
    F.push_back(kZero);
    std::uint64_t step = T.subfield_step(1);
    for (std::uint64_t r = 0; r + 1 < T.q; ++r) F.push_back(T.exp(r * step));

    auto det3 = [&T](const std::array<Elt, 9>& m) -> Elt {
        Elt m1 = T.sub(T.mul(m[4], m[8]), T.mul(m[5], m[7]));
        Elt m2 = T.sub(T.mul(m[3], m[8]), T.mul(m[5], m[6]));
        Elt m3 = T.sub(T.mul(m[3], m[7]), T.mul(m[4], m[6]));
        return T.add(T.sub(T.mul(m[0], m1), T.mul(m[1], m2)), T.mul(m[2], m3));
    };

    std::vector<std::array<Elt, 9>> out;
    std::array<Elt, 9> m{};
    for (int lead = 0; lead < 9; ++lead) {
        m.fill(kZero);
        m[lead] = T.one();
        int free = 8 - lead;
        std::vector<std::size_t> idx(static_cast<std::size_t>(free), 0);
        while (true) {
            for (int i = 0; i < free; ++i) m[static_cast<std::size_t>(lead + 1 + i)] = F[idx[static_cast<std::size_t>(i)]];
            if (det3(m) != kZero) out.push_back(m);
            int k = free - 1;
            while (k >= 0 && idx[static_cast<std::size_t>(k)] + 1 == F.size()) idx[static_cast<std::size_t>(k--)] = 0;
            if (k < 0) break;
            ++idx[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

inline ProjPoint apply_mat(const FieldTower& T, const std::array<Elt, 9>& m, const ProjPoint& p) {
    Elt X = T.add(T.add(T.mul(m[0], p.c[0]), T.mul(m[1], p.c[1])), T.mul(m[2], p.c[2]));
    Elt Y = T.add(T.add(T.mul(m[3], p.c[0]), T.mul(m[4], p.c[1])), T.mul(m[5], p.c[2]));
    Elt Z = T.add(T.add(T.mul(m[6], p.c[0]), T.mul(m[7], p.c[1])), T.mul(m[8], p.c[2]));
    if (X != kZero) {
        Elt s = T.inv(X);
        return ProjPoint{2, {T.one(), T.mul(Y, s), T.mul(Z, s)}};
    }
    if (Y != kZero) return ProjPoint{2, {kZero, T.one(), T.mul(Z, T.inv(Y))}};
    return ProjPoint{2, {kZero, kZero, T.one()}};
}

// ---------------------------------------------------------------------------
// Fast incidence predicates on raw coordinates
// ---------------------------------------------------------------------------

inline bool collinear_pts(const FieldTower& T, const ProjPoint& A, const ProjPoint& B, const ProjPoint& C) {
    Elt m1 = T.sub(T.mul(B.c[1], C.c[2]), T.mul(B.c[2], C.c[1]));
    Elt m2 = T.sub(T.mul(B.c[0], C.c[2]), T.mul(B.c[2], C.c[0]));
    Elt m3 = T.sub(T.mul(B.c[0], C.c[1]), T.mul(B.c[1], C.c[0]));
    return T.add(T.sub(T.mul(A.c[0], m1), T.mul(A.c[1], m2)), T.mul(A.c[2], m3)) == kZero;
}

struct RawLine {
    Elt a = kZero, b = kZero, c = kZero;
};

inline RawLine cross_pts(const FieldTower& T, const ProjPoint& P, const ProjPoint& Q) {
    return {T.sub(T.mul(P.c[1], Q.c[2]), T.mul(P.c[2], Q.c[1])),
            T.sub(T.mul(P.c[2], Q.c[0]), T.mul(P.c[0], Q.c[2])),
            T.sub(T.mul(P.c[0], Q.c[1]), T.mul(P.c[1], Q.c[0]))};
}

inline Elt dot_lp(const FieldTower& T, const RawLine& L, const ProjPoint& P) {
    return T.add(T.add(T.mul(L.a, P.c[0]), T.mul(L.b, P.c[1])), T.mul(L.c, P.c[2]));
}

// Do some six of the seven points lie on a conic?  Valid only when the seven
// points are pairwise distinct with no three collinear: then the conics
// through any four of them form a pencil spanned by two explicit line pairs,
// and six points {base, x, y} lie on a conic iff the pencil coordinates of x
// and y are proportional.  Three pencils cover all seven six-point subsets.
bool six_on_conic_no3col(const FieldTower& T, const std::array<ProjPoint, 8>& pts) {
    static constexpr int kBase[3][4] = {{0, 1, 2, 3}, {3, 4, 5, 6}, {0, 1, 2, 4}};
    static constexpr int kExtra[3][3] = {{4, 5, 6}, {0, 1, 2}, {5, 6, 6}};
    static constexpr int kExtraN[3] = {3, 3, 2};
    for (int t = 0; t < 3; ++t) {
        RawLine l1 = cross_pts(T, pts[kBase[t][0]], pts[kBase[t][1]]);
        RawLine l2 = cross_pts(T, pts[kBase[t][2]], pts[kBase[t][3]]);
        RawLine l3 = cross_pts(T, pts[kBase[t][0]], pts[kBase[t][2]]);
        RawLine l4 = cross_pts(T, pts[kBase[t][1]], pts[kBase[t][3]]);
        Elt K1[3], K2[3];
        int ne = kExtraN[t];
        for (int e = 0; e < ne; ++e) {
            const ProjPoint& x = pts[kExtra[t][e]];
            K1[e] = T.mul(dot_lp(T, l1, x), dot_lp(T, l2, x));
            K2[e] = T.mul(dot_lp(T, l3, x), dot_lp(T, l4, x));
        }
        for (int i = 0; i < ne; ++i)
            for (int j = i + 1; j < ne; ++j)
                if (T.sub(T.mul(K1[i], K2[j]), T.mul(K1[j], K2[i])) == kZero) return true;
    }
    return false;
}

// General form, used when the septuple has a collinear triple: does some
// six-point subset lie on a SMOOTH conic?  Six points lie on a smooth conic
// exactly when no three of them are collinear and the 6x6 monomial matrix is
// rank-deficient: a conic through six points with no three collinear cannot
// be a line pair or double line (two lines hold at most four such points),
// and conversely a line meets a smooth conic in at most two points.  The
// smoothness requirement matters for the component split: six points on a
// degenerate conic always contain three collinear ones, so counting them
// here would double-book part of the collinear component (the union and the
// inclusion-exclusion total would be unchanged, the parts wrong).
bool six_on_smooth_conic(const FieldTower& T, const std::array<ProjPoint, 8>& pts) {
    std::array<ProjPoint, 6> six;
    for (int omit = 0; omit < 7; ++omit) {
        int k = 0;
        for (int i = 0; i < 7; ++i)
            if (i != omit) six[static_cast<std::size_t>(k++)] = pts[static_cast<std::size_t>(i)];
        bool collinear_triple = false;
        for (int a = 0; a < 6 && !collinear_triple; ++a)
            for (int b = a + 1; b < 6 && !collinear_triple; ++b)
                for (int c = b + 1; c < 6 && !collinear_triple; ++c)
                    collinear_triple = collinear_pts(T, six[static_cast<std::size_t>(a)],
                                                    six[static_cast<std::size_t>(b)],
                                                    six[static_cast<std::size_t>(c)]);
        if (collinear_triple) continue;
        if (projgeom::six_on_a_conic(T, std::span<const ProjPoint, 6>(six))) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Nested enumeration over Frobenius orbits in the plane
// ---------------------------------------------------------------------------

struct Totals {
    long long u = 0;    // tuples in the ambient set
    long long dl = 0;   // ... with some three points collinear
    long long dc = 0;   // ... with some six points on a smooth conic
    long long both = 0; // ... with both degenerations
    long long gp = 0;   // ... in general position

    Totals& operator+=(const Totals& o) {
        u += o.u;
        dl += o.dl;
        dc += o.dc;
        both += o.both;
        gp += o.gp;
        return *this;
    }
    void add_scaled(const Totals& o, long long s) {
        u += o.u * s;
        dl += o.dl * s;
        dc += o.dc * s;
        both += o.both * s;
        gp += o.gp * s;
    }
};

struct Batch {
    int len = 0;
    std::vector<int> positions;
    const std::vector<ProjPoint>* domain = nullptr; // null for prefilled batches
    ProjPoint fixed;                                // prefilled orbit lead
    // Precomputed against the fixed fill order:
    std::vector<int> old_positions;   // positions filled before this batch
    std::vector<int> des_new;         // designated positions within this batch
    std::vector<int> des_old;         // designated positions filled before
    std::vector<int> same_len_before; // earlier batch indices of equal length
};

void finalize_batches(std::vector<Batch>& bs, const std::array<bool, 8>& designated) {
    std::vector<int> old, desOld;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        Batch& b = bs[i];
        b.old_positions = old;
        b.des_old = desOld;
        for (int p : b.positions)
            if (designated[static_cast<std::size_t>(p)]) b.des_new.push_back(p);
        for (std::size_t e = 0; e < i; ++e)
            if (bs[e].len == b.len) b.same_len_before.push_back(static_cast<int>(e));
        for (int p : b.positions) {
            old.push_back(p);
            if (designated[static_cast<std::size_t>(p)]) desOld.push_back(p);
        }
    }
}

class PlaneEngine {
public:
    PlaneEngine(const FieldTower& T, std::vector<Batch> batches, int prefill, bool gpMode)
        : T_(T), batches_(std::move(batches)), prefill_(prefill), gp_(gpMode) {}

    // Enumerate, with the first non-prefilled batch restricted to domain
    // indices [lo, hi).
    Totals run(std::size_t lo, std::size_t hi) {
        Totals t;
        bool h3 = false;
        for (int i = 0; i < prefill_; ++i) {
            place(batches_[static_cast<std::size_t>(i)], batches_[static_cast<std::size_t>(i)].fixed);
            if (!check(i, h3)) return t;
        }
        recurse(prefill_, h3, lo, hi, t);
        return t;
    }

    Totals run_for_lead(const ProjPoint& lead) {
        batches_[0].fixed = lead;
        return run(0, SIZE_MAX);
    }

private:
    void place(const Batch& b, const ProjPoint& lead) {
        pts_[static_cast<std::size_t>(b.positions[0])] = lead;
        for (int j = 1; j < b.len; ++j)
            pts_[static_cast<std::size_t>(b.positions[static_cast<std::size_t>(j)])] =
                frob(pts_[static_cast<std::size_t>(b.positions[static_cast<std::size_t>(j - 1)])]);
    }
    ProjPoint frob(const ProjPoint& p) const {
        // Normalization has the leading coordinate equal to 1, which Frobenius
        // fixes, so no renormalization is needed.
        return ProjPoint{2, {T_.frobenius(p.c[0]), T_.frobenius(p.c[1]), T_.frobenius(p.c[2])}};
    }

    bool any_new_collinear(const std::vector<int>& N, const std::vector<int>& O) const {
        for (std::size_t a = 0; a < N.size(); ++a) {
            const ProjPoint& A = pts_[static_cast<std::size_t>(N[a])];
            for (std::size_t b = a + 1; b < N.size(); ++b) {
                const ProjPoint& B = pts_[static_cast<std::size_t>(N[b])];
                for (int o : O)
                    if (collinear_pts(T_, A, B, pts_[static_cast<std::size_t>(o)])) return true;
                for (std::size_t c = b + 1; c < N.size(); ++c)
                    if (collinear_pts(T_, A, B, pts_[static_cast<std::size_t>(N[c])])) return true;
            }
            for (std::size_t o1 = 0; o1 < O.size(); ++o1)
                for (std::size_t o2 = o1 + 1; o2 < O.size(); ++o2)
                    if (collinear_pts(T_, A, pts_[static_cast<std::size_t>(O[o1])],
                                      pts_[static_cast<std::size_t>(O[o2])]))
                        return true;
        }
        return false;
    }

    bool check(int bi, bool& h3) {
        const Batch& b = batches_[static_cast<std::size_t>(bi)];
        // Orbits of equal length either coincide or are disjoint, so it is
        // enough to compare the new lead against earlier equal-length orbits.
        const ProjPoint& lead = pts_[static_cast<std::size_t>(b.positions[0])];
        for (int e : b.same_len_before) {
            const Batch& o = batches_[static_cast<std::size_t>(e)];
            for (int j = 0; j < o.len; ++j)
                if (pts_[static_cast<std::size_t>(o.positions[static_cast<std::size_t>(j)])] == lead) return false;
        }
        // Ambient-set restriction: designated points must stay non-collinear.
        if (!b.des_new.empty() && any_new_collinear(b.des_new, b.des_old)) return false;
        if (gp_) {
            if (any_new_collinear(b.positions, b.old_positions)) return false;
        } else if (!h3 && any_new_collinear(b.positions, b.old_positions)) {
            h3 = true;
        }
        return true;
    }

    void leaf(bool h3, Totals& t) {
        if (gp_) {
            if (!six_on_conic_no3col(T_, pts_)) ++t.gp;
            return;
        }
        ++t.u;
        bool dc = h3 ? six_on_smooth_conic(T_, pts_) : six_on_conic_no3col(T_, pts_);
        if (h3) ++t.dl;
        if (dc) ++t.dc;
        if (h3 && dc) ++t.both;
        if (!h3 && !dc) ++t.gp;
    }

    void recurse(int bi, bool h3, std::size_t lo, std::size_t hi, Totals& t) {
        if (bi == static_cast<int>(batches_.size())) {
            leaf(h3, t);
            return;
        }
        const Batch& b = batches_[static_cast<std::size_t>(bi)];
        const std::vector<ProjPoint>& dom = *b.domain;
        std::size_t start = 0, end = dom.size();
        if (bi == prefill_) {
            start = std::min(lo, dom.size());
            end = std::min(hi, dom.size());
        }
        for (std::size_t k = start; k < end; ++k) {
            place(b, dom[k]);
            bool h = h3;
            if (check(bi, h)) recurse(bi + 1, h, lo, hi, t);
        }
    }

    const FieldTower& T_;
    std::vector<Batch> batches_;
    int prefill_ = 0;
    bool gp_ = false;
    std::array<ProjPoint, 8> pts_{};
};

template <typename Work>
Totals parallel_totals(std::size_t nItems, int threads, const Work& work) {
    int t = std::max(1, threads);
    if (nItems < static_cast<std::size_t>(t)) t = nItems == 0 ? 1 : static_cast<int>(nItems);
    if (t <= 1) return work(static_cast<std::size_t>(0), nItems);
    std::vector<Totals> parts(static_cast<std::size_t>(t));
    std::vector<std::thread> pool;
    std::size_t chunk = (nItems + static_cast<std::size_t>(t) - 1) / static_cast<std::size_t>(t);
    for (int i = 0; i < t; ++i) {
        std::size_t lo = static_cast<std::size_t>(i) * chunk;
        std::size_t hi = std::min(nItems, lo + chunk);
        pool.emplace_back([&parts, &work, i, lo, hi] { parts[static_cast<std::size_t>(i)] = work(lo, hi); });
    }
    for (std::thread& th : pool) th.join();
    Totals sum;
    for (const Totals& p : parts) sum += p;
    return sum;
}

// ---------------------------------------------------------------------------
// Quotient-by-division driver: split the largest orbit domain into group
// orbits, enumerate the rest per representative, and scale by orbit size.
// Every predicate involved is invariant under the group, so the inner count
// is constant along each orbit.
// ---------------------------------------------------------------------------

struct QdConfig {
    CycleLayout layout;
    long long q = 0;
    bool gpMode = true;
    std::array<bool, 8> designated{};
    Options opts;
};

Totals run_quotient_divide(const QdConfig& cfg) {
    const CycleLayout& L = cfg.layout;
    gf::TowerPtr tw = FieldTower::build(cfg.q, L.lcm, cfg.opts.tower_cap);
    const FieldTower& T = *tw;

    int split = 0;
    long long best = -1;
    for (std::size_t i = 0; i < L.cycles.size(); ++i) {
        long long s = strict_point_count(cfg.q, 2, L.cycles[i].length);
        if (s > best) {
            best = s;
            split = static_cast<int>(i);
        }
    }
    int d = L.cycles[static_cast<std::size_t>(split)].length;

    PointCoder coder(T, d);
    if (coder.size > cfg.opts.max_orbit_table)
        throw gf::ExtensionTooLarge("orbit table for degree-" + std::to_string(d) + " plane points over F_" +
                                    std::to_string(cfg.q) + " needs " + std::to_string(coder.size) +
                                    " entries, above the limit " + std::to_string(cfg.opts.max_orbit_table));

    std::vector<std::array<Elt, 9>> pgl = pgl3_elements(T);
    long long pglOrder = closedform::group_order(GroupKind::PGL3, cfg.q);
    if (static_cast<long long>(pgl.size()) != pglOrder)
        throw std::logic_error("projective group enumeration produced " + std::to_string(pgl.size()) +
                               " matrices, expected " + std::to_string(pglOrder));

    StrictFilter strict(T, d);
    std::vector<std::uint8_t> seen(coder.size, 0);
    std::vector<ProjPoint> reps;
    std::vector<long long> sizes;
    long long covered = 0;
    for_each_plane_point(T, d, [&](const ProjPoint& p) {
        if (!strict.strict(p)) return;
        if (seen[coder.code(p)]) return;
        long long size = 0;
        for (const std::array<Elt, 9>& mat : pgl) {
            std::uint8_t& cell = seen[coder.code(apply_mat(T, mat, p))];
            if (!cell) {
                cell = 1;
                ++size;
            }
        }
        reps.push_back(p);
        sizes.push_back(size);
        covered += size;
    });
    if (covered != best)
        throw std::logic_error("orbit scan covered " + std::to_string(covered) + " strict points, expected " +
                               std::to_string(best));
    seen.clear();
    seen.shrink_to_fit();

    std::map<int, std::vector<ProjPoint>> domains;
    std::vector<Batch> batches;
    {
        Batch b0;
        b0.len = d;
        b0.positions = L.cycles[static_cast<std::size_t>(split)].positions;
        batches.push_back(std::move(b0));
    }
    for (std::size_t i = 0; i < L.cycles.size(); ++i) {
        if (static_cast<int>(i) == split) continue;
        int len = L.cycles[i].length;
        if (domains.find(len) == domains.end()) domains[len] = strict_points(T, 2, len);
        Batch b;
        b.len = len;
        b.positions = L.cycles[i].positions;
        batches.push_back(std::move(b));
    }
    {
        std::size_t bi = 1;
        for (std::size_t i = 0; i < L.cycles.size(); ++i) {
            if (static_cast<int>(i) == split) continue;
            batches[bi++].domain = &domains[L.cycles[i].length];
        }
    }
    finalize_batches(batches, cfg.designated);

    auto work = [&](std::size_t lo, std::size_t hi) -> Totals {
        PlaneEngine eng(T, batches, 1, cfg.gpMode);
        Totals acc;
        for (std::size_t r = lo; r < hi; ++r) acc.add_scaled(eng.run_for_lead(reps[r]), sizes[r]);
        return acc;
    };
    return parallel_totals(reps.size(), cfg.opts.threads, work);
}

// ---------------------------------------------------------------------------
// Frame-fixing driver: with at least four rational points available, every
// orbit of a general-position tuple contains exactly one member whose first
// four rational points are the standard frame, so orbits are counted directly.
// ---------------------------------------------------------------------------

Totals run_frame_fix(const CycleLayout& L, long long q, const Options& opts) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < L.cycles.size(); ++i)
        if (L.cycles[i].length == 1) ones.push_back(i);
    if (ones.size() < 4)
        throw StrategyNotApplicable("frame fixing needs at least four length-1 cycles, cycle type has " +
                                    std::to_string(ones.size()));

    gf::TowerPtr tw = FieldTower::build(q, L.lcm, opts.tower_cap);
    const FieldTower& T = *tw;
    const std::array<ProjPoint, 4> frame = {
        ProjPoint{2, {T.one(), kZero, kZero}},
        ProjPoint{2, {kZero, T.one(), kZero}},
        ProjPoint{2, {kZero, kZero, T.one()}},
        ProjPoint{2, {T.one(), T.one(), T.one()}},
    };

    std::vector<Batch> batches;
    std::set<std::size_t> used;
    for (int k = 0; k < 4; ++k) {
        used.insert(ones[static_cast<std::size_t>(k)]);
        Batch b;
        b.len = 1;
        b.positions = L.cycles[ones[static_cast<std::size_t>(k)]].positions;
        b.fixed = frame[static_cast<std::size_t>(k)];
        batches.push_back(std::move(b));
    }
    std::map<int, std::vector<ProjPoint>> domains;
    for (std::size_t i = 0; i < L.cycles.size(); ++i) {
        if (used.count(i)) continue;
        int len = L.cycles[i].length;
        if (domains.find(len) == domains.end()) domains[len] = strict_points(T, 2, len);
        Batch b;
        b.len = len;
        b.positions = L.cycles[i].positions;
        batches.push_back(std::move(b));
    }
    {
        std::size_t bi = 4;
        for (std::size_t i = 0; i < L.cycles.size(); ++i) {
            if (used.count(i)) continue;
            batches[bi++].domain = &domains[L.cycles[i].length];
        }
    }
    finalize_batches(batches, {});

    std::size_t firstDomain = batches[4].domain->size();
    auto work = [&](std::size_t lo, std::size_t hi) -> Totals {
        PlaneEngine eng(T, batches, 4, true);
        return eng.run(lo, hi);
    };
    return parallel_totals(firstDomain, opts.threads, work);
}

// ---------------------------------------------------------------------------
// Designated positions for the ambient-set conventions
// ---------------------------------------------------------------------------

std::array<bool, 8> designated_positions(const CycleLayout& L, USpec u) {
    std::array<bool, 8> des{};
    if (u == USpec::Full) return des;
    std::vector<int> onePos;
    std::vector<const CycleLayout::Cycle*> pairs;
    for (const CycleLayout::Cycle& c : L.cycles) {
        if (c.length == 1) onePos.push_back(c.positions[0]);
        if (c.length == 2) pairs.push_back(&c);
    }
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    switch (u) {
    case USpec::LastThreeNotCollinear:
        if (onePos.size() < 3) fail("ambient restriction needs three rational points");
        for (std::size_t i = onePos.size() - 3; i < onePos.size(); ++i)
            des[static_cast<std::size_t>(onePos[i])] = true;
        break;
    case USpec::FirstFourGeneralPosition:
        if (onePos.size() < 4) fail("ambient restriction needs four rational points");
        for (int i = 0; i < 4; ++i) des[static_cast<std::size_t>(onePos[static_cast<std::size_t>(i)])] = true;
        break;
    case USpec::FirstFiveGeneralPosition: {
        int total = static_cast<int>(onePos.size());
        if (total >= 5) {
            for (int i = 0; i < 5; ++i) des[static_cast<std::size_t>(onePos[static_cast<std::size_t>(i)])] = true;
            break;
        }
        for (int p : onePos) des[static_cast<std::size_t>(p)] = true;
        for (const CycleLayout::Cycle* c : pairs) {
            if (total >= 5) break;
            des[static_cast<std::size_t>(c->positions[0])] = true;
            des[static_cast<std::size_t>(c->positions[1])] = true;
            total += 2;
        }
        if (total != 5) fail("no five designated points fit this cycle type");
        break;
    }
    case USpec::FirstSixNoThreeCollinear: {
        int total = 0;
        for (const CycleLayout::Cycle* c : pairs) {
            des[static_cast<std::size_t>(c->positions[0])] = true;
            des[static_cast<std::size_t>(c->positions[1])] = true;
            total += 2;
        }
        if (total != 6) fail("no six designated points fit this cycle type");
        break;
    }
    default:
        break;
    }
    return des;
}

// ---------------------------------------------------------------------------
// Distinct tuples on the line, one field tower per cycle length
// ---------------------------------------------------------------------------

class LineEngine {
public:
    LineEngine(const CycleLayout& L, const std::map<int, gf::TowerPtr>& towers,
               const std::map<int, std::vector<ProjPoint>>& domains)
        : L_(L) {
        pts_.resize(static_cast<std::size_t>(L.n));
        for (const CycleLayout::Cycle& c : L_.cycles) {
            LBatch b;
            b.len = c.length;
            b.pos = &c.positions;
            b.T = towers.at(c.length).get();
            b.domain = &domains.at(c.length);
            for (std::size_t e = 0; e < batches_.size(); ++e)
                if (batches_[e].len == b.len) b.sameBefore.push_back(static_cast<int>(e));
            batches_.push_back(std::move(b));
        }
    }

    long long run(std::size_t lo, std::size_t hi) {
        count_ = 0;
        recurse(0, lo, hi);
        return count_;
    }

private:
    struct LBatch {
        int len = 0;
        const std::vector<int>* pos = nullptr;
        const FieldTower* T = nullptr;
        const std::vector<ProjPoint>* domain = nullptr;
        std::vector<int> sameBefore;
    };

    void recurse(int bi, std::size_t lo, std::size_t hi) {
        if (bi == static_cast<int>(batches_.size())) {
            ++count_;
            return;
        }
        const LBatch& b = batches_[static_cast<std::size_t>(bi)];
        std::size_t start = 0, end = b.domain->size();
        if (bi == 0) {
            start = std::min(lo, end);
            end = std::min(hi, end);
        }
        for (std::size_t k = start; k < end; ++k) {
            const ProjPoint& lead = (*b.domain)[k];
            // Leads of different strict degrees can never collide; equal-length
            // orbits coincide or are disjoint, so one lead test per orbit
            // suffices.
            bool clash = false;
            for (int e : b.sameBefore) {
                const LBatch& o = batches_[static_cast<std::size_t>(e)];
                for (int j = 0; j < o.len && !clash; ++j)
                    clash = pts_[static_cast<std::size_t>((*o.pos)[static_cast<std::size_t>(j)])] == lead;
                if (clash) break;
            }
            if (clash) continue;
            pts_[static_cast<std::size_t>((*b.pos)[0])] = lead;
            for (int j = 1; j < b.len; ++j) {
                const ProjPoint& prev = pts_[static_cast<std::size_t>((*b.pos)[static_cast<std::size_t>(j - 1)])];
                pts_[static_cast<std::size_t>((*b.pos)[static_cast<std::size_t>(j)])] =
                    ProjPoint{1, {b.T->frobenius(prev.c[0]), b.T->frobenius(prev.c[1]), kZero}};
            }
            recurse(bi + 1, lo, hi);
        }
    }

    const CycleLayout& L_;
    std::vector<LBatch> batches_;
    std::vector<ProjPoint> pts_;
    long long count_ = 0;
};

} // namespace

// ---------------------------------------------------------------------------
// CycleLayout
// ---------------------------------------------------------------------------

CycleLayout CycleLayout::canonical(const Partition& lambda) {
    if (!is_valid_partition(lambda))
        throw std::invalid_argument("cycle type must be a weakly decreasing list of positive parts");
    CycleLayout L;
    L.n = partition_sum(lambda);
    L.lcm = partition_lcm(lambda);
    int pos = 0;
    for (int part : lambda) {
        Cycle c;
        c.length = part;
        for (int j = 0; j < part; ++j) c.positions.push_back(pos++);
        L.cycles.push_back(std::move(c));
    }
    return L;
}

CycleLayout CycleLayout::from_permutation(const std::vector<int>& sigma) {
    int n = static_cast<int>(sigma.size());
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int v : sigma) {
        if (v < 0 || v >= n || hit[static_cast<std::size_t>(v)])
            throw std::invalid_argument("not a permutation in one-line notation");
        hit[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> inv(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = i;

    CycleLayout L;
    L.n = n;
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (vis[static_cast<std::size_t>(s)]) continue;
        Cycle c;
        int cur = s;
        do {
            vis[static_cast<std::size_t>(cur)] = 1;
            c.positions.push_back(cur);
            cur = inv[static_cast<std::size_t>(cur)];
        } while (cur != s);
        c.length = static_cast<int>(c.positions.size());
        L.cycles.push_back(std::move(c));
    }
    std::stable_sort(L.cycles.begin(), L.cycles.end(),
                     [](const Cycle& a, const Cycle& b) { return a.length > b.length; });
    L.lcm = 1;
    for (const Cycle& c : L.cycles) L.lcm = std::lcm(L.lcm, c.length);
    return L;
}

Partition CycleLayout::partition() const {
    Partition p;
    for (const Cycle& c : cycles) p.push_back(c.length);
    std::sort(p.begin(), p.end(), std::greater<int>());
    return p;
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

BruteReport count_fixed_septuples(const CycleLayout& layout, long long q, Strategy strategy,
                                  const Options& opts) {
    if (layout.n != 7)
        throw std::invalid_argument("plane tuples have 7 points, cycle type covers " + std::to_string(layout.n));
    auto t0 = std::chrono::steady_clock::now();

    int ones = 0;
    for (const CycleLayout::Cycle& c : layout.cycles)
        if (c.length == 1) ++ones;
    Strategy resolved = strategy;
    if (strategy == Strategy::Auto) resolved = ones >= 4 ? Strategy::FrameFix : Strategy::QuotientDivide;
    if (resolved == Strategy::FrameFix && ones < 4)
        throw StrategyNotApplicable("frame fixing needs at least four length-1 cycles, cycle type has " +
                                    std::to_string(ones));

    BruteReport rep;
    rep.lambda = layout.partition();
    rep.q = q;
    rep.pgl_order = closedform::group_order(GroupKind::PGL3, q);
    rep.strategy = resolved;

    if (resolved == Strategy::FrameFix) {
        Totals t = run_frame_fix(layout, q, opts);
        rep.quotient_count = t.gp;
        rep.raw_general_position = t.gp * rep.pgl_order;
    } else {
        QdConfig cfg;
        cfg.layout = layout;
        cfg.q = q;
        cfg.gpMode = true;
        cfg.opts = opts;
        Totals t = run_quotient_divide(cfg);
        rep.raw_general_position = t.gp;
        if (t.gp % rep.pgl_order != 0)
            throw NonDivisibleTotal("general-position total " + std::to_string(t.gp) +
                                    " is not divisible by the group order " + std::to_string(rep.pgl_order));
        rep.quotient_count = t.gp / rep.pgl_order;
    }

    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

BruteReport count_fixed_septuples(const Partition& lambda, long long q, Strategy strategy,
                                  const Options& opts) {
    return count_fixed_septuples(CycleLayout::canonical(lambda), q, strategy, opts);
}

std::map<std::string, long long> count_fixed_delta_components(const Partition& lambda, long long q,
                                                              USpec u_spec, const Options& opts) {
    CycleLayout layout = CycleLayout::canonical(lambda);
    if (layout.n != 7)
        throw std::invalid_argument("plane tuples have 7 points, cycle type covers " + std::to_string(layout.n));
    QdConfig cfg;
    cfg.layout = layout;
    cfg.q = q;
    cfg.gpMode = false;
    cfg.designated = designated_positions(layout, u_spec);
    cfg.opts = opts;
    Totals t = run_quotient_divide(cfg);
    return {{"U", t.u}, {"Δ_l", t.dl}, {"Δ_c", t.dc}, {"Δ_l∩Δ_c", t.both}, {"GP", t.gp}};
}

long long count_m0n_fixed(const Partition& lambda, long long q, int g, const Options& opts) {
    if (g < 2) throw std::invalid_argument("hyperelliptic genus must be at least 2");
    int n = 2 * g + 2;
    CycleLayout layout = CycleLayout::canonical(lambda);
    if (layout.n != n)
        throw std::invalid_argument("line tuples for genus " + std::to_string(g) + " have " + std::to_string(n) +
                                    " points, cycle type covers " + std::to_string(layout.n));
    if (n > 16) throw std::invalid_argument("line enumeration supports at most 16 points");

    std::map<int, gf::TowerPtr> towers;
    std::map<int, std::vector<ProjPoint>> domains;
    for (const CycleLayout::Cycle& c : layout.cycles) {
        if (towers.count(c.length)) continue;
        towers[c.length] = FieldTower::build(q, c.length, opts.tower_cap);
        domains[c.length] = strict_points(*towers[c.length], 1, c.length);
    }

    std::size_t firstDomain = domains.at(layout.cycles[0].length).size();
    auto work = [&](std::size_t lo, std::size_t hi) -> Totals {
        LineEngine eng(layout, towers, domains);
        Totals t;
        t.u = eng.run(lo, hi);
        return t;
    };
    long long total = parallel_totals(firstDomain, opts.threads, work).u;

    long long pgl2 = closedform::group_order(GroupKind::PGL2, q);
    if (total % pgl2 != 0)
        throw NonDivisibleTotal("distinct-tuple total " + std::to_string(total) +
                                " is not divisible by the group order " + std::to_string(pgl2));
    return total / pgl2;
}

void enumerate_conjugate_tuples(const CycleLayout& layout, int dim, long long q,
                                const std::function<void(const std::vector<ProjPoint>&)>& visit,
                                const Options& opts) {
    if (dim != 1 && dim != 2)
        throw projgeom::DimensionMismatch("projective dimension must be 1 or 2");
    gf::TowerPtr tw = FieldTower::build(q, layout.lcm, opts.tower_cap);
    const FieldTower& T = *tw;
    std::map<int, std::vector<ProjPoint>> domains;
    for (const CycleLayout::Cycle& c : layout.cycles)
        if (domains.find(c.length) == domains.end()) domains[c.length] = strict_points(T, dim, c.length);

    std::vector<ProjPoint> tuple(static_cast<std::size_t>(layout.n));
    std::function<void(std::size_t)> rec = [&](std::size_t ci) {
        if (ci == layout.cycles.size()) {
            visit(tuple);
            return;
        }
        const CycleLayout::Cycle& c = layout.cycles[ci];
        for (const ProjPoint& lead : domains[c.length]) {
            tuple[static_cast<std::size_t>(c.positions[0])] = lead;
            for (int j = 1; j < c.length; ++j)
                tuple[static_cast<std::size_t>(c.positions[static_cast<std::size_t>(j)])] = projgeom::frobenius_point(
                    T, tuple[static_cast<std::size_t>(c.positions[static_cast<std::size_t>(j - 1)])]);
            rec(ci + 1);
        }
    };
    rec(0);
}

} // namespace moduli::brute
