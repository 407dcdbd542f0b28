#include "moduli/gysin.hpp"

#include <algorithm>

namespace moduli::gysin {

const BoundEntry& BoundsTable::at(int k, const Partition& lambda) const {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const BoundEntry& e) {
        return e.k == k && e.lambda == lambda;
    });
    if (it == entries.end())
        throw std::out_of_range("no bounds entry for k=" + std::to_string(k) + ", lambda=" +
                                partition_display(lambda));
    return *it;
}

BoundsTable compute_bounds(const reptheory::CohomologyTable& q_table,
                           const reptheory::CohomologyTable& h_table) {
    if (q_table.dim != 6)
        throw TableShapeMismatch("first table must have top degree 6, got " + std::to_string(q_table.dim));
    if (h_table.dim != 5)
        throw TableShapeMismatch("second table must have top degree 5, got " + std::to_string(h_table.dim));
    if (q_table.n != 7 || h_table.n != 7)
        throw TableShapeMismatch("both tables must be S7-equivariant");
    if (q_table.irreps != h_table.irreps)
        throw TableShapeMismatch("tables index different irreducible lists");

    auto mult = [](const reptheory::CohomologyTable& t, int k, std::size_t i) -> long long {
        if (k < 0 || k > t.dim) return 0;
        return t.rows[static_cast<std::size_t>(k)][i];
    };

    BoundsTable out;
    out.irreps = q_table.irreps;
    out.dims = q_table.dims;
    for (int k = 0; k <= 7; ++k) {
        for (std::size_t i = 0; i < out.irreps.size(); ++i) {
            BoundEntry e;
            e.k = k;
            e.lambda = out.irreps[i];
            e.n_k = mult(q_table, k, i) - mult(h_table, k - 2, i);
            e.target = e.n_k < 0 ? BoundTarget::HkPlus1 : BoundTarget::Hk;
            e.bound_value = e.n_k < 0 ? -e.n_k : e.n_k;
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

std::vector<long long> weighted_sums(const BoundsTable& bounds) {
    std::vector<long long> sums(8, 0);
    for (const BoundEntry& e : bounds.entries) {
        std::size_t i = 0;
        while (i < bounds.irreps.size() && bounds.irreps[i] != e.lambda) ++i;
        sums[static_cast<std::size_t>(e.k)] += e.n_k * bounds.dims[i];
    }
    return sums;
}

std::string bound_statement(const BoundEntry& entry) {
    if (entry.n_k == 0) return "no claim";
    int h_degree = entry.target == BoundTarget::Hk ? entry.k : entry.k + 1;
    return ">=" + std::to_string(entry.bound_value) + " in W_" + std::to_string(entry.k) + "H^" +
           std::to_string(h_degree);
}

void bounds_csv(const BoundsTable& bounds, std::ostream& os) {
    os << "k,lambda,n_k,bound_target,bound_value\n";
    for (const BoundEntry& e : bounds.entries) {
        os << e.k << ",\"" << partition_csv_label(e.lambda) << "\"," << e.n_k << ','
           << (e.target == BoundTarget::Hk ? "Hk" : "Hk_plus_1") << ',' << e.bound_value << '\n';
    }
}

}  // namespace moduli::gysin
