#include "moduli/reptheory.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <ostream>
#include <utility>

namespace moduli::reptheory {

namespace {

void require_partition(const Partition& p, const char* what) {
    if (!is_valid_partition(p)) throw std::invalid_argument(std::string(what) + ": not a valid partition");
}

using Memo = std::map<std::pair<Partition, Partition>, long long>;

// chi_lambda(mu) by removing a border strip of length mu[0], tracked through
// beta-numbers: first-column hook lengths beta_i = lambda_i + (len - 1 - i).
// Removing a strip of length k is replacing some beta b by b - k when b - k is
// not already a beta-number; the strip height is the number of beta-numbers
// strictly between the two.
long long mn_rec(const Partition& lam, const Partition& mu, std::size_t mi, Memo& memo) {
    if (mi == mu.size()) return lam.empty() ? 1 : 0;
    Partition muRest(mu.begin() + static_cast<std::ptrdiff_t>(mi), mu.end());
    auto key = std::make_pair(lam, muRest);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    int k = mu[mi];
    int len = static_cast<int>(lam.size());
    std::vector<int> beta(lam.begin(), lam.end());
    for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] += len - 1 - i;

    long long total = 0;
    for (int bi = 0; bi < len; ++bi) {
        int b = beta[static_cast<std::size_t>(bi)];
        int nb = b - k;
        if (nb < 0) continue;
        bool occupied = false;
        for (int x : beta)
            if (x == nb) {
                occupied = true;
                break;
            }
        if (occupied) continue;
        int ht = 0;
        for (int x : beta)
            if (nb < x && x < b) ++ht;
        std::vector<int> nbeta = beta;
        nbeta[static_cast<std::size_t>(bi)] = nb;
        std::sort(nbeta.begin(), nbeta.end(), std::greater<int>());
        Partition nlam;
        for (int i = 0; i < len; ++i) {
            int part = nbeta[static_cast<std::size_t>(i)] - (len - 1 - i);
            if (part > 0) nlam.push_back(part);
        }
        long long sub = mn_rec(nlam, mu, mi + 1, memo);
        total += (ht % 2 == 0) ? sub : -sub;
    }
    memo[key] = total;
    return total;
}

struct TableCache {
    std::mutex mtx;
    std::map<int, std::unique_ptr<CharacterTable>> tables;
};

TableCache& table_cache() {
    static TableCache cache;
    return cache;
}

std::string latex_partition_label(const Partition& p) {
    // "[2,1^5]" -> "2,1^5"
    std::string d = partition_display(p);
    return d.substr(1, d.size() - 2);
}

} // namespace

long long factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    if (n > 20) throw std::overflow_error("factorial overflows 64 bits");
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long long class_size(const Partition& mu) {
    require_partition(mu, "class_size");
    int n = partition_sum(mu);
    long long z = 1;
    std::map<int, int> counts;
    for (int part : mu) ++counts[part];
    for (const auto& [part, c] : counts) {
        for (int i = 0; i < c; ++i) z *= part;
        z *= factorial(c);
    }
    return factorial(n) / z;
}

long long mn_character(const Partition& lambda, const Partition& mu) {
    require_partition(lambda, "mn_character irrep");
    require_partition(mu, "mn_character class");
    if (partition_sum(lambda) != partition_sum(mu))
        throw std::invalid_argument("mn_character: partitions of different integers");
    Memo memo;
    return mn_rec(lambda, mu, 0, memo);
}

int CharacterTable::class_index(const Partition& mu) const {
    for (std::size_t j = 0; j < classes.size(); ++j)
        if (classes[j] == mu) return static_cast<int>(j);
    throw std::invalid_argument("unknown conjugacy class " + partition_display(mu) + " for S_" + std::to_string(n));
}

int CharacterTable::irrep_index(const Partition& lambda) const {
    for (std::size_t i = 0; i < irreps.size(); ++i)
        if (irreps[i] == lambda) return static_cast<int>(i);
    throw std::invalid_argument("unknown irreducible " + partition_display(lambda) + " for S_" + std::to_string(n));
}

const CharacterTable& character_table(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("character tables are built for 1 <= n <= 8");
    TableCache& cache = table_cache();
    std::lock_guard<std::mutex> lock(cache.mtx);
    auto it = cache.tables.find(n);
    if (it != cache.tables.end()) return *it->second;

    auto table = std::make_unique<CharacterTable>();
    table->n = n;
    table->irreps = all_partitions(n);
    table->classes = table->irreps;
    table->group_order = factorial(n);
    Memo memo;
    table->values.resize(table->irreps.size());
    for (std::size_t i = 0; i < table->irreps.size(); ++i) {
        table->values[i].resize(table->classes.size());
        for (std::size_t j = 0; j < table->classes.size(); ++j)
            table->values[i][j] = mn_rec(table->irreps[i], table->classes[j], 0, memo);
    }
    for (const Partition& mu : table->classes) table->class_sizes.push_back(class_size(mu));
    Partition identity(static_cast<std::size_t>(n), 1);
    int idCol = table->class_index(identity);
    for (std::size_t i = 0; i < table->irreps.size(); ++i)
        table->dims.push_back(table->values[i][static_cast<std::size_t>(idCol)]);

    const CharacterTable& ref = *table;
    cache.tables[n] = std::move(table);
    return ref;
}

std::vector<IntClassFunction> counts_to_traces(const PolyClassFunction& counts, int d) {
    if (d < 0) throw std::invalid_argument("dimension must be nonnegative");
    std::vector<Partition> classes = all_partitions(counts.n);
    for (const Partition& mu : classes) {
        auto it = counts.values.find(mu);
        if (it == counts.values.end())
            throw std::invalid_argument("class function misses the cycle type " + partition_display(mu));
        if (it->second.degree() > d)
            throw DegreeOverflow("count polynomial for " + partition_display(mu) + " has degree " +
                                 std::to_string(it->second.degree()) + " above the dimension " + std::to_string(d));
    }
    std::vector<IntClassFunction> out(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
        out[static_cast<std::size_t>(k)].n = counts.n;
        for (const Partition& mu : classes) {
            long long c = counts.values.at(mu).coeff(d - k);
            out[static_cast<std::size_t>(k)].values[mu] = (k % 2 == 0) ? c : -c;
        }
    }
    return out;
}

CohomologyTable decompose(const std::vector<IntClassFunction>& traces, const CharacterTable& table) {
    CohomologyTable out;
    out.n = table.n;
    out.dim = static_cast<int>(traces.size()) - 1;
    out.irreps = table.irreps;
    out.dims = table.dims;
    out.rows.resize(traces.size());
    for (std::size_t k = 0; k < traces.size(); ++k) {
        const IntClassFunction& tr = traces[k];
        if (tr.n != table.n)
            throw std::invalid_argument("trace class function degree does not match the character table");
        std::vector<long long> tvals;
        tvals.reserve(table.classes.size());
        for (const Partition& mu : table.classes) {
            auto it = tr.values.find(mu);
            if (it == tr.values.end())
                throw std::invalid_argument("trace class function misses the cycle type " + partition_display(mu));
            tvals.push_back(it->second);
        }
        out.rows[k].resize(table.irreps.size());
        for (std::size_t i = 0; i < table.irreps.size(); ++i) {
            long long s = 0;
            for (std::size_t j = 0; j < table.classes.size(); ++j)
                s += table.class_sizes[j] * tvals[j] * table.values[i][j];
            if (s % table.group_order != 0)
                throw NonIntegralMultiplicity("H^" + std::to_string(k) + " multiplicity of " +
                                              partition_display(table.irreps[i]) + " is " + std::to_string(s) + "/" +
                                              std::to_string(table.group_order));
            long long m = s / table.group_order;
            if (m < 0)
                throw NegativeMultiplicity("H^" + std::to_string(k) + " multiplicity of " +
                                           partition_display(table.irreps[i]) + " is " + std::to_string(m));
            out.rows[k][i] = m;
        }
    }
    return out;
}

CohomologyTable decompose_counts(const PolyClassFunction& counts, int d) {
    return decompose(counts_to_traces(counts, d), character_table(counts.n));
}

std::vector<IntClassFunction> synthesize_traces(const CohomologyTable& t, const CharacterTable& table) {
    if (t.n != table.n) throw std::invalid_argument("table degrees do not match");
    std::vector<IntClassFunction> out(t.rows.size());
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        out[k].n = t.n;
        for (std::size_t j = 0; j < table.classes.size(); ++j) {
            long long v = 0;
            for (std::size_t i = 0; i < table.irreps.size(); ++i) v += t.rows[k][i] * table.values[i][j];
            out[k].values[table.classes[j]] = v;
        }
    }
    return out;
}

CountPolynomial poincare_polynomial(const CohomologyTable& t) {
    std::vector<long long> coeffs;
    coeffs.reserve(t.rows.size());
    for (const std::vector<long long>& row : t.rows) {
        long long s = 0;
        for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * t.dims[i];
        coeffs.push_back(s);
    }
    return CountPolynomial(std::move(coeffs));
}

PolyClassFunction restrict_class_function(const PolyClassFunction& f) {
    if (f.n < 2) throw std::invalid_argument("restriction needs degree at least 2");
    PolyClassFunction out;
    out.n = f.n - 1;
    for (const Partition& mu : all_partitions(f.n - 1)) {
        Partition up = mu;
        up.push_back(1);
        std::sort(up.begin(), up.end(), std::greater<int>());
        auto it = f.values.find(up);
        if (it == f.values.end())
            throw std::invalid_argument("class function misses the cycle type " + partition_display(up));
        out.values[mu] = it->second;
    }
    return out;
}

void cohomology_csv(const CohomologyTable& t, std::ostream& os) {
    os << "degree,irrep_partition,multiplicity\n";
    for (std::size_t k = 0; k < t.rows.size(); ++k)
        for (std::size_t i = 0; i < t.irreps.size(); ++i)
            os << k << ",\"" << partition_csv_label(t.irreps[i]) << "\"," << t.rows[k][i] << "\n";
}

void cohomology_latex(const CohomologyTable& t, std::ostream& os) {
    os << "\\begin{tabular}{c|";
    for (std::size_t i = 0; i < t.irreps.size(); ++i) os << 'c';
    os << "}\n";
    for (const Partition& lambda : t.irreps) os << " & $s_{" << latex_partition_label(lambda) << "}$";
    os << " \\\\\n\\hline\n";
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        os << "$H^" << k << "$";
        for (long long m : t.rows[k]) os << " & " << m;
        os << " \\\\\n";
    }
    os << "\\end{tabular}\n";
}

} // namespace moduli::reptheory
