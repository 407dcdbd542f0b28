#include "moduli/sp6.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <thread>
#include <utility>

namespace moduli::sp6 {

namespace {

// FNV-1a over a byte range; keys the enumeration cache to its exact content.
std::uint64_t fnv1a(const unsigned char* data, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint32_t kCacheMagic = 0x46365053;  // file starts with bytes "SP6F"
constexpr std::uint32_t kCacheVersion = 1;
constexpr std::size_t kHeaderBytes = 24;  // magic(4) version(4) count(8) checksum(8)

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}
std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

int dot8(std::uint8_t a, std::uint8_t b) { return __builtin_popcount(a & b) & 1; }

// Canonical representative of an even-weight coset mod the all-ones vector.
std::uint8_t coset_rep(std::uint8_t v) {
    std::uint8_t w = static_cast<std::uint8_t>(v ^ 0xFF);
    return v < w ? v : w;
}

// Splits [0,n) into roughly equal chunks and runs fn(chunk, begin, end) on
// each; chunk results are merged by the caller in index order, keeping every
// parallel reduction deterministic.
template <typename Fn>
void run_chunks(std::size_t n, int threads, Fn&& fn) {
    int t = std::max(1, threads);
    if (static_cast<std::size_t>(t) > n) t = static_cast<int>(std::max<std::size_t>(1, n));
    if (t == 1) {
        fn(0, std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    std::size_t per = n / static_cast<std::size_t>(t);
    std::size_t extra = n % static_cast<std::size_t>(t);
    std::size_t begin = 0;
    for (int c = 0; c < t; ++c) {
        std::size_t len = per + (static_cast<std::size_t>(c) < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SpMatrix sp_transpose(SpMatrix m) {
    std::array<std::uint32_t, 6> rows{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if ((sp_row(m, j) >> i) & 1u) rows[i] |= 1u << j;
    return sp_from_rows(rows);
}

SpMatrix sp_inverse(SpMatrix m) {
    // Gaussian elimination on the augmented rows [M | I], 12 bits per row.
    std::array<std::uint32_t, 6> rows{};
    for (int i = 0; i < 6; ++i) rows[i] = sp_row(m, i) | (1u << (6 + i));
    for (int col = 0; col < 6; ++col) {
        int pivot = -1;
        for (int r = col; r < 6; ++r)
            if ((rows[r] >> col) & 1u) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("sp_inverse: singular matrix");
        std::swap(rows[col], rows[pivot]);
        for (int r = 0; r < 6; ++r)
            if (r != col && ((rows[r] >> col) & 1u)) rows[r] ^= rows[col];
    }
    std::array<std::uint32_t, 6> inv{};
    for (int i = 0; i < 6; ++i) inv[i] = rows[i] >> 6;
    return sp_from_rows(inv);
}

bool is_symplectic(SpMatrix m) {
    // <row_i, row_j> must reproduce the Gram matrix J, i.e. 1 iff |i-j| == 3.
    // Together with bilinearity this is exactly form preservation, and forces
    // invertibility, so it is equivalent to M^T J M = J.
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            int expected = (j - i == 3) ? 1 : 0;
            if (symplectic_pairing(sp_row(m, i), sp_row(m, j)) != expected) return false;
        }
    return true;
}

SpMatrix transvection(std::uint32_t v) {
    if (v == 0 || v > kRowMask) throw std::invalid_argument("transvection: v must be a nonzero 6-bit vector");
    std::array<std::uint32_t, 6> rows{};
    for (int i = 0; i < 6; ++i) {
        std::uint32_t e = 1u << i;
        rows[i] = e ^ (symplectic_pairing(e, v) ? v : 0u);
    }
    return sp_from_rows(rows);
}

GroupEnumeration generate_group() {
    // Per-generator lookup tables: table[g][x] = x * t_g, so one matrix
    // product costs six table reads.
    std::vector<std::array<std::uint32_t, 64>> table;
    table.reserve(63);
    for (std::uint32_t v = 1; v <= kRowMask; ++v) {
        SpMatrix t = transvection(v);
        std::array<std::uint32_t, 64> tab{};
        for (std::uint32_t x = 0; x < 64; ++x) tab[x] = sp_apply(x, t);
        table.push_back(tab);
    }

    GroupEnumeration g;
    g.elements.reserve(kGroupOrder);
    g.index.reserve(kGroupOrder * 2);
    g.elements.push_back(kIdentity);
    g.index.emplace(kIdentity, 0);
    for (std::size_t head = 0; head < g.elements.size(); ++head) {
        SpMatrix a = g.elements[head];
        std::array<std::uint32_t, 6> arows{};
        for (int i = 0; i < 6; ++i) arows[i] = sp_row(a, i);
        for (const auto& tab : table) {
            SpMatrix c = 0;
            for (int i = 0; i < 6; ++i) c |= static_cast<SpMatrix>(tab[arows[i]]) << (6 * i);
            if (g.index.emplace(c, static_cast<std::uint32_t>(g.elements.size())).second)
                g.elements.push_back(c);
        }
    }
    if (g.elements.size() != kGroupOrder)
        throw std::logic_error("transvection closure has " + std::to_string(g.elements.size()) +
                               " elements, expected " + std::to_string(kGroupOrder));
    return g;
}

void save_group_cache(const GroupEnumeration& group, const std::filesystem::path& file) {
    std::vector<unsigned char> payload;
    payload.reserve(group.elements.size() * 8);
    for (SpMatrix m : group.elements) put_u64(payload, m);
    std::vector<unsigned char> header;
    header.reserve(kHeaderBytes);
    put_u32(header, kCacheMagic);
    put_u32(header, kCacheVersion);
    put_u64(header, group.elements.size());
    put_u64(header, fnv1a(payload.data(), payload.size()));

    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + file.string());
    out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("failed writing cache file: " + file.string());
}

GroupEnumeration load_group_cache(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary | std::ios::ate);
    if (!in) throw std::runtime_error("cannot open cache file: " + file.string());
    std::streamsize total = in.tellg();
    in.seekg(0);
    if (total < static_cast<std::streamsize>(kHeaderBytes))
        throw CacheCorrupt("cache file shorter than its header: " + file.string());
    std::vector<unsigned char> bytes(static_cast<std::size_t>(total));
    if (!in.read(reinterpret_cast<char*>(bytes.data()), total))
        throw CacheCorrupt("cache file truncated mid-read: " + file.string());

    if (get_u32(bytes.data()) != kCacheMagic) throw CacheCorrupt("bad cache magic: " + file.string());
    if (get_u32(bytes.data() + 4) != kCacheVersion) throw CacheCorrupt("bad cache version: " + file.string());
    std::uint64_t count = get_u64(bytes.data() + 8);
    std::uint64_t checksum = get_u64(bytes.data() + 16);
    if (bytes.size() != kHeaderBytes + count * 8)
        throw CacheCorrupt("cache size disagrees with element count: " + file.string());
    if (fnv1a(bytes.data() + kHeaderBytes, count * 8) != checksum)
        throw CacheCorrupt("cache checksum mismatch: " + file.string());

    GroupEnumeration g;
    g.elements.reserve(count);
    g.index.reserve(count * 2);
    for (std::uint64_t i = 0; i < count; ++i) {
        SpMatrix m = get_u64(bytes.data() + kHeaderBytes + i * 8);
        if (!g.index.emplace(m, static_cast<std::uint32_t>(i)).second)
            throw CacheCorrupt("duplicate element in cache: " + file.string());
        g.elements.push_back(m);
    }
    return g;
}

GroupEnumeration generate_group(const std::filesystem::path& cache_dir) {
    std::filesystem::path file = cache_dir / kCacheFileName;
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
        try {
            GroupEnumeration g = load_group_cache(file);
            if (g.size() == kGroupOrder) return g;
            // Structurally valid file with the wrong group: fall through and rebuild.
        } catch (const CacheCorrupt&) {
            // Rebuild below and overwrite the bad file.
        }
    }
    GroupEnumeration g = generate_group();
    std::filesystem::create_directories(cache_dir, ec);
    save_group_cache(g, file);
    return g;
}

Permutation identity_permutation() {
    Permutation p{};
    for (int i = 0; i < 8; ++i) p[i] = i;
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r{};
    for (int i = 0; i < 8; ++i) r[i] = a[b[i]];
    return r;
}

Partition cycle_type(const Permutation& sigma) {
    std::array<bool, 8> seen{};
    Partition type;
    for (int i = 0; i < 8; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = sigma[j]) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

Permutation permutation_of_type(const Partition& type, int variant) {
    if (!is_valid_partition(type) || partition_sum(type) != 8)
        throw std::invalid_argument("permutation_of_type: not a partition of 8");
    Permutation p{};
    int start = 0;
    for (int len : type) {
        for (int j = 0; j < len; ++j) p[start + j] = start + (j + 1) % len;
        start += len;
    }
    if (variant == 0) return p;
    // Variant 1: conjugate by the first transposition outside the
    // centralizer.  Conjugation never changes the cycle type, and only the
    // identity class (whose centralizer is all of S8) has no such
    // transposition, so every class with more than one member yields a
    // genuinely distinct second representative.
    for (int a = 0; a < 8; ++a) {
        for (int b = a + 1; b < 8; ++b) {
            Permutation q{};
            auto t = [&](int i) { return i == a ? b : (i == b ? a : i); };
            for (int i = 0; i < 8; ++i) q[i] = t(p[t(i)]);
            if (q != p) return q;
        }
    }
    return p;
}

std::uint32_t S8Embedding::coords(std::uint8_t even_vector) const {
    std::uint32_t c = 0;
    for (int i = 0; i < 3; ++i) {
        if (dot8(even_vector, basis[3 + i])) c |= 1u << i;  // u_{i+1} coefficient
        if (dot8(even_vector, basis[i])) c |= 1u << (3 + i);  // w_{i+1} coefficient
    }
    return c;
}

SpMatrix S8Embedding::matrix_of(const Permutation& sigma) const {
    std::array<std::uint32_t, 6> rows{};
    for (int i = 0; i < 6; ++i) {
        std::uint8_t b = basis[i];
        std::uint8_t image = 0;
        // Right action on coordinates: bit j of the image reads bit sigma(j),
        // which makes the matrix map a homomorphism for row-vector action.
        for (int j = 0; j < 8; ++j)
            if ((b >> sigma[j]) & 1u) image |= static_cast<std::uint8_t>(1u << j);
        rows[i] = coords(image);
    }
    return sp_from_rows(rows);
}

S8Embedding embed_s8(const GroupEnumeration& group) {
    // Nonzero classes of the even-weight quotient: 63 two-element cosets.
    std::vector<std::uint8_t> pool;
    for (int v = 1; v < 256; ++v) {
        auto b = static_cast<std::uint8_t>(v);
        if ((__builtin_popcount(v) & 1) == 0 && coset_rep(b) == b && b != 0) pool.push_back(b);
    }
    if (pool.size() != 63)
        throw FormReductionFailure("expected 63 nonzero even-weight cosets, found " +
                                   std::to_string(pool.size()));

    // Greedy hyperbolic-pair extraction: pick the first candidate, find a
    // non-orthogonal partner, pass to their perpendicular complement.
    S8Embedding emb;
    for (int k = 0; k < 3; ++k) {
        if (pool.empty()) throw FormReductionFailure("ran out of candidates extracting pair " + std::to_string(k + 1));
        std::uint8_t u = pool.front();
        auto it = std::find_if(pool.begin(), pool.end(), [&](std::uint8_t w) { return dot8(u, w) == 1; });
        if (it == pool.end())
            throw FormReductionFailure("no non-orthogonal partner for candidate " + std::to_string(u));
        std::uint8_t w = *it;
        emb.basis[k] = u;
        emb.basis[3 + k] = w;
        std::vector<std::uint8_t> next;
        for (std::uint8_t x : pool)
            if (x != u && x != w && dot8(x, u) == 0 && dot8(x, w) == 0) next.push_back(x);
        pool = std::move(next);
    }

    // The coordinate map must hit each of the 64 vectors of F2^6 exactly once.
    std::uint64_t hit = 0;
    std::uint64_t classes_seen = 0;
    for (int v = 0; v < 256; ++v) {
        auto b = static_cast<std::uint8_t>(v);
        if ((__builtin_popcount(v) & 1) != 0 || coset_rep(b) != b) continue;
        ++classes_seen;
        std::uint32_t c = emb.coords(b);
        if (hit & (1ull << c)) throw FormReductionFailure("coordinate map is not injective");
        hit |= 1ull << c;
    }
    if (classes_seen != 64 || hit != ~0ull)
        throw FormReductionFailure("coordinate map does not cover F2^6");

    // Embed all 40,320 permutations and record the reverse cycle-type lookup.
    emb.reverse.reserve(kImageOrder * 2);
    std::array<int, 8> letters{};
    for (int i = 0; i < 8; ++i) letters[i] = i;
    do {
        Permutation sigma{};
        for (int i = 0; i < 8; ++i) sigma[i] = letters[i];
        SpMatrix m = emb.matrix_of(sigma);
        if (!is_symplectic(m))
            throw std::logic_error("embedded permutation matrix is not symplectic");
        if (!group.contains(m))
            throw std::logic_error("embedded permutation matrix is outside the enumerated group");
        if (!emb.reverse.emplace(m, cycle_type(sigma)).second)
            throw std::logic_error("embedding is not injective");
    } while (std::next_permutation(letters.begin(), letters.end()));
    if (emb.reverse.size() != kImageOrder)
        throw std::logic_error("embedded image has " + std::to_string(emb.reverse.size()) +
                               " matrices, expected " + std::to_string(kImageOrder));
    return emb;
}

namespace {

// Number of g in the full group with g^-1 alpha g inside the embedded image,
// bucketed by the S8 cycle type of the conjugate.
std::vector<std::uint64_t> fusion_counts(const GroupEnumeration& group,
                                         const std::vector<SpMatrix>& inverses,
                                         const std::unordered_map<SpMatrix, int>& class_of,
                                         std::size_t class_count, SpMatrix alpha, int threads) {
    int t = std::max(1, threads);
    std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(t),
                                                  std::vector<std::uint64_t>(class_count, 0));
    run_chunks(group.size(), t, [&](int chunk, std::size_t begin, std::size_t end) {
        auto& counts = local[static_cast<std::size_t>(chunk)];
        for (std::size_t i = begin; i < end; ++i) {
            SpMatrix conj = sp_mul(sp_mul(inverses[i], alpha), group.elements[i]);
            auto it = class_of.find(conj);
            if (it != class_of.end()) ++counts[static_cast<std::size_t>(it->second)];
        }
    });
    std::vector<std::uint64_t> total(class_count, 0);
    for (const auto& counts : local)
        for (std::size_t j = 0; j < class_count; ++j) total[j] += counts[j];
    return total;
}

CountPolynomial combine_and_divide(const std::vector<std::uint64_t>& counts,
                                   const std::vector<const CountPolynomial*>& values,
                                   const Partition& label) {
    CountPolynomial acc;
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (counts[j] != 0) acc += *values[j] * static_cast<long long>(counts[j]);
    std::vector<long long> coeffs = acc.coeffs();
    for (auto& c : coeffs) {
        if (c % static_cast<long long>(kImageOrder) != 0)
            throw NonIntegralInduction("induced value at " + partition_display(label) +
                                       " is not divisible by " + std::to_string(kImageOrder));
        c /= static_cast<long long>(kImageOrder);
    }
    return CountPolynomial(std::move(coeffs));
}

}  // namespace

InducedClassFunction induce_class_function(const S8ClassFunction& psi, const GroupEnumeration& group,
                                           const S8Embedding& embedding, const InduceOptions& options) {
    std::vector<Partition> classes = all_partitions(8);
    std::vector<const CountPolynomial*> values;
    values.reserve(classes.size());
    for (const Partition& mu : classes) {
        auto it = psi.find(mu);
        if (it == psi.end())
            throw std::invalid_argument("class function is missing the class " + partition_display(mu));
        values.push_back(&it->second);
    }
    std::map<Partition, int> class_id;
    for (std::size_t i = 0; i < classes.size(); ++i) class_id[classes[i]] = static_cast<int>(i);

    std::unordered_map<SpMatrix, int> class_of;
    class_of.reserve(embedding.reverse.size() * 2);
    for (const auto& [m, type] : embedding.reverse) class_of.emplace(m, class_id.at(type));

    std::vector<SpMatrix> inverses(group.size());
    run_chunks(group.size(), options.threads, [&](int, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) inverses[i] = sp_inverse(group.elements[i]);
    });

    InducedClassFunction out;
    for (const Partition& mu : classes) {
        SpMatrix alpha = embedding.matrix_of(permutation_of_type(mu, 0));
        auto counts = fusion_counts(group, inverses, class_of, classes.size(), alpha, options.threads);
        CountPolynomial value = combine_and_divide(counts, values, mu);
        if (options.check_representative_independence) {
            Permutation second = permutation_of_type(mu, 1);
            if (second != permutation_of_type(mu, 0)) {
                SpMatrix alpha2 = embedding.matrix_of(second);
                auto counts2 = fusion_counts(group, inverses, class_of, classes.size(), alpha2, options.threads);
                if (combine_and_divide(counts2, values, mu) != value)
                    throw std::logic_error("induced value at " + partition_display(mu) +
                                           " depends on the class representative");
            }
        }
        out[mu] = std::move(value);
    }
    return out;
}

std::map<Partition, CountPolynomial> restrict_induced_to_s7(const InducedClassFunction& induced) {
    std::map<Partition, CountPolynomial> out;
    for (const Partition& mu : all_partitions(7)) {
        Partition up = mu;
        up.push_back(1);
        std::sort(up.rbegin(), up.rend());
        auto it = induced.find(up);
        if (it == induced.end())
            throw std::invalid_argument("induced class function is missing the class " + partition_display(up));
        out[mu] = it->second;
    }
    return out;
}

}  // namespace moduli::sp6
