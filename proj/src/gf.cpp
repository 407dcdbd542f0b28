#include "moduli/gf.hpp"

#include <map>
#include <mutex>

namespace moduli::gf {

PrimePower parse_prime_power(long long q) {
    if (q < 2) throw std::invalid_argument("field size must be at least 3");
    if (q % 2 == 0) throw EvenCharacteristic("field size " + std::to_string(q) + " has characteristic 2");
    // Find the smallest prime factor; q must be a pure power of it.
    long long p = 0;
    for (long long d = 3; d * d <= q; d += 2) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q; // q itself is prime
    long long t = q;
    int n = 0;
    while (t % p == 0) {
        t /= p;
        ++n;
    }
    if (t != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return PrimePower{p, n, q};
}

namespace {

// Multiply the polynomial residue held in `digits` (length D, base-p digits,
// digits[k] = coefficient of x^k) by x, reducing modulo the candidate modulus
// x^D + f[D-1] x^(D-1) + ... + f[0].
inline void mul_by_x(std::vector<int>& digits, const std::vector<int>& f, int p, int D) {
    int top = digits[D - 1];
    for (int k = D - 1; k > 0; --k) digits[k] = digits[k - 1];
    digits[0] = 0;
    if (top != 0) {
        for (int k = 0; k < D; ++k) {
            long long v = digits[k] - static_cast<long long>(top) * f[k] % p;
            v %= p;
            if (v < 0) v += p;
            digits[k] = static_cast<int>(v);
        }
    }
}

inline std::uint32_t pack(const std::vector<int>& digits, int p) {
    std::uint32_t w = 0;
    for (size_t k = digits.size(); k-- > 0;) w = w * static_cast<std::uint32_t>(p) + static_cast<std::uint32_t>(digits[k]);
    return w;
}

// Advance the coefficient vector (c0, ..., c_{D-1}) to the next candidate in
// ascending lexicographic order, keeping c0 != 0.  Returns false when exhausted.
inline bool next_candidate(std::vector<int>& f, int p, int D) {
    for (int k = D - 1; k >= 0; --k) {
        if (f[k] + 1 < p) {
            ++f[k];
            return true;
        }
        f[k] = k == 0 ? 1 : 0;
    }
    return false;
}

// --- dense polynomial arithmetic mod (p, f) for the modulus search ---------
// Polynomials are coefficient vectors of length D (residues mod the monic
// candidate x^D + f[D-1] x^(D-1) + ... + f[0]).

using Poly = std::vector<int>;

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int p, int D) {
    std::vector<int> prod(static_cast<size_t>(2 * D - 1), 0);
    for (int i = 0; i < D; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < D; ++j)
            prod[static_cast<size_t>(i + j)] = static_cast<int>(
                (prod[static_cast<size_t>(i + j)] + static_cast<long long>(a[static_cast<size_t>(i)]) * b[static_cast<size_t>(j)]) % p);
    }
    for (int k = 2 * D - 2; k >= D; --k) {
        int c = prod[static_cast<size_t>(k)];
        if (c == 0) continue;
        prod[static_cast<size_t>(k)] = 0;
        // x^k = -f * x^(k-D) mod the monic candidate
        for (int j = 0; j < D; ++j) {
            long long v = (prod[static_cast<size_t>(k - D + j)] - static_cast<long long>(c) * f[static_cast<size_t>(j)]) % p;
            if (v < 0) v += p;
            prod[static_cast<size_t>(k - D + j)] = static_cast<int>(v);
        }
    }
    prod.resize(static_cast<size_t>(D));
    return prod;
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, int p, int D) {
    Poly r(static_cast<size_t>(D), 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, f, p, D);
        base = poly_mulmod(base, base, f, p, D);
        e >>= 1;
    }
    return r;
}

inline bool poly_is_zero(const Poly& a) {
    for (int c : a)
        if (c != 0) return false;
    return true;
}

// gcd over F_p[x] of a (degree < D) and the monic candidate f of degree D;
// returns true when the gcd is a nonzero constant.
inline bool coprime_with_modulus(Poly a, const Poly& f, int p, int D) {
    // Represent the candidate as a full coefficient list of degree D.
    std::vector<int> b(static_cast<size_t>(D + 1));
    for (int k = 0; k < D; ++k) b[static_cast<size_t>(k)] = f[static_cast<size_t>(k)];
    b[static_cast<size_t>(D)] = 1;
    a.resize(static_cast<size_t>(D + 1), 0);
    auto deg = [](const std::vector<int>& v) {
        for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k)
            if (v[static_cast<size_t>(k)] != 0) return k;
        return -1;
    };
    // Euclid with leading-coefficient elimination.
    std::vector<int> x = b, y = a;
    int dx = deg(x), dy = deg(y);
    while (dy >= 0) {
        if (dx < dy) {
            std::swap(x, y);
            std::swap(dx, dy);
            continue;
        }
        // x -= (lead(x)/lead(y)) * y * t^(dx-dy)
        long long ly = y[static_cast<size_t>(dy)];
        long long inv = 1; // inverse of ly mod p by Fermat
        for (long long e = p - 2, basev = ly; e > 0; e >>= 1) {
            if (e & 1) inv = inv * basev % p;
            basev = basev * basev % p;
        }
        long long c = x[static_cast<size_t>(dx)] * inv % p;
        int shift = dx - dy;
        for (int k = 0; k <= dy; ++k) {
            long long v = (x[static_cast<size_t>(k + shift)] - c * y[static_cast<size_t>(k)]) % p;
            if (v < 0) v += p;
            x[static_cast<size_t>(k + shift)] = static_cast<int>(v);
        }
        dx = deg(x);
    }
    return dx == 0;
}

// Irreducibility of the monic candidate over F_p: x^(p^D) == x, and for each
// prime r | D the polynomial x^(p^(D/r)) - x is coprime with the candidate.
inline bool candidate_irreducible(const Poly& f, int p, int D) {
    Poly x(static_cast<size_t>(D), 0);
    if (D == 1) return true;
    x[1] = 1;
    // frob[k] = x^(p^k) for k = 1..D, computed by iterated Frobenius.
    std::vector<Poly> frob(static_cast<size_t>(D + 1));
    frob[1] = poly_powmod(x, static_cast<std::uint64_t>(p), f, p, D);
    for (int k = 2; k <= D; ++k) frob[static_cast<size_t>(k)] = poly_powmod(frob[static_cast<size_t>(k - 1)], static_cast<std::uint64_t>(p), f, p, D);
    Poly top = frob[static_cast<size_t>(D)];
    top[1] = (top[1] - 1 + p) % p;
    if (!poly_is_zero(top)) return false;
    for (int r = 2; r <= D; ++r) {
        if (D % r != 0) continue;
        bool prime = true;
        for (int s = 2; s * s <= r; ++s)
            if (r % s == 0) prime = false;
        if (!prime) continue;
        Poly g = frob[static_cast<size_t>(D / r)];
        g[1] = (g[1] - 1 + p) % p;
        if (poly_is_zero(g)) return false; // every root lies in the degree-D/r subfield
        if (!coprime_with_modulus(g, f, p, D)) return false;
    }
    return true;
}

// Primitivity of x in F_p[x]/(f) for irreducible f: x^((Q-1)/r) != 1 for
// every prime r | Q-1.
inline bool candidate_primitive(const Poly& f, int p, int D, std::uint64_t Q) {
    std::uint64_t m = Q - 1;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    Poly x(static_cast<size_t>(D), 0);
    if (D == 1) {
        x[0] = (p - f[0]) % p; // root of x + f0
    } else {
        x[1] = 1;
    }
    Poly one(static_cast<size_t>(D), 0);
    one[0] = 1;
    for (std::uint64_t r : primes)
        if (poly_powmod(x, (Q - 1) / r, f, p, D) == one) return false;
    return true;
}

std::mutex g_cache_mutex;
std::map<std::tuple<long long, int, int>, std::weak_ptr<const FieldTower>> g_cache;

} // namespace

std::shared_ptr<const FieldTower> FieldTower::build(const PrimePower& base, int degree, std::uint64_t cap) {
    if (degree < 1) throw std::invalid_argument("extension degree must be positive");
    const long long p = base.p;
    const int D = base.n * degree;

    std::uint64_t Q = 1;
    for (int i = 0; i < D; ++i) {
        Q *= static_cast<std::uint64_t>(p);
        if (Q > cap)
            throw ExtensionTooLarge("field of size " + std::to_string(base.q) + "^" + std::to_string(degree) +
                                    " exceeds the table cap of " + std::to_string(cap) + " elements");
    }

    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = g_cache.find({p, base.n, degree});
        if (it != g_cache.end())
            if (auto sp = it->second.lock()) return sp;
    }

    auto tower = std::make_shared<FieldTower>();
    tower->p = p;
    tower->n = base.n;
    tower->m = degree;
    tower->q = static_cast<std::uint64_t>(base.q);
    tower->Q = Q;
    tower->D = D;
    tower->exp_packed.assign(Q - 1, 0);

    // Lex-first scan: the first monic modulus that is irreducible with x a
    // generator of the unit group.  Candidates are screened with polynomial
    // powmod tests (iterated-Frobenius irreducibility, then primitivity
    // against the prime factors of Q-1) so a failed candidate costs
    // microseconds; the full discrete-log table is built only for the winner.
    // Cheapest filter first: a primitive root x has norm (-1)^D f(0), which
    // must itself be a primitive root of F_p.
    std::vector<std::uint64_t> pm1_primes;
    {
        std::uint64_t m = static_cast<std::uint64_t>(p) - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                pm1_primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) pm1_primes.push_back(m);
    }
    auto norm_is_primitive_root = [&](int c0) {
        long long norm = (D % 2 == 0) ? c0 : (p - c0) % p;
        if (norm == 0) return false;
        for (std::uint64_t r : pm1_primes) {
            long long acc = 1, b = norm;
            for (std::uint64_t e = (static_cast<std::uint64_t>(p) - 1) / r; e > 0; e >>= 1) {
                if (e & 1) acc = acc * b % p;
                b = b * b % p;
            }
            if (acc == 1) return false;
        }
        return true;
    };
    std::vector<int> f(static_cast<size_t>(D), 0);
    f[0] = 1; // c0 = 0 would make x a zero divisor
    bool found = false;
    do {
        if (!norm_is_primitive_root(f[0])) continue;
        if (!candidate_irreducible(f, static_cast<int>(p), D)) continue;
        if (!candidate_primitive(f, static_cast<int>(p), D, Q)) continue;
        found = true;
        break;
    } while (next_candidate(f, static_cast<int>(p), D));
    if (!found)
        throw NoIrreducibleFound("no primitive modulus of degree " + std::to_string(D) + " over F_" +
                                 std::to_string(p));
    tower->modulus.assign(f.begin(), f.end());

    {
        std::vector<int> digits(static_cast<size_t>(D), 0);
        digits[0] = 1; // the element 1 = x^0
        for (std::uint64_t i = 0; i + 1 < Q; ++i) {
            tower->exp_packed[i] = pack(digits, static_cast<int>(p));
            mul_by_x(digits, f, static_cast<int>(p), D);
        }
        if (pack(digits, static_cast<int>(p)) != 1)
            throw std::logic_error("modulus search returned a non-primitive polynomial");
    }

    tower->log_packed.assign(Q, kNoLog);
    for (std::uint64_t i = 0; i + 1 < Q; ++i) tower->log_packed[tower->exp_packed[i]] = static_cast<std::uint32_t>(i);

    // Adding 1 in packed form only touches digit 0: w+1, or w-(p-1) on wrap.
    tower->zech.assign(Q - 1, kNoLog);
    const std::uint32_t pm1 = static_cast<std::uint32_t>(p - 1);
    for (std::uint64_t k = 0; k + 1 < Q; ++k) {
        std::uint32_t w = tower->exp_packed[k];
        std::uint32_t digit0 = w % static_cast<std::uint32_t>(p);
        std::uint32_t s = digit0 == pm1 ? w - pm1 : w + 1;
        tower->zech[k] = s == 0 ? kNoLog : tower->log_packed[s];
    }

    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        g_cache[{p, base.n, degree}] = tower;
    }
    return tower;
}

std::shared_ptr<const FieldTower> FieldTower::build(long long q, int degree, std::uint64_t cap) {
    return build(parse_prime_power(q), degree, cap);
}

} // namespace moduli::gf
