#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace moduli::gf {

struct EvenCharacteristic : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExtensionTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoIrreducibleFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TowerMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// q = p^n with p an odd prime.
struct PrimePower {
    long long p = 0; // odd prime
    int n = 0;       // exponent
    long long q = 0; // p^n
};

// Factor q as an odd prime power; throws EvenCharacteristic for even q,
// std::invalid_argument when q is not a prime power at all.
PrimePower parse_prime_power(long long q);

// Raw element representation inside one tower:
//   0           -> the zero element
//   1 + i       -> g^i, where g is the chosen primitive root (0 <= i < Q-1)
using Elt = std::uint32_t;
inline constexpr Elt kZero = 0;

inline constexpr std::uint64_t kDefaultTowerCap = 1ull << 24;

// Discrete-log tables for F_Q, Q = q^m = p^(n*m), with the whole subfield
// lattice of F_q-extensions addressable by index arithmetic.
class FieldTower {
public:
    long long p = 0;       // characteristic
    int n = 0;             // base field F_q = F_{p^n}
    int m = 0;             // extension degree over F_q
    std::uint64_t q = 0;   // p^n
    std::uint64_t Q = 0;   // q^m
    int D = 0;             // n*m, degree over the prime field

    // Modulus f(x) = x^D + modulus[D-1] x^(D-1) + ... + modulus[0], chosen as
    // the first monic polynomial in ascending lexicographic coefficient order
    // (c0, c1, ..., c_{D-1}) whose root x is a primitive generator; that x is
    // the tower generator g.
    std::vector<int> modulus;

    // exp_packed[i] = g^i written in packed base-p positional form
    // (digit k of the packed word is the coefficient of x^k).
    std::vector<std::uint32_t> exp_packed;
    // log_packed[w] = i with exp_packed[i] == w; log_packed[0] = kNoLog.
    std::vector<std::uint32_t> log_packed;
    // zech[k] = log(1 + g^k); kNoLog when 1 + g^k = 0.
    std::vector<std::uint32_t> zech;

    static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

    static std::shared_ptr<const FieldTower> build(const PrimePower& base, int degree,
                                                   std::uint64_t cap = kDefaultTowerCap);
    static std::shared_ptr<const FieldTower> build(long long q, int degree,
                                                   std::uint64_t cap = kDefaultTowerCap);

    Elt zero() const { return kZero; }
    Elt one() const { return 1; } // g^0
    Elt gen() const { return Q > 2 ? 2 : 1; }

    std::uint64_t order_units() const { return Q - 1; }

    Elt add(Elt a, Elt b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        // g^i + g^j = g^j (1 + g^(i-j)) = g^(j + zech[i-j])
        std::uint64_t i = a - 1, j = b - 1;
        std::uint64_t d = i >= j ? i - j : i + (Q - 1) - j;
        std::uint32_t z = zech[d];
        if (z == kNoLog) return kZero;
        std::uint64_t e = j + z;
        if (e >= Q - 1) e -= Q - 1;
        return static_cast<Elt>(1 + e);
    }
    Elt neg(Elt a) const {
        if (a == kZero) return kZero;
        std::uint64_t e = (a - 1) + (Q - 1) / 2; // -1 = g^((Q-1)/2) in odd characteristic
        if (e >= Q - 1) e -= Q - 1;
        return static_cast<Elt>(1 + e);
    }
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt mul(Elt a, Elt b) const {
        if (a == kZero || b == kZero) return kZero;
        std::uint64_t e = static_cast<std::uint64_t>(a - 1) + (b - 1);
        if (e >= Q - 1) e -= Q - 1;
        return static_cast<Elt>(1 + e);
    }
    Elt inv(Elt a) const {
        if (a == kZero) throw DivisionByZero("inverse of zero field element");
        std::uint64_t i = a - 1;
        return static_cast<Elt>(1 + (i == 0 ? 0 : Q - 1 - i));
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    Elt pow(Elt a, long long e) const {
        if (a == kZero) {
            if (e == 0) return one();
            if (e < 0) throw DivisionByZero("negative power of zero");
            return kZero;
        }
        long long N = static_cast<long long>(Q - 1);
        __int128 idx = static_cast<__int128>(a - 1) * (e % N);
        long long red = static_cast<long long>(idx % N);
        if (red < 0) red += N;
        return static_cast<Elt>(1 + red);
    }

    // x -> x^(q^k): the k-th power of the base-field Frobenius.
    Elt frobenius(Elt a, int k = 1) const {
        if (a == kZero) return kZero;
        std::uint64_t N = Q - 1;
        std::uint64_t f = 1;
        std::uint64_t qr = q % N;
        int kk = ((k % m) + m) % m;
        for (int i = 0; i < kk; ++i) f = (f * qr) % N;
        std::uint64_t e = (static_cast<std::uint64_t>(a - 1) * f) % N;
        return static_cast<Elt>(1 + e);
    }

    // Smallest d >= 1 with a in F_{q^d}; always divides m, and is 1 for zero.
    int subfield_degree(Elt a) const {
        if (a == kZero) return 1;
        std::uint64_t i = a - 1;
        for (int d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            if (i % subfield_step(d) == 0) return d;
        }
        throw std::logic_error("subfield_degree: no divisor matched");
    }
    bool in_subfield(Elt a, int d) const {
        if (m % d != 0) return false;
        if (a == kZero) return true;
        return (static_cast<std::uint64_t>(a - 1)) % subfield_step(d) == 0;
    }
    // Index stride of the subfield F_{q^d}: nonzero elements are g^(t*step).
    std::uint64_t subfield_step(int d) const {
        std::uint64_t qd = 1;
        for (int i = 0; i < d; ++i) qd *= q;
        return (Q - 1) / (qd - 1);
    }

    // Map an integer to the prime subfield.
    Elt from_int(long long v) const {
        long long r = v % p;
        if (r < 0) r += p;
        if (r == 0) return kZero;
        return static_cast<Elt>(1 + log_packed[static_cast<size_t>(r)]);
    }

    std::uint64_t log(Elt a) const {
        if (a == kZero) throw DivisionByZero("logarithm of zero field element");
        return a - 1;
    }
    Elt exp(std::uint64_t i) const { return static_cast<Elt>(1 + i % (Q - 1)); }

    std::uint32_t packed_of(Elt a) const { return a == kZero ? 0 : exp_packed[a - 1]; }
    Elt from_packed(std::uint32_t w) const {
        if (w == 0) return kZero;
        std::uint32_t l = log_packed[w];
        if (l == kNoLog) throw std::invalid_argument("packed word is not a field element");
        return static_cast<Elt>(1 + l);
    }
};

using TowerPtr = std::shared_ptr<const FieldTower>;

// Checked element: carries its tower and refuses mixed-tower arithmetic.
struct FieldElement {
    TowerPtr tower;
    Elt v = kZero;

    FieldElement() = default;
    FieldElement(TowerPtr t, Elt value) : tower(std::move(t)), v(value) {}

    static void require_same(const FieldElement& a, const FieldElement& b) {
        if (a.tower.get() != b.tower.get())
            throw TowerMismatch("field elements belong to different towers");
    }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        require_same(a, b);
        return {a.tower, a.tower->add(a.v, b.v)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        require_same(a, b);
        return {a.tower, a.tower->sub(a.v, b.v)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        require_same(a, b);
        return {a.tower, a.tower->mul(a.v, b.v)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        require_same(a, b);
        return {a.tower, a.tower->div(a.v, b.v)};
    }
    FieldElement operator-() const { return {tower, tower->neg(v)}; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        require_same(a, b);
        return a.v == b.v;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    bool is_zero() const { return v == kZero; }
};

} // namespace moduli::gf
