#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace moduli {

// Dense univariate polynomial with exact 64-bit integer coefficients,
// stored in ascending degree order with trailing zeros trimmed.
// This is the common currency for every closed-form point count.
class CountPolynomial {
public:
    CountPolynomial() = default;

    // Ascending coefficients: {c0, c1, c2, ...} represents c0 + c1 q + c2 q^2 + ...
    explicit CountPolynomial(std::vector<long long> ascending) : c_(std::move(ascending)) { trim(); }
    CountPolynomial(std::initializer_list<long long> ascending) : c_(ascending) { trim(); }

    static CountPolynomial constant(long long v) { return CountPolynomial{v}; }
    // The variable q itself.
    static CountPolynomial var() { return CountPolynomial{0, 1}; }
    // q^k
    static CountPolynomial power(int k) {
        std::vector<long long> c(static_cast<size_t>(k) + 1, 0);
        c.back() = 1;
        return CountPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for the zero polynomial
    long long coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<size_t>(k)];
    }
    const std::vector<long long>& coeffs() const { return c_; }

    friend bool operator==(const CountPolynomial& a, const CountPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const CountPolynomial& a, const CountPolynomial& b) { return !(a == b); }

    CountPolynomial operator-() const {
        CountPolynomial r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend CountPolynomial operator+(const CountPolynomial& a, const CountPolynomial& b) {
        std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return CountPolynomial(std::move(c));
    }
    friend CountPolynomial operator-(const CountPolynomial& a, const CountPolynomial& b) { return a + (-b); }
    friend CountPolynomial operator*(const CountPolynomial& a, const CountPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) {
                __int128 t = static_cast<__int128>(c[i + j]) + static_cast<__int128>(a.c_[i]) * b.c_[j];
                c[i + j] = checked(t);
            }
        return CountPolynomial(std::move(c));
    }
    friend CountPolynomial operator+(const CountPolynomial& a, long long v) { return a + constant(v); }
    friend CountPolynomial operator-(const CountPolynomial& a, long long v) { return a - constant(v); }
    friend CountPolynomial operator*(const CountPolynomial& a, long long v) { return a * constant(v); }
    friend CountPolynomial operator+(long long v, const CountPolynomial& a) { return constant(v) + a; }
    friend CountPolynomial operator-(long long v, const CountPolynomial& a) { return constant(v) - a; }
    friend CountPolynomial operator*(long long v, const CountPolynomial& a) { return constant(v) * a; }
    CountPolynomial& operator+=(const CountPolynomial& b) { *this = *this + b; return *this; }
    CountPolynomial& operator-=(const CountPolynomial& b) { *this = *this - b; return *this; }
    CountPolynomial& operator*=(const CountPolynomial& b) { *this = *this * b; return *this; }

    CountPolynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative polynomial exponent");
        CountPolynomial r = constant(1);
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    long long eval(long long q) const {
        __int128 acc = 0;
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * q + c_[i];
            if (acc > kMax || acc < -kMax) throw std::overflow_error("polynomial evaluation overflows int64");
        }
        return static_cast<long long>(acc);
    }

    // Exact division; throws std::domain_error when the remainder is nonzero
    // or a quotient coefficient is not an integer.
    CountPolynomial divexact(const CountPolynomial& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return {};
        if (degree() < d.degree()) throw std::domain_error("polynomial division is not exact");
        std::vector<long long> rem = c_;
        std::vector<long long> quot(c_.size() - d.c_.size() + 1, 0);
        long long lead = d.c_.back();
        for (size_t k = quot.size(); k-- > 0;) {
            long long top = rem[k + d.c_.size() - 1];
            if (top % lead != 0) throw std::domain_error("polynomial division is not exact");
            long long f = top / lead;
            quot[k] = f;
            for (size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
        }
        for (long long v : rem)
            if (v != 0) throw std::domain_error("polynomial division is not exact");
        return CountPolynomial(std::move(quot));
    }

    // Divide every coefficient by an integer; must be exact.
    CountPolynomial divexact(long long v) const {
        if (v == 0) throw std::domain_error("division by zero");
        std::vector<long long> c = c_;
        for (auto& x : c) {
            if (x % v != 0) throw std::domain_error("coefficient division is not exact");
            x /= v;
        }
        return CountPolynomial(std::move(c));
    }

    // "q^6 - 2q^3 + 1" (descending, human-readable / LaTeX-compatible).
    std::string to_string(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::string s;
        for (int k = degree(); k >= 0; --k) {
            long long v = coeff(k);
            if (v == 0) continue;
            if (!s.empty()) {
                s += v > 0 ? " + " : " - ";
                v = v > 0 ? v : -v;
            } else if (v < 0) {
                s += '-';
                v = -v;
            }
            if (k == 0) {
                s += std::to_string(v);
            } else {
                if (v != 1) s += std::to_string(v);
                s += var;
                if (k > 1) s += '^' + std::to_string(k);
            }
        }
        return s;
    }

private:
    static constexpr __int128 kMax = static_cast<__int128>(INT64_MAX);
    static long long checked(__int128 t) {
        if (t > kMax || t < -kMax) throw std::overflow_error("polynomial coefficient overflows int64");
        return static_cast<long long>(t);
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<long long> c_;
};

} // namespace moduli
