#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace moduli {

// A partition is a weakly decreasing list of positive integer parts.
using Partition = std::vector<int>;

inline bool is_valid_partition(const Partition& p) {
    if (p.empty()) return false;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

inline int partition_sum(const Partition& p) {
    return std::accumulate(p.begin(), p.end(), 0);
}

inline int partition_lcm(const Partition& p) {
    int l = 1;
    for (int part : p) l = std::lcm(l, part);
    return l;
}

// All partitions of n in descending lexicographic order:
// [n], [n-1,1], ..., [1^n].  This is the canonical row order of every
// table in the artifact.
inline std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    // Recursive descent: parts weakly decreasing, largest first.
    auto rec = [&](auto&& self, int remaining, int maxPart) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(remaining, maxPart); part >= 1; --part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// "3,2,2" — row label used in CSV output.
inline std::string partition_csv_label(const Partition& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s;
}

// "[3,2^2]" — compact human-readable form with exponents.
inline std::string partition_display(const Partition& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size();) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if (i) s += ',';
        s += std::to_string(p[i]);
        if (j - i > 1) s += '^' + std::to_string(j - i);
        i = j;
    }
    s += ']';
    return s;
}

// Accepts "[1,6]", "1,6", "[2^2,3]", "[1^7]"; returns parts sorted descending.
inline Partition parse_partition(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '[') s.erase(s.begin());
    if (!s.empty() && s.back() == ']') s.pop_back();
    Partition parts;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? s.size() : comma + 1;
        if (tok.empty()) throw std::invalid_argument("empty partition part in '" + text + "'");
        size_t caret = tok.find('^');
        int base = 0, rep = 1;
        try {
            if (caret == std::string::npos) {
                base = std::stoi(tok);
            } else {
                base = std::stoi(tok.substr(0, caret));
                rep = std::stoi(tok.substr(caret + 1));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("bad partition part '" + tok + "' in '" + text + "'");
        }
        if (base <= 0 || rep <= 0) throw std::invalid_argument("nonpositive partition part in '" + text + "'");
        for (int r = 0; r < rep; ++r) parts.push_back(base);
    }
    if (parts.empty()) throw std::invalid_argument("empty partition '" + text + "'");
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

} // namespace moduli
