#pragma once

#include "algser/bigint.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace algser {

// Exponent vector over a fixed ambient symbol list. The length always
// matches the ambient's arity; callers that shrink or extend the ambient
// must rebuild their indices.
using MultiIndex = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const MultiIndex& v) {
    std::uint64_t d = 0;
    for (auto e : v) d += e;
    return d;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    if (a.size() != b.size()) throw Error("multi-index arity mismatch");
    MultiIndex r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

// Plain lexicographic order; used as the canonical map order.
struct LexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return a < b;
    }
};

// Graded order matching the valuation: total degree first, lex tiebreak.
// Minimal element under this order is the canonical witness monomial.
inline bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

} // namespace algser
