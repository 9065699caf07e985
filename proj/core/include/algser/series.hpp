#pragma once

#include "algser/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace algser {

// Order (valuation) of a series. Truncated data can certify a finite order
// only below its order bound; past it the best statement is a lower bound,
// which doubles as the infinity marker for truncated zeroes.
struct Valuation {
    bool exact = true;
    std::uint64_t value = 0;

    static Valuation exactly(std::uint64_t v) { return {true, v}; }
    static Valuation at_least(std::uint64_t v) { return {false, v}; }

    bool operator==(const Valuation&) const = default;
    std::string to_string() const {
        return exact ? std::to_string(value) : ">= " + std::to_string(value);
    }
};

// A polynomial known to agree with some series on all total degrees up to
// order_bound; higher-degree information is absent by construction.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    // Truncates `body` at the bound, so the invariant holds by construction.
    TruncatedSeries(Polynomial body, std::uint64_t order_bound);

    static TruncatedSeries zero(std::vector<std::string> ambient, std::uint64_t order_bound);

    const Polynomial& body() const { return body_; }
    std::uint64_t order_bound() const { return bound_; }
    const std::vector<std::string>& ambient() const { return body_.ambient(); }

    Int coefficient(const MultiIndex& v) const { return body_.coefficient(v); }
    bool is_zero() const { return body_.is_zero(); }

    Valuation ord() const;
    // Terms of total degree in [D+1, order_bound]; requires D <= order_bound.
    TruncatedSeries tail(std::uint64_t D) const;
    TruncatedSeries reduced_mod(const Int& p) const;
    TruncatedSeries truncated(std::uint64_t n) const;

    bool operator==(const TruncatedSeries&) const = default;

private:
    Polynomial body_;
    std::uint64_t bound_ = 0;
};

// Sum/difference hold to the weaker of the two bounds.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);

// Product truncated at total degree n; requires n <= min(bound(a), bound(b)).
// Optional modulus reduces every output coefficient into [0, p).
TruncatedSeries series_trunc_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                                 std::uint64_t n, const Int* p = nullptr);

// Inverse of a unit whose constant term is +1 or -1, truncated at n.
TruncatedSeries series_invert_unit(const TruncatedSeries& u, std::uint64_t n,
                                   const Int* p = nullptr);

Valuation series_ord(const TruncatedSeries& f);

} // namespace algser
