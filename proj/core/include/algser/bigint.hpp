#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace algser {

// Exact integer type used for all coefficients. Modular reduction happens
// only at extraction boundaries (residue queries, probes), never inside
// ring arithmetic.
using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Representative of a mod p in [0, p). p must be >= 2.
inline Int mod_nonneg(const Int& a, const Int& p) {
    if (p < 2) throw Error("modulus must be >= 2");
    Int r = a % p;
    if (r < 0) r += p;
    return r;
}

inline std::uint64_t mod_u64(const Int& a, std::uint64_t p) {
    return static_cast<std::uint64_t>(mod_nonneg(a, Int(p)));
}

// floor(log2(n)) for n >= 1.
inline unsigned floor_log2(const Int& n) {
    if (n < 1) throw Error("floor_log2 needs a positive argument");
    return static_cast<unsigned>(boost::multiprecision::msb(n));
}

// Smallest n with 2^n >= v, i.e. ceil(log2(v)) for v >= 1.
inline unsigned ceil_log2(const Int& v) {
    if (v < 1) throw Error("ceil_log2 needs a positive argument");
    unsigned f = floor_log2(v);
    return (Int(1) << f) == v ? f : f + 1;
}

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace algser
