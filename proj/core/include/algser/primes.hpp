#pragma once

#include <cstdint>

namespace algser {

// Miller-Rabin with a base set that is deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Smallest prime >= n; throws if the search would leave 64-bit range.
std::uint64_t next_prime_u64(std::uint64_t n);

// 2^61 - 1, the default modulus for randomized degree probes.
inline constexpr std::uint64_t kProbePrime = 2305843009213693951ull;

} // namespace algser
