#ifndef BALFACT_GALOIS_PRIMES_HPP
#define BALFACT_GALOIS_PRIMES_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace balfact::galois {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

struct PrimePower {
    std::uint64_t p;
    unsigned n;
};

std::optional<PrimePower> as_prime_power(std::uint64_t q);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// All prime powers in [2, limit].
std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t limit);

}  // namespace balfact::galois

#endif
