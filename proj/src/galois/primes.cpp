#include "balfact/galois/primes.hpp"

namespace balfact::galois {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven witness set for n < 2^64.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    if (is_prime(q)) return PrimePower{q, 1};
    // smallest prime factor by trial division; any prime power here has p <= q^(1/2)
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        if (!is_prime(p)) return std::nullopt;
        unsigned n = 0;
        while (q % p == 0) {
            q /= p;
            ++n;
        }
        if (q != 1) return std::nullopt;
        return PrimePower{p, n};
    }
    return std::nullopt;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> prime_powers_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= limit; ++q) {
        if (as_prime_power(q)) out.push_back(q);
    }
    return out;
}

}  // namespace balfact::galois
