#pragma once

#include <cstdint>

#include "eblocks/error.hpp"

// Arithmetic in F_p for machine-word primes. The library restricts moduli to
// p < 2^31 so that products fit in __int128 without further care.

namespace eblocks::fp {

inline constexpr int64_t max_prime = (int64_t{1} << 31) - 1;

// Reduce x into [0, p).
inline int64_t normalize(int64_t x, int64_t p) {
    int64_t r = x % p;
    return r < 0 ? r + p : r;
}

inline int64_t add(int64_t a, int64_t b, int64_t p) { return normalize(a + b, p); }
inline int64_t sub(int64_t a, int64_t b, int64_t p) { return normalize(a - b, p); }

inline int64_t mul(int64_t a, int64_t b, int64_t p) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % p);
}

int64_t pow(int64_t base, int64_t exp, int64_t p);

// Inverse of a mod p; throws degree_not_invertible when gcd(a, p) != 1.
int64_t inv(int64_t a, int64_t p);

// Deterministic trial-division primality for the supported range.
bool is_prime(int64_t n);

// Throws not_prime unless p is a prime in the supported range.
void require_prime(int64_t p);

// Square root mod an odd prime (Tonelli-Shanks); -1 when a is a non-residue.
int64_t sqrt_mod(int64_t a, int64_t p);

// Multiplicative order of r mod p, r != 0.
int64_t mult_order(int64_t r, int64_t p);

} // namespace eblocks::fp
