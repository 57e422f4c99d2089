#include "eblocks/fp.hpp"

#include <vector>

namespace eblocks::fp {

int64_t pow(int64_t base, int64_t exp, int64_t p) {
    int64_t acc = 1 % p;
    int64_t b = normalize(base, p);
    while (exp > 0) {
        if (exp & 1) acc = mul(acc, b, p);
        b = mul(b, b, p);
        exp >>= 1;
    }
    return acc;
}

int64_t inv(int64_t a, int64_t p) {
    int64_t t = 0, new_t = 1;
    int64_t r = p, new_r = normalize(a, p);
    while (new_r != 0) {
        int64_t q = r / new_r;
        int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1)
        throw error(errc::degree_not_invertible,
                    "value " + std::to_string(a) + " is not invertible mod " + std::to_string(p));
    return normalize(t, p);
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (int64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

void require_prime(int64_t p) {
    if (p > max_prime)
        throw error(errc::not_prime, "modulus " + std::to_string(p) + " exceeds supported range");
    if (!is_prime(p))
        throw error(errc::not_prime, std::to_string(p) + " is not prime");
}

int64_t sqrt_mod(int64_t a, int64_t p) {
    a = normalize(a, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (pow(a, (p - 1) / 2, p) != 1) return -1;
    if (p % 4 == 3) return pow(a, (p + 1) / 4, p);

    // Tonelli-Shanks. Write p-1 = q * 2^s with q odd.
    int64_t q = p - 1, s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    int64_t z = 2;
    while (pow(z, (p - 1) / 2, p) != p - 1) ++z;
    int64_t m = s;
    int64_t c = pow(z, q, p);
    int64_t t = pow(a, q, p);
    int64_t r = pow(a, (q + 1) / 2, p);
    while (t != 1) {
        int64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mul(tt, tt, p);
            ++i;
        }
        int64_t b = c;
        for (int64_t j = 0; j < m - i - 1; ++j) b = mul(b, b, p);
        m = i;
        c = mul(b, b, p);
        t = mul(t, c, p);
        r = mul(r, b, p);
    }
    return r;
}

int64_t mult_order(int64_t r, int64_t p) {
    r = normalize(r, p);
    if (r == 0) throw error(errc::bad_value, "order of 0 is undefined");
    int64_t n = p - 1;
    // Factor p-1, then strip factors while the power stays 1.
    std::vector<int64_t> primes;
    int64_t m = n;
    for (int64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) primes.push_back(m);
    int64_t order = n;
    for (int64_t q : primes) {
        while (order % q == 0 && pow(r, order / q, p) == 1) order /= q;
    }
    return order;
}

} // namespace eblocks::fp
