#pragma once

#include <cstdint>
#include <vector>

#include "mumford/error.hpp"

namespace mumford {

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline uint64_t mod_inverse(uint64_t a, uint64_t p) {
    // p prime, a not divisible by p
    return mod_pow(a % p, p - 2, p);
}

// Ordinary C(k, n) for small arguments, exact in 64 bits for k, n <= 50-ish
// via the factored accumulation below (used only as a test oracle).
inline uint64_t binom_u64(unsigned k, unsigned n) {
    if (n > k) return 0;
    if (n > k - n) n = k - n;
    // accumulate as product of exact divisions
    unsigned __int128 acc = 1;
    for (unsigned j = 1; j <= n; ++j) {
        acc = acc * (k - n + j);
        acc /= j;
    }
    return static_cast<uint64_t>(acc);
}

inline uint64_t binom_mod_small(uint64_t k, uint64_t n, uint64_t p) {
    // C(k, n) mod p for 0 <= n <= k < p (factorial formula)
    if (n > k) return 0;
    uint64_t num = 1, den = 1;
    for (uint64_t j = 0; j < n; ++j) {
        num = num * ((k - j) % p) % p;
        den = den * ((j + 1) % p) % p;
    }
    return num * mod_inverse(den, p) % p;
}

// C(i/m, n) mod p where i/m is read as a p-adic integer (gcd(m, p) = 1).
// Digit rule: C(alpha, n) = prod_j C(alpha_j, n_j) mod p over base-p digits,
// with digits of alpha computed to the length of n.  Digits of alpha come
// from the carry iteration alpha_j = i_j * m^{-1} mod p,
// i_{j+1} = (i_j - alpha_j m) / p.
inline uint64_t binom_padic(long long i, long long m, uint64_t n, uint64_t p) {
    if (!is_prime_u64(p)) throw invalid_input("binom_padic: p not prime");
    if (m == 0 || (m % static_cast<long long>(p)) == 0)
        throw invalid_input("binom_padic: p divides m");
    long long mm = m % static_cast<long long>(p);
    if (mm < 0) mm += static_cast<long long>(p);
    const uint64_t minv = mod_inverse(static_cast<uint64_t>(mm), p);

    uint64_t result = 1;
    long long num = i;
    uint64_t nn = n;
    do {
        long long r = num % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        uint64_t digit = static_cast<uint64_t>(r) * minv % p;
        uint64_t ndig = nn % p;
        result = result * binom_mod_small(digit, ndig, p) % p;
        num = (num - static_cast<long long>(digit) * m) / static_cast<long long>(p);
        nn /= p;
    } while (nn > 0);
    return result;
}

}  // namespace mumford
