#include "cycrank/arith.hpp"

#include <cmath>

namespace cycrank {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::int64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // This witness set is exact for every n < 3.3 * 10^24.
    for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::int64_t x = powmod<std::int64_t>(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod<std::int64_t>(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    if (hi < 2 || hi < lo) return out;
    lo = std::max<std::int64_t>(lo, 2);
    std::vector<bool> sieve(static_cast<std::size_t>(hi + 1), true);
    sieve[0] = sieve[1] = false;
    for (std::int64_t p = 2; p * p <= hi; ++p) {
        if (!sieve[p]) continue;
        for (std::int64_t m = p * p; m <= hi; m += p) sieve[m] = false;
    }
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (sieve[n]) out.push_back(n);
    }
    return out;
}

std::int64_t class_number(std::int64_t discriminant) {
    const std::int64_t D = discriminant;
    if (D >= 0) throw std::invalid_argument("class_number: discriminant must be negative");
    const std::int64_t m = ((D % 4) + 4) % 4;
    if (m != 0 && m != 1) throw std::invalid_argument("class_number: discriminant must be 0 or 1 mod 4");
    bool supported = D == -4;
    if (m == 1 && is_prime(-D)) supported = true;               // -p, p = 3 mod 4
    if (m == 0 && D != -4 && is_prime(-D / 4)) supported = true;  // -4p
    if (!supported) throw std::invalid_argument("class_number: only -4, -p and -4p discriminants are supported");

    // Reduced forms satisfy a <= sqrt(|D| / 3).
    const std::int64_t absD = -D;
    std::int64_t count = 0;
    for (std::int64_t a = 1; 3 * a * a <= absD; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

}  // namespace cycrank
