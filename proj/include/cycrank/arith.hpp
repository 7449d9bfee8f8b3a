#pragma once

// Exact integer primitives. Every template accepts either a builtin integer
// or BigInt; builtin instantiations report overflow instead of wrapping.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cycrank {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept ExactInteger = std::integral<T> || std::same_as<T, BigInt>;

template <ExactInteger T>
struct PrimePower {
    T prime;
    int exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in multiplication");
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in addition");
    return out;
}

template <ExactInteger T>
T gcd(T a, T b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        T r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <ExactInteger T>
T lcm(const T& a, const T& b) {
    if (a == 0 || b == 0) return T{0};
    T g = gcd(a, b);
    if constexpr (std::same_as<T, BigInt>) {
        T out = (a / g) * b;
        return out < 0 ? T(-out) : out;
    } else {
        std::int64_t out = checked_mul(static_cast<std::int64_t>(a / g), static_cast<std::int64_t>(b));
        return static_cast<T>(out < 0 ? -out : out);
    }
}

namespace detail {
template <ExactInteger T>
void require_positive(const T& n, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": argument must be a positive integer");
}
}  // namespace detail

/// Prime factorisation by trial division, primes ascending.
template <ExactInteger T>
std::vector<PrimePower<T>> factorize(T n) {
    detail::require_positive(n, "factorize");
    std::vector<PrimePower<T>> out;
    auto strip = [&](const T& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    strip(T{2});
    strip(T{3});
    // 6k +- 1 wheel
    for (T p{5}; p * p <= n; p += 6) {
        strip(p);
        strip(T(p + 2));
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

template <ExactInteger T>
T sigma0(const T& n) {
    detail::require_positive(n, "sigma0");
    T count{1};
    for (const auto& pp : factorize(n)) count *= T(pp.exponent + 1);
    return count;
}

template <ExactInteger T>
std::vector<T> divisors(const T& n) {
    detail::require_positive(n, "divisors");
    std::vector<T> out{T{1}};
    for (const auto& pp : factorize(n)) {
        const std::size_t base = out.size();
        T power{1};
        for (int e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <ExactInteger T>
T euler_phi(const T& n) {
    detail::require_positive(n, "euler_phi");
    T phi = n;
    for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
    return phi;
}

/// Exponent of p in n (n != 0).
template <ExactInteger T>
int valuation(T n, const T& p) {
    if (n == 0) throw std::invalid_argument("valuation: zero has infinite valuation");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

template <ExactInteger T>
T mulmod(const T& a, const T& b, const T& n) {
    if constexpr (std::same_as<T, BigInt>) {
        return (a * b) % n;
    } else {
        return static_cast<T>((static_cast<__int128>(a) * b) % n);
    }
}

template <ExactInteger T>
T powmod(T base, T exp, const T& n) {
    T result = T{1} % n;
    base %= n;
    if (base < 0) base += n;
    while (exp > 0) {
        if (exp % 2 == 1) result = mulmod(result, base, n);
        base = mulmod(base, base, n);
        exp /= 2;
    }
    return result;
}

/// Least k >= 1 with a^k = 1 mod n. Computed from the group order rather than
/// by stepping, so it is fast for large moduli.
template <ExactInteger T>
T multiplicative_order(T a, const T& n) {
    detail::require_positive(n, "multiplicative_order");
    a %= n;
    if (a < 0) a += n;
    if (gcd(a, n) != 1) throw std::invalid_argument("multiplicative_order: base not coprime to modulus");
    T order = euler_phi(n);
    for (const auto& pp : factorize(order)) {
        for (int e = 0; e < pp.exponent; ++e) {
            T candidate = order / pp.prime;
            if (powmod(a, candidate, n) == T{1} % n) {
                order = candidate;
            } else {
                break;
            }
        }
    }
    return order;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::int64_t n);

/// Primes p with lo <= p <= hi, ascending.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

/// Number of primitive reduced binary quadratic forms (a, b, c) with
/// b^2 - 4ac = discriminant, |b| <= a <= c. Accepts -4, -p (p = 3 mod 4 prime)
/// and -4p (p prime); anything else is rejected.
std::int64_t class_number(std::int64_t discriminant);

}  // namespace cycrank
