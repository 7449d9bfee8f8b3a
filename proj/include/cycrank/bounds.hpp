#pragma once

// Growth function used to bound prime levels of small-genus Fricke quotients:
//
//   h(x) = (x - 5 sqrt(x) + 4) / 24 - (sqrt(x) / pi) (log(16 x) + 2)
//   f(r) = h(180^r) - r
//
// Values are computed with MPFR interval arithmetic (outward rounding), so an
// Enclosure is a rigorous bracket of the true real number.

#include <cstdint>
#include <functional>
#include <string>

#include "cycrank/arith.hpp"

namespace cycrank {

inline constexpr int kDefaultPrecisionBits = 128;
inline constexpr int kMaxPrecisionBits = 8192;

struct Enclosure {
    long double lo = 0;
    long double hi = 0;
    int precision_bits = 0;

    /// +1 or -1 when the whole bracket is on one side of zero, 0 otherwise.
    int sign() const noexcept { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }
    long double mid() const noexcept { return lo / 2 + hi / 2; }
    bool contains(long double v) const noexcept { return lo <= v && v <= hi; }
};

/// True when every point of a is strictly below every point of b.
inline bool certainly_less(const Enclosure& a, const Enclosure& b) noexcept { return a.hi < b.lo; }

struct BoundValue {
    long double x;
    long double h;
};

Enclosure h_enclosure(const BigInt& x, int precision_bits = kDefaultPrecisionBits);
Enclosure h_enclosure(long double x, int precision_bits = kDefaultPrecisionBits);
Enclosure f_enclosure(long double r, int precision_bits = kDefaultPrecisionBits);

/// h at working precision (midpoint of a 128-bit enclosure). Requires x > 0.
BoundValue h_bound(long double x);

/// h(180^r) - r. Requires r >= 2.
long double f_bound(long double r);

/// Evaluates `eval` at 64, 128, 256, ... bits until the enclosure excludes
/// zero. Returns 0 if the sign is still undecided at kMaxPrecisionBits.
int certified_sign(const std::function<Enclosure(int)>& eval);

/// Least integer X >= lower_start such that h(x) > r is certified for x = X.
/// h is increasing past 10^4, so h(x) > r for every x >= X as well.
BigInt h_cutoff(long double r, const BigInt& lower_start = BigInt(10000));

}  // namespace cycrank
