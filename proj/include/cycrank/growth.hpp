#pragma once

// Genus of X_0(N) and of the Fricke quotient X_0^+(N), the lower bound for
// rank J_0(p)(Q) coming from the Fricke-invariant part, and the sets S_r of
// levels that can carry rank at most r.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cycrank/arith.hpp"
#include "cycrank/rank_value.hpp"
#include "cycrank/snapshot.hpp"

namespace cycrank {

struct GenusRecord {
    std::int64_t N = 1;
    std::int64_t g0 = 0;
    std::optional<std::int64_t> g0_plus;       // primes only
    std::optional<std::int64_t> fixed_points;  // of the Fricke involution, primes only
};

/// 12 g = 12 + index - 3 nu_2 - 4 nu_3 - 6 cusps.
std::int64_t genus_X0(std::int64_t N);

/// Fixed points of w_p on X_0(p) for a prime p > 3, from class numbers of the
/// orders of discriminant -4p and (when p = 3 mod 4) -p.
std::int64_t fricke_fixed_points(std::int64_t p);

/// (g0(p) + 1)/2 - fixed/4 for primes; 0 for p = 2, 3. Throws std::logic_error
/// if the result is not a non-negative integer.
std::int64_t genus_X0plus(std::int64_t p);

GenusRecord genus_record(std::int64_t N);

/// Genus of X_0(N)/w_N from stored Atkin-Lehner signs: each trivial-character
/// orbit f of level dividing N contributes dim f (sigma0(m) + eps [m square]) / 2
/// with m = N / N_f and eps its Fricke sign. Throws CoverageError / DataGapError.
std::int64_t genus_X0plus_composite(std::int64_t N, const Snapshot& snapshot);

struct PrimeRankBound {
    std::int64_t p = 0;
    std::int64_t bound = 0;  // g0^+(p)
    Provenance provenance = Provenance::BsdConditional;
    /// Fricke-invariant orbits whose stored analytic rank is even or missing.
    std::vector<std::string> even_rank_plus_orbits;
    /// Dimension of the Fricke-invariant part from the snapshot.
    std::int64_t plus_dimension = 0;
};

/// rank J_0(p)(Q) >= g0^+(p) under BSD. Rejects composite p.
PrimeRankBound rank_lower_bound_prime(std::int64_t p, const Snapshot& snapshot);

/// sigma0(M p^e / N_f) = sigma0(M / N_f) + e sigma0(m_f) for every N_f | M,
/// m_f the prime-to-p part of M / N_f.
bool multiplicity_identity_check(std::int64_t M, std::int64_t p, int e);

/// J_0(M1 M2) contains J_0(M1)^sigma0(M2) + J_0(M2)^sigma0(M1), checked on
/// the factor multisets. Requires gcd(M1, M2) = 1 and both > 1.
bool containment_coprime(std::int64_t M1, std::int64_t M2, const Snapshot& snapshot);

struct SeedSet {
    int r = 0;
    std::vector<std::int64_t> members;  // ascending
    std::optional<BigInt> prime_cutoff;  // primes searched below this bound
    std::int64_t composite_bound = 0;    // composites searched up to this bound
};

/// Levels N with rank J_0(N)(Q) = 0.
const std::vector<std::int64_t>& seed_set_zero();

/// S_0, ..., S_{r_max}. S_0 is the stored list; later sets follow the
/// inductive definition with primes bounded through h.
std::vector<SeedSet> build_seed_sets(int r_max);

/// Differences between seed_set_zero() and the snapshot's J_0 ranks for levels
/// up to the snapshot's max level: members with an orbit of L(f,1) = 0 and
/// non-members without one.
std::vector<std::string> verify_seed_set_zero(const Snapshot& snapshot);

/// N <= 180^(rank + 1), exactly.
bool check_lower_bound(std::int64_t N, std::int64_t rank);

}  // namespace cycrank
