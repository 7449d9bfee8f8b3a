#include "cycrank/growth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cycrank/bounds.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/errors.hpp"

namespace cycrank {
namespace {

// Kronecker symbols (-4/p) and (-3/p) for primes p.
int kronecker_minus4(std::int64_t p) {
    if (p == 2) return 0;
    return p % 4 == 1 ? 1 : -1;
}

int kronecker_minus3(std::int64_t p) {
    if (p == 3) return 0;
    return p % 3 == 1 ? 1 : -1;
}

bool is_square(std::int64_t n) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

void require_prime(std::int64_t p, const char* what) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument(std::string(what) + ": " + std::to_string(p) + " is not prime");
}

}  // namespace

std::int64_t genus_X0(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("genus_X0: N must be positive");
    const auto fac = factorize(N);
    std::int64_t index = N;
    for (const auto& pp : fac) index = index / pp.prime * (pp.prime + 1);
    std::int64_t nu2 = 0;
    if (N % 4 != 0) {
        nu2 = 1;
        for (const auto& pp : fac) nu2 *= 1 + kronecker_minus4(pp.prime);
    }
    std::int64_t nu3 = 0;
    if (N % 9 != 0) {
        nu3 = 1;
        for (const auto& pp : fac) nu3 *= 1 + kronecker_minus3(pp.prime);
    }
    std::int64_t cusps = 0;
    for (std::int64_t d : divisors(N)) cusps += euler_phi(gcd(d, N / d));
    const std::int64_t twelve_g = 12 + index - 3 * nu2 - 4 * nu3 - 6 * cusps;
    if (twelve_g % 12 != 0 || twelve_g < 0) throw std::logic_error("genus_X0: non-integral genus");
    return twelve_g / 12;
}

std::int64_t fricke_fixed_points(std::int64_t p) {
    require_prime(p, "fricke_fixed_points");
    if (p <= 3) throw std::invalid_argument("fricke_fixed_points: p must exceed 3");
    std::int64_t nu = class_number(-4 * p);
    if (p % 4 == 3) nu += class_number(-p);
    return nu;
}

std::int64_t genus_X0plus(std::int64_t p) {
    require_prime(p, "genus_X0plus");
    if (p <= 3) return 0;
    const std::int64_t four_g = 2 * (genus_X0(p) + 1) - fricke_fixed_points(p);
    if (four_g % 4 != 0 || four_g < 0)
        throw std::logic_error("genus_X0plus: non-integral genus at p = " + std::to_string(p));
    return four_g / 4;
}

GenusRecord genus_record(std::int64_t N) {
    GenusRecord g;
    g.N = N;
    g.g0 = genus_X0(N);
    if (N >= 2 && is_prime(N)) {
        g.g0_plus = genus_X0plus(N);
        if (N > 3) g.fixed_points = fricke_fixed_points(N);
    }
    return g;
}

std::int64_t genus_X0plus_composite(std::int64_t N, const Snapshot& snapshot) {
    const auto j0 = decompose_J0(N, snapshot);
    std::int64_t twice = 0;
    for (const auto& f : j0.factors) {
        const NewformOrbit* o = snapshot.find_orbit(f.orbit);
        const auto eps = o ? o->fricke_sign() : std::nullopt;
        if (!eps) throw DataGapError("no Atkin-Lehner signs for " + f.orbit);
        const std::int64_t m = N / f.level;
        twice += f.dimension * (f.multiplicity + (is_square(m) ? *eps : 0));
    }
    return twice / 2;
}

PrimeRankBound rank_lower_bound_prime(std::int64_t p, const Snapshot& snapshot) {
    require_prime(p, "rank_lower_bound_prime");
    PrimeRankBound out;
    out.p = p;
    out.bound = genus_X0plus(p);
    for (const auto& f : decompose_J0(p, snapshot).factors) {
        if (f.level != p) continue;
        const NewformOrbit* o = snapshot.find_orbit(f.orbit);
        const auto eps = o->fricke_sign();
        if (!eps) throw DataGapError("no Atkin-Lehner signs for " + f.orbit);
        if (*eps != 1) continue;
        out.plus_dimension += o->dimension;
        if (!o->analytic_rank || *o->analytic_rank % 2 == 0) out.even_rank_plus_orbits.push_back(o->label);
    }
    return out;
}

bool multiplicity_identity_check(std::int64_t M, std::int64_t p, int e) {
    if (M < 1 || e < 1) throw std::invalid_argument("multiplicity_identity_check: need M >= 1 and e >= 1");
    require_prime(p, "multiplicity_identity_check");
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
    const std::int64_t N = checked_mul(M, pe);
    for (std::int64_t Nf : divisors(M)) {
        std::int64_t m = M / Nf;
        while (m % p == 0) m /= p;
        if (sigma0(N / Nf) != sigma0(M / Nf) + e * sigma0(m)) return false;
    }
    return true;
}

bool containment_coprime(std::int64_t M1, std::int64_t M2, const Snapshot& snapshot) {
    if (M1 < 2 || M2 < 2 || gcd(M1, M2) != 1)
        throw std::invalid_argument("containment_coprime: need coprime M1, M2 > 1");
    const auto whole = decompose_J0(checked_mul(M1, M2), snapshot);
    auto covered = [&](std::int64_t part, std::int64_t other) {
        for (const auto& f : decompose_J0(part, snapshot).factors) {
            const Factor* g = whole.find(f.orbit);
            if (!g || g->multiplicity < f.multiplicity * sigma0(other)) return false;
        }
        return true;
    };
    return covered(M1, M2) && covered(M2, M1);
}

const std::vector<std::int64_t>& seed_set_zero() {
    static const std::vector<std::int64_t> s0 = [] {
        std::vector<std::int64_t> v;
        for (std::int64_t n = 1; n <= 36; ++n) v.push_back(n);
        for (std::int64_t n : {38,  39,  40,  41,  42,  44,  45,  46,  47,  48,  49,  50,  51,  52,  54,  55,
                               56,  59,  60,  62,  63,  64,  66,  68,  69,  70,  71,  72,  75,  76,  78,  80,
                               81,  84,  87,  90,  94,  95,  96,  98,  100, 104, 105, 108, 110, 119, 120, 126,
                               132, 140, 144, 150, 168, 180})
            v.push_back(n);
        return v;
    }();
    return s0;
}

std::vector<SeedSet> build_seed_sets(int r_max) {
    if (r_max < 0) throw std::invalid_argument("build_seed_sets: r must be non-negative");
    std::vector<SeedSet> sets;
    sets.push_back({0, seed_set_zero(), std::nullopt, 0});
    std::set<std::int64_t> below(seed_set_zero().begin(), seed_set_zero().end());
    for (int r = 1; r <= r_max; ++r) {
        SeedSet s;
        s.r = r;
        std::set<std::int64_t> members;

        const BigInt cutoff = h_cutoff(static_cast<long double>(r));
        s.prime_cutoff = cutoff;
        for (std::int64_t p : primes_in_range(2, static_cast<std::int64_t>(cutoff) - 1))
            if (genus_X0plus(p) <= r) members.insert(p);

        // A composite with every proper divisor in `below` is p * m with p a
        // prime in `below` and m in `below`.
        const std::int64_t top = *below.rbegin();
        s.composite_bound = checked_mul(top, top);
        for (std::int64_t p : below) {
            if (p < 2 || !is_prime(p)) continue;
            for (std::int64_t m : below) {
                if (m < 2) continue;
                const std::int64_t n = checked_mul(p, m);
                if (members.count(n)) continue;
                const auto ds = divisors(n);
                if (std::all_of(ds.begin(), ds.end() - 1, [&](std::int64_t d) { return below.count(d) > 0; }))
                    members.insert(n);
            }
        }
        s.members.assign(members.begin(), members.end());
        below.insert(members.begin(), members.end());
        sets.push_back(std::move(s));
    }
    return sets;
}

std::vector<std::string> verify_seed_set_zero(const Snapshot& snapshot) {
    std::vector<std::string> out;
    const auto& s0 = seed_set_zero();
    for (std::int64_t N = 1; N <= snapshot.max_level(); ++N) {
        const bool member = std::binary_search(s0.begin(), s0.end(), N);
        std::optional<std::string> witness;
        bool unranked = false;
        for (const auto& f : decompose_J0(N, snapshot).factors) {
            const NewformOrbit* o = snapshot.find_orbit(f.orbit);
            if (!o->analytic_rank) {
                unranked = true;
            } else if (*o->analytic_rank > 0 && !witness) {
                witness = o->label;
            }
        }
        if (member && witness) out.push_back(std::to_string(N) + " is listed but " + *witness + " has L(f,1) = 0");
        if (member && unranked) out.push_back(std::to_string(N) + " is listed but has orbits without analytic rank");
        if (!member && !witness) out.push_back(std::to_string(N) + " is not listed but every L(f,1) != 0");
    }
    return out;
}

bool check_lower_bound(std::int64_t N, std::int64_t rank) {
    if (N < 1 || rank < 0) throw std::invalid_argument("check_lower_bound: need N >= 1 and rank >= 0");
    BigInt bound = 1;
    for (std::int64_t i = 0; i <= rank; ++i) {
        bound *= 180;
        if (bound >= N) return true;
    }
    return BigInt(N) <= bound;
}

}  // namespace cycrank
