#include "cycrank/decomposition.hpp"

#include <stdexcept>

#include "cycrank/arith.hpp"
#include "cycrank/dirichlet.hpp"
#include "cycrank/errors.hpp"

namespace cycrank {
namespace {

void require_pair(std::int64_t M, std::int64_t N) {
    if (M < 1 || N < 1) throw std::invalid_argument("M and N must be positive integers");
}

IsogenyDecomposition assemble(Jacobian target, std::int64_t level, std::int64_t conductor_bound,
                              const std::vector<NewformOrbit>& orbits) {
    IsogenyDecomposition d;
    d.target = target;
    d.level = level;
    d.conductor_bound = conductor_bound;
    for (const auto& o : orbits) {
        const std::int64_t m = sigma0(level / o.level);
        d.factors.push_back({o.label, o.level, o.dimension, m});
        d.total_dimension = checked_add(d.total_dimension, checked_mul(m, o.dimension));
    }
    return d;
}

}  // namespace

std::string to_string(Jacobian j) {
    switch (j) {
        case Jacobian::JDelta:
            return "J_Delta";
        case Jacobian::J0:
            return "J_0";
        case Jacobian::J1:
            return "J_1";
    }
    return "?";
}

std::int64_t NFSet::checked_level(std::int64_t M, std::int64_t N) {
    require_pair(M, N);
    return checked_mul(checked_mul(M, M), N);
}

std::int64_t NFSet::conductor_bound() const { return checked_mul(M, N); }

const Factor* IsogenyDecomposition::find(const std::string& orbit) const {
    for (const auto& f : factors)
        if (f.orbit == orbit) return &f;
    return nullptr;
}

void require_coverage(const Snapshot& snapshot, std::int64_t level, std::int64_t conductor_bound) {
    if (level < 1 || conductor_bound < 1) throw std::invalid_argument("level and conductor bound must be positive");
    if (snapshot.max_level() < level)
        throw CoverageError("snapshot covers levels up to " + std::to_string(snapshot.max_level()) + ", level " +
                                std::to_string(level) + " required",
                            level);
    for (std::int64_t d : divisors(level)) {
        if (conductor_bound == 1 || d == 1) {
            if (!snapshot.find_space(d, 1))
                throw CoverageError("snapshot has no space record for level " + std::to_string(d), d);
            continue;
        }
        const CharacterGroup group(d);
        for (const auto& orbit : group.galois_orbits()) {
            const auto& chi = orbit.front();
            if (conductor_bound % chi.conductor() != 0 || !chi.is_even()) continue;
            if (!snapshot.find_space(d, chi.conrey_index()))
                throw CoverageError("snapshot has no space record for level " + std::to_string(d) + " character " +
                                        chi.label(),
                                    d);
        }
    }
}

NFSet nf_set(std::int64_t M, std::int64_t N, const Snapshot& snapshot) {
    NFSet nf;
    nf.M = M;
    nf.N = N;
    const std::int64_t L = nf.level();
    require_coverage(snapshot, L, nf.conductor_bound());
    nf.orbits = query(snapshot, L, nf.conductor_bound());
    return nf;
}

IsogenyDecomposition decompose_JDelta(std::int64_t M, std::int64_t N, const Snapshot& snapshot) {
    const NFSet nf = nf_set(M, N, snapshot);
    return assemble(Jacobian::JDelta, nf.level(), nf.conductor_bound(), nf.orbits);
}

IsogenyDecomposition decompose_J0(std::int64_t L, const Snapshot& snapshot) {
    require_coverage(snapshot, L, 1);
    std::vector<NewformOrbit> trivial;
    for (auto& o : query(snapshot, L, 1))
        if (o.trivial_character()) trivial.push_back(std::move(o));
    return assemble(Jacobian::J0, L, 1, trivial);
}

IsogenyDecomposition decompose_J1(std::int64_t L, const Snapshot& snapshot) {
    require_coverage(snapshot, L, L);
    return assemble(Jacobian::J1, L, L, query(snapshot, L, L));
}

DimensionCheck dimension_check(std::int64_t M, std::int64_t N, const Snapshot& snapshot) {
    DimensionCheck check;
    check.from_orbits = decompose_JDelta(M, N, snapshot).total_dimension;
    const std::int64_t L = NFSet::checked_level(M, N);
    const std::int64_t C = checked_mul(M, N);
    for (const auto& s : snapshot.spaces())
        if (s.level == L && C % s.char_conductor == 0) check.from_spaces = checked_add(check.from_spaces, s.cusp_dim);
    return check;
}

}  // namespace cycrank
