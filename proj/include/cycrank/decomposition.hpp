#pragma once

// Isogeny decompositions of J_Delta(M,N), J_0(L) and J_1(L) into the simple
// factors A_f, one per Galois orbit of newforms, with divisor-count
// multiplicities. Only multiplicities and dimensions are tracked.

#include <cstdint>
#include <string>
#include <vector>

#include "cycrank/snapshot.hpp"

namespace cycrank {

enum class Jacobian { JDelta, J0, J1 };

std::string to_string(Jacobian j);

/// Newform orbits of level dividing M^2 N whose character conductor divides MN.
struct NFSet {
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::vector<NewformOrbit> orbits;  // snapshot order, unique labels

    std::int64_t level() const { return checked_level(M, N); }
    std::int64_t conductor_bound() const;

    static std::int64_t checked_level(std::int64_t M, std::int64_t N);
};

struct Factor {
    std::string orbit;
    std::int64_t level = 0;
    std::int64_t dimension = 0;
    std::int64_t multiplicity = 0;

    friend bool operator==(const Factor&, const Factor&) = default;
};

struct IsogenyDecomposition {
    Jacobian target = Jacobian::JDelta;
    std::int64_t level = 1;            // M^2 N for J_Delta, L otherwise
    std::int64_t conductor_bound = 1;  // MN for J_Delta, 1 for J_0, L for J_1
    std::vector<Factor> factors;
    std::int64_t total_dimension = 0;

    const Factor* find(const std::string& orbit) const;
};

/// Throws CoverageError unless the snapshot holds a space record for every
/// even character orbit of conductor dividing `conductor_bound` at every
/// level dividing `level`.
void require_coverage(const Snapshot& snapshot, std::int64_t level, std::int64_t conductor_bound);

NFSet nf_set(std::int64_t M, std::int64_t N, const Snapshot& snapshot);

IsogenyDecomposition decompose_JDelta(std::int64_t M, std::int64_t N, const Snapshot& snapshot);
IsogenyDecomposition decompose_J0(std::int64_t L, const Snapshot& snapshot);
IsogenyDecomposition decompose_J1(std::int64_t L, const Snapshot& snapshot);

/// Dimension of S_2(Gamma_Delta) counted two ways: from newform orbits with
/// multiplicities, and from the cusp dimensions of the spaces at level M^2 N.
struct DimensionCheck {
    std::int64_t from_orbits = 0;
    std::int64_t from_spaces = 0;
    bool ok() const noexcept { return from_orbits == from_spaces; }
};

DimensionCheck dimension_check(std::int64_t M, std::int64_t N, const Snapshot& snapshot);

}  // namespace cycrank
