#pragma once

// The action of Dirichlet characters mod M on NF(M,N) by f -> (f_chi)^new,
// read from stored twist records. Nothing here twists q-expansions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cycrank/dirichlet.hpp"
#include "cycrank/rank_value.hpp"
#include "cycrank/snapshot.hpp"

namespace cycrank {

/// Level bound for the twist of a level-N form with character conductor
/// N_prime by a character mod M: lcm(N, N_prime M, M^2).
std::int64_t twist_level_bound(std::int64_t N, std::int64_t N_prime, std::int64_t M);

struct TwistImage {
    std::optional<EmbeddingLabel> embedding;  // empty when the target lies outside the snapshot
    std::int64_t level = 0;

    bool external() const noexcept { return !embedding.has_value(); }
    std::optional<std::string> orbit() const;
    friend bool operator==(const TwistImage&, const TwistImage&) = default;
};

/// (e_chi)^new for one embedding. The principal character acts trivially
/// without a lookup; anything else needs a twist record or throws DataGapError.
TwistImage act(const EmbeddingLabel& embedding, const DirichletCharacter& chi, const Snapshot& snapshot);

/// Orbit-level action through the orbit's representative embedding.
TwistImage act(const NewformOrbit& orbit, const DirichletCharacter& chi, const Snapshot& snapshot);

struct ActionViolation {
    std::string kind;  // "gap", "closure", "level", "bijection", "composition"
    std::string embedding;
    std::string character;
    std::string detail;
};

struct ActionReport {
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::size_t embeddings = 0;
    std::size_t characters = 0;
    std::size_t lookups = 0;
    std::vector<ActionViolation> violations;
    /// (orbit, character) pairs whose embeddings land in more than one target
    /// orbit. Informational: the rank formula only uses target levels, which
    /// agree across an orbit after summing over characters.
    std::vector<std::pair<std::string, std::string>> split_orbits;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks closure in NF(M,N), the level bound, bijectivity for each character
/// and act(act(e, chi), psi) = act(e, chi psi), all at embedding level.
ActionReport verify_action(std::int64_t M, std::int64_t N, const Snapshot& snapshot);

/// rank of A_f over Q(zeta_M): k_dimension is sum over chi mod M of the
/// K-dimension of the twist's Mordell-Weil group; absolute_rank scales it by
/// [K_f : Q]. Throws DataGapError if a twist record is missing.
RankValue cyclotomic_rank_of_orbit(const NewformOrbit& orbit, std::int64_t M, const Snapshot& snapshot, bool bsd);

}  // namespace cycrank
