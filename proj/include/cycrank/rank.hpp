#pragma once

// Mordell-Weil ranks of J_Delta(M,N) over Q(zeta_M), assembled from per-orbit
// analytic ranks and twist levels, and the main-theorem verifier built on top.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycrank/rank_value.hpp"
#include "cycrank/snapshot.hpp"

namespace cycrank {

using LevelPair = std::pair<std::int64_t, std::int64_t>;  // (M, N)

/// Pairs for which J_1(M, MN) has rank zero over Q(zeta_M), sorted.
const std::vector<LevelPair>& main_theorem_pairs();
/// Input lists: both J_1(MN) and J_0(M^2 N) of rank zero, and J_1(M^2 N) of
/// rank zero (M >= 3 only).
const std::vector<LevelPair>& lemma_pairs_j1_mn_and_j0();
const std::vector<LevelPair>& lemma_pairs_j1_m2n();

bool in_main_theorem(std::int64_t M, std::int64_t N);

enum class ZeroStatus { ZeroUnconditional, Nonzero, Unknown };

std::string to_string(ZeroStatus s);

struct ZeroVerdict {
    ZeroStatus status = ZeroStatus::Unknown;
    std::optional<std::string> witness;  // an orbit with L(f,1) = 0
    Provenance witness_provenance = Provenance::Unknown;
    std::vector<std::int64_t> missing_levels;
    std::vector<std::string> unranked;  // orbits without an analytic rank
    RankTotal q_rank;                   // rank of J_Delta(Q), reported alongside
};

/// Every orbit of NF(M,N) with L(f,1) != 0 gives rank zero unconditionally.
/// An orbit with L(f,1) = 0 makes the rank positive, unconditionally when it
/// is an elliptic curve with a simple zero and under BSD otherwise.
ZeroVerdict rank_zero_status(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd = false);

struct RankLine {
    std::string orbit;
    std::int64_t level = 0;
    std::int64_t dimension = 0;
    RankValue rank;                         // over Q, or over Q(zeta_M) in the cross-check
    std::vector<std::int64_t> twist_levels;  // per character mod M, empty if not looked up
    std::int64_t weight = 0;                // multiplier applied to rank.absolute_rank
    RankTotal contribution;
};

struct RankReport {
    std::int64_t M = 1;
    std::int64_t N = 1;
    std::vector<RankLine> lines;
    RankTotal total;
    std::vector<std::string> gaps;
    std::optional<std::string> coverage_error;
    bool theorem_list_member = false;

    /// Nonzero part of the total grouped by twist level, e.g.
    /// "2·σ₀(196/28) + 4·σ₀(196/196)"; "0" when nothing contributes.
    std::string breakdown() const;
};

/// sum over f in NF and chi mod M of sigma0(M^2 N / level((f_chi)^new)) rank A_f(Q).
/// Twists are looked up only for orbits whose rank is not known to be zero.
RankReport rank_cyclotomic(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd);

/// sum over f in NF of sigma0(M^2 N / N_f) rank A_f(Q(zeta_M)).
RankReport rank_cyclotomic_crosscheck(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd);

struct TheoremRow {
    std::int64_t M = 1;
    std::int64_t N = 1;
    ZeroStatus expected = ZeroStatus::ZeroUnconditional;
    ZeroVerdict verdict;
    std::string route;  // which input list, if any, already covers the pair
    bool ok = false;
};

struct TheoremReport {
    std::vector<TheoremRow> rows;
    std::vector<std::string> notes;  // input-list entries the data disagrees with or cannot check
    bool ok() const;
};

/// Every listed pair must come out ZeroUnconditional and (4, 9) Nonzero.
TheoremReport verify_main_theorem(const Snapshot& snapshot);

struct GoodPrime {
    std::int64_t p = 0;
    std::int64_t residue_degree = 0;
    std::int64_t q = 0;  // p^residue_degree
};

/// Smallest odd prime p not dividing N whose residue field in Q(zeta_N) has
/// fewer than (N - 1)^2 elements. Throws std::runtime_error if none exists.
GoodPrime good_prime_search(std::int64_t N);

}  // namespace cycrank
