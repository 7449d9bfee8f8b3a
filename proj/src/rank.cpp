#include "cycrank/rank.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cycrank/arith.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/dirichlet.hpp"
#include "cycrank/errors.hpp"
#include "cycrank/twist.hpp"

namespace cycrank {
namespace {

std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::vector<LevelPair> expand(const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>>& rows) {
    std::vector<LevelPair> out;
    for (const auto& [M, ns] : rows)
        for (std::int64_t N : ns) out.emplace_back(M, N);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> join(std::initializer_list<std::vector<std::int64_t>> parts) {
    std::vector<std::int64_t> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

bool contains(const std::vector<LevelPair>& pairs, std::int64_t M, std::int64_t N) {
    return std::binary_search(pairs.begin(), pairs.end(), LevelPair{M, N});
}

// All orbits of level dividing `level` and conductor dividing `conductor`
// (trivial character only when conductor is 1) have L(f,1) != 0.
// Returns the first offending orbit, or an explanation when not checkable.
std::optional<std::string> first_vanishing(const Snapshot& snapshot, std::int64_t level, std::int64_t conductor) {
    require_coverage(snapshot, level, conductor);
    for (const auto& o : query(snapshot, level, conductor)) {
        if (conductor == 1 && !o.trivial_character()) continue;
        if (!o.analytic_rank) return o.label + " has no analytic rank";
        if (*o.analytic_rank > 0) return o.label + " has L(f,1) = 0";
    }
    return std::nullopt;
}

}  // namespace

const std::vector<LevelPair>& main_theorem_pairs() {
    static const std::vector<LevelPair> pairs = expand({
        {1, join({range(1, 36), range(38, 42), range(44, 52), {54, 55, 56, 59, 60, 62, 64, 66}, range(68, 72),
                  {75, 76, 78, 81, 84, 87, 90, 94, 96, 98, 100, 108, 110, 119, 120, 132, 140, 150, 168, 180}})},
        {2, join({range(1, 21), range(24, 27), {30, 33, 35, 42, 45}})},
        {3, join({range(1, 10), {12, 14, 16, 20}})},
        {4, range(1, 6)},
        {5, {1, 2, 3, 4, 6}},
        {6, range(1, 5)},
        {7, {1, 2}},
        {8, {1}},
        {9, {1}},
        {10, {1}},
        {12, {1}},
    });
    return pairs;
}

const std::vector<LevelPair>& lemma_pairs_j1_mn_and_j0() {
    static const std::vector<LevelPair> pairs = expand({
        {3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 20}},
        {4, {1, 2, 3, 4, 5, 6, 9}},
        {5, {1, 2, 3, 4, 6}},
        {6, {1, 2, 3, 4, 5}},
        {7, {1, 2}},
        {8, {1}},
        {9, {1}},
        {10, {1}},
        {12, {1}},
    });
    return pairs;
}

const std::vector<LevelPair>& lemma_pairs_j1_m2n() {
    static const std::vector<LevelPair> pairs = expand({
        {3, {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 20}},
        {4, {1, 2, 3, 4, 6}},
        {5, {1, 2, 3, 4, 6}},
        {6, {1, 2, 3, 5}},
        {7, {1, 2}},
        {8, {1}},
        {9, {1}},
        {10, {1}},
    });
    return pairs;
}

bool in_main_theorem(std::int64_t M, std::int64_t N) { return contains(main_theorem_pairs(), M, N); }

std::string to_string(ZeroStatus s) {
    switch (s) {
        case ZeroStatus::ZeroUnconditional:
            return "ZERO_UNCONDITIONAL";
        case ZeroStatus::Nonzero:
            return "NONZERO";
        case ZeroStatus::Unknown:
            return "UNKNOWN";
    }
    return "UNKNOWN";
}

ZeroVerdict rank_zero_status(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd) {
    ZeroVerdict v;
    NFSet nf;
    try {
        nf = nf_set(M, N, snapshot);
    } catch (const CoverageError& e) {
        v.missing_levels.push_back(e.required_level());
        v.q_rank.add(0, Provenance::Unknown);
        return v;
    }
    const std::int64_t L = nf.level();
    for (const auto& o : nf.orbits) {
        const RankValue r = assign_rank(o, bsd);
        v.q_rank.add(checked_mul(sigma0(L / o.level), r.absolute_rank), r.provenance);
        if (!o.analytic_rank) {
            v.unranked.push_back(o.label);
            continue;
        }
        if (*o.analytic_rank == 0) continue;
        const Provenance p =
            r.provenance == Provenance::UnconditionalPositive ? r.provenance : Provenance::BsdConditional;
        if (!v.witness || (p == Provenance::UnconditionalPositive && v.witness_provenance != p)) {
            v.witness = o.label;
            v.witness_provenance = p;
        }
    }
    if (v.witness)
        v.status = ZeroStatus::Nonzero;
    else if (v.unranked.empty())
        v.status = ZeroStatus::ZeroUnconditional;
    return v;
}

std::string RankReport::breakdown() const {
    const std::int64_t L = M * M * N;
    std::map<std::int64_t, std::int64_t> coefficient;
    for (const auto& line : lines) {
        if (!line.rank.known() || line.rank.absolute_rank == 0) continue;
        for (std::int64_t level : line.twist_levels) coefficient[level] += line.rank.absolute_rank;
    }
    if (coefficient.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [level, c] : coefficient) {
        if (!first) out << " + ";
        first = false;
        out << c << "·σ₀(" << L << "/" << level << ")";
    }
    return out.str();
}

RankReport rank_cyclotomic(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd) {
    RankReport report;
    report.M = M;
    report.N = N;
    report.theorem_list_member = in_main_theorem(M, N);
    NFSet nf;
    try {
        nf = nf_set(M, N, snapshot);
    } catch (const CoverageError& e) {
        report.coverage_error = e.what();
        report.total.add(0, Provenance::Unknown);
        return report;
    }
    const std::int64_t L = nf.level();
    const CharacterGroup group(M);
    for (const auto& o : nf.orbits) {
        RankLine line{o.label, o.level, o.dimension, assign_rank(o, bsd), {}, 0, {}};
        if (line.rank.known() && line.rank.absolute_rank == 0) {
            report.lines.push_back(std::move(line));
            continue;
        }
        bool gap = false;
        for (const auto& chi : group.elements()) {
            try {
                const TwistImage t = act(o, chi, snapshot);
                if (L % t.level != 0) {
                    report.gaps.push_back("twist of " + o.label + " by " + chi.label() + " has level " +
                                          std::to_string(t.level) + " not dividing " + std::to_string(L));
                    gap = true;
                    continue;
                }
                line.twist_levels.push_back(t.level);
                line.weight = checked_add(line.weight, sigma0(L / t.level));
            } catch (const DataGapError& e) {
                report.gaps.push_back(e.what());
                gap = true;
            }
        }
        if (gap || !line.rank.known())
            line.contribution.add(0, Provenance::Unknown);
        else
            line.contribution.add(checked_mul(line.weight, line.rank.absolute_rank), line.rank.provenance);
        report.total.add(line.contribution);
        report.lines.push_back(std::move(line));
    }
    return report;
}

RankReport rank_cyclotomic_crosscheck(std::int64_t M, std::int64_t N, const Snapshot& snapshot, bool bsd) {
    RankReport report;
    report.M = M;
    report.N = N;
    report.theorem_list_member = in_main_theorem(M, N);
    NFSet nf;
    try {
        nf = nf_set(M, N, snapshot);
    } catch (const CoverageError& e) {
        report.coverage_error = e.what();
        report.total.add(0, Provenance::Unknown);
        return report;
    }
    const std::int64_t L = nf.level();
    const CharacterGroup group(M);
    for (const auto& o : nf.orbits) {
        RankLine line{o.label, o.level, o.dimension, {}, {}, sigma0(L / o.level), {}};
        try {
            for (const auto& chi : group.elements()) line.twist_levels.push_back(act(o, chi, snapshot).level);
            line.rank = cyclotomic_rank_of_orbit(o, M, snapshot, bsd);
        } catch (const DataGapError& e) {
            report.gaps.push_back(e.what());
            line.rank = {};
        }
        if (line.rank.known())
            line.contribution.add(checked_mul(line.weight, line.rank.absolute_rank), line.rank.provenance);
        else
            line.contribution.add(0, Provenance::Unknown);
        report.total.add(line.contribution);
        report.lines.push_back(std::move(line));
    }
    return report;
}

bool TheoremReport::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const TheoremRow& r) { return r.ok; });
}

TheoremReport verify_main_theorem(const Snapshot& snapshot) {
    TheoremReport report;
    std::vector<LevelPair> pairs = main_theorem_pairs();
    pairs.emplace_back(4, 9);
    std::sort(pairs.begin(), pairs.end());

    for (const auto& [M, N] : pairs) {
        TheoremRow row;
        row.M = M;
        row.N = N;
        row.expected = in_main_theorem(M, N) ? ZeroStatus::ZeroUnconditional : ZeroStatus::Nonzero;
        row.verdict = rank_zero_status(M, N, snapshot);
        row.ok = row.verdict.status == row.expected;
        if (M <= 2)
            row.route = "prior classification";
        else if (contains(lemma_pairs_j1_m2n(), M, N))
            row.route = "J_1(M^2N) rank zero";
        else
            row.route = "L-values on NF";
        report.rows.push_back(std::move(row));
    }

    auto check = [&](std::int64_t M, std::int64_t N, const std::string& what, std::int64_t level,
                     std::int64_t conductor) {
        std::string problem;
        try {
            if (auto bad = first_vanishing(snapshot, level, conductor)) problem = *bad;
        } catch (const CoverageError& e) {
            problem = std::string("not checked: ") + e.what();
        }
        if (!problem.empty())
            report.notes.push_back("(" + std::to_string(M) + "," + std::to_string(N) + ") " + what + ": " + problem);
    };
    for (const auto& [M, N] : lemma_pairs_j1_mn_and_j0()) {
        check(M, N, "J_1(" + std::to_string(M * N) + ")", M * N, M * N);
        check(M, N, "J_0(" + std::to_string(M * M * N) + ")", M * M * N, 1);
    }
    for (const auto& [M, N] : lemma_pairs_j1_m2n()) check(M, N, "J_1(" + std::to_string(M * M * N) + ")", M * M * N, M * M * N);
    return report;
}

GoodPrime good_prime_search(std::int64_t N) {
    if (N < 4) throw std::invalid_argument("good_prime_search: N must be at least 4");
    const std::int64_t limit = checked_mul(N - 1, N - 1);
    for (std::int64_t p = 3; p < limit; p += 2) {
        if (N % p == 0 || !is_prime(p)) continue;
        const std::int64_t f = multiplicative_order(p, N);
        std::int64_t q = 1;
        std::int64_t k = 0;
        while (k < f && q < limit) {
            q = checked_mul(q, p);
            ++k;
        }
        if (k == f && q < limit) return {p, f, q};
    }
    throw std::runtime_error("no odd prime p with p^f < (N-1)^2 for N = " + std::to_string(N));
}

}  // namespace cycrank
