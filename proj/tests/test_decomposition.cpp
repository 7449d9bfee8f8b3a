#include <gtest/gtest.h>

#include <map>

#include "cycrank/arith.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/errors.hpp"
#include "cycrank/growth.hpp"
#include "fixture.hpp"

using namespace cycrank;
using cycrank::testing::shipped;

namespace {

std::int64_t brute_sigma0(std::int64_t n) {
    std::int64_t c = 0;
    for (std::int64_t d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

// Oracle: filter the raw orbit list by the membership rule directly.
std::vector<std::string> brute_nf(std::int64_t M, std::int64_t N, const Snapshot& s) {
    std::vector<std::string> out;
    for (const auto& o : s.orbits())
        if ((M * M * N) % o.level == 0 && (M * N) % o.char_conductor == 0) out.push_back(o.label);
    return out;
}

std::vector<std::string> labels(const NFSet& nf) {
    std::vector<std::string> out;
    for (const auto& o : nf.orbits) out.push_back(o.label);
    return out;
}

std::map<std::string, std::int64_t> multiplicities(const IsogenyDecomposition& d) {
    std::map<std::string, std::int64_t> m;
    for (const auto& f : d.factors) m[f.orbit] = f.multiplicity;
    return m;
}

bool j1_covered(std::int64_t L, const Snapshot& s) {
    try {
        require_coverage(s, L, L);
        return true;
    } catch (const CoverageError&) {
        return false;
    }
}

}  // namespace

TEST(NFSet, MatchesBruteFilterOnTheoremPairs) {
    const auto& s = shipped();
    for (auto [M, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {1, 11}, {2, 7}, {3, 7}, {4, 5}, {4, 9}, {5, 5}, {6, 4}, {11, 1}, {12, 1}, {14, 1}, {15, 1}}) {
        EXPECT_EQ(labels(nf_set(M, N, s)), brute_nf(M, N, s)) << M << "," << N;
    }
}

TEST(NFSet, TrivialLevelIsEmpty) {
    const auto nf = nf_set(1, 1, shipped());
    EXPECT_TRUE(nf.orbits.empty());
    EXPECT_EQ(decompose_JDelta(1, 1, shipped()).total_dimension, 0);
}

TEST(NFSet, KnownMembers) {
    const auto nf = labels(nf_set(11, 1, shipped()));
    EXPECT_NE(std::find(nf.begin(), nf.end(), "121.2.a.b"), nf.end());
    EXPECT_NE(std::find(nf.begin(), nf.end(), "11.2.a.a"), nf.end());
}

TEST(NFSet, LevelOverflowIsRejected) {
    EXPECT_THROW(NFSet::checked_level(std::int64_t{1} << 32, 2), std::overflow_error);
    EXPECT_THROW(nf_set(0, 1, shipped()), std::invalid_argument);
}

TEST(Coverage, BeyondSnapshotReportsRequiredLevel) {
    try {
        nf_set(30, 1, shipped());
        FAIL() << "expected CoverageError";
    } catch (const CoverageError& e) {
        EXPECT_EQ(e.required_level(), 900);
    }
}

TEST(Coverage, MissingCharacterSpacesAreDetected) {
    // J_1(144) needs spaces for characters the fixture does not carry.
    EXPECT_THROW(decompose_J1(144, shipped()), CoverageError);
}

TEST(Decomposition, MultiplicitiesAreDivisorCounts) {
    const auto& s = shipped();
    for (auto [M, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{11, 1}, {14, 1}, {15, 1}, {4, 9}, {3, 16}}) {
        const auto d = decompose_JDelta(M, N, s);
        std::int64_t total = 0;
        for (const auto& f : d.factors) {
            EXPECT_EQ(f.multiplicity, brute_sigma0(M * M * N / f.level)) << f.orbit;
            total += f.multiplicity * f.dimension;
        }
        EXPECT_EQ(total, d.total_dimension);
    }
}

TEST(Decomposition, J0OfTwentyEight) {
    const auto d = decompose_J0(28, shipped());
    EXPECT_EQ(d.total_dimension, 2);
    ASSERT_EQ(d.factors.size(), 1u);
    EXPECT_EQ(d.factors[0].orbit, "14.2.a.a");
    EXPECT_EQ(d.factors[0].multiplicity, 2);
}

TEST(Decomposition, ConductorThirtySixOrbitSitsInsideJDeltaFourNine) {
    const auto d = decompose_JDelta(4, 9, shipped());
    const auto* witness = [&]() -> const Factor* {
        for (const auto& f : d.factors)
            if (f.level == 144 && shipped().find_orbit(f.orbit)->char_conductor == 36) return &f;
        return nullptr;
    }();
    ASSERT_NE(witness, nullptr);
    EXPECT_EQ(witness->multiplicity, 1);
}

TEST(Decomposition, DimensionCheckAgrees) {
    const auto& s = shipped();
    EXPECT_EQ(dimension_check(2, 1, s).from_orbits, 0);
    for (auto [M, N] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 1}, {11, 1}, {4, 9}, {14, 1}, {15, 1}, {5, 5}}) {
        const auto c = dimension_check(M, N, s);
        EXPECT_TRUE(c.ok()) << M << "," << N << ": " << c.from_orbits << " vs " << c.from_spaces;
    }
}

TEST(Decomposition, J0GenusIdentity) {
    const auto& s = shipped();
    for (std::int64_t N = 1; N <= s.max_level(); ++N)
        ASSERT_EQ(decompose_J0(N, s).total_dimension, genus_X0(N)) << N;
}

TEST(Decomposition, J0IsInsideJ1WhereCovered) {
    const auto& s = shipped();
    int checked = 0;
    for (std::int64_t L = 1; L <= 200; ++L) {
        if (!j1_covered(L, s)) continue;
        ++checked;
        const auto j1 = multiplicities(decompose_J1(L, s));
        for (const auto& f : decompose_J0(L, s).factors) {
            auto it = j1.find(f.orbit);
            ASSERT_NE(it, j1.end()) << L << " " << f.orbit;
            EXPECT_LE(f.multiplicity, it->second);
        }
    }
    EXPECT_GE(checked, 60);
}

TEST(Decomposition, J0GrowsWithTheLevel) {
    const auto& s = shipped();
    for (std::int64_t N = 2; N <= s.max_level(); ++N) {
        const auto big = multiplicities(decompose_J0(N, s));
        for (const auto& pp : factorize(N)) {
            const auto small = decompose_J0(N / pp.prime, s);
            for (const auto& f : small.factors) {
                auto it = big.find(f.orbit);
                ASSERT_NE(it, big.end()) << N << " " << f.orbit;
                ASSERT_GT(it->second, f.multiplicity) << N << " " << f.orbit;
            }
        }
    }
}
