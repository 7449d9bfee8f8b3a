#include <gtest/gtest.h>

#include <random>

#include "cycrank/arith.hpp"
#include "cycrank/decomposition.hpp"
#include "cycrank/rank.hpp"
#include "fixture.hpp"

using namespace cycrank;
using cycrank::testing::shipped;

namespace {

NewformOrbit fake_orbit(std::int64_t dimension, std::optional<int> rank) {
    NewformOrbit o;
    o.label = "37.2.a.a";
    o.level = 37;
    o.dimension = dimension;
    o.conrey_indexes = {1};
    o.analytic_rank = rank;
    return o;
}

// Oracle for J_0: sum of sigma0(N / N_f) * dim * analytic rank by hand.
std::int64_t brute_q_rank(std::int64_t N, const Snapshot& s) {
    std::int64_t total = 0;
    for (const auto& o : s.orbits()) {
        if (N % o.level || !o.trivial_character()) continue;
        std::int64_t m = 0;
        for (std::int64_t d = 1; d <= N / o.level; ++d) m += (N / o.level) % d == 0;
        total += m * o.dimension * o.analytic_rank.value();
    }
    return total;
}

}  // namespace

TEST(AssignRank, Rules) {
    EXPECT_EQ(assign_rank(fake_orbit(1, 0), false), (RankValue{0, 0, Provenance::UnconditionalZero}));
    EXPECT_EQ(assign_rank(fake_orbit(3, 0), false), (RankValue{0, 0, Provenance::UnconditionalZero}));
    EXPECT_EQ(assign_rank(fake_orbit(1, 1), false), (RankValue{1, 1, Provenance::UnconditionalPositive}));
    EXPECT_EQ(assign_rank(fake_orbit(3, 1), false).provenance, Provenance::Unknown);
    EXPECT_EQ(assign_rank(fake_orbit(3, 1), true), (RankValue{1, 3, Provenance::BsdConditional}));
    EXPECT_EQ(assign_rank(fake_orbit(1, 2), true), (RankValue{2, 2, Provenance::BsdConditional}));
    EXPECT_EQ(assign_rank(fake_orbit(1, std::nullopt), true).provenance, Provenance::Unknown);
}

TEST(AssignRank, FixtureOrbits) {
    const auto& s = shipped();
    for (const char* label : {"121.2.a.b", "196.2.a.a", "225.2.a.a", "225.2.a.c"}) {
        const NewformOrbit* o = s.find_orbit(label);
        ASSERT_NE(o, nullptr) << label;
        EXPECT_EQ(assign_rank(*o, false), (RankValue{1, 1, Provenance::UnconditionalPositive})) << label;
    }
}

TEST(Provenance, TotalsNeverClaimMoreThanTheirInputs) {
    std::mt19937_64 rng(20261016);
    const Provenance all[] = {Provenance::UnconditionalZero, Provenance::UnconditionalPositive,
                              Provenance::BsdConditional, Provenance::Unknown};
    for (int trial = 0; trial < 5000; ++trial) {
        RankTotal total;
        Provenance worst = Provenance::UnconditionalZero;
        std::int64_t sum = 0;
        const int n = static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            const Provenance p = all[rng() % 4];
            const std::int64_t amount = p == Provenance::UnconditionalZero ? 0 : static_cast<std::int64_t>(rng() % 3);
            total.add(amount, p);
            sum += amount;
            if (amount != 0 || p == Provenance::Unknown) worst = weakest(worst, p);
        }
        EXPECT_EQ(total.provenance, worst);
        if (total.known()) EXPECT_EQ(total.value, sum);
        // a zero total only stays unconditional if every input was
        if (total.provenance == Provenance::UnconditionalZero) EXPECT_EQ(sum, 0);
    }
}

TEST(Provenance, WeakestIsALattice) {
    const Provenance all[] = {Provenance::UnconditionalZero, Provenance::UnconditionalPositive,
                              Provenance::BsdConditional, Provenance::Unknown};
    for (auto a : all)
        for (auto b : all) {
            EXPECT_EQ(weakest(a, b), weakest(b, a));
            EXPECT_EQ(weakest(a, a), a);
            for (auto c : all) EXPECT_EQ(weakest(weakest(a, b), c), weakest(a, weakest(b, c)));
        }
    EXPECT_EQ(tag(Provenance::BsdConditional), "(BSD)");
    EXPECT_EQ(tag(Provenance::UnconditionalPositive), "");
}

TEST(RankCyclotomic, PaperExamples) {
    const auto& s = shipped();
    const auto j11 = rank_cyclotomic(11, 1, s, false);
    EXPECT_EQ(j11.total.value, 10);
    EXPECT_EQ(j11.total.provenance, Provenance::UnconditionalPositive);
    const auto j14 = rank_cyclotomic(14, 1, s, false);
    EXPECT_EQ(j14.total.value, 8);
    EXPECT_EQ(j14.breakdown(), "2·σ₀(196/28) + 4·σ₀(196/196)");
    const auto j15 = rank_cyclotomic(15, 1, s, false);
    EXPECT_EQ(j15.total.value, 20);
    EXPECT_EQ(j15.breakdown(), "4·σ₀(225/75) + 12·σ₀(225/225)");
}

TEST(RankCyclotomic, ZeroOnTheoremPairs) {
    const auto& s = shipped();
    for (auto [M, N] : {LevelPair{3, 7}, LevelPair{4, 5}, LevelPair{12, 1}}) {
        const auto r = rank_cyclotomic(M, N, s, false);
        EXPECT_EQ(r.total.value, 0);
        EXPECT_EQ(r.total.provenance, Provenance::UnconditionalZero);
        EXPECT_EQ(r.breakdown(), "0");
    }
}

TEST(RankCyclotomic, AgreesWithCrossCheck) {
    const auto& s = shipped();
    for (auto [M, N] : {LevelPair{11, 1}, LevelPair{14, 1}, LevelPair{15, 1}, LevelPair{4, 9}, LevelPair{3, 16}}) {
        const auto a = rank_cyclotomic(M, N, s, true);
        const auto b = rank_cyclotomic_crosscheck(M, N, s, true);
        EXPECT_EQ(a.total, b.total) << M << "," << N;
    }
}

TEST(RankCyclotomic, TrivialModulusIsTheRationalRank) {
    const auto& s = shipped();
    for (std::int64_t N = 1; N <= 200; ++N) {
        const auto r = rank_cyclotomic(1, N, s, true);
        if (r.coverage_error) continue;
        // over Q the Delta-Jacobian is J_1(N); restrict the oracle to J_0 levels
        // where J_1(N) has no further factors
        if (decompose_JDelta(1, N, s).total_dimension != decompose_J0(N, s).total_dimension) continue;
        EXPECT_EQ(r.total.value, brute_q_rank(N, s)) << N;
    }
}

TEST(ZeroStatus, Examples) {
    const auto& s = shipped();
    EXPECT_EQ(rank_zero_status(1, 1, s).status, ZeroStatus::ZeroUnconditional);
    EXPECT_EQ(rank_zero_status(3, 7, s).status, ZeroStatus::ZeroUnconditional);
    const auto v = rank_zero_status(4, 9, s);
    EXPECT_EQ(v.status, ZeroStatus::Nonzero);
    ASSERT_TRUE(v.witness.has_value());
    const NewformOrbit* w = s.find_orbit(*v.witness);
    EXPECT_EQ(w->level, 144);
    EXPECT_EQ(w->char_conductor, 36);
    EXPECT_EQ(v.witness_provenance, Provenance::BsdConditional);
}

TEST(ZeroStatus, AgreesWithRankTotal) {
    const auto& s = shipped();
    for (const auto& [M, N] : main_theorem_pairs()) {
        const auto v = rank_zero_status(M, N, s);
        if (v.status == ZeroStatus::Unknown) continue;
        const auto r = rank_cyclotomic(M, N, s, true);
        EXPECT_EQ(v.status == ZeroStatus::ZeroUnconditional, r.total.value == 0) << M << "," << N;
    }
}

TEST(MainTheorem, VerifiesOnTheFixture) {
    const auto report = verify_main_theorem(shipped());
    for (const auto& row : report.rows) EXPECT_TRUE(row.ok) << row.M << "," << row.N << " " << to_string(row.verdict.status);
    EXPECT_TRUE(report.ok());
    std::vector<LevelPair> by_l_values;
    for (const auto& row : report.rows)
        if (row.route == "L-values on NF") by_l_values.emplace_back(row.M, row.N);
    const std::vector<LevelPair> expected = {{3, 7}, {3, 14}, {3, 16}, {4, 5}, {4, 9}, {6, 4}, {12, 1}};
    EXPECT_EQ(by_l_values, expected);
    EXPECT_EQ(report.notes, std::vector<std::string>{});
    EXPECT_TRUE(in_main_theorem(12, 1));
    EXPECT_FALSE(in_main_theorem(4, 9));
}

TEST(GoodPrime, SmallLevels) {
    EXPECT_EQ(good_prime_search(6).p, 7);
    EXPECT_EQ(good_prime_search(7).p, 29);
    EXPECT_EQ(good_prime_search(8).p, 3);
    EXPECT_EQ(good_prime_search(12).p, 5);
    EXPECT_EQ(good_prime_search(12).q, 25);
    EXPECT_THROW(good_prime_search(3), std::invalid_argument);
}

TEST(GoodPrime, SplitPrimesAlsoQualify) {
    // 13 splits completely in Q(zeta_12) and 29 in Q(zeta_7)
    EXPECT_EQ(13 % 12, 1);
    EXPECT_LT(13, 11 * 11);
    EXPECT_EQ(29 % 7, 1);
    EXPECT_LT(29, 6 * 6);
}

TEST(GoodPrime, DirectArithmetic) {
    for (std::int64_t N : {6, 7, 8, 9, 10, 12}) {
        const auto g = good_prime_search(N);
        ASSERT_TRUE(g.p % 2 == 1 && N % g.p != 0 && is_prime(g.p)) << N;
        // residue degree by stepping powers of p mod N
        std::int64_t f = 1, x = g.p % N;
        while (x != 1) x = x * g.p % N, ++f;
        EXPECT_EQ(f, g.residue_degree);
        std::int64_t q = 1;
        for (std::int64_t i = 0; i < f; ++i) q *= g.p;
        EXPECT_EQ(q, g.q);
        EXPECT_LT(q, (N - 1) * (N - 1));
        // no smaller odd prime works
        for (std::int64_t p = 3; p < g.p; p += 2) {
            if (!is_prime(p) || N % p == 0) continue;
            std::int64_t k = 1, y = p % N, pk = p;
            while (y != 1) y = y * p % N, ++k, pk *= p;
            EXPECT_GE(pk, (N - 1) * (N - 1)) << N << " " << p;
        }
    }
}
