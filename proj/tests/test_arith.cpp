#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "cycrank/arith.hpp"

using namespace cycrank;

namespace {

std::int64_t brute_sigma0(std::int64_t n) {
    std::int64_t c = 0;
    for (std::int64_t d = 1; d <= n; ++d) c += (n % d == 0);
    return c;
}

std::int64_t brute_phi(std::int64_t n) {
    std::int64_t c = 0;
    for (std::int64_t a = 1; a <= n; ++a) c += (std::gcd(a, n) == 1);
    return c;
}

// Reduce (a, b, c) to the unique reduced form in its SL2(Z) class.
std::tuple<long, long, long> reduce_form(long a, long b, long c) {
    while (true) {
        if (c < a) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (b > a || b <= -a) {
            const long disc = b * b - 4 * a * c;
            while (b > a) b -= 2 * a;
            while (b <= -a) b += 2 * a;
            c = (b * b - disc) / (4 * a);
            continue;
        }
        if (a == c && b < 0) b = -b;
        return {a, b, c};
    }
}

// Classes of primitive positive definite forms of discriminant D found by
// reducing every form in a box; independent of the library's enumeration.
std::int64_t brute_class_number(long D) {
    std::set<std::tuple<long, long, long>> classes;
    // Box well beyond the reduced region so reduction does real work.
    const long bound = 3 * static_cast<long>(std::sqrt(static_cast<double>(-D))) + 3;
    for (long a = 1; a <= bound; ++a) {
        for (long b = -a; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            classes.insert(reduce_form(a, b, c));
        }
    }
    return static_cast<std::int64_t>(classes.size());
}

}  // namespace

TEST(Sigma0, Examples) {
    EXPECT_EQ(sigma0<std::int64_t>(1), 1);
    EXPECT_EQ(sigma0<std::int64_t>(196 / 28), 2);
    EXPECT_EQ(sigma0<std::int64_t>(12), 6);
    EXPECT_THROW(sigma0<std::int64_t>(0), std::invalid_argument);
}

TEST(Sigma0, BigIntBeyond64Bits) {
    BigInt x = 1;
    for (int i = 0; i < 9; ++i) x *= 180;  // 2^18 3^18 5^9
    EXPECT_GT(x, BigInt(std::numeric_limits<std::int64_t>::max()));
    EXPECT_EQ(sigma0(x), BigInt(19 * 19 * 10));
}

TEST(Sigma0, AgreesWithDivisorCountAndBruteForce) {
    for (std::int64_t n = 1; n <= 3000; ++n) {
        ASSERT_EQ(sigma0(n), brute_sigma0(n)) << n;
        ASSERT_EQ(static_cast<std::int64_t>(divisors(n).size()), sigma0(n)) << n;
    }
}

TEST(Sigma0, MultiplicativeOnRandomCoprimePairs) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000);
    int checked = 0;
    while (checked < 10'000) {
        const std::int64_t a = dist(rng), b = dist(rng);
        if (std::gcd(a, b) != 1) continue;
        ASSERT_EQ(sigma0(a * b), sigma0(a) * sigma0(b)) << a << " " << b;
        ++checked;
    }
}

TEST(Divisors, Examples) {
    EXPECT_EQ(divisors<std::int64_t>(1), (std::vector<std::int64_t>{1}));
    EXPECT_EQ(divisors<std::int64_t>(28), (std::vector<std::int64_t>{1, 2, 4, 7, 14, 28}));
    EXPECT_EQ(divisors<std::int64_t>(389), (std::vector<std::int64_t>{1, 389}));
    EXPECT_THROW(divisors<std::int64_t>(0), std::invalid_argument);
}

TEST(EulerPhi, Examples) {
    EXPECT_EQ(euler_phi<std::int64_t>(11), 10);
    EXPECT_EQ(euler_phi<std::int64_t>(1), 1);
    EXPECT_EQ(euler_phi<std::int64_t>(15), 8);
    EXPECT_THROW(euler_phi<std::int64_t>(0), std::invalid_argument);
}

TEST(EulerPhi, BruteForce) {
    for (std::int64_t n = 1; n <= 2000; ++n) ASSERT_EQ(euler_phi(n), brute_phi(n)) << n;
}

TEST(MultiplicativeOrder, Examples) {
    EXPECT_EQ(multiplicative_order<std::int64_t>(1, 17), 1);
    EXPECT_EQ(multiplicative_order<std::int64_t>(2, 7), 3);
    EXPECT_EQ(multiplicative_order<std::int64_t>(13, 12), 1);
    EXPECT_EQ(multiplicative_order<std::int64_t>(-1, 7), 2);
    EXPECT_THROW(multiplicative_order<std::int64_t>(4, 6), std::invalid_argument);
}

TEST(MultiplicativeOrder, MatchesStepping) {
    for (std::int64_t n = 2; n <= 300; ++n) {
        for (std::int64_t a = 1; a < n; ++a) {
            if (std::gcd(a, n) != 1) continue;
            std::int64_t k = 1, x = a % n;
            while (x != 1 % n) {
                x = x * a % n;
                ++k;
            }
            ASSERT_EQ(multiplicative_order(a, n), k) << a << " mod " << n;
        }
    }
}

TEST(CheckedArithmetic, OverflowIsReported) {
    EXPECT_THROW(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), std::overflow_error);
    EXPECT_THROW(lcm<std::int64_t>((std::int64_t{1} << 40) + 1, (std::int64_t{1} << 40) - 1), std::overflow_error);
    EXPECT_EQ(lcm<std::int64_t>(4, 6), 12);
}

TEST(IsPrime, MatchesSieve) {
    const auto primes = primes_in_range(1, 100'000);
    std::set<std::int64_t> ps(primes.begin(), primes.end());
    for (std::int64_t n = 0; n <= 100'000; ++n) ASSERT_EQ(is_prime(n), ps.count(n) == 1) << n;
    EXPECT_TRUE(is_prime(1'000'000'007));
    EXPECT_FALSE(is_prime(3'215'031'751));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(ClassNumber, Examples) {
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-23), 3);
    EXPECT_EQ(class_number(-44), 3);
    EXPECT_EQ(class_number(-148), 2);
}

TEST(ClassNumber, RejectsBadDiscriminants) {
    EXPECT_THROW(class_number(0), std::invalid_argument);
    EXPECT_THROW(class_number(5), std::invalid_argument);
    EXPECT_THROW(class_number(-5), std::invalid_argument);   // 3 mod 4
    EXPECT_THROW(class_number(-6), std::invalid_argument);   // 2 mod 4
    EXPECT_THROW(class_number(-15), std::invalid_argument);  // -p needs p prime
    EXPECT_THROW(class_number(-60), std::invalid_argument);  // -4 * 15
}

TEST(ClassNumber, AgreesWithIndependentReduction) {
    for (std::int64_t p : primes_in_range(2, 400)) {
        ASSERT_EQ(class_number(-4 * p), brute_class_number(-4 * p)) << "-4*" << p;
        if (p % 4 == 3) ASSERT_EQ(class_number(-p), brute_class_number(-p)) << "-" << p;
    }
}
