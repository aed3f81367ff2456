#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {
const double kR = 1.0 / std::sqrt(2.0);
const InitialCondition kUp{0, {1.0, 0.0}};
const InitialCondition kDown{0, {0.0, 1.0}};
const InitialCondition kBalanced{0, {kR, kR}};
}  // namespace

TEST(InitialCondition, FromVectorValidatesNorm) {
    EXPECT_NO_THROW(InitialCondition::from_vector({kR, cplx(0.0, kR)}));
    EXPECT_THROW(InitialCondition::from_vector({1.0, 1.0}), InvalidInput);
}

TEST(InitialCondition, FromBlochAngles) {
    const auto ic = InitialCondition::from_bloch(kPi / 2, kPi / 2, 7);
    EXPECT_EQ(ic.position, 7);
    EXPECT_NEAR(std::abs(ic.coin_state[0] - kR), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ic.coin_state[1] - cplx(0.0, kR)), 0.0, 1e-15);
    const auto down = InitialCondition::from_bloch(kPi, 0.0);
    EXPECT_NEAR(std::norm(down.coin_state[1]), 1.0, 1e-15);
}

TEST(Step, IdentityCoinUpMovesRight) {
    const WalkerState s = step(WalkerState(kUp), presets::identity());
    EXPECT_EQ(s.t(), 1);
    EXPECT_EQ(s.amplitude(1, 0), cplx(1.0, 0.0));
    EXPECT_EQ(distribution(s).at(1), 1.0);
}

TEST(Step, IdentityCoinDownMovesLeft) {
    const WalkerState s = step(WalkerState(kDown), presets::identity());
    EXPECT_EQ(s.amplitude(-1, 1), cplx(1.0, 0.0));
    EXPECT_EQ(distribution(s).at(-1), 1.0);
}

TEST(Step, SupportGrowsOneSitePerSide) {
    WalkerState s(InitialCondition{3, {1.0, 0.0}});
    for (int t = 1; t <= 5; ++t) {
        s.advance(presets::hadamard_analog().matrix());
        EXPECT_EQ(s.offset(), 3 - t);
        EXPECT_EQ(s.sites(), static_cast<std::size_t>(2 * t + 1));
    }
}

TEST(Step, SigmaXAnalogHasPeriodTwo) {
    const CoinSpec coin = presets::sigma_x();
    const WalkerState s = step(step(WalkerState(kUp), coin), coin);
    // (i sigma_x)^2 = -1: back at the origin with a global phase.
    EXPECT_NEAR(std::abs(s.amplitude(0, 0) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(distribution(s).at(0), 1.0, 1e-15);
}

TEST(Evolve, ZeroStepsIsInitialState) {
    const WalkerState s = evolve(InitialCondition{4, {kR, cplx(0.0, kR)}}, presets::hadamard_analog(), 0);
    EXPECT_EQ(s.t(), 0);
    EXPECT_EQ(s.offset(), 4);
    EXPECT_EQ(s.amplitude(4, 1), cplx(0.0, kR));
    EXPECT_THROW(evolve(kUp, presets::identity(), -1), InvalidInput);
}

TEST(Evolve, IdentityCoinDriftsDeterministically) {
    const Distribution d = distribution(evolve(kUp, presets::identity(), 100));
    EXPECT_EQ(d.at(100), 1.0);
    EXPECT_EQ(d.total(), 1.0);
}

TEST(Evolve, HadamardAnalogFiveStepsExact) {
    // Exact rational amplitudes, expanded symbolically.
    const Distribution d = distribution(evolve(kUp, presets::hadamard_analog(), 5));
    const std::pair<int, double> expected[] = {{-5, 1.0 / 32}, {-3, 5.0 / 32}, {-1, 1.0 / 8},
                                               {1, 1.0 / 8},   {3, 17.0 / 32}, {5, 1.0 / 32}};
    for (const auto& [x, p] : expected) EXPECT_NEAR(d.at(x), p, 1e-12) << "x=" << x;
    for (int x = -4; x <= 4; x += 2) EXPECT_EQ(d.at(x), 0.0);
    const Distribution ring = ring_oracle(kUp, presets::hadamard_analog(), 5, 13);
    for (int x = -6; x <= 6; ++x) EXPECT_NEAR(d.at(x), ring.at(x), 1e-12);
}

TEST(Distribution, OneStepHadamardAnalog) {
    const Distribution d = distribution(evolve(kUp, presets::hadamard_analog(), 1));
    EXPECT_NEAR(d.at(1), 0.5, 1e-15);
    EXPECT_NEAR(d.at(-1), 0.5, 1e-15);
    EXPECT_EQ(d.at(0), 0.0);
}

TEST(Distribution, TwoStepsSigmaX) {
    EXPECT_NEAR(distribution(evolve(kBalanced, presets::sigma_x(), 2)).at(0), 1.0, 1e-15);
}

TEST(Distribution, XYFamilyHundredStepsMatchesRing) {
    const CoinSpec coin = presets::paper_xy(kPi / 4, kPi / 4);
    const Distribution d = distribution(evolve(kUp, coin, 100));
    const Distribution ring = ring_oracle(kUp, coin, 100, 203);
    double total = 0.0;
    for (std::int64_t x = ring.first; x <= ring.last(); ++x) {
        ASSERT_NEAR(d.at(x), ring.at(x), 1e-10);
        total += d.at(x);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Moments, IdentityCoin) {
    const Moments m = moments(evolve(kUp, presets::identity(), 50));
    EXPECT_EQ(m.mean, 50.0);
    EXPECT_EQ(m.second, 2500.0);
    EXPECT_EQ(m.variance(), 0.0);
}

TEST(Moments, SigmaXFromUpAlternatesSecondMoment) {
    // From |0> the walker hops between -1 and 0 as a point mass: <x^2> alternates, variance stays 0.
    const MomentSeries s = moment_series(kUp, presets::sigma_x(), 20);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool odd = s.times[i] % 2 == 1;
        EXPECT_NEAR(s.second[i], odd ? 1.0 : 0.0, 1e-14);
        EXPECT_NEAR(s.variance[i], 0.0, 1e-14);
    }
}

TEST(Moments, SigmaXBalancedAlternatesVariance) {
    const MomentSeries s = moment_series(kBalanced, presets::sigma_x(), 20);
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_NEAR(s.variance[i], s.times[i] % 2 == 1 ? 1.0 : 0.0, 1e-14);
    }
}

TEST(Moments, HadamardAnalogAtFiveHundred) {
    // Brute-force reference (independent numpy walk): <x^2>/t^2 = 0.29290, var/t^2 = 0.20750.
    const Moments m = moments(evolve(kUp, presets::hadamard_analog(), 500));
    EXPECT_NEAR(m.second / (500.0 * 500.0), 0.29, 0.01);
    EXPECT_NEAR(m.variance() / (500.0 * 500.0), 0.2075017019598588, 1e-9);
}

TEST(MomentSeries, StrideAndInvariants) {
    std::mt19937_64 rng(41);
    const CoinSpec coin = oracle::random_coin(rng, 2, 4);
    const MomentSeries s = moment_series(InitialCondition{0, oracle::random_spinor(rng)}, coin, 301, 25);
    ASSERT_EQ(s.times.back(), 301);
    EXPECT_EQ(s.times.front(), 25);
    EXPECT_EQ(s.size(), 13u);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = static_cast<double>(s.times[i]);
        EXPECT_GE(s.variance[i], -1e-12);
        EXPECT_LE(std::abs(s.mean[i]), t);
        EXPECT_LE(s.second[i], t * t * (1 + 1e-12));
    }
    EXPECT_THROW(moment_series(kUp, coin, 10, 0), InvalidInput);
}

TEST(RingOracle, RejectsSmallRing) {
    EXPECT_THROW(ring_oracle(kUp, presets::identity(), 10, 20), InvalidInput);
    EXPECT_THROW(ring_oracle(kUp, presets::identity(), 10, 21), InvalidInput);
    EXPECT_NO_THROW(ring_oracle(kUp, presets::identity(), 10, 22));
}

TEST(RingOracle, ZeroStepsIsInitialDistribution) {
    const Distribution d = ring_oracle(InitialCondition{-3, {kR, kR}}, presets::hadamard_analog(), 0, 5);
    EXPECT_NEAR(d.at(-3), 1.0, 1e-15);
    EXPECT_NEAR(d.total(), 1.0, 1e-15);
}

TEST(Properties, NormConservedOverLongRuns) {
    std::mt19937_64 rng(42);
    for (int n = 0; n < 4; ++n) {
        const CoinSpec coin = oracle::random_coin(rng, 2, 4);
        WalkerState s(InitialCondition{0, oracle::random_spinor(rng)});
        for (int t = 1; t <= 2000; ++t) {
            s.advance(coin.matrix());
            ASSERT_LE(std::abs(s.norm_squared() - 1.0), t * 1e-14) << "t=" << t;
        }
    }
}

TEST(Properties, LightConeAndParity) {
    std::mt19937_64 rng(43);
    for (int n = 0; n < 10; ++n) {
        const CoinSpec coin = oracle::random_coin(rng, 1, 4);
        const std::int64_t x0 = std::uniform_int_distribution<int>(-5, 5)(rng);
        const std::int64_t t = std::uniform_int_distribution<int>(1, 80)(rng);
        const Distribution d = distribution(evolve(InitialCondition{x0, oracle::random_spinor(rng)}, coin, t));
        for (std::int64_t x = x0 - t - 3; x <= x0 + t + 3; ++x) {
            if (std::abs(x - x0) > t || (x - x0 + t) % 2 != 0) ASSERT_EQ(d.at(x), 0.0) << "x=" << x;
        }
    }
}

TEST(Properties, LineMatchesRingOracle) {
    std::mt19937_64 rng(44);
    for (int n = 0; n < 10; ++n) {
        const CoinSpec coin = oracle::random_coin(rng, 1, 4);
        const InitialCondition ic{0, oracle::random_spinor(rng)};
        const Distribution line = distribution(evolve(ic, coin, 64));
        const Distribution ring = ring_oracle(ic, coin, 64, 2 * 64 + 3);
        for (std::int64_t x = ring.first; x <= ring.last(); ++x) ASSERT_NEAR(line.at(x), ring.at(x), 1e-12);
    }
}

TEST(Properties, SigmaXVarianceBounded) {
    std::mt19937_64 rng(45);
    for (int n = 0; n < 5; ++n) {
        const MomentSeries s = moment_series(InitialCondition{0, oracle::random_spinor(rng)}, presets::sigma_x(), 1000);
        for (const double v : s.variance) ASSERT_LE(v, 1.0 + 1e-12);
    }
}
