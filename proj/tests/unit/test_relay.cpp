#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "rateopt/errors.hpp"
#include "rateopt/relay.hpp"

using namespace rateopt;
using namespace rateopt::relay;

namespace {

const ChannelState kPublished = ChannelState::from_gains(oracle::kGain1, oracle::kGain2, 1.0, 100);

ChannelState random_channel(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> g(0.05, 200.0);
    std::uniform_real_distribution<double> s(0.1, 4.0);
    return ChannelState::from_gains(g(rng), g(rng), s(rng));
}

} // namespace

TEST_SUITE("relay") {

TEST_CASE("channel and power validation") {
    CHECK_THROWS_AS(ChannelState({}, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelState({{1, 0}}, {{1, 0}, {0, 1}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelState({{0, 0}}, {{1, 0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ChannelState({{1, 0}}, {{1, 0}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation::make(0.5, 0.5, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation::make(-0.1, 0.5, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation::from_alpha_beta(1.1, 0.5, 1.0), std::invalid_argument);

    const ChannelState ch({{0.6, 0.8}, {0.0, 0.0}}, {{0.0, 2.0}, {0.0, 0.0}}, 0.5);
    CHECK(ch.nr() == 2);
    CHECK(ch.norm1_sq() == doctest::Approx(1.0));
    CHECK(ch.norm2_sq() == doctest::Approx(4.0));
}

TEST_CASE("alpha-beta view round trips") {
    const auto p = PowerAllocation::from_alpha_beta(0.3, 0.8, 2.0);
    CHECK(p.p1 == doctest::Approx(0.48));
    CHECK(p.p2 == doctest::Approx(1.12));
    CHECK(p.pr == doctest::Approx(0.4));
    CHECK(p.total() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.alpha() == doctest::Approx(0.3));
    CHECK(p.beta() == doctest::Approx(0.8));
}

TEST_CASE("snr_pair reproduces the published powers") {
    const auto s = snr_pair(PowerAllocation::make(0.1996, 0.2362, 0.5642, 1.0), kPublished);
    CHECK(s.gamma1 == doctest::Approx(oracle::kPublishedPowersGamma1).epsilon(1e-13));
    CHECK(s.gamma2 == doctest::Approx(oracle::kPublishedPowersGamma2).epsilon(1e-13));
    CHECK(std::abs(s.gamma1 - 7.31) <= 0.01);
    CHECK(std::abs(s.gamma2 - 3.14) <= 0.01);
}

TEST_CASE("snr_pair zero powers give zero SNR") {
    CHECK(snr_pair(PowerAllocation::make(0, 0.5, 0.5, 1), kPublished).gamma2 == 0.0);
    CHECK(snr_pair(PowerAllocation::make(0.5, 0, 0.5, 1), kPublished).gamma1 == 0.0);
    const auto s = snr_pair(PowerAllocation::make(0.5, 0.5, 0, 1), kPublished);
    CHECK(s.gamma1 == 0.0);
    CHECK(s.gamma2 == 0.0);
}

TEST_CASE("snr_pair at the common-rate powers balances at K/2") {
    const auto s = snr_pair(PowerAllocation::make(0.33164, 0.16836, 0.5, 1.0), kPublished);
    CHECK(std::abs(s.gamma1 - 5.225) <= 0.001);
    CHECK(std::abs(s.gamma2 - 5.225) <= 0.001);
}

TEST_CASE("effective gains") {
    auto g = effective_gains(kPublished, 1.0);
    CHECK(g.gamma1r == 24.0);
    CHECK(g.gamma2r == 96.0);
    g = effective_gains(ChannelState({{1, 0}}, {{0, 1}}, 1.0), 1.0);
    CHECK(g.gamma1r == 1.0);
    const auto g2 = effective_gains(kPublished, 2.0);
    CHECK(g2.gamma1r == 48.0);
    CHECK(g2.gamma2r == 192.0);
    CHECK_THROWS_AS(effective_gains(kPublished, 0.0), std::invalid_argument);
}

TEST_CASE("snr_sum_budget") {
    CHECK(snr_sum_budget({24, 96}) == doctest::Approx(oracle::kBudget).epsilon(1e-14));
    CHECK(std::abs(snr_sum_budget({24, 96}) - 10.4495) <= 1e-4);
    for (double g : {0.1, 1.0, 4.0, 57.0}) {
        CHECK(snr_sum_budget({g, g}) == doctest::Approx(g * g / (4 * (g + 1))).epsilon(1e-14));
    }
    CHECK(snr_sum_budget({1e-12, 50}) < 1e-12);
    CHECK(snr_sum_budget({0, 50}) == 0.0);
}

TEST_CASE("common_rate_powers") {
    const auto p = common_rate_powers(kPublished, 1.0);
    CHECK(std::abs(p.p1 - 0.33164) <= 1e-4);
    CHECK(std::abs(p.p2 - 0.16836) <= 1e-4);
    CHECK(p.pr == 0.5);
    CHECK(p.p1 == doctest::Approx(oracle::kAlphaOpt / 2).epsilon(1e-14));

    const auto sym = common_rate_powers(ChannelState::from_gains(7, 7, 1), 2.0);
    CHECK(sym.p1 == doctest::Approx(0.5));
    CHECK(sym.p2 == doctest::Approx(0.5));
    CHECK(sym.pr == doctest::Approx(1.0));

    const auto scaled = common_rate_powers(kPublished, 3.0);
    // Gains scale with Pt, so alpha changes; only beta stays at 1/2.
    CHECK(scaled.pr == doctest::Approx(1.5));
    const auto s = snr_pair(scaled, kPublished);
    CHECK(s.gamma1 == doctest::Approx(snr_sum_budget(effective_gains(kPublished, 3.0)) / 2).epsilon(1e-9));
}

TEST_CASE("weighted_optimal_snrs") {
    const auto s = weighted_optimal_snrs(2, 1, {24, 96});
    CHECK(std::abs(s.gamma1 - 7.30) <= 0.01);
    CHECK(std::abs(s.gamma2 - 3.15) <= 0.01);
    CHECK(s.gamma1 == doctest::Approx(oracle::kWeightedGamma1).epsilon(1e-13));
    CHECK(s.gamma2 == doctest::Approx(oracle::kWeightedGamma2).epsilon(1e-13));

    const auto eq = weighted_optimal_snrs(3, 3, {24, 96});
    CHECK(eq.gamma1 == oracle::kBudget / 2);
    CHECK(eq.gamma2 == oracle::kBudget / 2);

    // K = 5 chosen directly through symmetric gains g^2 / (4 (g+1)) = 5.
    const double g = 10 + std::sqrt(120.0);
    CHECK(snr_sum_budget({g, g}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(weighted_optimal_snrs(100, 1, {g, g}), WeightTooSkewed);
    CHECK_THROWS_AS(weighted_optimal_snrs(1, 100, {g, g}), WeightTooSkewed);
    CHECK_THROWS_AS(weighted_optimal_snrs(0, 1, {g, g}), std::invalid_argument);
}

TEST_CASE("recover_powers finds the published allocation") {
    const auto target = weighted_optimal_snrs(2, 1, {24, 96});
    const auto p = recover_powers(target, kPublished, 1.0, 0.01);
    CHECK(std::abs(p.p1 - 0.1996) <= 1e-3);
    CHECK(std::abs(p.p2 - 0.2362) <= 1e-3);
    CHECK(std::abs(p.pr - 0.5642) <= 1e-3);
    CHECK(p.p1 == doctest::Approx(oracle::kPreimageP1).epsilon(1e-5));
    CHECK(p.p2 == doctest::Approx(oracle::kPreimageP2).epsilon(1e-5));
    CHECK(p.pr == doctest::Approx(oracle::kPreimagePr).epsilon(1e-5));
    CHECK(p.total() == doctest::Approx(1.0).epsilon(1e-15));

    // Two-decimal target (sum slightly above K) still lands within tolerance.
    const auto q = recover_powers({7.3, 3.15}, kPublished, 1.0, 0.01);
    CHECK(std::abs(q.p1 - 0.1996) <= 1e-3);
    CHECK(std::abs(q.p2 - 0.2362) <= 1e-3);
    CHECK(std::abs(q.pr - 0.5642) <= 1e-3);
}

TEST_CASE("recover_powers edge cases") {
    const auto z = recover_powers({0, 0}, kPublished, 1.0);
    const auto s = snr_pair(z, kPublished);
    CHECK(s.gamma1 <= 1e-8);
    CHECK(s.gamma2 <= 1e-8);
    CHECK(z.total() == doctest::Approx(1.0));

    CHECK_THROWS_AS(recover_powers({oracle::kBudget, oracle::kBudget}, kPublished, 1.0), Unachievable);
    CHECK_THROWS_AS(recover_powers({-1, 0}, kPublished, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(recover_powers({1, 1}, kPublished, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("rates") {
    CHECK(std::abs(weighted_sum_rate({7.3, 3.15}, 2, 1) - 4.08) <= 0.01);
    CHECK(weighted_sum_rate({7.3, 3.15}, 2, 1) == doctest::Approx(4.079667004689344).epsilon(1e-14));
    CHECK(weighted_sum_rate({0, 0}, 2, 1) == 0.0);
    CHECK(weighted_sum_rate({1, 1}, 1, 1) == 1.0);
    CHECK(weighted_sum_rate({1, 1}, 1, 1, 1.0 / 3.0) == doctest::Approx(2.0 / 3.0));

    CHECK(std::abs(common_rate({5.2245, 5.2245}) - 1.3191) <= 5e-4);
    CHECK(common_rate({0, 10}) == 0.0);
    CHECK(common_rate({3, 3}) == 1.0);
}

TEST_CASE("relay regions") {
    const auto region = relay_feasible_region(kPublished, 1.0);
    CHECK(region.bound.budget() == doctest::Approx(oracle::kBudget));
    CHECK(region.contains(std::vector{oracle::kBudget / 2, oracle::kBudget / 2}));
    CHECK_FALSE(region.contains(std::vector{oracle::kBudget, oracle::kBudget}));
    CHECK(region.contains(std::vector{0.0, 0.0}));
    CHECK(region.contains(std::vector{oracle::kWeightedGamma1, oracle::kWeightedGamma2}));

    const auto shifted = relay_shifted_region(kPublished, 1.0);
    CHECK(shifted.bound.budget() == doctest::Approx(2.0 + oracle::kBudget));
    CHECK(shifted.contains(std::vector{1.0 + oracle::kWeightedGamma1, 1.0 + oracle::kWeightedGamma2}));
    CHECK_FALSE(shifted.contains(std::vector{0.5, 2.0}));

    const auto sol = framework::solve_weighted_product(shifted, framework::WeightVector({2, 1}));
    CHECK(sol.feasible);
    CHECK(sol.point[0] - 1.0 == doctest::Approx(oracle::kWeightedGamma1).epsilon(1e-12));
    const auto mm = framework::solve_max_min(region);
    CHECK(mm.feasible);
    CHECK(mm.point[0] == doctest::Approx(oracle::kBudget / 2));
}

TEST_CASE("sum budget bounds every allocation" * doctest::description("property")) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto ch = random_channel(rng);
        const double pt = std::pow(10.0, 3.0 * u(rng) - 1.0);
        const auto s = snr_pair(PowerAllocation::from_alpha_beta(u(rng), u(rng), pt), ch);
        const double k = snr_sum_budget(effective_gains(ch, pt));
        CHECK(s.gamma1 + s.gamma2 <= k * (1 + 1e-9));
    }
}

TEST_CASE("common-rate powers attain and balance the budget" * doctest::description("property")) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto ch = random_channel(rng);
        const double pt = std::uniform_real_distribution<double>(0.1, 100)(rng);
        const auto s = snr_pair(common_rate_powers(ch, pt), ch);
        const double k = snr_sum_budget(effective_gains(ch, pt));
        CHECK(oracle::close_rel(s.gamma1 + s.gamma2, k, 1e-6));
        CHECK(std::abs(s.gamma1 - s.gamma2) <= 1e-9 * std::max(s.gamma1, 1.0));
    }
}

TEST_CASE("stable alpha agrees with the textbook expression" * doctest::description("property")) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> g(0.01, 1e3);
    for (int trial = 0; trial < 2000; ++trial) {
        const double g1 = g(rng), g2 = g(rng);
        if (std::abs(g1 - g2) < 1e-3 * std::max(g1, g2)) continue;
        const double literal =
            (-g2 - 1 + std::sqrt((g2 + 1) * (g1 + 1))) / (2 * (g1 - g2));
        const double stable = common_rate_alpha({g1, g2}) * 0.5;
        CHECK(oracle::close_rel(stable, literal, 1e-9));
    }
}

TEST_CASE("recover_powers inverts snr_pair" * doctest::description("property")) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    for (int trial = 0; trial < 300; ++trial) {
        const auto ch = random_channel(rng);
        const double pt = std::uniform_real_distribution<double>(0.2, 20)(rng);
        const auto s = snr_pair(PowerAllocation::from_alpha_beta(u(rng), u(rng), pt), ch);
        const auto back = snr_pair(recover_powers(s, ch, pt, 1e-8), ch);
        CHECK(std::abs(back.gamma1 - s.gamma1) <= 1e-6);
        CHECK(std::abs(back.gamma2 - s.gamma2) <= 1e-6);
    }
}

TEST_CASE("equal weights coincide with the common-rate point" * doctest::description("property")) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> g(0.5, 500);
    for (int trial = 0; trial < 500; ++trial) {
        const EffectiveGains gains{g(rng), g(rng)};
        const double a = g(rng);
        const auto s = weighted_optimal_snrs(a, a, gains);
        const auto mm = framework::solve_max_min(framework::FeasibleRegion::whole_simplex(
            framework::SimplexBound(framework::CostVector({1, 1}), snr_sum_budget(gains))));
        CHECK(s.gamma1 == mm.point[0]);
        CHECK(s.gamma2 == mm.point[1]);
    }
}

TEST_CASE("sum budget increases in each gain" * doctest::description("property")) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> g(0.01, 1e4);
    for (int trial = 0; trial < 1000; ++trial) {
        const double g1 = g(rng), g2 = g(rng);
        const double h = 1e-6 * std::max(g1, g2);
        const double k = snr_sum_budget({g1, g2});
        CHECK(snr_sum_budget({g1 + h, g2}) > k);
        CHECK(snr_sum_budget({g1, g2 + h}) > k);
    }
}

}
