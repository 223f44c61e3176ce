#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "rateopt/fading.hpp"
#include "rateopt/signal_sim.hpp"

using namespace rateopt;
using namespace rateopt::verify;

namespace {

// ||h1||^2 = 24, ||h2||^2 = 96 over 100 antennas with pseudo-random phases.
relay::ChannelState phased_channel() {
    relay::cvec h1(100), h2(100);
    for (std::size_t i = 0; i < 100; ++i) {
        h1[i] = std::polar(std::sqrt(0.24), 0.37 * static_cast<double>(i * i));
        h2[i] = std::polar(std::sqrt(0.96), -1.13 * static_cast<double>(i));
    }
    return relay::ChannelState(h1, h2, 1.0);
}

// Relative standard deviation of the noise-power estimate is 1/sqrt(symbols)
// (exponential per-symbol noise power); c frozen at 1 for a 3-sigma band.
constexpr double kNoiseSpread = 1.0;

} // namespace

TEST_SUITE("signal_sim") {

TEST_CASE("empirical SNRs match the closed-form expressions") {
    const auto ch = phased_channel();
    const relay::PowerAllocation p{0.1996, 0.2362, 0.5642, 1.0};
    const auto est = signal_snr_estimate(p, ch, 100000, 11);
    CHECK(oracle::close_rel(est.gamma1, oracle::kPublishedPowersGamma1, 0.02));
    CHECK(oracle::close_rel(est.gamma2, oracle::kPublishedPowersGamma2, 0.02));
}

TEST_CASE("no relay power means no end-to-end SNR") {
    const auto ch = phased_channel();
    const relay::PowerAllocation p{0.5, 0.5, 0.0, 1.0};
    const auto est = signal_snr_estimate(p, ch, 1000, 1);
    CHECK(est.gamma1 == 0.0);
    CHECK(est.gamma2 == 0.0);
}

TEST_CASE("estimates are deterministic per seed") {
    const auto ch = draw_channel({8, 1.0, 1.0, 1.0}, 3);
    const relay::PowerAllocation p{0.3, 0.3, 0.4, 1.0};
    const auto a = signal_snr_estimate(p, ch, 5000, 9);
    const auto b = signal_snr_estimate(p, ch, 5000, 9);
    CHECK(a.gamma1 == b.gamma1);
    CHECK(a.gamma2 == b.gamma2);
}

TEST_CASE("consistency band over noise levels and lengths" * doctest::description("property")) {
    std::uint64_t seed = 100;
    for (double s2 : {0.01, 0.1, 1.0, 10.0}) {
        for (std::size_t n : {10000u, 40000u}) {
            const auto ch = draw_channel({16, 0.25, 1.0, s2}, seed);
            const relay::PowerAllocation p{0.3, 0.2, 0.5, 1.0};
            const auto want = relay::snr_pair(p, ch);
            const auto got = signal_snr_estimate(p, ch, n, seed + 1);
            const double band = 3.0 * kNoiseSpread / std::sqrt(static_cast<double>(n));
            CAPTURE(s2);
            CAPTURE(n);
            CHECK(std::abs(got.gamma1 - want.gamma1) / want.gamma1 <= band);
            CHECK(std::abs(got.gamma2 - want.gamma2) / want.gamma2 <= band);
            seed += 2;
        }
    }
}

TEST_CASE("zero symbols are rejected") {
    const auto ch = draw_channel({2, 1.0, 1.0, 1.0}, 1);
    CHECK_THROWS_AS(signal_snr_estimate({0.3, 0.3, 0.4, 1.0}, ch, 0, 1), std::invalid_argument);
}

}
