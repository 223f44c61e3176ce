#pragma once

// Seeded channel generation.
//
// PRNG contract:
//   * engine: std::mt19937_64 seeded with the 64-bit seed;
//   * uniform: top 53 bits of one engine output scaled by 2^-53, in [0, 1);
//   * complex Gaussian CN(0, v): Box-Muller on (u1, u2) with u1 = 1 - uniform()
//     and u2 = uniform(); real = r cos(2 pi u2), imag = r sin(2 pi u2),
//     r = sqrt(-v ln u1), so each component has variance v/2.
//   * per-trial seeds come from mix_seed (splitmix64 finalizer chain).
// Streams are reproducible for a given build; they are not meant to match
// other languages bit for bit.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

#include "rateopt/relay.hpp"

namespace rateopt::verify {

/// i.i.d. Rayleigh fading: h1 entries CN(0, var1), h2 entries CN(0, var2).
struct FadingModel {
    std::size_t nr = 1;
    double var1 = 1.0;
    double var2 = 1.0;
    double noise_var = 1.0;

    void validate() const;
};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::complex<double> complex_gaussian(double variance) noexcept;

    std::uint64_t bits() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 output function.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic seed for (budget index, trial index) under a master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t budget_index,
                       std::uint64_t trial_index) noexcept;

relay::ChannelState draw_channel(const FadingModel& model, std::uint64_t seed);

} // namespace rateopt::verify
