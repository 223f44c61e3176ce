#include "rateopt/fading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rateopt::verify {

void FadingModel::validate() const {
    if (nr == 0) {
        throw std::invalid_argument("fading model needs at least one antenna");
    }
    if (!(var1 > 0.0) || !(var2 > 0.0) || !(noise_var > 0.0)) {
        throw std::invalid_argument("fading model variances must be positive");
    }
}

std::complex<double> Rng::complex_gaussian(double variance) noexcept {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t budget_index,
                       std::uint64_t trial_index) noexcept {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ budget_index);
    return splitmix64(h ^ (trial_index * 0xD6E8FEB86659FD93ULL));
}

relay::ChannelState draw_channel(const FadingModel& model, std::uint64_t seed) {
    model.validate();
    Rng rng(seed);
    relay::cvec h1(model.nr);
    relay::cvec h2(model.nr);
    for (auto& z : h1) {
        z = rng.complex_gaussian(model.var1);
    }
    for (auto& z : h2) {
        z = rng.complex_gaussian(model.var2);
    }
    return relay::ChannelState(std::move(h1), std::move(h2), model.noise_var);
}

} // namespace rateopt::verify
