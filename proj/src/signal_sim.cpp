#include "rateopt/signal_sim.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "compensated_sum.hpp"
#include "rateopt/fading.hpp"

namespace rateopt::verify {

namespace {

using cd = std::complex<double>;

cd qpsk(Rng& rng) {
    const auto b = rng.bits();
    const double s = 1.0 / std::sqrt(2.0);
    return {(b & 1u) ? s : -s, (b & 2u) ? s : -s};
}

// Relay forwarding towards one user: combine y_r along `from`, transmit along
// conj(to), and return what that user receives (before its own noise).
cd forward(const relay::cvec& y, const relay::cvec& from, double from_norm, const relay::cvec& to,
           double to_norm, double gain) {
    cd combined{};
    for (std::size_t n = 0; n < y.size(); ++n) {
        combined += std::conj(from[n]) * y[n];
    }
    combined /= from_norm;
    cd received{};
    for (std::size_t n = 0; n < y.size(); ++n) {
        received += to[n] * (gain * combined * std::conj(to[n]) / to_norm);
    }
    return received;
}

} // namespace

relay::SnrPair signal_snr_estimate(const relay::PowerAllocation& p, const relay::ChannelState& ch,
                                   std::size_t symbols, std::uint64_t seed) {
    if (symbols == 0) {
        throw std::invalid_argument("signal simulation needs at least one symbol");
    }
    const auto& h1 = ch.h1();
    const auto& h2 = ch.h2();
    const std::size_t nr = ch.nr();
    const double norm1 = std::sqrt(ch.norm1_sq());
    const double norm2 = std::sqrt(ch.norm2_sq());
    const double sigma2 = ch.sigma2();
    const double gain =
        std::sqrt(p.pr / (p.p1 * ch.norm1_sq() + p.p2 * ch.norm2_sq() + sigma2));
    const double a1 = std::sqrt(p.p1);
    const double a2 = std::sqrt(p.p2);

    // Noise-free responses of each user's link to a unit symbol from either side.
    relay::cvec y(nr);
    auto response = [&](double amp, const relay::cvec& h, const relay::cvec& from,
                        double from_norm, const relay::cvec& to, double to_norm) {
        for (std::size_t n = 0; n < nr; ++n) {
            y[n] = amp * h[n];
        }
        return forward(y, from, from_norm, to, to_norm, gain);
    };
    const cd self1 = response(a1, h1, h2, norm2, h1, norm1);
    const cd want1 = response(a2, h2, h2, norm2, h1, norm1);
    const cd self2 = response(a2, h2, h1, norm1, h2, norm2);
    const cd want2 = response(a1, h1, h1, norm1, h2, norm2);

    Rng rng(seed);
    CompensatedSum sig1, noise1, sig2, noise2;
    for (std::size_t t = 0; t < symbols; ++t) {
        const cd x1 = qpsk(rng);
        const cd x2 = qpsk(rng);
        for (std::size_t n = 0; n < nr; ++n) {
            y[n] = a1 * h1[n] * x1 + a2 * h2[n] * x2 + rng.complex_gaussian(sigma2);
        }
        const cd r1 = forward(y, h2, norm2, h1, norm1, gain) + rng.complex_gaussian(sigma2);
        const cd r2 = forward(y, h1, norm1, h2, norm2, gain) + rng.complex_gaussian(sigma2);

        const cd clean1 = r1 - self1 * x1;
        const cd clean2 = r2 - self2 * x2;
        sig1.add(std::norm(want1 * x2));
        noise1.add(std::norm(clean1 - want1 * x2));
        sig2.add(std::norm(want2 * x1));
        noise2.add(std::norm(clean2 - want2 * x1));
    }
    return {sig1.value() / noise1.value(), sig2.value() / noise2.value()};
}

} // namespace rateopt::verify
