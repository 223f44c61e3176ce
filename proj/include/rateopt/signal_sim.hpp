#pragma once

#include <cstddef>
#include <cstdint>

#include "rateopt/relay.hpp"

namespace rateopt::verify {

/// Symbol-level simulation of one two-way relay exchange per symbol.
///
/// Both users send unit-energy QPSK symbols; the relay observes
/// y_r = sqrt(P1) h1 x1 + sqrt(P2) h2 x2 + n_r, combines along h2 (for U1) or
/// h1 (for U2), and retransmits along conj(h1) or conj(h2) with amplitude gain
/// k = sqrt(Pr / (P1 ||h1||^2 + P2 ||h2||^2 + sigma^2)). Each user removes its
/// own relayed symbol. The estimate is (mean |desired term|^2) /
/// (mean |residual after removing the desired term|^2) per user.
relay::SnrPair signal_snr_estimate(const relay::PowerAllocation& p, const relay::ChannelState& ch,
                                   std::size_t symbols, std::uint64_t seed);

} // namespace rateopt::verify
