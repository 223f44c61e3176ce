#pragma once

// Two-way relaying through an N_r-antenna relay with MRC transmit weights.
//
// Slot 1: both users transmit to the relay. Slots 2 and 3: the relay forwards
// the amplified mixture to U1 and to U2. Every function here depends on the
// channel only through ||h1||^2, ||h2||^2 and the common noise variance.

#include <complex>
#include <cstddef>
#include <vector>

#include "rateopt/framework.hpp"

namespace rateopt::relay {

using cvec = std::vector<std::complex<double>>;

/// Reciprocal channels h1 (U1 <-> relay) and h2 (U2 <-> relay) plus the
/// AWGN variance shared by every hop.
class ChannelState {
public:
    ChannelState(cvec h1, cvec h2, double sigma2);

    /// Channel with the given squared norms, spread evenly over `nr` antennas.
    static ChannelState from_gains(double norm1_sq, double norm2_sq, double sigma2,
                                   std::size_t nr = 1);

    const cvec& h1() const noexcept { return h1_; }
    const cvec& h2() const noexcept { return h2_; }
    double sigma2() const noexcept { return sigma2_; }
    std::size_t nr() const noexcept { return h1_.size(); }
    double norm1_sq() const noexcept { return norm1_sq_; }
    double norm2_sq() const noexcept { return norm2_sq_; }

private:
    cvec h1_;
    cvec h2_;
    double sigma2_;
    double norm1_sq_;
    double norm2_sq_;
};

/// Transmit powers of U1, U2 and the relay under the total budget pt.
///
/// (alpha, beta) view: p1 = alpha*beta*pt, p2 = (1-alpha)*beta*pt,
/// pr = (1-beta)*pt.
struct PowerAllocation {
    double p1 = 0.0;
    double p2 = 0.0;
    double pr = 0.0;
    double pt = 1.0;

    /// Validates nonnegativity and p1+p2+pr <= pt (1 + 1e-12).
    static PowerAllocation make(double p1, double p2, double pr, double pt);
    static PowerAllocation from_alpha_beta(double alpha, double beta, double pt);

    double total() const noexcept { return p1 + p2 + pr; }
    double beta() const noexcept;
    double alpha() const noexcept;
};

struct SnrPair {
    double gamma1 = 0.0; ///< SNR at U1 (decoding x2)
    double gamma2 = 0.0; ///< SNR at U2 (decoding x1)
};

/// Single-hop SNRs pt*||h_i||^2/sigma^2 at full budget.
struct EffectiveGains {
    double gamma1r = 0.0;
    double gamma2r = 0.0;
};

/// Default rate prelog (rates are reported as prelog * log2(1 + snr)).
inline constexpr double kDefaultPrelog = 0.5;

/// Closed-form end-to-end SNRs from raw norms. Hot path for the grid oracle.
inline SnrPair snr_from_norms(double p1, double p2, double pr, double n1, double n2,
                              double sigma2) noexcept {
    const double num = n1 * n2 * pr / sigma2;
    SnrPair s;
    s.gamma1 = p2 * num / ((p1 + pr) * n1 + p2 * n2 + sigma2);
    s.gamma2 = p1 * num / ((p2 + pr) * n2 + p1 * n1 + sigma2);
    return s;
}

SnrPair snr_pair(const PowerAllocation& p, const ChannelState& ch);

EffectiveGains effective_gains(const ChannelState& ch, double pt);

/// K = g1 g2 / (sqrt(g1+1) + sqrt(g2+1))^2: every achievable pair has
/// gamma1 + gamma2 <= K.
double snr_sum_budget(const EffectiveGains& g);

/// beta = 1/2 and alpha = sqrt(g2+1) / (sqrt(g1+1) + sqrt(g2+1)); balances
/// both SNRs at K/2.
PowerAllocation common_rate_powers(const ChannelState& ch, double pt);

/// Optimal alpha in closed form, written so that g1 == g2 is not a 0/0.
double common_rate_alpha(const EffectiveGains& g);

/// Weighted-sum-rate optimal SNRs. Throws WeightTooSkewed when a component
/// would be negative.
SnrPair weighted_optimal_snrs(double a1, double a2, const EffectiveGains& g);

inline constexpr double kRecoverTol = 1e-8;

/// Finds powers with p1+p2+pr = pt whose SNRs match `target` within `tol`
/// per component. Throws Unachievable otherwise.
PowerAllocation recover_powers(const SnrPair& target, const ChannelState& ch, double pt,
                               double tol = kRecoverTol);

double weighted_sum_rate(const SnrPair& s, double a1, double a2,
                         double prelog = kDefaultPrelog);

double common_rate(const SnrPair& s, double prelog = kDefaultPrelog);

inline constexpr double kMembershipTol = 1e-6;

/// Achievable SNR pairs (gamma1, gamma2); declared bound b=(1,1), K.
framework::FeasibleRegion relay_feasible_region(const ChannelState& ch, double pt,
                                                double tol = kMembershipTol);

/// Same region in shifted coordinates X_i = 1 + gamma_i; bound b=(1,1), 2+K.
framework::FeasibleRegion relay_shifted_region(const ChannelState& ch, double pt,
                                               double tol = kMembershipTol);

} // namespace rateopt::relay
