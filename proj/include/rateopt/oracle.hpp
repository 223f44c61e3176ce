#pragma once

// Brute-force and finite-difference checks of the relay closed forms.

#include <cstdint>
#include <variant>

#include "rateopt/relay.hpp"

namespace rateopt::verify {

/// Maximize min(gamma1, gamma2). Grid objective is in SNR units.
struct MaxMinObjective {};

/// Maximize prelog * (a1 log2(1+gamma1) + a2 log2(1+gamma2)), in bits.
struct WeightedObjective {
    double a1 = 1.0;
    double a2 = 1.0;
    double prelog = relay::kDefaultPrelog;
};

using Objective = std::variant<MaxMinObjective, WeightedObjective>;

double evaluate(const Objective& objective, const relay::SnrPair& s);

/// Rate in bits/channel use for the SNR pair under this objective's rate
/// definition (common rate for max-min).
double rate_of(const Objective& objective, const relay::SnrPair& s,
               double prelog = relay::kDefaultPrelog);

struct GridSearchResult {
    double best_alpha = 0.0;
    double best_beta = 0.0;
    relay::PowerAllocation best_powers;
    relay::SnrPair best_snrs;
    double objective = 0.0;
    double step = 0.0;
};

/// Number of grid intervals for `step`; 1/step must be an integer.
int grid_intervals(double step);

/// Exhaustive search over (alpha, beta) in {0, step, ..., 1}^2. Ties keep the
/// smallest beta, then the smallest alpha. `threads` = 0 uses all cores; the
/// result does not depend on it.
GridSearchResult grid_search(const Objective& objective, const relay::ChannelState& ch, double pt,
                             double step = 0.001, unsigned threads = 1);

/// Uniform split Pt/3 to each node.
relay::PowerAllocation upa_allocation(double pt);

struct StationarityResidual {
    double d_alpha = 0.0;
    double d_beta = 0.0;
    double value = 0.0; ///< gamma1 + gamma2 at the evaluation point
};

/// Central differences of gamma1 + gamma2 over (alpha, beta) at the
/// common-rate optimum (alpha_opt, 1/2).
StationarityResidual stationarity_check(const relay::ChannelState& ch, double pt,
                                        double h = 1e-6);

/// Grid maximum of gamma1 + gamma2.
double sum_budget_via_grid(const relay::ChannelState& ch, double pt, double step,
                           unsigned threads = 1);

/// 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested) noexcept;

} // namespace rateopt::verify
