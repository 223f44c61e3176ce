#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rateopt/fading.hpp"
#include "rateopt/oracle.hpp"

namespace rateopt::verify {

enum class Policy { ClosedForm, GridSearch, Upa };

std::string_view to_string(Policy p) noexcept;
/// Accepts "closed-form", "grid-search", "upa".
Policy parse_policy(std::string_view name);

struct SweepConfig {
    FadingModel model;
    std::vector<double> pt_db;
    std::size_t trials = 1000;
    std::vector<Policy> policies{Policy::ClosedForm, Policy::GridSearch, Policy::Upa};
    Objective objective = MaxMinObjective{};
    /// Rate prelog for the common rate (weighted objectives carry their own).
    double prelog = relay::kDefaultPrelog;
    double grid_step = 0.01;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
};

struct PolicySeries {
    Policy policy = Policy::ClosedForm;
    std::vector<double> mean;
    std::vector<double> std_error;
};

struct SweepResult {
    std::vector<double> pt_db;
    std::vector<double> pt;
    std::vector<PolicySeries> series;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    const PolicySeries& of(Policy p) const;
};

/// Rate of `policy` on one channel realization at budget pt.
///
/// The closed-form policy in weighted mode throws WeightTooSkewed or
/// Unachievable when the weighted optimum is not an achievable SNR pair.
double policy_rate(Policy policy, const SweepConfig& cfg, const relay::ChannelState& ch,
                   double pt);

/// Channel for trial t at budget index b is draw_channel(model,
/// mix_seed(master_seed, b, t)). Output is independent of cfg.threads.
SweepResult monte_carlo_sweep(const SweepConfig& cfg);

/// Header `pt_db,policy,mean_rate,stderr,trials,seed`, one row per
/// (budget, policy), numbers with 9 significant digits.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

} // namespace rateopt::verify
