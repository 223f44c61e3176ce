#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rateopt/framework.hpp"
#include "rateopt/oracle.hpp"
#include "rateopt/scenario.hpp"

namespace rateopt::cli {

/// Process exit statuses of the command-line tool.
enum ExitStatus : int {
    kExitOk = 0,
    kExitIoError = 1,
    kExitConfigError = 2,
    kExitWeightTooSkewed = 3,
    kExitUnachievable = 4,
    kExitVerifyFail = 5,
};

struct ClosedFormReport {
    relay::PowerAllocation powers;
    /// Closed-form SNRs; `rate` is computed from these.
    relay::SnrPair snrs;
    /// SNRs that `powers` actually produce.
    relay::SnrPair achieved_snrs;
    /// min SNR (common-rate) or weighted rate in bits (weighted-sum).
    double objective = 0.0;
    double rate = 0.0;
    bool feasible = false;
};

struct FrameworkReport {
    framework::FrameworkSolution weighted_product;
    framework::FrameworkSolution max_min;
};

struct Deltas {
    double objective = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double pr = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct RunReport {
    ScenarioConfig config;
    std::optional<ClosedFormReport> closed_form;
    std::optional<FrameworkReport> framework;
    std::optional<verify::GridSearchResult> oracle;
    double oracle_rate = 0.0;
    /// closed form minus oracle
    std::optional<Deltas> deltas;
    double tolerance = 0.0;
    bool pass = true;
    double closed_form_ms = 0.0;
    double oracle_ms = 0.0;
};

nlohmann::json to_json(const RunReport& r);

/// Modifies the closed-form result before comparison; tests use it to
/// corrupt the closed form on purpose.
using ClosedFormHook = std::function<void(ClosedFormReport&)>;

ClosedFormReport solve_closed_form(const ScenarioConfig& config);

RunReport cmd_solve(const ScenarioConfig& config);

/// Closed form against grid search at config.step. Fails when the closed-form
/// objective is below the grid objective by more than
/// max(1e-6, |grid objective| * step).
RunReport cmd_verify(const ScenarioConfig& config, unsigned threads = 1,
                     const ClosedFormHook& hook = {});

verify::SweepConfig sweep_config(const ScenarioConfig& config, unsigned threads);

/// Runs the Monte Carlo sweep and writes its CSV to `out`.
verify::SweepResult cmd_sweep(const ScenarioConfig& config, std::ostream& out,
                              unsigned threads = 1);

} // namespace rateopt::cli
