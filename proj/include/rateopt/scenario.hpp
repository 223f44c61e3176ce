#pragma once

// Scenario files (JSON).
//
//   {
//     "mode": "common-rate" | "weighted-sum" | "framework",
//     "a1": 2, "a2": 1,
//     "gamma1r": 24, "gamma2r": 96,           // explicit channel, or
//     "fading": {"nr": 100, "var1": 0.25, "var2": 1},
//     "sigma2": 1,
//     "pt": 1  |  "pt_db": 0,                 // at most one of the two
//     "step": 0.001, "trials": 2000, "seed": 1, "prelog": 0.5,
//     "pt_grid_db": [0, 5, 10],
//     "policies": ["closed-form", "grid-search", "upa"],
//     "framework": {"weights": [1, 2], "costs": [1, 1], "budget": 4}
//   }
//
// gamma1r/gamma2r are single-hop SNRs Pt ||h_i||^2 / sigma^2 at the scenario's
// Pt. Every field is optional and falls back to the defaults below.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rateopt/relay.hpp"
#include "rateopt/sweep.hpp"

namespace rateopt::cli {

enum class Mode { CommonRate, WeightedSum, Framework };

std::string_view to_string(Mode m) noexcept;
/// Accepts "common-rate", "weighted-sum" and the alias "weighted".
Mode parse_mode(std::string_view name);

struct ExplicitGains {
    double gamma1r = 0.0;
    double gamma2r = 0.0;
    bool operator==(const ExplicitGains&) const = default;
};

struct FadingSpec {
    std::size_t nr = 1;
    double var1 = 1.0;
    double var2 = 1.0;
    bool operator==(const FadingSpec&) const = default;
};

struct FrameworkSpec {
    std::vector<double> weights;
    std::vector<double> costs;
    double budget = 1.0;
    bool operator==(const FrameworkSpec&) const = default;
};

struct ScenarioConfig {
    Mode mode = Mode::CommonRate;
    double a1 = 1.0;
    double a2 = 1.0;
    std::optional<ExplicitGains> gains;
    std::optional<FadingSpec> fading;
    std::optional<FrameworkSpec> framework;
    double sigma2 = 1.0;
    double pt = 1.0;
    double step = 0.001;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    double prelog = relay::kDefaultPrelog;
    std::vector<double> pt_grid_db{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    std::vector<verify::Policy> policies{verify::Policy::ClosedForm, verify::Policy::GridSearch,
                                         verify::Policy::Upa};

    bool operator==(const ScenarioConfig&) const = default;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Channel for solve/verify: explicit gains, or one draw from the fading
    /// model with `seed`.
    relay::ChannelState channel() const;

    verify::Objective objective() const;
};

double db_to_linear(double db);

/// Throws ConfigError on unknown fields or bad types. Does not call
/// validate(); callers apply command-line overrides first.
ScenarioConfig parse_scenario(const nlohmann::json& j);
ScenarioConfig parse_scenario_text(std::string_view text);
ScenarioConfig load_scenario(const std::string& path);

nlohmann::json to_json(const ScenarioConfig& c);

} // namespace rateopt::cli
