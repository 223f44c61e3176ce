#include "rateopt/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "rateopt/errors.hpp"
#include "rateopt/sweep.hpp"

namespace rateopt::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

json powers_json(const relay::PowerAllocation& p) {
    return {{"p1", p.p1}, {"p2", p.p2}, {"pr", p.pr}, {"pt", p.pt},
            {"alpha", p.alpha()}, {"beta", p.beta()}};
}

json snrs_json(const relay::SnrPair& s) { return {{"gamma1", s.gamma1}, {"gamma2", s.gamma2}}; }

json solution_json(const framework::FrameworkSolution& s) {
    return {{"point", s.point},
            {"objective", s.objective},
            {"log_objective", s.log_objective},
            {"feasible", s.feasible}};
}

void require_relay_mode(const ScenarioConfig& config, const char* verb) {
    if (config.mode == Mode::Framework) {
        throw ConfigError(std::string("field 'mode': '") + verb +
                          "' needs common-rate or weighted-sum mode");
    }
}

} // namespace

ClosedFormReport solve_closed_form(const ScenarioConfig& config) {
    require_relay_mode(config, "solve");
    const auto ch = config.channel();
    const auto gains = relay::effective_gains(ch, config.pt);
    ClosedFormReport r;
    if (config.mode == Mode::WeightedSum) {
        r.snrs = relay::weighted_optimal_snrs(config.a1, config.a2, gains);
        r.powers = relay::recover_powers(r.snrs, ch, config.pt);
        r.rate = relay::weighted_sum_rate(r.snrs, config.a1, config.a2, config.prelog);
        r.objective = r.rate;
    } else {
        r.powers = relay::common_rate_powers(ch, config.pt);
        const double half = relay::snr_sum_budget(gains) / 2.0;
        r.snrs = {half, half};
        r.rate = relay::common_rate(r.snrs, config.prelog);
        r.objective = half;
    }
    r.achieved_snrs = relay::snr_pair(r.powers, ch);
    r.feasible = true;
    return r;
}

RunReport cmd_solve(const ScenarioConfig& config) {
    config.validate();
    RunReport report;
    report.config = config;
    const auto start = Clock::now();
    if (config.mode == Mode::Framework) {
        const auto& spec = *config.framework;
        const framework::SimplexBound bound(framework::CostVector(spec.costs), spec.budget);
        const auto region = framework::FeasibleRegion::whole_simplex(bound);
        report.framework = FrameworkReport{
            framework::solve_weighted_product(region, framework::WeightVector(spec.weights)),
            framework::solve_max_min(region)};
    } else {
        report.closed_form = solve_closed_form(config);
    }
    report.closed_form_ms = elapsed_ms(start);
    return report;
}

RunReport cmd_verify(const ScenarioConfig& config, unsigned threads, const ClosedFormHook& hook) {
    config.validate();
    require_relay_mode(config, "verify");
    RunReport report;
    report.config = config;

    auto start = Clock::now();
    auto cf = solve_closed_form(config);
    if (hook) {
        hook(cf);
    }
    report.closed_form_ms = elapsed_ms(start);

    const auto ch = config.channel();
    const auto objective = config.objective();
    start = Clock::now();
    const auto grid = verify::grid_search(objective, ch, config.pt, config.step, threads);
    report.oracle_ms = elapsed_ms(start);
    report.oracle_rate = verify::rate_of(objective, grid.best_snrs, config.prelog);

    report.deltas = Deltas{cf.objective - grid.objective,
                           cf.powers.p1 - grid.best_powers.p1,
                           cf.powers.p2 - grid.best_powers.p2,
                           cf.powers.pr - grid.best_powers.pr,
                           cf.snrs.gamma1 - grid.best_snrs.gamma1,
                           cf.snrs.gamma2 - grid.best_snrs.gamma2};
    report.tolerance = std::max(1e-6, std::abs(grid.objective) * config.step);
    report.pass = cf.objective >= grid.objective - report.tolerance;
    report.closed_form = cf;
    report.oracle = grid;
    return report;
}

verify::SweepConfig sweep_config(const ScenarioConfig& config, unsigned threads) {
    config.validate();
    require_relay_mode(config, "sweep");
    if (!config.fading) {
        throw ConfigError("field 'fading': sweep needs a fading channel model");
    }
    verify::SweepConfig s;
    s.model = {config.fading->nr, config.fading->var1, config.fading->var2, config.sigma2};
    s.pt_db = config.pt_grid_db;
    s.trials = config.trials;
    s.policies = config.policies;
    s.objective = config.objective();
    s.prelog = config.prelog;
    s.grid_step = config.step;
    s.master_seed = config.seed;
    s.threads = threads;
    return s;
}

verify::SweepResult cmd_sweep(const ScenarioConfig& config, std::ostream& out, unsigned threads) {
    auto result = verify::monte_carlo_sweep(sweep_config(config, threads));
    verify::write_sweep_csv(result, out);
    return result;
}

json to_json(const RunReport& r) {
    json j;
    j["config"] = to_json(r.config);
    if (r.closed_form) {
        const auto& c = *r.closed_form;
        j["closed_form"] = {{"powers", powers_json(c.powers)},
                            {"snrs", snrs_json(c.snrs)},
                            {"achieved_snrs", snrs_json(c.achieved_snrs)},
                            {"objective", c.objective},
                            {"rate", c.rate},
                            {"feasible", c.feasible}};
    }
    if (r.framework) {
        j["framework"] = {{"weighted_product", solution_json(r.framework->weighted_product)},
                          {"max_min", solution_json(r.framework->max_min)}};
    }
    if (r.oracle) {
        const auto& g = *r.oracle;
        j["oracle"] = {{"alpha", g.best_alpha},   {"beta", g.best_beta},
                       {"powers", powers_json(g.best_powers)},
                       {"snrs", snrs_json(g.best_snrs)},
                       {"objective", g.objective}, {"rate", r.oracle_rate},
                       {"step", g.step}};
    }
    if (r.deltas) {
        const auto& d = *r.deltas;
        j["deltas"] = {{"objective", d.objective}, {"p1", d.p1},         {"p2", d.p2},
                       {"pr", d.pr},               {"gamma1", d.gamma1}, {"gamma2", d.gamma2}};
        j["tolerance"] = r.tolerance;
        j["verdict"] = r.pass ? "PASS" : "FAIL";
    }
    j["timings_ms"] = {{"closed_form", r.closed_form_ms}, {"oracle", r.oracle_ms}};
    return j;
}

} // namespace rateopt::cli
