// rateopt: closed-form power allocation for two-way relaying, with grid-search
// verification and Monte Carlo sweeps.
//
//   rateopt solve  [--config s.json] [flags]   JSON report
//   rateopt verify [--config s.json] [flags]   JSON report, exit 5 on FAIL
//   rateopt sweep  [--config s.json] [flags]   CSV
//
// Exit statuses: 0 ok, 1 I/O error, 2 config error, 3 weights too skewed,
// 4 unachievable SNR target, 5 verification FAIL.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rateopt/errors.hpp"
#include "rateopt/report.hpp"
#include "rateopt/scenario.hpp"

namespace {

using namespace rateopt;
using namespace rateopt::cli;

struct Overrides {
    std::string config_path;
    std::optional<std::string> mode;
    std::optional<double> a1, a2, gamma1r, gamma2r, var1, var2, sigma2, pt_db, step, prelog;
    std::optional<std::size_t> nr, trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> pt_grid;
    std::optional<std::vector<std::string>> policies;
    std::string out;
};

void add_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON scenario file");
    cmd->add_option("--mode", o.mode, "common-rate | weighted-sum | framework");
    cmd->add_option("--a1", o.a1, "weight of user 1");
    cmd->add_option("--a2", o.a2, "weight of user 2");
    cmd->add_option("--gamma1r", o.gamma1r, "single-hop SNR Pt||h1||^2/sigma^2 (linear)");
    cmd->add_option("--gamma2r", o.gamma2r, "single-hop SNR Pt||h2||^2/sigma^2 (linear)");
    cmd->add_option("--nr", o.nr, "relay antennas (fading model)");
    cmd->add_option("--var1", o.var1, "per-antenna variance of h1 entries");
    cmd->add_option("--var2", o.var2, "per-antenna variance of h2 entries");
    cmd->add_option("--sigma2", o.sigma2, "noise variance");
    cmd->add_option("--pt-db", o.pt_db, "total power in dB (10 log10 Pt)");
    cmd->add_option("--step", o.step, "grid-search step over (alpha, beta)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per budget");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--prelog", o.prelog, "rate prelog factor");
    cmd->add_option("--pt-grid", o.pt_grid, "sweep budgets in dB, comma separated")
        ->delimiter(',');
    cmd->add_option("--policies", o.policies, "closed-form,grid-search,upa")->delimiter(',');
    cmd->add_option("--out", o.out, "output path (default stdout)");
}

ScenarioConfig build_config(const Overrides& o) {
    ScenarioConfig c = o.config_path.empty() ? ScenarioConfig{} : load_scenario(o.config_path);
    if (o.mode) c.mode = parse_mode(*o.mode);
    if (o.a1) c.a1 = *o.a1;
    if (o.a2) c.a2 = *o.a2;
    if (o.sigma2) c.sigma2 = *o.sigma2;
    if (o.pt_db) c.pt = db_to_linear(*o.pt_db);
    if (o.step) c.step = *o.step;
    if (o.trials) c.trials = *o.trials;
    if (o.seed) c.seed = *o.seed;
    if (o.prelog) c.prelog = *o.prelog;
    if (o.pt_grid) c.pt_grid_db = *o.pt_grid;
    if (o.policies) {
        c.policies.clear();
        for (const auto& p : *o.policies) {
            try {
                c.policies.push_back(verify::parse_policy(p));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("field 'policies': ") + e.what());
            }
        }
    }

    const bool gain_flags = o.gamma1r || o.gamma2r;
    const bool fading_flags = o.nr || o.var1 || o.var2;
    if (gain_flags) {
        ExplicitGains g = c.gains.value_or(ExplicitGains{});
        if (o.gamma1r) g.gamma1r = *o.gamma1r;
        if (o.gamma2r) g.gamma2r = *o.gamma2r;
        c.gains = g;
        if (!fading_flags) c.fading.reset();
    }
    if (fading_flags) {
        FadingSpec f = c.fading.value_or(FadingSpec{});
        if (o.nr) f.nr = *o.nr;
        if (o.var1) f.var1 = *o.var1;
        if (o.var2) f.var2 = *o.var2;
        c.fading = f;
        if (!gain_flags) c.gains.reset();
    }
    c.validate();
    return c;
}

unsigned threads_from_env() {
    const char* v = std::getenv("RATEOPT_THREADS");
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    try {
        std::size_t used = 0;
        const long n = std::stol(v, &used);
        if (used != std::string(v).size() || n < 0) {
            throw std::invalid_argument(v);
        }
        return static_cast<unsigned>(n);
    } catch (const std::exception&) {
        throw ConfigError(std::string("RATEOPT_THREADS must be a nonnegative integer, got '") +
                          v + "'");
    }
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush()) {
        std::cerr << "rateopt: cannot write '" << path << "'\n";
        return kExitIoError;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form weighted-sum-rate and common-rate power allocation"};
    app.require_subcommand(1);
    Overrides o;
    auto* solve = app.add_subcommand("solve", "closed-form powers, SNRs and rate");
    auto* verify = app.add_subcommand("verify", "closed form against grid search");
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo rate sweep as CSV");
    for (auto* cmd : {solve, verify, sweep}) {
        add_flags(cmd, o);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        const auto config = build_config(o);
        const unsigned threads = threads_from_env();
        if (solve->parsed()) {
            return emit(to_json(cmd_solve(config)).dump(2) + "\n", o.out);
        }
        if (verify->parsed()) {
            const auto report = cmd_verify(config, threads);
            const int rc = emit(to_json(report).dump(2) + "\n", o.out);
            if (rc != kExitOk) {
                return rc;
            }
            return report.pass ? kExitOk : kExitVerifyFail;
        }
        std::ostringstream csv;
        cmd_sweep(config, csv, threads);
        return emit(csv.str(), o.out);
    } catch (const ConfigError& e) {
        std::cerr << "rateopt: config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const WeightTooSkewed& e) {
        std::cerr << "rateopt: " << e.what() << '\n';
        return kExitWeightTooSkewed;
    } catch (const Unachievable& e) {
        std::cerr << "rateopt: " << e.what() << '\n';
        return kExitUnachievable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rateopt: config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}
