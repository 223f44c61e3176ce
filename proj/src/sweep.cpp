#include "rateopt/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "compensated_sum.hpp"
#include "parallel.hpp"

namespace rateopt::verify {

std::string_view to_string(Policy p) noexcept {
    switch (p) {
    case Policy::ClosedForm:
        return "closed-form";
    case Policy::GridSearch:
        return "grid-search";
    case Policy::Upa:
        return "upa";
    }
    return "unknown";
}

Policy parse_policy(std::string_view name) {
    for (auto p : {Policy::ClosedForm, Policy::GridSearch, Policy::Upa}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

const PolicySeries& SweepResult::of(Policy p) const {
    for (const auto& s : series) {
        if (s.policy == p) {
            return s;
        }
    }
    throw std::out_of_range("policy '" + std::string(to_string(p)) + "' not in sweep");
}

double policy_rate(Policy policy, const SweepConfig& cfg, const relay::ChannelState& ch,
                   double pt) {
    switch (policy) {
    case Policy::Upa:
        return rate_of(cfg.objective, relay::snr_pair(upa_allocation(pt), ch), cfg.prelog);
    case Policy::GridSearch: {
        const auto r = grid_search(cfg.objective, ch, pt, cfg.grid_step);
        return rate_of(cfg.objective, r.best_snrs, cfg.prelog);
    }
    case Policy::ClosedForm:
        if (const auto* w = std::get_if<WeightedObjective>(&cfg.objective)) {
            const auto target = relay::weighted_optimal_snrs(w->a1, w->a2,
                                                             relay::effective_gains(ch, pt));
            const auto powers = relay::recover_powers(target, ch, pt, relay::kMembershipTol);
            return rate_of(cfg.objective, relay::snr_pair(powers, ch), cfg.prelog);
        }
        return rate_of(cfg.objective, relay::snr_pair(relay::common_rate_powers(ch, pt), ch),
                       cfg.prelog);
    }
    throw std::logic_error("unhandled policy");
}

SweepResult monte_carlo_sweep(const SweepConfig& cfg) {
    if (cfg.pt_db.empty()) {
        throw std::invalid_argument("sweep needs at least one budget");
    }
    if (cfg.trials == 0) {
        throw std::invalid_argument("sweep needs at least one trial");
    }
    if (cfg.policies.empty()) {
        throw std::invalid_argument("sweep needs at least one policy");
    }
    cfg.model.validate();
    if (std::find(cfg.policies.begin(), cfg.policies.end(), Policy::GridSearch) !=
        cfg.policies.end()) {
        grid_intervals(cfg.grid_step);
    }

    SweepResult out;
    out.pt_db = cfg.pt_db;
    out.trials = cfg.trials;
    out.seed = cfg.master_seed;
    for (double db : cfg.pt_db) {
        out.pt.push_back(std::pow(10.0, db / 10.0));
    }

    const std::size_t budgets = cfg.pt_db.size();
    const std::size_t npol = cfg.policies.size();
    // rates[(b * trials + t) * npol + k]
    std::vector<double> rates(budgets * cfg.trials * npol);
    parallel_for(budgets * cfg.trials, cfg.threads, [&](std::size_t job) {
        const std::size_t b = job / cfg.trials;
        const std::size_t t = job % cfg.trials;
        const auto ch = draw_channel(cfg.model, mix_seed(cfg.master_seed, b, t));
        for (std::size_t k = 0; k < npol; ++k) {
            rates[job * npol + k] = policy_rate(cfg.policies[k], cfg, ch, out.pt[b]);
        }
    });

    const double n = static_cast<double>(cfg.trials);
    for (std::size_t k = 0; k < npol; ++k) {
        PolicySeries series;
        series.policy = cfg.policies[k];
        for (std::size_t b = 0; b < budgets; ++b) {
            CompensatedSum sum;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                sum.add(rates[(b * cfg.trials + t) * npol + k]);
            }
            const double mean = sum.value() / n;
            CompensatedSum sq;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const double d = rates[(b * cfg.trials + t) * npol + k] - mean;
                sq.add(d * d);
            }
            const double var = cfg.trials > 1 ? sq.value() / (n - 1.0) : 0.0;
            series.mean.push_back(mean);
            series.std_error.push_back(std::sqrt(var / n));
        }
        out.series.push_back(std::move(series));
    }
    return out;
}

namespace {

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "pt_db,policy,mean_rate,stderr,trials,seed\n";
    for (std::size_t b = 0; b < result.pt_db.size(); ++b) {
        for (const auto& s : result.series) {
            out << fmt9(result.pt_db[b]) << ',' << to_string(s.policy) << ','
                << fmt9(s.mean[b]) << ',' << fmt9(s.std_error[b]) << ',' << result.trials << ','
                << result.seed << '\n';
        }
    }
}

} // namespace rateopt::verify
