#include "rateopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "parallel.hpp"

namespace rateopt::verify {

namespace {

struct RowBest {
    double value = -std::numeric_limits<double>::infinity();
    int alpha_index = -1;
};

// Scans the (n+1)^2 grid row by row (rows are beta). Rows are combined in
// order with a strict comparison so the smallest (beta, alpha) wins ties.
template <class Eval>
std::pair<int, int> scan_grid(int n, unsigned threads, Eval eval) {
    std::vector<RowBest> rows(static_cast<std::size_t>(n) + 1);
    parallel_for(rows.size(), threads, [&](std::size_t j) {
        const double beta = static_cast<double>(j) / n;
        RowBest best;
        for (int i = 0; i <= n; ++i) {
            const double v = eval(static_cast<double>(i) / n, beta);
            if (v > best.value) {
                best = {v, i};
            }
        }
        rows[j] = best;
    });
    int best_row = 0;
    for (std::size_t j = 1; j < rows.size(); ++j) {
        if (rows[j].value > rows[best_row].value) {
            best_row = static_cast<int>(j);
        }
    }
    return {rows[best_row].alpha_index, best_row};
}

} // namespace

double evaluate(const Objective& objective, const relay::SnrPair& s) {
    if (const auto* w = std::get_if<WeightedObjective>(&objective)) {
        return relay::weighted_sum_rate(s, w->a1, w->a2, w->prelog);
    }
    return std::min(s.gamma1, s.gamma2);
}

double rate_of(const Objective& objective, const relay::SnrPair& s, double prelog) {
    if (const auto* w = std::get_if<WeightedObjective>(&objective)) {
        return relay::weighted_sum_rate(s, w->a1, w->a2, w->prelog);
    }
    return relay::common_rate(s, prelog);
}

int grid_intervals(double step) {
    if (!(step > 0.0) || step > 1.0) {
        throw std::invalid_argument("grid step must lie in (0, 1]");
    }
    const double n = std::round(1.0 / step);
    if (std::abs(n * step - 1.0) > 1e-9) {
        throw std::invalid_argument("grid step must divide 1 evenly");
    }
    return static_cast<int>(n);
}

GridSearchResult grid_search(const Objective& objective, const relay::ChannelState& ch, double pt,
                             double step, unsigned threads) {
    const int n = grid_intervals(step);
    const double n1 = ch.norm1_sq();
    const double n2 = ch.norm2_sq();
    const double s2 = ch.sigma2();
    auto eval = [&](double alpha, double beta) {
        const auto s = relay::snr_from_norms(alpha * beta * pt, (1.0 - alpha) * beta * pt,
                                             (1.0 - beta) * pt, n1, n2, s2);
        return evaluate(objective, s);
    };
    const auto [i, j] = scan_grid(n, threads, eval);

    GridSearchResult r;
    r.step = step;
    r.best_alpha = static_cast<double>(i) / n;
    r.best_beta = static_cast<double>(j) / n;
    r.best_powers = relay::PowerAllocation::from_alpha_beta(r.best_alpha, r.best_beta, pt);
    r.best_snrs = relay::snr_pair(r.best_powers, ch);
    r.objective = eval(r.best_alpha, r.best_beta);
    return r;
}

relay::PowerAllocation upa_allocation(double pt) {
    if (!(pt > 0.0)) {
        throw std::invalid_argument("total power must be positive");
    }
    const double third = pt / 3.0;
    return relay::PowerAllocation{third, third, pt - 2.0 * third, pt};
}

StationarityResidual stationarity_check(const relay::ChannelState& ch, double pt, double h) {
    if (!(h > 0.0) || h >= 0.25) {
        throw std::invalid_argument("finite-difference step must lie in (0, 0.25)");
    }
    auto f = [&](double alpha, double beta) {
        const auto s = relay::snr_from_norms(alpha * beta * pt, (1.0 - alpha) * beta * pt,
                                             (1.0 - beta) * pt, ch.norm1_sq(), ch.norm2_sq(),
                                             ch.sigma2());
        return s.gamma1 + s.gamma2;
    };
    const double alpha = relay::common_rate_alpha(relay::effective_gains(ch, pt));
    const double beta = 0.5;
    StationarityResidual r;
    r.value = f(alpha, beta);
    r.d_alpha = (f(alpha + h, beta) - f(alpha - h, beta)) / (2.0 * h);
    r.d_beta = (f(alpha, beta + h) - f(alpha, beta - h)) / (2.0 * h);
    return r;
}

double sum_budget_via_grid(const relay::ChannelState& ch, double pt, double step,
                           unsigned threads) {
    const int n = grid_intervals(step);
    auto eval = [&](double alpha, double beta) {
        const auto s = relay::snr_from_norms(alpha * beta * pt, (1.0 - alpha) * beta * pt,
                                             (1.0 - beta) * pt, ch.norm1_sq(), ch.norm2_sq(),
                                             ch.sigma2());
        return s.gamma1 + s.gamma2;
    };
    const auto [i, j] = scan_grid(n, threads, eval);
    return eval(static_cast<double>(i) / n, static_cast<double>(j) / n);
}

unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace rateopt::verify
