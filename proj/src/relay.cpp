#include "rateopt/relay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rateopt/errors.hpp"

namespace rateopt::relay {

namespace {

double squared_norm(const cvec& h) {
    double s = 0.0;
    for (const auto& z : h) {
        s += std::norm(z);
    }
    return s;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

// Levenberg-Marquardt on (alpha, beta) in the unit box. Residual is
// snr(alpha, beta) - target; the Jacobian comes from central differences.
class PowerInverter {
public:
    PowerInverter(const SnrPair& target, const ChannelState& ch, double pt)
        : target_(target), n1_(ch.norm1_sq()), n2_(ch.norm2_sq()), s2_(ch.sigma2()), pt_(pt) {
        goal_ = 1e-13 * (1.0 + std::max(target.gamma1, target.gamma2));
    }

    struct Result {
        std::array<double, 2> x{};
        double max_abs = std::numeric_limits<double>::infinity();
    };

    std::array<double, 2> residual(const std::array<double, 2>& x) const {
        const double alpha = x[0];
        const double beta = x[1];
        const auto s = snr_from_norms(alpha * beta * pt_, (1.0 - alpha) * beta * pt_,
                                      (1.0 - beta) * pt_, n1_, n2_, s2_);
        return {s.gamma1 - target_.gamma1, s.gamma2 - target_.gamma2};
    }

    static double cost(const std::array<double, 2>& r) { return r[0] * r[0] + r[1] * r[1]; }
    static double max_abs(const std::array<double, 2>& r) {
        return std::max(std::abs(r[0]), std::abs(r[1]));
    }

    Result solve(std::array<double, 2> x) const {
        constexpr int kMaxIter = 500;
        auto r = residual(x);
        double c = cost(r);
        double lambda = 1e-3;
        for (int it = 0; it < kMaxIter && max_abs(r) > goal_; ++it) {
            const auto jac = jacobian(x);
            // Normal equations of the 2x2 least-squares step.
            double a00 = jac[0][0] * jac[0][0] + jac[1][0] * jac[1][0];
            double a01 = jac[0][0] * jac[0][1] + jac[1][0] * jac[1][1];
            double a11 = jac[0][1] * jac[0][1] + jac[1][1] * jac[1][1];
            const double g0 = jac[0][0] * r[0] + jac[1][0] * r[1];
            const double g1 = jac[0][1] * r[0] + jac[1][1] * r[1];
            const double d0 = std::max(a00, 1e-12);
            const double d1 = std::max(a11, 1e-12);

            bool accepted = false;
            while (lambda < 1e14) {
                const double m00 = a00 + lambda * d0;
                const double m11 = a11 + lambda * d1;
                const double det = m00 * m11 - a01 * a01;
                if (det > 0.0) {
                    std::array<double, 2> trial{
                        std::clamp(x[0] - (m11 * g0 - a01 * g1) / det, 0.0, 1.0),
                        std::clamp(x[1] - (m00 * g1 - a01 * g0) / det, 0.0, 1.0)};
                    const auto rt = residual(trial);
                    const double ct = cost(rt);
                    if (ct < c) {
                        const double moved = std::max(std::abs(trial[0] - x[0]),
                                                      std::abs(trial[1] - x[1]));
                        x = trial;
                        r = rt;
                        c = ct;
                        lambda = std::max(lambda / 3.0, 1e-12);
                        accepted = moved > 1e-16;
                        break;
                    }
                }
                lambda *= 4.0;
            }
            if (!accepted) {
                break;
            }
        }
        return {x, max_abs(r)};
    }

private:
    // jac[i][j] = d r_i / d x_j
    std::array<std::array<double, 2>, 2> jacobian(const std::array<double, 2>& x) const {
        constexpr double h = 1e-7;
        std::array<std::array<double, 2>, 2> jac{};
        for (int j = 0; j < 2; ++j) {
            auto lo = x;
            auto hi = x;
            lo[j] = std::max(0.0, x[j] - h);
            hi[j] = std::min(1.0, x[j] + h);
            const auto rl = residual(lo);
            const auto rh = residual(hi);
            const double span = hi[j] - lo[j];
            jac[0][j] = (rh[0] - rl[0]) / span;
            jac[1][j] = (rh[1] - rl[1]) / span;
        }
        return jac;
    }

    SnrPair target_;
    double n1_;
    double n2_;
    double s2_;
    double pt_;
    double goal_;
};

} // namespace

ChannelState::ChannelState(cvec h1, cvec h2, double sigma2)
    : h1_(std::move(h1)), h2_(std::move(h2)), sigma2_(sigma2) {
    if (h1_.empty() || h1_.size() != h2_.size()) {
        throw std::invalid_argument("channel vectors must be non-empty and of equal length");
    }
    require_positive(sigma2_, "noise variance");
    norm1_sq_ = squared_norm(h1_);
    norm2_sq_ = squared_norm(h2_);
    require_positive(norm1_sq_, "||h1||^2");
    require_positive(norm2_sq_, "||h2||^2");
}

ChannelState ChannelState::from_gains(double norm1_sq, double norm2_sq, double sigma2,
                                      std::size_t nr) {
    require_positive(norm1_sq, "||h1||^2");
    require_positive(norm2_sq, "||h2||^2");
    if (nr == 0) {
        throw std::invalid_argument("antenna count must be at least 1");
    }
    const auto n = static_cast<double>(nr);
    ChannelState ch(cvec(nr, std::sqrt(norm1_sq / n)), cvec(nr, std::sqrt(norm2_sq / n)), sigma2);
    // Keep the requested norms bit-exact rather than the re-summed ones.
    ch.norm1_sq_ = norm1_sq;
    ch.norm2_sq_ = norm2_sq;
    return ch;
}

PowerAllocation PowerAllocation::make(double p1, double p2, double pr, double pt) {
    require_positive(pt, "total power");
    if (p1 < 0.0 || p2 < 0.0 || pr < 0.0) {
        throw std::invalid_argument("powers must be nonnegative");
    }
    if (p1 + p2 + pr > pt * (1.0 + 1e-12)) {
        throw std::invalid_argument("powers exceed the total budget");
    }
    return PowerAllocation{p1, p2, pr, pt};
}

PowerAllocation PowerAllocation::from_alpha_beta(double alpha, double beta, double pt) {
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
        throw std::invalid_argument("alpha and beta must lie in [0, 1]");
    }
    require_positive(pt, "total power");
    const double p1 = alpha * beta * pt;
    const double p2 = (1.0 - alpha) * beta * pt;
    return PowerAllocation{p1, p2, std::max(0.0, pt - p1 - p2), pt};
}

double PowerAllocation::beta() const noexcept { return (p1 + p2) / pt; }

double PowerAllocation::alpha() const noexcept {
    const double users = p1 + p2;
    return users > 0.0 ? p1 / users : 0.5;
}

SnrPair snr_pair(const PowerAllocation& p, const ChannelState& ch) {
    return snr_from_norms(p.p1, p.p2, p.pr, ch.norm1_sq(), ch.norm2_sq(), ch.sigma2());
}

EffectiveGains effective_gains(const ChannelState& ch, double pt) {
    require_positive(pt, "total power");
    return {pt * ch.norm1_sq() / ch.sigma2(), pt * ch.norm2_sq() / ch.sigma2()};
}

double snr_sum_budget(const EffectiveGains& g) {
    if (g.gamma1r < 0.0 || g.gamma2r < 0.0) {
        throw std::invalid_argument("effective gains must be nonnegative");
    }
    const double root_sum = std::sqrt(g.gamma1r + 1.0) + std::sqrt(g.gamma2r + 1.0);
    return g.gamma1r * g.gamma2r / (root_sum * root_sum);
}

double common_rate_alpha(const EffectiveGains& g) {
    const double r1 = std::sqrt(g.gamma1r + 1.0);
    const double r2 = std::sqrt(g.gamma2r + 1.0);
    return r2 / (r1 + r2);
}

PowerAllocation common_rate_powers(const ChannelState& ch, double pt) {
    return PowerAllocation::from_alpha_beta(common_rate_alpha(effective_gains(ch, pt)), 0.5, pt);
}

SnrPair weighted_optimal_snrs(double a1, double a2, const EffectiveGains& g) {
    require_positive(a1, "weight a1");
    require_positive(a2, "weight a2");
    const double k = snr_sum_budget(g);
    const double a = a1 + a2;
    const SnrPair s{(a1 - a2) / a + a1 / a * k, (a2 - a1) / a + a2 / a * k};
    if (s.gamma1 < 0.0 || s.gamma2 < 0.0) {
        throw WeightTooSkewed("weights (" + std::to_string(a1) + ", " + std::to_string(a2) +
                              ") too skewed for SNR budget K=" + std::to_string(k) +
                              ": closed-form SNR would be negative");
    }
    return s;
}

PowerAllocation recover_powers(const SnrPair& target, const ChannelState& ch, double pt,
                               double tol) {
    require_positive(pt, "total power");
    require_positive(tol, "tolerance");
    if (target.gamma1 < 0.0 || target.gamma2 < 0.0) {
        throw std::invalid_argument("target SNRs must be nonnegative");
    }
    const PowerInverter inv(target, ch, pt);

    auto best = inv.solve({0.5, 0.5});
    if (best.max_abs > tol) {
        // Damped Newton stalled; restart from the best points of a coarse grid.
        constexpr int kSeedGrid = 33;
        constexpr std::size_t kSeeds = 4;
        std::vector<std::pair<double, std::array<double, 2>>> seeds;
        for (int i = 0; i < kSeedGrid; ++i) {
            for (int j = 0; j < kSeedGrid; ++j) {
                const std::array<double, 2> x{i / double(kSeedGrid - 1), j / double(kSeedGrid - 1)};
                seeds.emplace_back(PowerInverter::max_abs(inv.residual(x)), x);
            }
        }
        std::partial_sort(seeds.begin(), seeds.begin() + kSeeds, seeds.end(),
                          [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::size_t s = 0; s < kSeeds && best.max_abs > tol; ++s) {
            const auto cand = inv.solve(seeds[s].second);
            if (cand.max_abs < best.max_abs) {
                best = cand;
            }
        }
    }
    if (!(best.max_abs <= tol)) {
        throw Unachievable("SNR pair (" + std::to_string(target.gamma1) + ", " +
                           std::to_string(target.gamma2) +
                           ") not reachable: best residual " + std::to_string(best.max_abs) +
                           " exceeds tolerance " + std::to_string(tol));
    }
    return PowerAllocation::from_alpha_beta(best.x[0], best.x[1], pt);
}

double weighted_sum_rate(const SnrPair& s, double a1, double a2, double prelog) {
    return prelog * (a1 * std::log2(1.0 + s.gamma1) + a2 * std::log2(1.0 + s.gamma2));
}

double common_rate(const SnrPair& s, double prelog) {
    return prelog * std::log2(1.0 + std::min(s.gamma1, s.gamma2));
}

namespace {

framework::FeasibleRegion make_region(const ChannelState& ch, double pt, double tol,
                                      double shift) {
    const double k = snr_sum_budget(effective_gains(ch, pt));
    framework::SimplexBound bound(framework::CostVector({1.0, 1.0}), 2.0 * shift + k);
    auto contains = [ch, pt, tol, shift, k](std::span<const double> x) {
        if (x.size() != 2) {
            throw std::invalid_argument("relay region points are two-dimensional");
        }
        const SnrPair target{x[0] - shift, x[1] - shift};
        if (target.gamma1 < 0.0 || target.gamma2 < 0.0) {
            return false;
        }
        if (target.gamma1 + target.gamma2 > k * (1.0 + 1e-9) + 2.0 * tol) {
            return false;
        }
        try {
            recover_powers(target, ch, pt, tol);
            return true;
        } catch (const Unachievable&) {
            return false;
        }
    };
    return framework::FeasibleRegion{std::move(contains), std::move(bound)};
}

} // namespace

framework::FeasibleRegion relay_feasible_region(const ChannelState& ch, double pt, double tol) {
    return make_region(ch, pt, tol, 0.0);
}

framework::FeasibleRegion relay_shifted_region(const ChannelState& ch, double pt, double tol) {
    return make_region(ch, pt, tol, 1.0);
}

} // namespace rateopt::relay
