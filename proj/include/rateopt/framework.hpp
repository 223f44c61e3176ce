#pragma once

// Closed-form optimizers over feasible regions bounded by a weighted simplex.
//
// Omega_B(K) = { X >= 0 : sum_i b_i X_i <= K }. When a region Theta sits inside
// Omega_B(K) and contains the candidate point, that point is the global
// optimizer of
//   * the weighted geometric objective prod_i X_i^{a_i}
//     (candidate: theta_i = a_i K / (b_i sum_j a_j)), and
//   * the max-min objective min_i X_i
//     (candidate: Y_i = K / sum_j b_j).
// Neither region needs to be convex.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rateopt::framework {

/// Positive weights a_1..a_n of the weighted geometric objective.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> a);

    std::span<const double> values() const noexcept { return a_; }
    std::size_t size() const noexcept { return a_.size(); }
    double operator[](std::size_t i) const { return a_[i]; }
    double sum() const noexcept { return sum_; }

private:
    std::vector<double> a_;
    double sum_ = 0.0;
};

/// Positive per-coordinate costs b_1..b_n of the simplex constraint.
class CostVector {
public:
    explicit CostVector(std::vector<double> b);

    std::span<const double> values() const noexcept { return b_; }
    std::size_t size() const noexcept { return b_.size(); }
    double operator[](std::size_t i) const { return b_[i]; }
    double sum() const noexcept { return sum_; }

private:
    std::vector<double> b_;
    double sum_ = 0.0;
};

/// The weighted simplex Omega_B(K).
class SimplexBound {
public:
    SimplexBound(CostVector b, double k);

    const CostVector& costs() const noexcept { return b_; }
    double budget() const noexcept { return k_; }
    std::size_t dimension() const noexcept { return b_.size(); }

    /// sum_i b_i x_i
    double load(std::span<const double> x) const;

private:
    CostVector b_;
    double k_;
};

using MembershipFn = std::function<bool(std::span<const double>)>;

/// Black-box achievable set together with the simplex claimed to contain it.
struct FeasibleRegion {
    MembershipFn contains;
    SimplexBound bound;

    /// The region that is the whole simplex.
    static FeasibleRegion whole_simplex(SimplexBound bound);
};

struct FrameworkSolution {
    std::vector<double> point;
    /// Objective at `point`. May be +inf for huge products; use log_objective.
    double objective = 0.0;
    double log_objective = 0.0;
    /// Whether `point` passed the region's membership oracle. Optimality is
    /// only claimed when true.
    bool feasible = false;
};

/// Exact test sum_i b_i x_i <= K. Throws std::invalid_argument on dimension
/// mismatch or negative coordinates.
bool omega_contains(std::span<const double> x, const SimplexBound& bound);

std::vector<double> theta_point(const WeightVector& a, const SimplexBound& bound);

/// Returns sum_i a_i ln x_i. Throws std::invalid_argument if any x_i <= 0.
double log_weighted_geometric_objective(std::span<const double> x, const WeightVector& a);

/// prod_i x_i^{a_i}, evaluated as exp of the log-domain sum.
double weighted_geometric_objective(std::span<const double> x, const WeightVector& a);

FrameworkSolution solve_weighted_product(const FeasibleRegion& region, const WeightVector& a);

FrameworkSolution solve_max_min(const FeasibleRegion& region);

using PointSampler = std::function<std::vector<double>()>;

/// Relative slack allowed when certifying Theta inside Omega_B(K).
inline constexpr double kCertifyRelTol = 1e-9;

/// Draws `trials` points from `sampler`; every point the region accepts must
/// satisfy sum b_i x_i <= K (1 + kCertifyRelTol). Sampled evidence only.
bool certify_region_bound(const FeasibleRegion& region, const PointSampler& sampler,
                          std::size_t trials);

} // namespace rateopt::framework
