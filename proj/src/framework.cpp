#include "rateopt/framework.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rateopt::framework {

namespace {

double checked_positive_sum(const std::vector<double>& v, const char* what) {
    if (v.empty()) {
        throw std::invalid_argument(std::string(what) + " must have at least one entry");
    }
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + " entries must be positive and finite");
        }
    }
    return std::accumulate(v.begin(), v.end(), 0.0);
}

void check_dimension(std::size_t got, std::size_t want) {
    if (got != want) {
        throw std::invalid_argument("dimension mismatch: point has " + std::to_string(got) +
                                    " coordinates, bound has " + std::to_string(want));
    }
}

} // namespace

WeightVector::WeightVector(std::vector<double> a) : a_(std::move(a)) {
    sum_ = checked_positive_sum(a_, "weight vector");
}

CostVector::CostVector(std::vector<double> b) : b_(std::move(b)) {
    sum_ = checked_positive_sum(b_, "cost vector");
}

SimplexBound::SimplexBound(CostVector b, double k) : b_(std::move(b)), k_(k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("simplex budget K must be positive and finite");
    }
}

double SimplexBound::load(std::span<const double> x) const {
    check_dimension(x.size(), dimension());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += b_[i] * x[i];
    }
    return s;
}

FeasibleRegion FeasibleRegion::whole_simplex(SimplexBound bound) {
    auto contains = [bound](std::span<const double> x) { return omega_contains(x, bound); };
    return FeasibleRegion{std::move(contains), std::move(bound)};
}

bool omega_contains(std::span<const double> x, const SimplexBound& bound) {
    check_dimension(x.size(), bound.dimension());
    if (std::any_of(x.begin(), x.end(), [](double v) { return v < 0.0; })) {
        throw std::invalid_argument("simplex points must be nonnegative");
    }
    return bound.load(x) <= bound.budget();
}

std::vector<double> theta_point(const WeightVector& a, const SimplexBound& bound) {
    check_dimension(a.size(), bound.dimension());
    std::vector<double> theta(a.size());
    const double scale = bound.budget() / a.sum();
    for (std::size_t i = 0; i < a.size(); ++i) {
        theta[i] = a[i] * scale / bound.costs()[i];
    }
    return theta;
}

double log_weighted_geometric_objective(std::span<const double> x, const WeightVector& a) {
    check_dimension(x.size(), a.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) {
            throw std::invalid_argument("weighted geometric objective needs positive coordinates");
        }
        s += a[i] * std::log(x[i]);
    }
    return s;
}

double weighted_geometric_objective(std::span<const double> x, const WeightVector& a) {
    return std::exp(log_weighted_geometric_objective(x, a));
}

FrameworkSolution solve_weighted_product(const FeasibleRegion& region, const WeightVector& a) {
    FrameworkSolution sol;
    sol.point = theta_point(a, region.bound);
    if (std::any_of(sol.point.begin(), sol.point.end(), [](double v) { return !(v > 0.0); })) {
        throw std::logic_error("theta point has a non-positive coordinate");
    }
    sol.log_objective = log_weighted_geometric_objective(sol.point, a);
    sol.objective = std::exp(sol.log_objective);
    sol.feasible = region.contains(sol.point);
    return sol;
}

FrameworkSolution solve_max_min(const FeasibleRegion& region) {
    const auto& bound = region.bound;
    const double level = bound.budget() / bound.costs().sum();
    FrameworkSolution sol;
    sol.point.assign(bound.dimension(), level);
    sol.objective = level;
    sol.log_objective = std::log(level);
    sol.feasible = region.contains(sol.point);
    return sol;
}

bool certify_region_bound(const FeasibleRegion& region, const PointSampler& sampler,
                          std::size_t trials) {
    const double limit = region.bound.budget() * (1.0 + kCertifyRelTol);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto x = sampler();
        if (region.contains(x) && region.bound.load(x) > limit) {
            return false;
        }
    }
    return true;
}

} // namespace rateopt::framework
