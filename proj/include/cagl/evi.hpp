#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cagl/error.hpp"

namespace cagl {

/// Ascending-sorted positive sample with 1-based order-statistic access:
/// order_stat(r) is X_(r), the r-th smallest value.
class ordered_sample {
public:
    /// Sorts and validates: every value must be strictly positive (the
    /// estimators take logarithms and ratios).
    static ordered_sample from_values(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double order_stat(std::size_t rank) const;
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

/// Keeps the values strictly above `min_exclusive`. Raises when nothing
/// survives: an empty tail sample cannot feed any estimator.
ordered_sample filter_sample(const std::vector<double>& values, double min_exclusive);

/// Tail-index (extreme-value index) estimators from the top k order
/// statistics. All require 1 <= k <= n-1 (uh: k <= n-2).

/// Hill: mean log-excess over X_(n-k). Consistent for gamma > 0 only.
double hill(const ordered_sample& xs, std::size_t k);

/// Moment (Dekkers–Einmahl–de Haan form): valid for any real gamma.
double moment(const ordered_sample& xs, std::size_t k);

/// UH: Hill applied to the sequence UH_i = X_(n-i) * hill(i).
double uh(const ordered_sample& xs, std::size_t k);

/// Mixed moment: combines the Hill mean with the inverse-ratio statistic
///   L = 1 - (1/k) sum X_(n-k)/X_(n-i+1),
/// phi = (hill - L)/L^2, gamma = (phi - 1)/(1 + 2 min(phi - 1, 0)).
double mixed_moment(const ordered_sample& xs, std::size_t k);

enum class evi_estimator { hill, moment, uh, mixed_moment };

const char* estimator_name(evi_estimator est) noexcept;
evi_estimator estimator_from_name(const std::string& name);

struct estimator_result {
    evi_estimator estimator = evi_estimator::hill;
    double s = 0.0;      // fraction exponent: k = floor(n^s)
    std::size_t k = 0;
    std::size_t n = 0;
    double gamma = 0.0;  // NaN when !valid
    bool valid = false;
    std::string reason;  // why the cell is invalid, empty otherwise
};

/// Evaluates each estimator across k = floor(n^s) for every s in the
/// grid. Out-of-range k or estimator-specific degeneracies mark the cell
/// invalid instead of failing the sweep.
std::vector<estimator_result> evi_sweep(const ordered_sample& xs,
                                        const std::vector<evi_estimator>& estimators,
                                        const std::vector<double>& s_grid);

/// s = 0.05, 0.10, ..., 0.95.
std::vector<double> default_s_grid();

std::vector<evi_estimator> all_estimators();

} // namespace cagl
