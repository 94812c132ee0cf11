#include "cagl/evi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cagl {

ordered_sample ordered_sample::from_values(std::vector<double> values) {
    if (values.empty()) raise(errc::empty_input, "empty sample");
    for (double v : values)
        if (!(v > 0.0))
            raise(errc::invalid_argument, "sample values must be strictly positive");
    std::sort(values.begin(), values.end());
    ordered_sample xs;
    xs.values_ = std::move(values);
    return xs;
}

double ordered_sample::order_stat(std::size_t rank) const {
    if (rank < 1 || rank > values_.size())
        raise(errc::k_out_of_range, "order statistic rank " + std::to_string(rank) +
                                        " outside 1.." + std::to_string(values_.size()));
    return values_[rank - 1];
}

ordered_sample filter_sample(const std::vector<double>& values, double min_exclusive) {
    std::vector<double> kept;
    kept.reserve(values.size());
    for (double v : values)
        if (v > min_exclusive) kept.push_back(v);
    if (kept.empty())
        raise(errc::empty_after_filter, "no values strictly above " + std::to_string(min_exclusive));
    return ordered_sample::from_values(std::move(kept));
}

namespace {

void check_k(std::size_t k, std::size_t n, std::size_t slack) {
    if (k < 1 || k + slack > n)
        raise(errc::k_out_of_range, "k = " + std::to_string(k) + " outside 1.." +
                                        std::to_string(n > slack ? n - slack : 0) + " for n = " +
                                        std::to_string(n));
}

} // namespace

double hill(const ordered_sample& xs, std::size_t k) {
    const std::size_t n = xs.size();
    check_k(k, n, 1);
    const double base = std::log(xs.order_stat(n - k));
    // Summed from the smallest log-excess upward.
    double sum = 0.0;
    for (std::size_t i = k; i >= 1; --i) sum += std::log(xs.order_stat(n - i + 1)) - base;
    return sum / static_cast<double>(k);
}

double moment(const ordered_sample& xs, std::size_t k) {
    const std::size_t n = xs.size();
    check_k(k, n, 1);
    const double base = std::log(xs.order_stat(n - k));
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = k; i >= 1; --i) {
        double ex = std::log(xs.order_stat(n - i + 1)) - base;
        m1 += ex;
        m2 += ex * ex;
    }
    m1 /= static_cast<double>(k);
    m2 /= static_cast<double>(k);
    if (m2 <= 0.0)
        raise(errc::degenerate_denominator, "constant tail: second log-moment vanishes");
    double denom = 1.0 - m1 * m1 / m2;
    if (denom == 0.0) raise(errc::degenerate_denominator, "moment ratio hit 1");
    return m1 + 1.0 - 0.5 / denom;
}

double uh(const ordered_sample& xs, std::size_t k) {
    const std::size_t n = xs.size();
    check_k(k, n, 2); // needs UH_{k+1}, hence X_(n-k-1)
    // hill(i) for i = 1..k+1 via one running sum of top log-values.
    std::vector<double> log_uh(k + 2, 0.0);
    double top_sum = 0.0;
    for (std::size_t i = 1; i <= k + 1; ++i) {
        top_sum += std::log(xs.order_stat(n - i + 1));
        double hill_i = top_sum / static_cast<double>(i) - std::log(xs.order_stat(n - i));
        double uh_i = xs.order_stat(n - i) * hill_i;
        if (!(uh_i > 0.0))
            raise(errc::nonpositive_uh,
                  "UH statistic " + std::to_string(i) + " is not positive");
        log_uh[i] = std::log(uh_i);
    }
    double sum = 0.0;
    for (std::size_t i = k; i >= 1; --i) sum += log_uh[i] - log_uh[k + 1];
    return sum / static_cast<double>(k);
}

double mixed_moment(const ordered_sample& xs, std::size_t k) {
    const std::size_t n = xs.size();
    check_k(k, n, 1);
    const double base_raw = xs.order_stat(n - k);
    const double base = std::log(base_raw);
    double m1 = 0.0, inv_ratio = 0.0;
    for (std::size_t i = k; i >= 1; --i) {
        double top = xs.order_stat(n - i + 1);
        m1 += std::log(top) - base;
        inv_ratio += base_raw / top;
    }
    m1 /= static_cast<double>(k);
    double l1 = 1.0 - inv_ratio / static_cast<double>(k);
    if (l1 == 0.0) raise(errc::degenerate_denominator, "constant tail: ratio statistic vanishes");
    double phi = (m1 - l1) / (l1 * l1);
    double denom = 1.0 + 2.0 * std::min(phi - 1.0, 0.0);
    if (denom == 0.0) raise(errc::degenerate_denominator, "mixed-moment denominator vanished");
    return (phi - 1.0) / denom;
}

const char* estimator_name(evi_estimator est) noexcept {
    switch (est) {
    case evi_estimator::hill: return "hill";
    case evi_estimator::moment: return "moment";
    case evi_estimator::uh: return "uh";
    case evi_estimator::mixed_moment: return "mixed_moment";
    }
    return "?";
}

evi_estimator estimator_from_name(const std::string& name) {
    if (name == "hill") return evi_estimator::hill;
    if (name == "moment") return evi_estimator::moment;
    if (name == "uh") return evi_estimator::uh;
    if (name == "mixed_moment") return evi_estimator::mixed_moment;
    raise(errc::invalid_config, "unknown estimator \"" + name + "\"");
}

std::vector<evi_estimator> all_estimators() {
    return {evi_estimator::hill, evi_estimator::moment, evi_estimator::uh,
            evi_estimator::mixed_moment};
}

std::vector<double> default_s_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
    return grid;
}

std::vector<estimator_result> evi_sweep(const ordered_sample& xs,
                                        const std::vector<evi_estimator>& estimators,
                                        const std::vector<double>& s_grid) {
    std::vector<estimator_result> out;
    out.reserve(estimators.size() * s_grid.size());
    const std::size_t n = xs.size();
    for (evi_estimator est : estimators) {
        for (double s : s_grid) {
            estimator_result cell;
            cell.estimator = est;
            cell.s = s;
            cell.n = n;
            // Tiny nudge so that an exact power (e.g. 100^0.5) is not
            // floored to k-1 by floating-point round-off.
            cell.k = static_cast<std::size_t>(
                std::floor(std::pow(static_cast<double>(n), s) + 1e-9));
            cell.gamma = std::numeric_limits<double>::quiet_NaN();
            try {
                switch (est) {
                case evi_estimator::hill: cell.gamma = hill(xs, cell.k); break;
                case evi_estimator::moment: cell.gamma = moment(xs, cell.k); break;
                case evi_estimator::uh: cell.gamma = uh(xs, cell.k); break;
                case evi_estimator::mixed_moment: cell.gamma = mixed_moment(xs, cell.k); break;
                }
                cell.valid = true;
            } catch (const error& e) {
                cell.valid = false;
                cell.reason = errc_name(e.code());
                cell.gamma = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(std::move(cell));
        }
    }
    return out;
}

} // namespace cagl
