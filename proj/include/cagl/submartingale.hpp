#pragma once

#include <cstdint>
#include <vector>

#include "cagl/attachment.hpp"
#include "cagl/evolution.hpp"
#include "cagl/graph.hpp"

namespace cagl {

/// One-state audit of the two-target attachment laws:
///
///  * closed-form degree-increment probabilities p1_i sum to exactly 2
///    and match a full enumeration of all target pairs;
///  * closed-form triangle-increment probabilities p2_i match the same
///    enumeration restricted to pairs containing an existing edge;
///  * pair probabilities over all pairs sum to 1;
///  * the expected one-step gain in the global triangle count,
///    (sum_i p2_i + P(pair adjacent))/3, is nonnegative — the empirical
///    face of the submartingale property of the triangle count;
///  * optional Monte-Carlo replay of the target draw checks empirical
///    frequencies against p1/p2 in z-score units.
///
/// For more than two targets the closed forms do not apply; only the
/// Monte-Carlo means are reported (NaN elsewhere).
struct submartingale_state_probe {
    long t = 0;
    std::size_t n_nodes = 0;
    double sum_p1 = 0.0;
    double pair_total = 0.0;
    double p_adjacent = 0.0;
    double max_p1_discrepancy = 0.0;
    double max_p2_discrepancy = 0.0;
    double min_p1 = 0.0;
    double min_p2 = 0.0;
    double expected_triangle_gain = 0.0;
    long replays = 0;
    double max_degree_z = 0.0;
    double max_triangle_z = 0.0;
    double mc_mean_degree_gain = 0.0;   // should be ~m0 (exactly m0 per replay)
    double mc_mean_triangle_gain = 0.0; // empirical E[triangle-count gain]
};

struct submartingale_report {
    std::vector<submartingale_state_probe> probes;
    double max_p1_discrepancy = 0.0;
    double max_p2_discrepancy = 0.0;
    double max_sum_p1_error = 0.0;    // |sum p1 - 2|
    double max_pair_total_error = 0.0; // |sum pairs - 1|
    double min_p1 = 0.0;
    double min_p2 = 0.0;
    double min_expected_triangle_gain = 0.0;
    double max_degree_z = 0.0;
    double max_triangle_z = 0.0;
};

submartingale_state_probe probe_state(const graph& g, const attachment_params& params,
                                      std::size_t m0, long replays, rng_t& rng);

/// Replays the trajectory's configuration deterministically and probes the
/// state at each requested step (each in [0, steps]). Requires a
/// no-deletion configuration: the closed forms describe pure growth.
submartingale_report submartingale_check(const trajectory& tr, const std::vector<long>& at_steps,
                                         long replays, std::uint64_t replay_seed);

} // namespace cagl
