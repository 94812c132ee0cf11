#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cagl/attachment.hpp"
#include "cagl/graph.hpp"

namespace cagl {

/// Per-node observables captured for explicitly tracked ids. Tracked ids
/// that are absent (not yet born, or deleted) report all-zero stats.
struct tracked_stats {
    node_id id = 0;
    std::uint64_t degree = 0;
    std::uint64_t triangles = 0;
    double clustering = 0.0;
};

/// One sampled time point of an evolution (or one snapshot window).
struct metrics_record {
    long t = 0;
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    double avg_clustering = 0.0;
    /// delta_t = avg_clustering(t) - avg_clustering(t+1); absent on the
    /// last record of a series.
    std::optional<double> increment;
    std::uint64_t total_triangles = 0;
    std::vector<tracked_stats> tracked;
};

/// Closed interval [lower, upper] that the one-step increment delta_t must
/// satisfy for two-target growth without deletion.
struct increment_envelope {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double delta) const { return delta >= lower && delta <= upper; }
};

/// Mean clustering coefficient over all present nodes.
double avg_clustering(const graph& g);

/// Per-step envelope for delta_t when every new node brings exactly two
/// edges and nothing is deleted:
///   -3/(v0 + t + 1) <= delta_t <= (7/3)/(v0 + t + 1).
/// Holds per realization, for clustering- and degree-driven attachment.
increment_envelope increment_bounds(std::size_t v0_size, long t);

/// Global triangle count: sum of per-node counts divided by 3; raises an
/// internal inconsistency if the sum is not divisible by 3.
std::uint64_t total_triangles(const graph& g);

/// Probability that node i's degree grows in one two-target attachment
/// step, from the single-draw distribution:
///   p1_i = P_i * (1 + sum_{j != i} P_j / (1 - P_j)).
/// Requires every single-draw probability strictly below 1.
double degree_increment_probability(const probability_vector& dist, node_id i);

/// Probability that node i gains a triangle in one two-target attachment
/// step: the pair lands on i and one of its current neighbors,
///   p2_i = sum_{j in adj(i)} P({i,j}).
double triangle_increment_probability(const graph& g, const probability_vector& dist, node_id i);

metrics_record make_record(long t, const graph& g, const std::vector<node_id>& tracked);

} // namespace cagl
