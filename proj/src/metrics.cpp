#include "cagl/metrics.hpp"

#include <algorithm>

namespace cagl {

double avg_clustering(const graph& g) {
    if (g.node_count() == 0) raise(errc::empty_graph, "average clustering of empty graph");
    // Extended precision keeps per-realization envelope checks sharp for
    // long runs (millions of additions in [0,1]).
    long double sum = 0.0L;
    g.for_each_node([&](node_id id) { sum += clustering_coefficient(g, id); });
    return static_cast<double>(sum / static_cast<long double>(g.node_count()));
}

increment_envelope increment_bounds(std::size_t v0_size, long t) {
    double n_next = static_cast<double>(v0_size) + static_cast<double>(t) + 1.0;
    return {-3.0 / n_next, (7.0 / 3.0) / n_next};
}

std::uint64_t total_triangles(const graph& g) {
    std::uint64_t sum = 0;
    g.for_each_node([&](node_id id) { sum += g.triangles(id); });
    if (sum % 3 != 0)
        raise(errc::internal_inconsistency,
              "per-node triangle counts sum to " + std::to_string(sum) +
                  ", not divisible by 3");
    return sum / 3;
}

double degree_increment_probability(const probability_vector& dist, node_id i) {
    if (!dist.contains(i))
        raise(errc::unknown_node, "node " + std::to_string(i) + " outside the distribution");
    double pi = dist.prob(i);
    double other = 0.0;
    for (node_id j : dist.ids()) {
        double pj = dist.prob(j);
        if (pj >= 1.0)
            raise(errc::degenerate_probability,
                  "a single-draw probability of 1 leaves no second target");
        if (j != i) other += pj / (1.0 - pj);
    }
    return pi * (1.0 + other);
}

double triangle_increment_probability(const graph& g, const probability_vector& dist, node_id i) {
    if (!dist.contains(i))
        raise(errc::unknown_node, "node " + std::to_string(i) + " outside the distribution");
    // Ascending neighbor order for a deterministic floating-point sum.
    std::vector<node_id> nbrs(g.neighbors(i).begin(), g.neighbors(i).end());
    std::sort(nbrs.begin(), nbrs.end());
    double p = 0.0;
    for (node_id j : nbrs) p += pair_probability(dist, i, j);
    return p;
}

metrics_record make_record(long t, const graph& g, const std::vector<node_id>& tracked) {
    metrics_record rec;
    rec.t = t;
    rec.n_nodes = g.node_count();
    rec.n_edges = g.edge_count();
    rec.avg_clustering = avg_clustering(g);
    rec.total_triangles = total_triangles(g);
    rec.tracked.reserve(tracked.size());
    for (node_id id : tracked) {
        tracked_stats s;
        s.id = id;
        if (g.has_node(id)) {
            s.degree = g.degree(id);
            s.triangles = g.triangles(id);
            s.clustering = clustering_coefficient(g, id);
        }
        rec.tracked.push_back(s);
    }
    return rec;
}

} // namespace cagl
