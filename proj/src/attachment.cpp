#include "cagl/attachment.hpp"

#include <algorithm>
#include <cmath>

namespace cagl {

double attachment_weight(const graph& g, node_id id, const attachment_params& params) {
    if (params.family == attachment_family::degree)
        return static_cast<double>(g.degree(id));

    double c = clustering_coefficient(g, id);
    if (params.alpha == 0.0)
        return (c > 0.0 ? 1.0 : 0.0) + params.epsilon; // 0^0 taken as 0
    return std::pow(c, params.alpha) + params.epsilon;
}

bool probability_vector::contains(node_id id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

probability_vector probability_vector::from_probabilities(
    const std::vector<std::pair<node_id, double>>& probs) {
    if (probs.empty()) raise(errc::empty_input, "no probabilities");
    probability_vector dist;
    node_id max_id = 0;
    double total = 0.0;
    for (const auto& [id, p] : probs) {
        if (id == 0) raise(errc::invalid_node_id, "node ids are 1-based");
        if (p < 0.0 || p > 1.0)
            raise(errc::invalid_argument, "probabilities must lie in [0,1]");
        max_id = std::max(max_id, id);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        raise(errc::invalid_argument, "probabilities must sum to 1");
    for (const auto& pr : probs) dist.ids_.push_back(pr.first);
    std::sort(dist.ids_.begin(), dist.ids_.end());
    if (std::adjacent_find(dist.ids_.begin(), dist.ids_.end()) != dist.ids_.end())
        raise(errc::invalid_argument, "duplicate node id");
    dist.p_.assign(max_id + 1, 0.0);
    for (const auto& pr : probs) dist.p_[pr.first] = pr.second;
    for (node_id id : dist.ids_)
        if (dist.p_[id] > 0.0) dist.support_.push_back(id);
    return dist;
}

probability_vector attachment_distribution(const graph& g, const attachment_params& params) {
    if (g.node_count() == 0) raise(errc::empty_graph, "attachment distribution of empty graph");
    if (params.family == attachment_family::clustering && params.alpha < 0.0)
        raise(errc::invalid_argument, "alpha must be nonnegative");
    if (params.family == attachment_family::clustering && params.epsilon < 0.0)
        raise(errc::invalid_argument, "epsilon must be nonnegative");

    probability_vector dist;
    dist.p_.assign(g.max_node_id() + 1, 0.0);
    dist.ids_.reserve(g.node_count());

    double total = 0.0;
    g.for_each_node([&](node_id id) {
        double w = attachment_weight(g, id, params);
        dist.ids_.push_back(id);
        dist.p_[id] = w;
        total += w;
    });
    if (total <= 0.0)
        raise(errc::all_weights_zero, "every node has zero attachment weight");

    for (node_id id : dist.ids_) {
        dist.p_[id] /= total;
        if (dist.p_[id] > 0.0) dist.support_.push_back(id);
    }
    return dist;
}

double pair_probability(const probability_vector& dist, node_id i, node_id j) {
    if (i == j) raise(errc::invalid_argument, "pair probability requires distinct nodes");
    if (!dist.contains(i) || !dist.contains(j))
        raise(errc::unknown_node, "pair probability over nodes outside the distribution");
    double pi = dist.prob(i);
    double pj = dist.prob(j);
    if (pi >= 1.0 || pj >= 1.0)
        raise(errc::degenerate_probability,
              "a single-draw probability of 1 leaves no second target");
    return pi * pj * (2.0 - pi - pj) / ((1.0 - pi) * (1.0 - pj));
}

std::vector<node_id> sample_without_replacement(weight_index& weights, std::size_t m, rng_t& rng) {
    if (weights.positive_count() < m)
        raise(errc::insufficient_eligible_nodes,
              std::to_string(weights.positive_count()) + " nodes have positive weight, need " +
                  std::to_string(m));

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<node_id, double>> drawn;
    drawn.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
        node_id id = weights.sample(unif(rng));
        drawn.emplace_back(id, weights.get(id));
        weights.set(id, 0.0); // winner leaves the pool for the next draw
    }
    std::vector<node_id> targets;
    targets.reserve(m);
    for (auto it = drawn.rbegin(); it != drawn.rend(); ++it) weights.set(it->first, it->second);
    for (const auto& [id, w] : drawn) targets.push_back(id);
    return targets;
}

std::vector<node_id> sample_targets(const graph& g, const attachment_params& params,
                                    std::size_t m0, rng_t& rng) {
    weight_index weights(g.max_node_id());
    g.for_each_node([&](node_id id) { weights.set(id, attachment_weight(g, id, params)); });
    return sample_without_replacement(weights, m0, rng);
}

} // namespace cagl
