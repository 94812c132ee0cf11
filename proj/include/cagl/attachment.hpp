#pragma once

#include <random>
#include <vector>

#include "cagl/graph.hpp"
#include "cagl/weight_index.hpp"

namespace cagl {

/// All randomness flows through one explicitly seeded generator type.
using rng_t = std::mt19937_64;

/// Weight families for target selection:
///  - clustering: w_i = c_i^alpha + epsilon (alpha > 0), or
///                w_i = 1{c_i > 0} + epsilon (alpha == 0, with 0^0 = 0);
///  - degree:     w_i = k_i (preferential attachment; alpha/epsilon unused).
enum class attachment_family { clustering, degree };

struct attachment_params {
    double alpha = 1.0;
    double epsilon = 0.0;
    attachment_family family = attachment_family::clustering;
};

/// Sampling weight of one node under the given family.
double attachment_weight(const graph& g, node_id id, const attachment_params& params);

/// Normalized single-draw attachment distribution over the present nodes
/// of a graph: P_i = w_i / sum_j w_j.
class probability_vector {
public:
    /// Builds a distribution from explicit (id, probability) pairs —
    /// states handed to the pair machinery directly, without a graph.
    /// Probabilities must be in [0,1] and sum to 1 within 1e-9.
    static probability_vector from_probabilities(
        const std::vector<std::pair<node_id, double>>& probs);

    double prob(node_id id) const {
        return id < p_.size() ? p_[id] : 0.0;
    }
    bool contains(node_id id) const;

    /// All present node ids, ascending.
    const std::vector<node_id>& ids() const noexcept { return ids_; }
    /// Ids with strictly positive probability, ascending.
    const std::vector<node_id>& support() const noexcept { return support_; }
    std::size_t size() const noexcept { return ids_.size(); }

private:
    friend probability_vector attachment_distribution(const graph&, const attachment_params&);
    std::vector<double> p_; // dense, indexed by id
    std::vector<node_id> ids_;
    std::vector<node_id> support_;
};

/// Requires a nonempty graph with at least one positive weight.
probability_vector attachment_distribution(const graph& g, const attachment_params& params);

/// Exact probability that a without-replacement draw of two targets picks
/// exactly the pair {i,j}:
///
///   P({i,j}) = P_i P_j (2 - P_i - P_j) / ((1 - P_i)(1 - P_j))
///
/// (the two draw orders combined). Requires distinct i, j and both
/// single-draw probabilities strictly below 1.
double pair_probability(const probability_vector& dist, node_id i, node_id j);

/// Draws m distinct ids weighted by the index, without replacement:
/// repeated single draws, zeroing each winner's weight. The index is
/// restored before returning. Consumes exactly m uniform variates.
std::vector<node_id> sample_without_replacement(weight_index& weights, std::size_t m, rng_t& rng);

/// Convenience: builds a transient weight index for the graph's present
/// nodes and draws m0 attachment targets.
std::vector<node_id> sample_targets(const graph& g, const attachment_params& params,
                                    std::size_t m0, rng_t& rng);

} // namespace cagl
