#pragma once

#include <cstddef>
#include <vector>

#include "cagl/error.hpp"
#include "cagl/graph.hpp"

namespace cagl {

/// Fenwick-tree index over per-node sampling weights, keyed by node id.
///
/// Supports O(log n) point updates and O(log n) inverse-prefix lookups, so
/// one uniform draw maps to one weighted node selection. Point updates
/// accumulate floating-point drift; rebuild() recomputes the tree exactly
/// and is meant to be called periodically by long-running evolutions.
class weight_index {
public:
    weight_index() = default;
    explicit weight_index(std::size_t capacity) { reset(capacity); }

    /// Discards all weights and re-sizes to ids 1..capacity.
    void reset(std::size_t capacity);

    std::size_t capacity() const noexcept { return cap_; }

    /// Sets the weight of one id (>= 0) and updates the tree incrementally.
    void set(node_id id, double w);

    double get(node_id id) const;

    /// Sum of all stored weights (subject to update drift; see rebuild).
    double total() const { return prefix(cap_); }

    /// Number of ids with strictly positive weight.
    std::size_t positive_count() const noexcept { return positive_; }

    /// Smallest id whose cumulative weight exceeds `target`. Requires at
    /// least one positive weight.
    node_id find_by_prefix(double target) const;

    /// Weighted draw from one uniform variate u in [0,1).
    node_id sample(double u) const { return find_by_prefix(u * total()); }

    /// Recomputes every slot from `weight_of(id)` and rebuilds the tree
    /// exactly in O(capacity).
    template <class F>
    void rebuild(F&& weight_of) {
        positive_ = 0;
        for (std::size_t id = 1; id <= cap_; ++id) {
            double w = weight_of(static_cast<node_id>(id));
            check_weight(w);
            weight_[id] = w;
            if (w > 0.0) ++positive_;
            tree_[id] = w;
        }
        // Standard in-place Fenwick construction.
        for (std::size_t id = 1; id <= cap_; ++id) {
            std::size_t parent = id + (id & (0 - id));
            if (parent <= cap_) tree_[parent] += tree_[id];
        }
    }

private:
    static void check_weight(double w) {
        if (!(w >= 0.0)) raise(errc::invalid_argument, "weights must be nonnegative");
    }

    double prefix(std::size_t id) const {
        double s = 0.0;
        for (; id > 0; id &= id - 1) s += tree_[id];
        return s;
    }

    std::vector<double> tree_;   // 1-based Fenwick array
    std::vector<double> weight_; // current per-id weight
    std::size_t cap_ = 0;
    std::size_t positive_ = 0;
};

} // namespace cagl
