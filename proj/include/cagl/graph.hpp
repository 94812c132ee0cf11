#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cagl/error.hpp"

namespace cagl {

/// Node ids are 1-based and never reused: once a node is removed its id
/// stays retired for the lifetime of the graph.
using node_id = std::uint32_t;

/// Dynamic undirected simple graph with degrees and per-node triangle
/// counts maintained incrementally under edge/node insertion and removal.
///
/// Every mutator optionally reports the set of nodes whose degree or
/// triangle count changed, so callers that cache node-derived quantities
/// (e.g. attachment weights) can update only what moved.
class graph {
public:
    using touched_list = std::vector<node_id>;

    /// Adds a node under the smallest never-used id and returns it.
    node_id add_node();

    /// Adds a node under an explicit id. The id must be positive and never
    /// used before (fresh ids only; retired ids are rejected).
    void add_node(node_id id);

    /// Inserts edge {u,v}; returns the number of triangles it closes
    /// (= common neighbors of u and v at insertion time).
    std::size_t add_edge(node_id u, node_id v, touched_list* touched = nullptr);

    /// Removes edge {u,v}; returns the number of triangles it destroys.
    /// Exact inverse of add_edge.
    std::size_t remove_edge(node_id u, node_id v, touched_list* touched = nullptr);

    /// Removes a node together with all incident edges; returns its former
    /// degree. The id is retired and will never be handed out again.
    std::size_t remove_node(node_id id, touched_list* touched = nullptr);

    bool has_node(node_id id) const noexcept;
    bool has_edge(node_id u, node_id v) const noexcept;

    std::size_t degree(node_id id) const;
    std::uint64_t triangles(node_id id) const;
    const std::unordered_set<node_id>& neighbors(node_id id) const;

    std::size_t node_count() const noexcept { return n_nodes_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Largest id ever used (0 when the graph never held a node).
    node_id max_node_id() const noexcept {
        return slots_.empty() ? 0 : static_cast<node_id>(slots_.size() - 1);
    }

    /// Edge by dense index, for uniform edge sampling. Order is
    /// deterministic given the mutation history but otherwise unspecified.
    std::pair<node_id, node_id> edge_at(std::size_t index) const;

    /// Visits present nodes in ascending id order.
    template <class F>
    void for_each_node(F&& f) const {
        for (node_id id = 1; id < slots_.size(); ++id)
            if (slots_[id].present) f(id);
    }

    std::vector<node_id> node_ids() const;

private:
    struct slot {
        bool used = false;    // id was handed out at some point
        bool present = false; // currently alive
        std::uint64_t triangles = 0;
        std::unordered_set<node_id> adj;
    };

    static std::uint64_t edge_key(node_id u, node_id v) noexcept {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    const slot& checked(node_id id) const;
    slot& checked(node_id id);

    std::vector<slot> slots_{slot{}}; // slot 0 unused; ids are 1-based
    std::vector<std::pair<node_id, node_id>> edges_;
    std::unordered_map<std::uint64_t, std::size_t> edge_index_;
    std::size_t n_nodes_ = 0;
};

/// c_i = 2*tri(i) / (k_i * (k_i - 1)); zero when k_i <= 1.
double clustering_coefficient(const graph& g, node_id id);

/// Recounts triangles at a node from adjacency alone (no incremental
/// counters involved); quadratic in the degree. Test oracle + audits.
std::size_t triangle_count_bruteforce(const graph& g, node_id id);

/// Reads a graph from an edge-list stream: one "u v" pair per line,
/// whitespace separated, 1-based ids, '#' starts a comment. Nodes appear
/// implicitly through their edges; self loops and repeated edges are
/// rejected. `isolated` lists extra nodes to create beyond the edges.
graph read_edge_list(std::istream& in, const std::vector<node_id>& isolated = {});

void write_edge_list(const graph& g, std::ostream& out);

} // namespace cagl
