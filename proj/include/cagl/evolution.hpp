#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cagl/attachment.hpp"
#include "cagl/graph.hpp"
#include "cagl/metrics.hpp"
#include "cagl/weight_index.hpp"

namespace cagl {

/// What, if anything, is deleted uniformly at random after each
/// attachment: nothing, one node (with its incident edges), or one edge.
enum class deletion_mode { none, uniform_node, uniform_edge };

enum class initial_kind { triangle, rectangle, rectangle_diag, icosahedron_full, complete, file };

/// Seed graph selector. Text forms: "triangle", "rectangle",
/// "rectangle_diag", "icosahedron_full", "complete:N", "file:PATH".
struct initial_graph_spec {
    initial_kind kind = initial_kind::triangle;
    int complete_order = 0; // for kind::complete
    std::string path;       // for kind::file

    static initial_graph_spec parse(const std::string& text);
    std::string to_string() const;
};

struct evolution_config {
    attachment_params attachment;
    int m0 = 2;    // edges brought by each new node
    long steps = 0;
    deletion_mode deletion = deletion_mode::none;
    initial_graph_spec initial;
    std::uint64_t seed = 1;
    std::vector<node_id> tracked_nodes;
    long recompute_period = 4096; // full weight-index rebuild cadence

    /// Non-empty: every step attaches to exactly these nodes instead of
    /// sampling (must list m0 distinct present nodes). Closed-form
    /// trajectories in tests are driven this way.
    std::vector<node_id> forced_targets;

    /// Uniform edge deletion normally draws from the edge set after the
    /// step's attachments. Setting this draws from the pre-attachment
    /// edges instead (the new node's fresh edges are exempt).
    bool edge_deletion_pool_pre_attachment = false;
};

/// Per-step trace of what the engine did.
struct step_report {
    node_id appended = 0;
    std::vector<node_id> targets;
    std::optional<node_id> deleted_node;
    std::optional<std::pair<node_id, node_id>> deleted_edge;
};

struct run_failure {
    errc code = errc::internal_inconsistency;
    std::string message;
    long at_step = 0;
};

/// Full recorded evolution. `records[s]` captures time t = s; increments
/// are filled for every record but the last. When a run stops early (e.g.
/// the eligible-target pool dries up) `failure` is set and the trajectory
/// holds everything up to the failing step.
struct trajectory {
    evolution_config config;
    std::size_t v0_size = 0;
    std::vector<metrics_record> records;
    graph final_graph;
    std::size_t bound_violations = 0; // envelope check; two-target, no deletion only
    std::optional<run_failure> failure;
};

graph init_graph(const initial_graph_spec& spec);

/// Stepwise evolution: at step t the graph gains node v0+t+1 attached to
/// m0 distinct existing nodes drawn without replacement under the
/// configured weight family, then the optional deletion applies. Weights
/// are maintained incrementally and rebuilt exactly every
/// recompute_period steps.
class engine {
public:
    explicit engine(const evolution_config& config);
    engine(const evolution_config& config, graph initial);

    step_report step();

    const graph& state() const noexcept { return g_; }
    long t() const noexcept { return t_; }
    std::size_t v0_size() const noexcept { return v0_; }
    rng_t& rng() noexcept { return rng_; }

    metrics_record record() const { return make_record(t_, g_, cfg_.tracked_nodes); }
    graph take_graph() { return std::move(g_); }

private:
    void setup(graph initial);
    void refresh_weight(node_id id);
    void alive_push(node_id id);
    void alive_remove(node_id id);

    evolution_config cfg_;
    graph g_;
    std::size_t v0_ = 0;
    long t_ = 0;
    rng_t rng_;
    weight_index weights_;            // unused when targets are forced
    std::vector<node_id> alive_;      // for O(1) uniform node deletion
    std::vector<std::uint32_t> alive_pos_; // id -> index+1 in alive_
    graph::touched_list touched_;
    std::uniform_real_distribution<double> unif01_{0.0, 1.0};
};

trajectory run(const evolution_config& config);

/// Replica-averaged series from `runs` independent evolutions with
/// derived seeds (base seed XOR replica index, so replica 0 reproduces
/// the single run).
struct replicate_result {
    long steps = 0;
    std::size_t runs_requested = 0;
    std::size_t runs_succeeded = 0;
    std::vector<double> delta_bar;                  // t = 0..steps-1
    std::vector<node_id> tracked;
    std::vector<std::vector<double>> degree_bar;    // [tracked index][t = 0..steps]
    std::vector<std::vector<double>> triangle_bar;  // [tracked index][t = 0..steps]
    std::vector<std::pair<int, run_failure>> failures; // (replica, what happened)
};

std::uint64_t replica_seed(std::uint64_t base, int replica);

/// Worker cap for replicate: CA_GRAPHLAB_THREADS when set and positive,
/// else hardware concurrency.
unsigned replicate_threads();

/// Runs `runs` replicas (thread pool, deterministic replica-order
/// reduction). A failing replica aborts the whole call unless
/// tolerate_failures, in which case averages cover the successes and the
/// failures are listed in the result.
replicate_result replicate(const evolution_config& config, int runs,
                           bool tolerate_failures = false);

} // namespace cagl
