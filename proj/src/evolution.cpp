#include "cagl/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace cagl {

namespace {

graph complete_graph(int n) {
    graph g;
    for (int i = 1; i <= n; ++i) g.add_node(static_cast<node_id>(i));
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            g.add_edge(static_cast<node_id>(u), static_cast<node_id>(v));
    return g;
}

graph cycle4(bool with_diagonal) {
    graph g;
    for (int i = 1; i <= 4; ++i) g.add_node(static_cast<node_id>(i));
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(1, 4);
    if (with_diagonal) g.add_edge(1, 3);
    return g;
}

} // namespace

initial_graph_spec initial_graph_spec::parse(const std::string& text) {
    initial_graph_spec spec;
    if (text == "triangle") {
        spec.kind = initial_kind::triangle;
    } else if (text == "rectangle") {
        spec.kind = initial_kind::rectangle;
    } else if (text == "rectangle_diag") {
        spec.kind = initial_kind::rectangle_diag;
    } else if (text == "icosahedron_full") {
        spec.kind = initial_kind::icosahedron_full;
    } else if (text.rfind("complete:", 0) == 0) {
        spec.kind = initial_kind::complete;
        try {
            spec.complete_order = std::stoi(text.substr(9));
        } catch (const std::exception&) {
            raise(errc::invalid_config, "bad complete-graph order in \"" + text + "\"");
        }
        if (spec.complete_order < 2)
            raise(errc::invalid_config, "complete-graph order must be at least 2");
    } else if (text.rfind("file:", 0) == 0) {
        spec.kind = initial_kind::file;
        spec.path = text.substr(5);
        if (spec.path.empty())
            raise(errc::invalid_config, "file: initial graph needs a path");
    } else {
        raise(errc::invalid_config, "unknown initial graph \"" + text + "\"");
    }
    return spec;
}

std::string initial_graph_spec::to_string() const {
    switch (kind) {
    case initial_kind::triangle: return "triangle";
    case initial_kind::rectangle: return "rectangle";
    case initial_kind::rectangle_diag: return "rectangle_diag";
    case initial_kind::icosahedron_full: return "icosahedron_full";
    case initial_kind::complete: return "complete:" + std::to_string(complete_order);
    case initial_kind::file: return "file:" + path;
    }
    return "?";
}

graph init_graph(const initial_graph_spec& spec) {
    switch (spec.kind) {
    case initial_kind::triangle: return complete_graph(3);
    case initial_kind::rectangle: return cycle4(false);
    case initial_kind::rectangle_diag: return cycle4(true);
    case initial_kind::icosahedron_full: return complete_graph(12);
    case initial_kind::complete: return complete_graph(spec.complete_order);
    case initial_kind::file: {
        std::ifstream in(spec.path);
        if (!in) raise(errc::parse_error, "cannot open edge list \"" + spec.path + "\"");
        return read_edge_list(in);
    }
    }
    raise(errc::internal_inconsistency, "unhandled initial graph kind");
}

engine::engine(const evolution_config& config) : cfg_(config) { setup(init_graph(config.initial)); }

engine::engine(const evolution_config& config, graph initial) : cfg_(config) {
    setup(std::move(initial));
}

void engine::setup(graph initial) {
    if (cfg_.m0 < 2) raise(errc::invalid_config, "m0 must be at least 2");
    if (cfg_.steps < 0) raise(errc::invalid_config, "steps must be nonnegative");
    if (cfg_.recompute_period < 1) raise(errc::invalid_config, "recompute_period must be positive");
    if (cfg_.attachment.family == attachment_family::clustering) {
        if (cfg_.attachment.alpha < 0.0) raise(errc::invalid_config, "alpha must be nonnegative");
        if (cfg_.attachment.epsilon < 0.0)
            raise(errc::invalid_config, "epsilon must be nonnegative");
    }
    if (!cfg_.forced_targets.empty()) {
        if (cfg_.forced_targets.size() != static_cast<std::size_t>(cfg_.m0))
            raise(errc::invalid_config, "forced_targets must list exactly m0 nodes");
        auto sorted = cfg_.forced_targets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            raise(errc::invalid_config, "forced_targets must be distinct");
    }
    for (node_id id : cfg_.tracked_nodes)
        if (id == 0) raise(errc::invalid_config, "tracked node ids are 1-based");

    g_ = std::move(initial);
    if (g_.node_count() == 0) raise(errc::invalid_config, "initial graph is empty");
    if (g_.max_node_id() != g_.node_count())
        raise(errc::invalid_config, "initial graph must use dense node ids 1..N");
    if (g_.node_count() < static_cast<std::size_t>(cfg_.m0))
        raise(errc::invalid_config, "initial graph smaller than m0");

    v0_ = g_.node_count();
    t_ = 0;
    rng_.seed(cfg_.seed);

    std::size_t id_bound = v0_ + static_cast<std::size_t>(cfg_.steps) + 1;
    alive_.clear();
    alive_.reserve(id_bound);
    alive_pos_.assign(id_bound + 1, 0);
    for (node_id id = 1; id <= v0_; ++id) alive_push(id);

    if (cfg_.forced_targets.empty()) {
        weights_.reset(id_bound);
        weights_.rebuild([&](node_id id) {
            return g_.has_node(id) ? attachment_weight(g_, id, cfg_.attachment) : 0.0;
        });
    }
}

void engine::refresh_weight(node_id id) {
    weights_.set(id, g_.has_node(id) ? attachment_weight(g_, id, cfg_.attachment) : 0.0);
}

void engine::alive_push(node_id id) {
    alive_pos_[id] = static_cast<std::uint32_t>(alive_.size() + 1);
    alive_.push_back(id);
}

void engine::alive_remove(node_id id) {
    std::size_t idx = alive_pos_[id] - 1;
    node_id moved = alive_.back();
    alive_[idx] = moved;
    alive_pos_[moved] = static_cast<std::uint32_t>(idx + 1);
    alive_.pop_back();
    alive_pos_[id] = 0;
}

step_report engine::step() {
    step_report rep;
    const node_id new_id = static_cast<node_id>(v0_ + static_cast<std::size_t>(t_) + 1);

    // Targets come from the pre-step state.
    if (!cfg_.forced_targets.empty()) {
        for (node_id id : cfg_.forced_targets)
            if (!g_.has_node(id))
                raise(errc::unknown_node, "forced target " + std::to_string(id) +
                                              " absent at step " + std::to_string(t_));
        rep.targets = cfg_.forced_targets;
    } else {
        rep.targets = sample_without_replacement(weights_, static_cast<std::size_t>(cfg_.m0), rng_);
    }

    const std::size_t edges_before = g_.edge_count();
    g_.add_node(new_id);
    alive_push(new_id);
    rep.appended = new_id;

    touched_.clear();
    for (node_id tgt : rep.targets) g_.add_edge(new_id, tgt, &touched_);

    switch (cfg_.deletion) {
    case deletion_mode::none:
        break;
    case deletion_mode::uniform_node: {
        // Uniform over the pre-step nodes; the newborn (at the back of
        // alive_) is exempt on its birth step.
        std::size_t pool = alive_.size() - 1;
        if (pool == 0)
            raise(errc::insufficient_eligible_nodes,
                  "node deletion pool empty at step " + std::to_string(t_));
        std::size_t idx = std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng_);
        node_id victim = alive_[idx];
        g_.remove_node(victim, &touched_);
        alive_remove(victim);
        rep.deleted_node = victim;
        break;
    }
    case deletion_mode::uniform_edge: {
        // Post-attachment pool by default; the pre-attachment variant
        // exempts the newborn's fresh edges, which sit at the tail of the
        // dense edge array.
        std::size_t pool =
            cfg_.edge_deletion_pool_pre_attachment ? edges_before : g_.edge_count();
        if (pool == 0)
            raise(errc::insufficient_eligible_nodes,
                  "edge deletion pool empty at step " + std::to_string(t_));
        std::size_t idx = std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng_);
        auto e = g_.edge_at(idx);
        g_.remove_edge(e.first, e.second, &touched_);
        rep.deleted_edge = e;
        break;
    }
    }

    if (cfg_.forced_targets.empty()) {
        std::sort(touched_.begin(), touched_.end());
        touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
        for (node_id id : touched_) refresh_weight(id);
    }

    ++t_;
    if (cfg_.forced_targets.empty() && t_ % cfg_.recompute_period == 0) {
        weights_.rebuild([&](node_id id) {
            return g_.has_node(id) ? attachment_weight(g_, id, cfg_.attachment) : 0.0;
        });
    }
    return rep;
}

trajectory run(const evolution_config& config) {
    trajectory tr;
    tr.config = config;

    engine e(config);
    tr.v0_size = e.v0_size();
    tr.records.reserve(static_cast<std::size_t>(config.steps) + 1);
    tr.records.push_back(e.record());

    for (long s = 0; s < config.steps; ++s) {
        try {
            e.step();
        } catch (const error& err) {
            if (err.code() == errc::internal_inconsistency) throw;
            tr.failure = run_failure{err.code(), err.what(), s};
            break;
        }
        tr.records.push_back(e.record());
        auto& prev = tr.records[tr.records.size() - 2];
        prev.increment = prev.avg_clustering - tr.records.back().avg_clustering;
        if (config.m0 == 2 && config.deletion == deletion_mode::none) {
            auto env = increment_bounds(tr.v0_size, prev.t);
            if (!env.contains(*prev.increment)) {
                assert(!"one-step clustering increment left its envelope");
                ++tr.bound_violations;
            }
        }
    }
    tr.final_graph = e.take_graph();
    return tr;
}

std::uint64_t replica_seed(std::uint64_t base, int replica) {
    return base ^ static_cast<std::uint64_t>(replica);
}

unsigned replicate_threads() {
    if (const char* env = std::getenv("CA_GRAPHLAB_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

replicate_result replicate(const evolution_config& config, int runs, bool tolerate_failures) {
    if (runs < 1) raise(errc::invalid_config, "replicate needs at least one run");

    struct replica_series {
        std::vector<double> delta;
        std::vector<std::vector<double>> degree;
        std::vector<std::vector<double>> triangle;
    };
    const std::size_t n_runs = static_cast<std::size_t>(runs);
    const std::size_t n_tracked = config.tracked_nodes.size();
    std::vector<std::optional<replica_series>> series(n_runs);
    std::vector<std::optional<run_failure>> failed(n_runs);

    auto worker_body = [&](std::size_t r) {
        evolution_config cfg = config;
        cfg.seed = replica_seed(config.seed, static_cast<int>(r));
        try {
            trajectory tr = run(cfg);
            if (tr.failure) {
                failed[r] = tr.failure;
                return;
            }
            replica_series s;
            s.delta.reserve(static_cast<std::size_t>(config.steps));
            for (std::size_t i = 0; i + 1 < tr.records.size(); ++i)
                s.delta.push_back(tr.records[i].increment.value());
            s.degree.assign(n_tracked, {});
            s.triangle.assign(n_tracked, {});
            for (std::size_t k = 0; k < n_tracked; ++k) {
                s.degree[k].reserve(tr.records.size());
                s.triangle[k].reserve(tr.records.size());
                for (const auto& rec : tr.records) {
                    s.degree[k].push_back(static_cast<double>(rec.tracked[k].degree));
                    s.triangle[k].push_back(static_cast<double>(rec.tracked[k].triangles));
                }
            }
            series[r] = std::move(s);
        } catch (const error& err) {
            failed[r] = run_failure{err.code(), err.what(), -1};
        }
    };

    unsigned n_threads = std::min<unsigned>(replicate_threads(), static_cast<unsigned>(n_runs));
    if (n_threads <= 1) {
        for (std::size_t r = 0; r < n_runs; ++r) worker_body(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t r = next.fetch_add(1); r < n_runs; r = next.fetch_add(1))
                    worker_body(r);
            });
        for (auto& th : pool) th.join();
    }

    replicate_result out;
    out.steps = config.steps;
    out.runs_requested = n_runs;
    out.tracked = config.tracked_nodes;
    for (std::size_t r = 0; r < n_runs; ++r)
        if (failed[r]) out.failures.emplace_back(static_cast<int>(r), *failed[r]);

    if (!out.failures.empty() && !tolerate_failures) {
        const auto& [idx, f] = out.failures.front();
        raise(f.code, "replica " + std::to_string(idx) + " failed (" +
                          std::to_string(out.failures.size()) + " of " + std::to_string(runs) +
                          " total): " + f.message);
    }

    const std::size_t n_rows_delta = static_cast<std::size_t>(config.steps);
    const std::size_t n_rows_full = n_rows_delta + 1;
    out.delta_bar.assign(n_rows_delta, 0.0);
    out.degree_bar.assign(n_tracked, std::vector<double>(n_rows_full, 0.0));
    out.triangle_bar.assign(n_tracked, std::vector<double>(n_rows_full, 0.0));

    // Replica-order reduction: the averages never depend on thread count.
    for (std::size_t r = 0; r < n_runs; ++r) {
        if (!series[r]) continue;
        ++out.runs_succeeded;
        const auto& s = *series[r];
        for (std::size_t i = 0; i < n_rows_delta; ++i) out.delta_bar[i] += s.delta[i];
        for (std::size_t k = 0; k < n_tracked; ++k)
            for (std::size_t i = 0; i < n_rows_full; ++i) {
                out.degree_bar[k][i] += s.degree[k][i];
                out.triangle_bar[k][i] += s.triangle[k][i];
            }
    }
    if (out.runs_succeeded == 0)
        raise(errc::insufficient_eligible_nodes, "every replica failed");
    double inv = 1.0 / static_cast<double>(out.runs_succeeded);
    for (auto& x : out.delta_bar) x *= inv;
    for (auto& row : out.degree_bar)
        for (auto& x : row) x *= inv;
    for (auto& row : out.triangle_bar)
        for (auto& x : row) x *= inv;
    return out;
}

} // namespace cagl
