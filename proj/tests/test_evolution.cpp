#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cagl/evolution.hpp"
#include "cagl/submartingale.hpp"
#include "test_util.hpp"

using namespace cagl;

namespace {

evolution_config base_config(const std::string& initial, long steps, std::uint64_t seed) {
    evolution_config cfg;
    cfg.initial = initial_graph_spec::parse(initial);
    cfg.steps = steps;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("initial graphs have the advertised shape") {
    auto tri = init_graph(initial_graph_spec::parse("triangle"));
    CHECK(tri.node_count() == 3);
    CHECK(tri.edge_count() == 3);

    auto rect = init_graph(initial_graph_spec::parse("rectangle"));
    CHECK(rect.node_count() == 4);
    CHECK(rect.edge_count() == 4);
    CHECK(total_triangles(rect) == 0);

    auto diag = init_graph(initial_graph_spec::parse("rectangle_diag"));
    CHECK(diag.node_count() == 4);
    CHECK(diag.edge_count() == 5);
    CHECK(diag.has_edge(1, 3));

    auto ico = init_graph(initial_graph_spec::parse("icosahedron_full"));
    CHECK(ico.node_count() == 12);
    CHECK(ico.edge_count() == 66);

    auto k5 = init_graph(initial_graph_spec::parse("complete:5"));
    CHECK(k5.node_count() == 5);
    CHECK(k5.edge_count() == 10);

    CHECK_THROWS_AS(initial_graph_spec::parse("complete:1"), error);
    CHECK_THROWS_AS(initial_graph_spec::parse("complete:x"), error);
    CHECK_THROWS_AS(initial_graph_spec::parse("heptagon"), error);
    CHECK_THROWS_AS(initial_graph_spec::parse("file:"), error);
    CHECK_THROWS_AS(init_graph(initial_graph_spec::parse("file:/nonexistent/x.edges")), error);

    // round trip through the text form
    for (const char* text : {"triangle", "rectangle", "rectangle_diag", "icosahedron_full",
                             "complete:7", "file:seed.edges"}) {
        CHECK(initial_graph_spec::parse(text).to_string() == text);
    }
}

TEST_CASE("config validation") {
    auto cfg = base_config("triangle", 10, 1);
    cfg.m0 = 1;
    CHECK_THROWS_AS(run(cfg), error);

    cfg = base_config("triangle", -1, 1);
    CHECK_THROWS_AS(run(cfg), error);

    cfg = base_config("triangle", 10, 1);
    cfg.recompute_period = 0;
    CHECK_THROWS_AS(run(cfg), error);

    cfg = base_config("triangle", 10, 1);
    cfg.attachment.epsilon = -0.1;
    CHECK_THROWS_AS(run(cfg), error);

    cfg = base_config("triangle", 10, 1);
    cfg.forced_targets = {1};
    CHECK_THROWS_AS(run(cfg), error); // must list m0 nodes
    cfg.forced_targets = {1, 1};
    CHECK_THROWS_AS(run(cfg), error); // distinct

    cfg = base_config("complete:2", 10, 1);
    cfg.m0 = 3;
    CHECK_THROWS_AS(run(cfg), error); // initial graph smaller than m0

    // non-dense ids in a file seed are rejected
    auto dir = std::filesystem::temp_directory_path() / "cagl_test_sparse";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "sparse.edges");
        out << "1 2\n2 5\n";
    }
    cfg = base_config("file:" + (dir / "sparse.edges").string(), 5, 1);
    cfg.attachment.epsilon = 0.5;
    try {
        run(cfg);
        FAIL("expected invalid-config for sparse ids");
    } catch (const error& e) {
        CHECK(e.code() == errc::invalid_config);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("forced rectangle growth keeps clustering at exactly zero") {
    // every new node attaches to the non-adjacent corners {1,3}: no
    // triangle can ever form, so the average clustering is identically 0
    auto cfg = base_config("rectangle", 40, 1);
    cfg.forced_targets = {1, 3};
    auto tr = run(cfg);
    REQUIRE(!tr.failure);
    REQUIRE(tr.records.size() == 41);
    for (const auto& rec : tr.records) {
        CHECK(rec.avg_clustering == 0.0);
        if (rec.increment) CHECK(*rec.increment == 0.0);
    }
    CHECK(tr.bound_violations == 0);
    CHECK(total_triangles(tr.final_graph) == 0);
}

TEST_CASE("forced diagonal growth follows the closed-form trajectory") {
    // rectangle + diagonal {1,3}, attaching every new node to {1,3}:
    //   c_1 = c_3 = 2/(t+3), c_2 = c_4 = 1, every new node has c = 1
    //   avg = 4/((t+3)(t+4)) + (t+2)/(t+4)
    auto cfg = base_config("rectangle_diag", 200, 1);
    cfg.forced_targets = {1, 3};
    cfg.tracked_nodes = {1, 2, 5};
    auto tr = run(cfg);
    REQUIRE(!tr.failure);
    REQUIRE(tr.records.size() == 201);

    for (const auto& rec : tr.records) {
        double t = static_cast<double>(rec.t);
        double expected = 4.0 / ((t + 3.0) * (t + 4.0)) + (t + 2.0) / (t + 4.0);
        CHECK(rec.avg_clustering == doctest::Approx(expected).epsilon(1e-12));

        CHECK(rec.tracked[0].clustering == doctest::Approx(2.0 / (t + 3.0)).epsilon(1e-12));
        CHECK(rec.tracked[1].clustering == 1.0);
        if (rec.t >= 1) { // node 5 is born at step 0
            CHECK(rec.tracked[2].degree == 2);
            CHECK(rec.tracked[2].clustering == 1.0);
        } else {
            CHECK(rec.tracked[2].degree == 0);
        }
        if (rec.increment) {
            auto env = increment_bounds(tr.v0_size, rec.t);
            CHECK(env.contains(*rec.increment));
        }
    }
    CHECK(tr.bound_violations == 0);
}

TEST_CASE("same seed reproduces the trajectory, different seed diverges") {
    auto cfg = base_config("triangle", 120, 77);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    auto a = run(cfg);
    auto b = run(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].avg_clustering == b.records[i].avg_clustering);
        CHECK(a.records[i].n_edges == b.records[i].n_edges);
        CHECK(a.records[i].total_triangles == b.records[i].total_triangles);
    }

    cfg.seed = 78;
    auto c = run(cfg);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.records.size(); ++i)
        if (a.records[i].avg_clustering != c.records[i].avg_clustering) any_difference = true;
    CHECK(any_difference);
}

TEST_CASE("per-realization envelope holds for clustering and degree attachment") {
    for (int variant = 0; variant < 2; ++variant) {
        auto cfg = base_config("triangle", 300, 5 + variant);
        cfg.attachment = variant == 0
                             ? attachment_params{1.0, 0.0, attachment_family::clustering}
                             : attachment_params{1.0, 0.0, attachment_family::degree};
        auto tr = run(cfg);
        REQUIRE(!tr.failure);
        CHECK(tr.bound_violations == 0);
        REQUIRE(tr.records.size() == 301);
        for (const auto& rec : tr.records) {
            if (!rec.increment) continue;
            auto env = increment_bounds(tr.v0_size, rec.t);
            CHECK(env.contains(*rec.increment));
        }
    }
}

TEST_CASE("engine-maintained state matches brute force after long runs") {
    auto cfg = base_config("triangle", 400, 3);
    cfg.attachment = {0.5, 0.25, attachment_family::clustering};
    cfg.recompute_period = 64;
    auto tr = run(cfg);
    REQUIRE(!tr.failure);
    const graph& g = tr.final_graph;
    CHECK(g.node_count() == 403);
    CHECK(g.edge_count() == 3 + 2 * 400);
    g.for_each_node([&](node_id id) {
        CHECK(g.triangles(id) == triangle_count_bruteforce(g, id));
    });
}

TEST_CASE("a run that cannot sample records a failure instead of throwing") {
    // rectangle has no triangles: with epsilon = 0 every clustering weight
    // vanishes and the very first target draw must fail
    auto cfg = base_config("rectangle", 10, 1);
    auto tr = run(cfg);
    REQUIRE(tr.failure.has_value());
    CHECK(tr.failure->code == errc::insufficient_eligible_nodes);
    CHECK(tr.failure->at_step == 0);
    CHECK(tr.records.size() == 1);
    CHECK(!tr.records[0].increment.has_value());
    CHECK(tr.final_graph.node_count() == 4); // draw precedes the append
    CHECK(tr.bound_violations == 0);
}

TEST_CASE("deleting a forced target surfaces as a failed run") {
    auto cfg = base_config("rectangle_diag", 50, 3);
    cfg.forced_targets = {1, 3};
    cfg.deletion = deletion_mode::uniform_node;
    auto tr = run(cfg);
    REQUIRE(tr.failure.has_value());
    CHECK(tr.failure->code == errc::unknown_node);
    CHECK(tr.failure->at_step >= 1); // both targets exist at step 0
}

TEST_CASE("uniform node deletion keeps the node count constant") {
    auto cfg = base_config("complete:8", 60, 21);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    cfg.deletion = deletion_mode::uniform_node;

    engine e(cfg);
    for (long s = 0; s < cfg.steps; ++s) {
        graph before = e.state();
        auto rep = e.step();
        REQUIRE(rep.deleted_node.has_value());
        node_id victim = *rep.deleted_node;
        CHECK(victim != rep.appended); // the newborn survives its birth step
        CHECK(before.has_node(victim));

        // |E| gains m0 and loses the victim's post-attachment degree
        std::size_t victim_degree = before.degree(victim);
        bool victim_was_target = false;
        for (node_id t : rep.targets)
            if (t == victim) victim_was_target = true;
        std::size_t expected_edges =
            before.edge_count() + 2 - (victim_degree + (victim_was_target ? 1 : 0));
        CHECK(e.state().edge_count() == expected_edges);
        CHECK(e.state().node_count() == before.node_count()); // +1 new, -1 deleted
        CHECK(!e.state().has_node(victim));
    }
    e.state().for_each_node([&](node_id id) {
        CHECK(e.state().triangles(id) == triangle_count_bruteforce(e.state(), id));
    });
}

TEST_CASE("uniform edge deletion keeps |E| at |E0| + (m0-1) t") {
    for (bool pre_pool : {false, true}) {
        auto cfg = base_config("complete:6", 80, 9);
        cfg.attachment = {1.0, 1.0, attachment_family::clustering};
        cfg.deletion = deletion_mode::uniform_edge;
        cfg.edge_deletion_pool_pre_attachment = pre_pool;

        engine e(cfg);
        std::size_t e0 = e.state().edge_count();
        for (long s = 0; s < cfg.steps; ++s) {
            auto rep = e.step();
            REQUIRE(rep.deleted_edge.has_value());
            if (pre_pool) {
                // the newborn's fresh edges are exempt in this variant
                CHECK(rep.deleted_edge->first != rep.appended);
                CHECK(rep.deleted_edge->second != rep.appended);
            }
            CHECK(e.state().edge_count() == e0 + static_cast<std::size_t>(s + 1));
            CHECK(e.state().node_count() == 6 + static_cast<std::size_t>(s + 1));
        }
        e.state().for_each_node([&](node_id id) {
            CHECK(e.state().triangles(id) == triangle_count_bruteforce(e.state(), id));
        });
    }
}

TEST_CASE("deleted node ids are never handed out again") {
    auto cfg = base_config("complete:6", 120, 4);
    cfg.attachment = {1.0, 1.0, attachment_family::clustering};
    cfg.deletion = deletion_mode::uniform_node;

    engine e(cfg);
    std::vector<node_id> deleted;
    for (long s = 0; s < cfg.steps; ++s) {
        auto rep = e.step();
        CHECK(rep.appended == 6 + static_cast<node_id>(s) + 1); // ids strictly increase
        deleted.push_back(*rep.deleted_node);
        for (node_id v : deleted) CHECK(!e.state().has_node(v));
    }
}

TEST_CASE("replicate: replica 0 reproduces the single run") {
    auto cfg = base_config("triangle", 60, 99);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    cfg.tracked_nodes = {1, 4};

    CHECK(replica_seed(99, 0) == 99);
    auto single = run(cfg);
    auto rep = replicate(cfg, 1);
    CHECK(rep.runs_succeeded == 1);
    REQUIRE(rep.delta_bar.size() == 60);
    for (long t = 0; t < 60; ++t)
        CHECK(rep.delta_bar[t] == *single.records[t].increment);
    for (long t = 0; t <= 60; ++t) {
        CHECK(rep.degree_bar[0][t] == static_cast<double>(single.records[t].tracked[0].degree));
        CHECK(rep.triangle_bar[1][t] ==
              static_cast<double>(single.records[t].tracked[1].triangles));
    }
}

TEST_CASE("replicate averages the per-replica series in replica order") {
    auto cfg = base_config("triangle", 40, 7);
    cfg.attachment = {1.0, 0.25, attachment_family::clustering};
    cfg.tracked_nodes = {2};
    const int runs = 4;

    auto rep = replicate(cfg, runs);
    CHECK(rep.runs_requested == 4);
    CHECK(rep.runs_succeeded == 4);
    CHECK(rep.failures.empty());

    // the same reduction, from independent single runs over derived seeds
    std::vector<trajectory> singles;
    for (int r = 0; r < runs; ++r) {
        auto cfg_r = cfg;
        cfg_r.seed = replica_seed(cfg.seed, r);
        singles.push_back(run(cfg_r));
    }
    for (long t = 0; t < cfg.steps; ++t) {
        double sum = 0.0;
        for (const auto& tr : singles) sum += *tr.records[t].increment;
        CHECK(rep.delta_bar[t] == doctest::Approx(sum / runs).epsilon(1e-15));
    }
    for (long t = 0; t <= cfg.steps; ++t) {
        double sum = 0.0;
        for (const auto& tr : singles)
            sum += static_cast<double>(tr.records[t].tracked[0].degree);
        CHECK(rep.degree_bar[0][t] == doctest::Approx(sum / runs).epsilon(1e-15));
    }
}

TEST_CASE("replicate is deterministic across thread counts") {
    auto cfg = base_config("triangle", 50, 11);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};

    setenv("CA_GRAPHLAB_THREADS", "1", 1);
    auto serial = replicate(cfg, 6);
    setenv("CA_GRAPHLAB_THREADS", "3", 1);
    auto parallel = replicate(cfg, 6);
    unsetenv("CA_GRAPHLAB_THREADS");

    REQUIRE(serial.delta_bar.size() == parallel.delta_bar.size());
    for (std::size_t i = 0; i < serial.delta_bar.size(); ++i)
        CHECK(serial.delta_bar[i] == parallel.delta_bar[i]); // bitwise equal
}

TEST_CASE("replicate propagates replica failures") {
    // epsilon = 0 from a rectangle fails instantly in every replica
    auto cfg = base_config("rectangle", 10, 1);
    CHECK_THROWS_AS(replicate(cfg, 3), error);
    // tolerating failures cannot save a call where every replica failed
    CHECK_THROWS_AS(replicate(cfg, 3, true), error);
}

TEST_CASE("tolerated failures drop the failing replicas from the averages") {
    // forced-target growth with node deletion dies as soon as a forced
    // target is deleted; over a short horizon some seeds survive
    auto cfg = base_config("rectangle_diag", 2, 19);
    cfg.forced_targets = {1, 3};
    cfg.deletion = deletion_mode::uniform_node;
    const int runs = 12;

    auto rep = replicate(cfg, runs, true);
    CHECK(rep.runs_succeeded >= 1);
    CHECK(rep.runs_succeeded < static_cast<std::size_t>(runs));
    CHECK(rep.failures.size() == static_cast<std::size_t>(runs) - rep.runs_succeeded);
    for (const auto& [replica, failure] : rep.failures)
        CHECK(failure.code == errc::unknown_node);

    // hand reduction over the surviving replicas only
    std::vector<double> sum(2, 0.0);
    std::size_t survivors = 0;
    for (int r = 0; r < runs; ++r) {
        auto cfg_r = cfg;
        cfg_r.seed = replica_seed(cfg.seed, r);
        auto tr = run(cfg_r);
        if (tr.failure) continue;
        ++survivors;
        for (long t = 0; t < cfg.steps; ++t) sum[t] += *tr.records[t].increment;
    }
    REQUIRE(survivors == rep.runs_succeeded);
    for (long t = 0; t < cfg.steps; ++t)
        CHECK(rep.delta_bar[t] ==
              doctest::Approx(sum[t] / static_cast<double>(survivors)).epsilon(1e-15));
}

TEST_CASE("attachment-law audit: closed forms match enumeration along a run") {
    auto cfg = base_config("triangle", 40, 2);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    auto tr = run(cfg);
    REQUIRE(!tr.failure);

    auto report = submartingale_check(tr, {0, 5, 10, 20, 40}, 0, 1);
    REQUIRE(report.probes.size() == 5);
    CHECK(report.max_p1_discrepancy <= 1e-12);
    CHECK(report.max_p2_discrepancy <= 1e-12);
    CHECK(report.max_sum_p1_error <= 1e-12);
    CHECK(report.max_pair_total_error <= 1e-10);
    CHECK(report.min_p1 >= 0.0);
    CHECK(report.min_p2 >= 0.0);
    CHECK(report.min_expected_triangle_gain >= 0.0);
    for (const auto& probe : report.probes) {
        CHECK(probe.n_nodes == 3 + static_cast<std::size_t>(probe.t));
        // two-target steps: the expected triangle gain is exactly the
        // probability that the drawn pair is adjacent
        CHECK(probe.expected_triangle_gain == doctest::Approx(probe.p_adjacent).epsilon(1e-12));
    }
}

TEST_CASE("attachment-law audit: Monte-Carlo replay agrees with closed forms") {
    auto cfg = base_config("triangle", 9, 6);
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    auto tr = run(cfg);
    REQUIRE(!tr.failure);

    auto report = submartingale_check(tr, {9}, 20000, 42);
    REQUIRE(report.probes.size() == 1);
    CHECK(report.max_degree_z < 4.0);
    CHECK(report.max_triangle_z < 4.0);
    CHECK(report.probes[0].mc_mean_degree_gain == 2.0);
    CHECK(report.probes[0].mc_mean_triangle_gain >= 0.0);

    // deletion invalidates the pure-growth audit
    auto del_cfg = cfg;
    del_cfg.deletion = deletion_mode::uniform_edge;
    auto del_tr = run(del_cfg);
    REQUIRE(!del_tr.failure);
    CHECK_THROWS_AS(submartingale_check(del_tr, {3}, 0, 1), error);
}

TEST_CASE("more than two targets per step still evolves consistently") {
    auto cfg = base_config("complete:5", 50, 13);
    cfg.m0 = 3;
    cfg.attachment = {1.0, 0.5, attachment_family::clustering};
    auto tr = run(cfg);
    REQUIRE(!tr.failure);
    CHECK(tr.final_graph.node_count() == 55);
    CHECK(tr.final_graph.edge_count() == 10 + 3 * 50);
    CHECK(tr.bound_violations == 0); // envelope audit only applies to m0 = 2
    tr.final_graph.for_each_node([&](node_id id) {
        CHECK(tr.final_graph.triangles(id) == triangle_count_bruteforce(tr.final_graph, id));
    });

    // the three-target probe reports Monte-Carlo means only
    rng_t rng(3);
    auto probe = probe_state(tr.final_graph, cfg.attachment, 3, 500, rng);
    CHECK(probe.mc_mean_degree_gain == 3.0);
    CHECK(std::isnan(probe.sum_p1));
}
