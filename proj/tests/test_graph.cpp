#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "cagl/graph.hpp"
#include "test_util.hpp"

using namespace cagl;

namespace {

graph triangle_graph() {
    graph g;
    for (node_id i = 1; i <= 3; ++i) g.add_node(i);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(1, 3);
    return g;
}

graph rectangle_diag_graph() {
    graph g;
    for (node_id i = 1; i <= 4; ++i) g.add_node(i);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(1, 4);
    g.add_edge(1, 3);
    return g;
}

/// Full degree+triangle snapshot, for involution and oracle checks.
std::map<node_id, std::pair<std::size_t, std::uint64_t>> snapshot(const graph& g) {
    std::map<node_id, std::pair<std::size_t, std::uint64_t>> s;
    g.for_each_node([&](node_id id) { s[id] = {g.degree(id), g.triangles(id)}; });
    return s;
}

void check_against_bruteforce(const graph& g) {
    g.for_each_node([&](node_id id) {
        CHECK(g.triangles(id) == triangle_count_bruteforce(g, id));
        CHECK(g.degree(id) == g.neighbors(id).size());
    });
}

} // namespace

TEST_CASE("node ids are 1-based, sequential and never reused") {
    graph g;
    CHECK(g.add_node() == 1);
    CHECK(g.add_node() == 2);
    g.add_node(5);
    CHECK(g.add_node() == 6); // allocation continues past explicit ids
    CHECK(g.node_count() == 4);
    CHECK(g.max_node_id() == 6);

    g.remove_node(2);
    CHECK(!g.has_node(2));
    CHECK_THROWS_AS(g.add_node(2), error); // retired forever
    CHECK(g.add_node() == 7);

    CHECK_THROWS_AS(g.add_node(0), error);
    CHECK_THROWS_AS(g.add_node(5), error); // still present
}

TEST_CASE("add_edge maintains degrees and triangle counts") {
    graph g = triangle_graph();
    for (node_id i = 1; i <= 3; ++i) {
        CHECK(g.degree(i) == 2);
        CHECK(g.triangles(i) == 1);
    }
    CHECK(g.edge_count() == 3);

    g = rectangle_diag_graph();
    CHECK(g.triangles(1) == 2);
    CHECK(g.triangles(2) == 1);
    CHECK(g.triangles(3) == 2);
    CHECK(g.triangles(4) == 1);
    CHECK(g.degree(1) == 3);
    CHECK(g.degree(2) == 2);

    // add_edge returns the number of triangles the edge closes
    g.add_node(5);
    CHECK(g.add_edge(5, 1) == 0);
    CHECK(g.add_edge(5, 3) == 1); // common neighbor 1
    CHECK(g.triangles(5) == 1);
}

TEST_CASE("edge insert/remove is an exact involution") {
    rng_t rng(1234);
    graph g = test_util::random_graph(12, 0.4, rng);
    auto before = snapshot(g);
    std::size_t edges_before = g.edge_count();

    // pick one absent pair and one present edge
    node_id au = 0, av = 0;
    for (node_id u = 1; u <= 12 && au == 0; ++u)
        for (node_id v = u + 1; v <= 12; ++v)
            if (!g.has_edge(u, v)) {
                au = u;
                av = v;
                break;
            }
    REQUIRE(au != 0);

    std::size_t closed = g.add_edge(au, av);
    std::size_t opened = g.remove_edge(au, av);
    CHECK(closed == opened);
    CHECK(snapshot(g) == before);
    CHECK(g.edge_count() == edges_before);

    auto e = g.edge_at(edges_before / 2);
    opened = g.remove_edge(e.first, e.second);
    closed = g.add_edge(e.first, e.second);
    CHECK(closed == opened);
    CHECK(snapshot(g) == before);
}

TEST_CASE("incremental triangle counts match brute force under random churn") {
    rng_t rng(99);
    graph g;
    for (node_id i = 1; i <= 6; ++i) g.add_node(i);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(1, 3);

    std::vector<std::pair<node_id, node_id>> present = {{1, 2}, {2, 3}, {1, 3}};
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int op = 0; op < 400; ++op) {
        double roll = unif(rng);
        auto ids = g.node_ids();
        if (roll < 0.45) { // add a random missing edge
            std::vector<std::pair<node_id, node_id>> missing;
            for (std::size_t a = 0; a < ids.size(); ++a)
                for (std::size_t b = a + 1; b < ids.size(); ++b)
                    if (!g.has_edge(ids[a], ids[b])) missing.emplace_back(ids[a], ids[b]);
            if (missing.empty()) continue;
            auto e = missing[rng() % missing.size()];
            g.add_edge(e.first, e.second);
        } else if (roll < 0.75) { // remove a random edge
            if (g.edge_count() == 0) continue;
            auto e = g.edge_at(rng() % g.edge_count());
            g.remove_edge(e.first, e.second);
        } else if (roll < 0.9) { // add a node wired to up to 2 targets
            node_id id = g.add_node();
            for (node_id tgt : ids)
                if (rng() % ids.size() < 2 && tgt != id && !g.has_edge(id, tgt))
                    g.add_edge(id, tgt);
        } else { // remove a node
            if (g.node_count() <= 3) continue;
            g.remove_node(ids[rng() % ids.size()]);
        }
        if (op % 5 == 0) check_against_bruteforce(g);
    }
    check_against_bruteforce(g);
}

TEST_CASE("remove_node cleans incident edges and retires the id") {
    graph g = rectangle_diag_graph();
    std::size_t former_degree = g.remove_node(1);
    CHECK(former_degree == 3);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2); // 2-3 and 3-4 survive
    CHECK(!g.has_node(1));
    CHECK(!g.has_edge(1, 2));
    CHECK(g.has_edge(2, 3));
    CHECK(g.triangles(2) == 0);
    CHECK(g.triangles(3) == 0);
    CHECK_THROWS_AS(g.degree(1), error);
    CHECK_THROWS_AS((void)g.neighbors(1), error);
}

TEST_CASE("touched lists cover every node whose degree or triangles changed") {
    rng_t rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        graph g = test_util::random_graph(10, 0.45, rng, true);
        auto before = snapshot(g);
        graph::touched_list touched;

        int kind = trial % 3;
        if (kind == 0) {
            node_id u = 0, v = 0;
            for (node_id a = 1; a <= 10 && u == 0; ++a)
                for (node_id b = a + 1; b <= 10; ++b)
                    if (!g.has_edge(a, b)) {
                        u = a;
                        v = b;
                        break;
                    }
            if (u == 0) continue;
            g.add_edge(u, v, &touched);
        } else if (kind == 1) {
            auto e = g.edge_at(rng() % g.edge_count());
            g.remove_edge(e.first, e.second, &touched);
        } else {
            g.remove_node(static_cast<node_id>(1 + rng() % 10), &touched);
        }

        auto after = snapshot(g);
        std::sort(touched.begin(), touched.end());
        for (const auto& [id, stats] : before) {
            bool changed = after.count(id) == 0 || after[id] != stats;
            if (changed) CHECK(std::binary_search(touched.begin(), touched.end(), id));
        }
    }
}

TEST_CASE("clustering coefficient definition") {
    graph g = triangle_graph();
    CHECK(clustering_coefficient(g, 1) == 1.0);

    g = rectangle_diag_graph();
    CHECK(clustering_coefficient(g, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(clustering_coefficient(g, 2) == 1.0);

    graph path;
    path.add_node(1);
    path.add_node(2);
    path.add_node(3);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(clustering_coefficient(path, 2) == 0.0);
    CHECK(clustering_coefficient(path, 1) == 0.0); // degree 1
}

TEST_CASE("edge precondition violations throw typed errors") {
    graph g = triangle_graph();
    CHECK_THROWS_AS(g.add_edge(1, 1), error);
    CHECK_THROWS_AS(g.add_edge(1, 2), error);   // duplicate
    CHECK_THROWS_AS(g.add_edge(1, 9), error);   // unknown node
    CHECK_THROWS_AS(g.remove_edge(1, 9), error);
    g.add_node(4);
    CHECK_THROWS_AS(g.remove_edge(1, 4), error); // both present, no edge

    try {
        g.add_edge(2, 2);
        FAIL("expected a self-loop error");
    } catch (const error& e) {
        CHECK(e.code() == errc::self_loop);
    }
}

TEST_CASE("edge_at stays dense and consistent under swap-removal") {
    rng_t rng(5);
    graph g = test_util::random_graph(9, 0.5, rng);
    while (g.edge_count() > 0) {
        auto e = g.edge_at(rng() % g.edge_count());
        g.remove_edge(e.first, e.second);
        for (std::size_t i = 0; i < g.edge_count(); ++i) {
            auto [u, v] = g.edge_at(i);
            CHECK(g.has_edge(u, v));
        }
    }
    CHECK_THROWS_AS(g.edge_at(0), error);
}

TEST_CASE("edge list round trip") {
    rng_t rng(31);
    graph g = test_util::random_graph(8, 0.4, rng, true);
    std::ostringstream out;
    write_edge_list(g, out);

    std::istringstream in(out.str());
    graph h = read_edge_list(in);
    CHECK(h.node_count() == g.node_count());
    CHECK(h.edge_count() == g.edge_count());
    g.for_each_node([&](node_id id) {
        CHECK(h.degree(id) == g.degree(id));
        CHECK(h.triangles(id) == g.triangles(id));
    });
}

TEST_CASE("edge list parser rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_edge_list(in);
    };
    CHECK_THROWS_AS(parse("1 2\n1 2\n"), error);   // duplicate edge
    CHECK_THROWS_AS(parse("3 3\n"), error);        // self loop
    CHECK_THROWS_AS(parse("1\n"), error);          // missing endpoint
    CHECK_THROWS_AS(parse("1 2 3\n"), error);      // trailing field
    CHECK_THROWS_AS(parse("0 2\n"), error);        // ids are 1-based
    CHECK_THROWS_AS(parse("a b\n"), error);        // not numbers

    graph g = parse("# comment\n\n1 2 # inline\n2 3\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
}
