#include "cagl/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cagl {

namespace {

void push_touched(graph::touched_list* touched, node_id id) {
    if (touched) touched->push_back(id);
}

} // namespace

const graph::slot& graph::checked(node_id id) const {
    if (id == 0 || id >= slots_.size() || !slots_[id].present)
        raise(errc::unknown_node, "node " + std::to_string(id) + " is not present");
    return slots_[id];
}

graph::slot& graph::checked(node_id id) {
    return const_cast<slot&>(static_cast<const graph*>(this)->checked(id));
}

node_id graph::add_node() {
    node_id id = static_cast<node_id>(slots_.size());
    add_node(id);
    return id;
}

void graph::add_node(node_id id) {
    if (id == 0)
        raise(errc::invalid_node_id, "node ids are 1-based");
    if (id < slots_.size() && slots_[id].used)
        raise(errc::invalid_node_id,
              "node id " + std::to_string(id) + " was already used (ids are never reused)");
    if (id >= slots_.size()) slots_.resize(id + 1);
    slots_[id].used = true;
    slots_[id].present = true;
    ++n_nodes_;
}

bool graph::has_node(node_id id) const noexcept {
    return id != 0 && id < slots_.size() && slots_[id].present;
}

bool graph::has_edge(node_id u, node_id v) const noexcept {
    return edge_index_.count(edge_key(u, v)) != 0;
}

std::size_t graph::degree(node_id id) const { return checked(id).adj.size(); }

std::uint64_t graph::triangles(node_id id) const { return checked(id).triangles; }

const std::unordered_set<node_id>& graph::neighbors(node_id id) const { return checked(id).adj; }

std::pair<node_id, node_id> graph::edge_at(std::size_t index) const {
    if (index >= edges_.size())
        raise(errc::unknown_edge, "edge index " + std::to_string(index) + " out of range");
    return edges_[index];
}

std::vector<node_id> graph::node_ids() const {
    std::vector<node_id> ids;
    ids.reserve(n_nodes_);
    for_each_node([&](node_id id) { ids.push_back(id); });
    return ids;
}

std::size_t graph::add_edge(node_id u, node_id v, touched_list* touched) {
    slot& su = checked(u);
    slot& sv = checked(v);
    if (u == v)
        raise(errc::self_loop, "self loop at node " + std::to_string(u));
    if (has_edge(u, v))
        raise(errc::duplicate_edge,
              "edge {" + std::to_string(u) + "," + std::to_string(v) + "} already present");

    // Each common neighbor gains one triangle through the new edge.
    const auto& small = su.adj.size() <= sv.adj.size() ? su.adj : sv.adj;
    const auto& large = su.adj.size() <= sv.adj.size() ? sv.adj : su.adj;
    std::size_t closed = 0;
    for (node_id w : small) {
        if (large.count(w)) {
            ++slots_[w].triangles;
            push_touched(touched, w);
            ++closed;
        }
    }
    su.triangles += closed;
    sv.triangles += closed;
    su.adj.insert(v);
    sv.adj.insert(u);

    auto [a, b] = std::minmax(u, v);
    edge_index_.emplace(edge_key(a, b), edges_.size());
    edges_.emplace_back(a, b);
    push_touched(touched, u);
    push_touched(touched, v);
    return closed;
}

std::size_t graph::remove_edge(node_id u, node_id v, touched_list* touched) {
    slot& su = checked(u);
    slot& sv = checked(v);
    auto it = edge_index_.find(edge_key(u, v));
    if (it == edge_index_.end())
        raise(errc::unknown_edge,
              "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is not present");

    su.adj.erase(v);
    sv.adj.erase(u);

    // Common neighbors computed after detaching u-v: exactly the triangles
    // that edge was part of.
    const auto& small = su.adj.size() <= sv.adj.size() ? su.adj : sv.adj;
    const auto& large = su.adj.size() <= sv.adj.size() ? sv.adj : su.adj;
    std::size_t opened = 0;
    for (node_id w : small) {
        if (large.count(w)) {
            --slots_[w].triangles;
            push_touched(touched, w);
            ++opened;
        }
    }
    su.triangles -= opened;
    sv.triangles -= opened;

    // Swap-remove from the dense edge array, keeping the index map exact.
    std::size_t pos = it->second;
    edge_index_.erase(it);
    if (pos + 1 != edges_.size()) {
        edges_[pos] = edges_.back();
        edge_index_[edge_key(edges_[pos].first, edges_[pos].second)] = pos;
    }
    edges_.pop_back();
    push_touched(touched, u);
    push_touched(touched, v);
    return opened;
}

std::size_t graph::remove_node(node_id id, touched_list* touched) {
    slot& s = checked(id);
    std::vector<node_id> nbrs(s.adj.begin(), s.adj.end());
    for (node_id v : nbrs) remove_edge(id, v, touched);
    s.present = false; // id stays retired
    --n_nodes_;
    push_touched(touched, id);
    return nbrs.size();
}

double clustering_coefficient(const graph& g, node_id id) {
    std::size_t k = g.degree(id);
    if (k <= 1) return 0.0;
    return 2.0 * static_cast<double>(g.triangles(id)) /
           (static_cast<double>(k) * static_cast<double>(k - 1));
}

std::size_t triangle_count_bruteforce(const graph& g, node_id id) {
    const auto& adj = g.neighbors(id);
    std::vector<node_id> nbrs(adj.begin(), adj.end());
    std::size_t count = 0;
    for (std::size_t a = 0; a < nbrs.size(); ++a)
        for (std::size_t b = a + 1; b < nbrs.size(); ++b)
            if (g.has_edge(nbrs[a], nbrs[b])) ++count;
    return count;
}

graph read_edge_list(std::istream& in, const std::vector<node_id>& isolated) {
    graph g;
    auto ensure = [&](node_id id) {
        if (id == 0) raise(errc::parse_error, "edge list ids are 1-based");
        if (!g.has_node(id)) g.add_node(id);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long long u = 0, v = 0;
        if (!(fields >> u)) {
            fields.clear();
            std::string token;
            if (fields >> token)
                raise(errc::parse_error,
                      "line " + std::to_string(line_no) + ": bad token \"" + token + "\"");
            continue; // blank / comment-only line
        }
        if (!(fields >> v))
            raise(errc::parse_error, "line " + std::to_string(line_no) + ": expected \"u v\"");
        long long extra;
        if (fields >> extra)
            raise(errc::parse_error, "line " + std::to_string(line_no) + ": trailing fields");
        if (u <= 0 || v <= 0)
            raise(errc::parse_error, "line " + std::to_string(line_no) + ": ids must be positive");
        ensure(static_cast<node_id>(u));
        ensure(static_cast<node_id>(v));
        try {
            g.add_edge(static_cast<node_id>(u), static_cast<node_id>(v));
        } catch (const error& e) {
            raise(errc::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (node_id id : isolated) ensure(id);
    return g;
}

void write_edge_list(const graph& g, std::ostream& out) {
    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) edges.push_back(g.edge_at(i));
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

} // namespace cagl
