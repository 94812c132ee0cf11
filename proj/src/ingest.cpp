#include "cagl/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>

namespace cagl {

namespace {

std::int64_t parse_int(const std::string& text, std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        raise(errc::parse_error,
              "line " + std::to_string(line_no) + ": bad " + what + " \"" + text + "\"");
    }
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == delim) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

temporal_parse_result parse_temporal_edges(std::istream& in, const temporal_format& fmt) {
    temporal_parse_result out;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = fmt.layout == temporal_format::layout_kind::csv && fmt.has_header;

    const int max_col = std::max({fmt.u_column, fmt.v_column, fmt.t_column});
    if (fmt.layout == temporal_format::layout_kind::csv &&
        (fmt.u_column < 0 || fmt.v_column < 0 || fmt.t_column < 0))
        raise(errc::invalid_config, "csv column positions must be nonnegative");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        long long u, v, ts;
        if (fmt.layout == temporal_format::layout_kind::whitespace) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            if (!(fields >> u)) {
                fields.clear();
                std::string token;
                if (fields >> token)
                    raise(errc::parse_error,
                          "line " + std::to_string(line_no) + ": bad token \"" + token + "\"");
                continue; // blank line
            }
            if (!(fields >> v >> ts))
                raise(errc::parse_error,
                      "line " + std::to_string(line_no) + ": expected \"u v timestamp\"");
        } else {
            if (trim(line).empty()) continue;
            if (header_pending) {
                header_pending = false;
                continue;
            }
            auto fields = split(line, fmt.delimiter);
            if (static_cast<int>(fields.size()) <= max_col)
                raise(errc::parse_error, "line " + std::to_string(line_no) + ": only " +
                                             std::to_string(fields.size()) + " columns");
            u = parse_int(trim(fields[fmt.u_column]), line_no, "node id");
            v = parse_int(trim(fields[fmt.v_column]), line_no, "node id");
            ts = parse_int(trim(fields[fmt.t_column]), line_no, "timestamp");
        }

        if (u <= 0 || v <= 0)
            raise(errc::parse_error, "line " + std::to_string(line_no) + ": ids must be positive");
        if (u == v) {
            ++out.dropped_self_loops;
            continue;
        }
        temporal_edge_event ev;
        ev.u = static_cast<node_id>(std::min(u, v));
        ev.v = static_cast<node_id>(std::max(u, v));
        ev.timestamp = ts;
        out.events.push_back(ev);
    }
    std::stable_sort(out.events.begin(), out.events.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    return out;
}

window_series snapshot_series(const std::vector<temporal_edge_event>& events,
                              std::int64_t window_length, window_mode mode,
                              degree_semantics degrees, const std::vector<node_id>& tracked) {
    if (events.empty()) raise(errc::empty_input, "no events to window");
    if (window_length <= 0) raise(errc::invalid_argument, "window length must be positive");
    if (!std::is_sorted(events.begin(), events.end(),
                        [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; }))
        raise(errc::invalid_argument, "events must be timestamp-sorted");

    // External ids -> dense internal ids 1..n.
    std::vector<node_id> ext_ids;
    ext_ids.reserve(events.size() * 2);
    for (const auto& ev : events) {
        ext_ids.push_back(ev.u);
        ext_ids.push_back(ev.v);
    }
    std::sort(ext_ids.begin(), ext_ids.end());
    ext_ids.erase(std::unique(ext_ids.begin(), ext_ids.end()), ext_ids.end());
    auto internal = [&](node_id ext) -> node_id {
        auto it = std::lower_bound(ext_ids.begin(), ext_ids.end(), ext);
        if (it == ext_ids.end() || *it != ext) return 0;
        return static_cast<node_id>(it - ext_ids.begin() + 1);
    };
    const std::size_t n = ext_ids.size();

    const std::int64_t t_min = events.front().timestamp;
    const std::int64_t t_max = events.back().timestamp;
    const std::size_t n_windows = static_cast<std::size_t>((t_max - t_min) / window_length) + 1;

    window_series series;
    series.window_length = window_length;
    series.mode = mode;
    series.degrees = degrees;
    series.n_nodes = n;
    series.tracked = tracked;
    series.records.reserve(n_windows);

    auto fresh_graph = [&] {
        graph g;
        for (std::size_t i = 1; i <= n; ++i) g.add_node(static_cast<node_id>(i));
        return g;
    };

    graph cumulative_g = fresh_graph();
    std::vector<std::uint64_t> event_count(n + 1, 0); // multiplicity degrees
    graph window_g; // valid per window in per_window mode

    std::size_t cursor = 0;
    for (std::size_t w = 0; w < n_windows; ++w) {
        graph* g = &cumulative_g;
        if (mode == window_mode::per_window) {
            window_g = fresh_graph();
            g = &window_g;
            std::fill(event_count.begin(), event_count.end(), 0);
        }
        const std::int64_t window_end = t_min + static_cast<std::int64_t>(w + 1) * window_length;
        while (cursor < events.size() && events[cursor].timestamp < window_end) {
            node_id iu = internal(events[cursor].u);
            node_id iv = internal(events[cursor].v);
            if (!g->has_edge(iu, iv)) g->add_edge(iu, iv);
            ++event_count[iu];
            ++event_count[iv];
            ++cursor;
        }

        metrics_record rec;
        rec.t = static_cast<long>(w);
        rec.n_nodes = n;
        rec.n_edges = g->edge_count();
        rec.avg_clustering = avg_clustering(*g);
        rec.total_triangles = total_triangles(*g);
        for (node_id ext : tracked) {
            tracked_stats s;
            s.id = ext;
            if (node_id iid = internal(ext); iid != 0) {
                s.degree = degrees == degree_semantics::simple ? g->degree(iid)
                                                               : event_count[iid];
                s.triangles = g->triangles(iid);
                s.clustering = clustering_coefficient(*g, iid);
            }
            rec.tracked.push_back(s);
        }
        series.records.push_back(std::move(rec));
    }
    for (std::size_t w = 0; w + 1 < series.records.size(); ++w)
        series.records[w].increment =
            series.records[w].avg_clustering - series.records[w + 1].avg_clustering;

    const graph& last = mode == window_mode::per_window ? window_g : cumulative_g;
    series.final_degrees.reserve(n);
    series.final_triangles.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        node_id iid = static_cast<node_id>(i);
        series.final_degrees.push_back(degrees == degree_semantics::simple
                                           ? static_cast<double>(last.degree(iid))
                                           : static_cast<double>(event_count[i]));
        series.final_triangles.push_back(static_cast<double>(last.triangles(iid)));
    }
    return series;
}

} // namespace cagl
