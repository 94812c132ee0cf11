#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cagl/graph.hpp"
#include "cagl/metrics.hpp"

namespace cagl {

/// One timestamped interaction between two external node ids.
struct temporal_edge_event {
    node_id u = 0;
    node_id v = 0;
    std::int64_t timestamp = 0;
};

struct temporal_parse_result {
    /// Endpoint-normalized (u < v), stably sorted by timestamp. Repeated
    /// interactions are kept as separate events.
    std::vector<temporal_edge_event> events;
    std::size_t dropped_self_loops = 0;
};

/// Input layout. The whitespace layout expects "u v timestamp" per line
/// with '#' comments; the csv layout takes a delimiter, 0-based column
/// positions and an optional header row.
struct temporal_format {
    enum class layout_kind { whitespace, csv };
    layout_kind layout = layout_kind::whitespace;
    char delimiter = ',';
    int u_column = 0;
    int v_column = 1;
    int t_column = 2;
    bool has_header = false;
};

temporal_parse_result parse_temporal_edges(std::istream& in, const temporal_format& fmt = {});

/// How each window's graph is built: from that window's events only, or
/// from all events up to and including the window.
enum class window_mode { per_window, cumulative };

/// Degree reported for tracked nodes and final samples: distinct-partner
/// count (simple) or raw event count (event_multiplicity). Clustering and
/// triangles always live on the deduplicated simple graph.
enum class degree_semantics { simple, event_multiplicity };

struct window_series {
    std::int64_t window_length = 0;
    window_mode mode = window_mode::per_window;
    degree_semantics degrees = degree_semantics::event_multiplicity;
    std::size_t n_nodes = 0;              // all ids seen anywhere in the data
    std::vector<node_id> tracked;         // external ids, as requested
    std::vector<metrics_record> records;  // t = window index, 0-based
    /// Per-node samples from the final window's graph, external-id order.
    std::vector<double> final_degrees;
    std::vector<double> final_triangles;
};

/// Partitions the time axis into half-open windows of `window_length`
/// starting at the earliest timestamp and measures each window's graph.
/// Every id ever seen counts toward every window's clustering denominator
/// (isolated nodes contribute zero). Empty windows yield records too.
window_series snapshot_series(const std::vector<temporal_edge_event>& events,
                              std::int64_t window_length, window_mode mode,
                              degree_semantics degrees,
                              const std::vector<node_id>& tracked = {});

} // namespace cagl
