#pragma once

#include <stdexcept>
#include <string>

namespace cagl {

/// Failure categories surfaced by the library. The CLI maps these onto
/// process exit codes (config errors, model preconditions, internal bugs).
enum class errc {
    unknown_node,
    invalid_node_id,
    self_loop,
    duplicate_edge,
    unknown_edge,
    empty_graph,
    all_weights_zero,
    insufficient_eligible_nodes,
    degenerate_probability,
    k_out_of_range,
    degenerate_denominator,
    nonpositive_uh,
    empty_after_filter,
    parse_error,
    empty_input,
    invalid_config,
    invalid_argument,
    internal_inconsistency,
};

inline const char* errc_name(errc code) noexcept {
    switch (code) {
    case errc::unknown_node: return "unknown node";
    case errc::invalid_node_id: return "invalid node id";
    case errc::self_loop: return "self loop";
    case errc::duplicate_edge: return "duplicate edge";
    case errc::unknown_edge: return "unknown edge";
    case errc::empty_graph: return "empty graph";
    case errc::all_weights_zero: return "all weights zero";
    case errc::insufficient_eligible_nodes: return "insufficient eligible nodes";
    case errc::degenerate_probability: return "degenerate probability";
    case errc::k_out_of_range: return "k out of range";
    case errc::degenerate_denominator: return "degenerate denominator";
    case errc::nonpositive_uh: return "nonpositive uh statistic";
    case errc::empty_after_filter: return "empty sample after filtering";
    case errc::parse_error: return "parse error";
    case errc::empty_input: return "empty input";
    case errc::invalid_config: return "invalid config";
    case errc::invalid_argument: return "invalid argument";
    case errc::internal_inconsistency: return "internal inconsistency";
    }
    return "unknown error";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw error(code, message);
}

} // namespace cagl
