#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cagl/evolution.hpp"

namespace cagl {

inline constexpr const char* tool_version = "0.1.0";

/// Parses a flat "key = value" config file (one pair per line, '#'
/// comments) into an evolution config. Keys:
///
///   alpha, epsilon        nonnegative reals
///   attachment            ca | lpa
///   m0                    integer >= 2
///   steps                 integer >= 0
///   deletion              none | node | edge
///   initial               triangle | rectangle | rectangle_diag |
///                         icosahedron_full | complete:N | file:PATH
///   seed                  unsigned 64-bit integer
///   tracked_nodes         comma-separated 1-based ids
///   recompute_period      integer >= 1
///   forced_targets        comma-separated ids (testing hook)
///   edge_deletion_pool    post | pre
///
/// Unknown keys and malformed values are config errors.
evolution_config parse_evolution_config(std::istream& in);
evolution_config load_evolution_config(const std::filesystem::path& path);

/// The fully resolved key/value view of a config (defaults filled in),
/// in canonical key order — what run manifests embed.
std::vector<std::pair<std::string, std::string>> config_key_values(const evolution_config& cfg);

} // namespace cagl
