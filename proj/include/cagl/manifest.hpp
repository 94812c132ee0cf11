#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cagl {

/// Reproducibility sidecar written next to every command's outputs: what
/// ran, with which resolved parameters and seed, when, and what it wrote.
struct run_manifest {
    std::string command;
    std::string version;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed = 0;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
};

void write_manifest(const std::filesystem::path& path, const run_manifest& manifest);

} // namespace cagl
