#include "cagl/manifest.hpp"

#include <json.hpp>

#include "cagl/io_util.hpp"

namespace cagl {

void write_manifest(const std::filesystem::path& path, const run_manifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : manifest.parameters) params[key] = value;
    j["parameters"] = params;
    j["seed"] = manifest.seed;
    j["started_utc"] = manifest.started_utc;
    j["finished_utc"] = manifest.finished_utc;
    j["outputs"] = manifest.outputs;
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace cagl
