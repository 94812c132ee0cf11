#pragma once

#include <filesystem>
#include <string>

namespace cagl {

/// Shortest round-trippable-ish decimal rendering used by every CSV
/// writer (%.12g): stable across runs, precise enough for byte-identical
/// reproducibility checks.
std::string format_double(double v);

/// Writes via a temp file in the same directory plus an atomic rename, so
/// readers never observe a half-written artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// "YYYY-MM-DDTHH:MM:SSZ", current time.
std::string utc_timestamp();

} // namespace cagl
