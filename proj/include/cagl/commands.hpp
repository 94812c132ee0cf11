#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cagl/error.hpp"
#include "cagl/evi.hpp"
#include "cagl/evolution.hpp"
#include "cagl/ingest.hpp"

namespace cagl {

/// Process exit codes: 0 success, 2 bad config or unparsable input,
/// 3 model precondition violated at runtime, 4 internal invariant broken.
int exit_code_for(errc code) noexcept;

/// CSV renderings (exact bytes the commands write, exposed for tests).
std::string trajectory_csv(const trajectory& tr);
std::string averages_csv(const replicate_result& res);
std::string evi_sweep_csv(const std::vector<estimator_result>& sweep);
std::string window_series_csv(const window_series& series);

struct evolve_options {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    bool plots = false;
};

struct replicate_options {
    std::filesystem::path config_path;
    std::filesystem::path out_dir;
    int runs = 1;
    bool tolerate_failures = false;
    bool plots = false;
};

struct evi_options {
    std::filesystem::path input_path; // one positive value per line
    std::filesystem::path out_dir;
    std::vector<std::string> estimators; // empty = all
    std::vector<double> s_grid;          // empty = default grid
    double min_exclusive = 0.0;
    bool plots = false;
};

struct ingest_options {
    std::filesystem::path input_path;
    std::filesystem::path out_dir;
    std::int64_t window = 86400;
    window_mode mode = window_mode::per_window;
    degree_semantics degrees = degree_semantics::event_multiplicity;
    std::vector<node_id> tracked;
    temporal_format format;
    bool plots = false;
};

/// Each command runs end to end and returns a process exit code; errors
/// are reported on `diag`. A failed evolution still writes the partial
/// trajectory and manifest before returning nonzero.
int cmd_evolve(const evolve_options& opts, std::ostream& diag = std::cerr);
int cmd_replicate(const replicate_options& opts, std::ostream& diag = std::cerr);
int cmd_evi(const evi_options& opts, std::ostream& diag = std::cerr);
int cmd_ingest(const ingest_options& opts, std::ostream& diag = std::cerr);

} // namespace cagl
