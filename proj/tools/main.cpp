#include <CLI11.hpp>

#include <string>
#include <vector>

#include "cagl/commands.hpp"
#include "cagl/run_config.hpp"

namespace {

cagl::temporal_format make_format(const std::string& layout, const std::string& delimiter,
                                  const std::vector<int>& columns, bool header) {
    cagl::temporal_format fmt;
    if (layout == "whitespace") {
        fmt.layout = cagl::temporal_format::layout_kind::whitespace;
    } else if (layout == "csv") {
        fmt.layout = cagl::temporal_format::layout_kind::csv;
    } else {
        cagl::raise(cagl::errc::invalid_config, "--format must be whitespace or csv");
    }
    if (delimiter.size() != 1)
        cagl::raise(cagl::errc::invalid_config, "--delimiter must be a single character");
    fmt.delimiter = delimiter[0];
    if (columns.size() != 3)
        cagl::raise(cagl::errc::invalid_config, "--columns needs exactly u,v,t positions");
    fmt.u_column = columns[0];
    fmt.v_column = columns[1];
    fmt.t_column = columns[2];
    fmt.has_header = header;
    return fmt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering-attachment random graph laboratory"};
    app.set_version_flag("--version", std::string("ca-graphlab ") + cagl::tool_version);
    app.require_subcommand(1);

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Run one seeded evolution and record it");
    cagl::evolve_options ev;
    evolve->add_option("--config", ev.config_path, "key = value config file")->required();
    evolve->add_option("--out", ev.out_dir, "output directory")->required();
    evolve->add_flag("--plots", ev.plots, "also write SVG charts");

    // replicate
    auto* replicate = app.add_subcommand("replicate", "Average independent replicas");
    cagl::replicate_options rp;
    replicate->add_option("--config", rp.config_path, "key = value config file")->required();
    replicate->add_option("--out", rp.out_dir, "output directory")->required();
    replicate->add_option("--runs", rp.runs, "number of replicas")->required();
    replicate->add_flag("--tolerate-failures", rp.tolerate_failures,
                        "average the successful replicas instead of aborting");
    replicate->add_flag("--plots", rp.plots, "also write SVG charts");

    // evi
    auto* evi = app.add_subcommand("evi", "Tail-index estimator sweep over a value file");
    cagl::evi_options eo;
    evi->add_option("--input", eo.input_path, "file with one positive value per line")
        ->required();
    evi->add_option("--out", eo.out_dir, "output directory")->required();
    evi->add_option("--estimators", eo.estimators,
                    "subset of hill, moment, uh, mixed_moment (default all)")
        ->delimiter(',');
    evi->add_option("--s-grid", eo.s_grid, "fraction exponents, k = floor(n^s)")->delimiter(',');
    evi->add_option("--min-exclusive", eo.min_exclusive,
                    "keep only values strictly above this");
    evi->add_flag("--plots", eo.plots, "also write SVG charts");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Window a temporal edge list into snapshots");
    cagl::ingest_options io;
    std::string mode = "per_window", degrees = "event_multiplicity", layout = "whitespace";
    std::string delimiter = ",";
    std::vector<int> columns = {0, 1, 2};
    bool header = false;
    std::vector<unsigned> tracked;
    ingest->add_option("--input", io.input_path, "temporal edge list")->required();
    ingest->add_option("--out", io.out_dir, "output directory")->required();
    ingest->add_option("--window", io.window, "window length in timestamp units")->required();
    ingest->add_option("--mode", mode, "per_window or cumulative");
    ingest->add_option("--degrees", degrees, "simple or event_multiplicity");
    ingest->add_option("--tracked", tracked, "external node ids to follow")->delimiter(',');
    ingest->add_option("--format", layout, "whitespace or csv");
    ingest->add_option("--delimiter", delimiter, "csv delimiter");
    ingest->add_option("--columns", columns, "csv positions of u,v,t")->delimiter(',');
    ingest->add_flag("--header", header, "csv input has a header row");
    ingest->add_flag("--plots", io.plots, "also write SVG charts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // bad command line = config error
    }

    try {
        if (*evolve) return cagl::cmd_evolve(ev);
        if (*replicate) return cagl::cmd_replicate(rp);
        if (*evi) return cagl::cmd_evi(eo);
        if (*ingest) {
            if (mode == "per_window") io.mode = cagl::window_mode::per_window;
            else if (mode == "cumulative") io.mode = cagl::window_mode::cumulative;
            else cagl::raise(cagl::errc::invalid_config, "--mode must be per_window or cumulative");
            if (degrees == "simple") io.degrees = cagl::degree_semantics::simple;
            else if (degrees == "event_multiplicity")
                io.degrees = cagl::degree_semantics::event_multiplicity;
            else
                cagl::raise(cagl::errc::invalid_config,
                            "--degrees must be simple or event_multiplicity");
            io.format = make_format(layout, delimiter, columns, header);
            for (unsigned id : tracked) io.tracked.push_back(static_cast<cagl::node_id>(id));
            return cagl::cmd_ingest(io);
        }
    } catch (const cagl::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cagl::exit_code_for(e.code());
    }
    return 2;
}
