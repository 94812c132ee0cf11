#include "cagl/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cagl/io_util.hpp"
#include "cagl/manifest.hpp"
#include "cagl/run_config.hpp"
#include "cagl/svg_plot.hpp"

namespace cagl {

namespace {

const std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                          "#ff7f0e", "#8c564b"};

std::string values_file(const std::vector<double>& values) {
    std::string out;
    for (double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::vector<double> read_values_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open \"" + path.string() + "\"");
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double v;
        if (!(fields >> v)) {
            std::string rest;
            if (fields.clear(), fields >> rest)
                raise(errc::parse_error,
                      "line " + std::to_string(line_no) + ": bad value \"" + rest + "\"");
            continue; // blank line
        }
        double extra;
        if (fields >> extra)
            raise(errc::parse_error,
                  "line " + std::to_string(line_no) + ": one value per line");
        values.push_back(v);
    }
    if (values.empty()) raise(errc::empty_input, "no values in \"" + path.string() + "\"");
    return values;
}

void prepare_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) raise(errc::invalid_config, "cannot create output dir \"" + dir.string() + "\"");
}

int report(std::ostream& diag, const error& e) {
    diag << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
}

} // namespace

int exit_code_for(errc code) noexcept {
    switch (code) {
    case errc::invalid_config:
    case errc::parse_error:
    case errc::empty_input:
        return 2;
    case errc::unknown_node:
    case errc::empty_graph:
    case errc::all_weights_zero:
    case errc::insufficient_eligible_nodes:
    case errc::degenerate_probability:
    case errc::k_out_of_range:
    case errc::degenerate_denominator:
    case errc::nonpositive_uh:
    case errc::empty_after_filter:
        return 3;
    case errc::invalid_node_id:
    case errc::self_loop:
    case errc::duplicate_edge:
    case errc::unknown_edge:
    case errc::invalid_argument:
    case errc::internal_inconsistency:
        return 4;
    }
    return 4;
}

std::string trajectory_csv(const trajectory& tr) {
    std::string out = "t,n_nodes,n_edges,avg_clustering,delta,total_triangles";
    const auto& tracked = tr.config.tracked_nodes;
    for (node_id id : tracked) {
        std::string sid = std::to_string(id);
        out += ",k_" + sid + ",tri_" + sid + ",c_" + sid;
    }
    out += '\n';
    for (const auto& rec : tr.records) {
        out += std::to_string(rec.t);
        out += ',' + std::to_string(rec.n_nodes);
        out += ',' + std::to_string(rec.n_edges);
        out += ',' + format_double(rec.avg_clustering);
        out += ',';
        if (rec.increment) out += format_double(*rec.increment);
        out += ',' + std::to_string(rec.total_triangles);
        for (const auto& s : rec.tracked) {
            out += ',' + std::to_string(s.degree);
            out += ',' + std::to_string(s.triangles);
            out += ',' + format_double(s.clustering);
        }
        out += '\n';
    }
    return out;
}

std::string averages_csv(const replicate_result& res) {
    std::string out = "t,delta_bar";
    for (node_id id : res.tracked) {
        std::string sid = std::to_string(id);
        out += ",k_bar_" + sid + ",tri_bar_" + sid;
    }
    out += '\n';
    for (long t = 0; t <= res.steps; ++t) {
        out += std::to_string(t);
        out += ',';
        if (t < res.steps) out += format_double(res.delta_bar[static_cast<std::size_t>(t)]);
        for (std::size_t k = 0; k < res.tracked.size(); ++k) {
            out += ',' + format_double(res.degree_bar[k][static_cast<std::size_t>(t)]);
            out += ',' + format_double(res.triangle_bar[k][static_cast<std::size_t>(t)]);
        }
        out += '\n';
    }
    return out;
}

std::string evi_sweep_csv(const std::vector<estimator_result>& sweep) {
    std::string out = "estimator,s,k,gamma,valid\n";
    for (const auto& cell : sweep) {
        out += estimator_name(cell.estimator);
        out += ',' + format_double(cell.s);
        out += ',' + std::to_string(cell.k);
        out += ',' + format_double(cell.gamma);
        out += ',';
        out += cell.valid ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string window_series_csv(const window_series& series) {
    std::string out = "t,n_active_edges,avg_clustering,delta,total_triangles";
    for (node_id id : series.tracked) {
        std::string sid = std::to_string(id);
        out += ",k_" + sid + ",tri_" + sid;
    }
    out += '\n';
    for (const auto& rec : series.records) {
        out += std::to_string(rec.t);
        out += ',' + std::to_string(rec.n_edges);
        out += ',' + format_double(rec.avg_clustering);
        out += ',';
        if (rec.increment) out += format_double(*rec.increment);
        out += ',' + std::to_string(rec.total_triangles);
        for (const auto& s : rec.tracked) {
            out += ',' + std::to_string(s.degree);
            out += ',' + std::to_string(s.triangles);
        }
        out += '\n';
    }
    return out;
}

int cmd_evolve(const evolve_options& opts, std::ostream& diag) {
    run_manifest mf;
    mf.command = "evolve";
    mf.version = tool_version;
    mf.started_utc = utc_timestamp();
    try {
        evolution_config cfg = load_evolution_config(opts.config_path);
        mf.parameters = config_key_values(cfg);
        mf.seed = cfg.seed;
        prepare_out_dir(opts.out_dir);

        trajectory tr = run(cfg);

        write_file_atomic(opts.out_dir / "trajectory.csv", trajectory_csv(tr));
        mf.outputs.push_back("trajectory.csv");

        if (tr.final_graph.node_count() > 0) {
            std::vector<double> degrees, triangles;
            tr.final_graph.for_each_node([&](node_id id) {
                degrees.push_back(static_cast<double>(tr.final_graph.degree(id)));
                triangles.push_back(static_cast<double>(tr.final_graph.triangles(id)));
            });
            write_file_atomic(opts.out_dir / "final_degrees.txt", values_file(degrees));
            write_file_atomic(opts.out_dir / "final_triangles.txt", values_file(triangles));
            std::ostringstream edges;
            write_edge_list(tr.final_graph, edges);
            write_file_atomic(opts.out_dir / "final_graph.edges", edges.str());
            mf.outputs.insert(mf.outputs.end(),
                              {"final_degrees.txt", "final_triangles.txt", "final_graph.edges"});
        }

        if (opts.plots) {
            plot_series cbar{"avg clustering", {}, {}, palette[0], false};
            plot_series delta{"delta", {}, {}, palette[1], false};
            plot_series lo{"lower bound", {}, {}, palette[2], true};
            plot_series hi{"upper bound", {}, {}, palette[2], true};
            for (const auto& rec : tr.records) {
                cbar.x.push_back(static_cast<double>(rec.t));
                cbar.y.push_back(rec.avg_clustering);
                if (rec.increment) {
                    delta.x.push_back(static_cast<double>(rec.t));
                    delta.y.push_back(*rec.increment);
                    auto env = increment_bounds(tr.v0_size, rec.t);
                    lo.x.push_back(static_cast<double>(rec.t));
                    lo.y.push_back(env.lower);
                    hi.x.push_back(static_cast<double>(rec.t));
                    hi.y.push_back(env.upper);
                }
            }
            write_svg_line_chart(opts.out_dir / "clustering.svg", "Average clustering", "t",
                                 "avg clustering", {cbar});
            std::vector<plot_series> dseries = {delta};
            if (tr.config.m0 == 2 && tr.config.deletion == deletion_mode::none) {
                dseries.push_back(lo);
                dseries.push_back(hi);
            }
            write_svg_line_chart(opts.out_dir / "increments.svg", "One-step increments", "t",
                                 "delta", dseries);
            mf.outputs.insert(mf.outputs.end(), {"clustering.svg", "increments.svg"});
        }

        mf.finished_utc = utc_timestamp();
        write_manifest(opts.out_dir / "manifest.json", mf);

        if (tr.failure) {
            diag << "error: run stopped at step " << tr.failure->at_step << ": "
                 << tr.failure->message << "\n";
            return exit_code_for(tr.failure->code);
        }
        if (tr.bound_violations > 0) {
            diag << "error: " << tr.bound_violations
                 << " one-step increments left the guaranteed envelope\n";
            return exit_code_for(errc::internal_inconsistency);
        }
        return 0;
    } catch (const error& e) {
        return report(diag, e);
    }
}

int cmd_replicate(const replicate_options& opts, std::ostream& diag) {
    run_manifest mf;
    mf.command = "replicate";
    mf.version = tool_version;
    mf.started_utc = utc_timestamp();
    try {
        if (opts.runs < 1) raise(errc::invalid_config, "--runs must be at least 1");
        evolution_config cfg = load_evolution_config(opts.config_path);
        mf.parameters = config_key_values(cfg);
        mf.parameters.emplace_back("runs", std::to_string(opts.runs));
        mf.seed = cfg.seed;
        prepare_out_dir(opts.out_dir);

        replicate_result res = replicate(cfg, opts.runs, opts.tolerate_failures);
        mf.parameters.emplace_back("runs_succeeded", std::to_string(res.runs_succeeded));
        for (const auto& [replica, failure] : res.failures)
            diag << "note: replica " << replica << " failed at step " << failure.at_step << ": "
                 << failure.message << "\n";

        write_file_atomic(opts.out_dir / "averages.csv", averages_csv(res));
        mf.outputs.push_back("averages.csv");

        if (opts.plots) {
            plot_series delta{"delta_bar", {}, {}, palette[0], false};
            for (long t = 0; t < res.steps; ++t) {
                delta.x.push_back(static_cast<double>(t));
                delta.y.push_back(res.delta_bar[static_cast<std::size_t>(t)]);
            }
            write_svg_line_chart(opts.out_dir / "delta_bar.svg", "Replica-averaged increments",
                                 "t", "delta_bar", {delta});
            mf.outputs.push_back("delta_bar.svg");
            if (!res.tracked.empty()) {
                std::vector<plot_series> kseries;
                for (std::size_t k = 0; k < res.tracked.size(); ++k) {
                    plot_series s{"node " + std::to_string(res.tracked[k]), {}, {},
                                  palette[k % palette.size()], false};
                    for (long t = 0; t <= res.steps; ++t) {
                        s.x.push_back(static_cast<double>(t));
                        s.y.push_back(res.degree_bar[k][static_cast<std::size_t>(t)]);
                    }
                    kseries.push_back(std::move(s));
                }
                write_svg_line_chart(opts.out_dir / "degree_bar.svg",
                                     "Replica-averaged tracked degrees", "t", "k_bar", kseries);
                mf.outputs.push_back("degree_bar.svg");
            }
        }

        mf.finished_utc = utc_timestamp();
        write_manifest(opts.out_dir / "manifest.json", mf);
        return 0;
    } catch (const error& e) {
        return report(diag, e);
    }
}

int cmd_evi(const evi_options& opts, std::ostream& diag) {
    run_manifest mf;
    mf.command = "evi";
    mf.version = tool_version;
    mf.started_utc = utc_timestamp();
    try {
        std::vector<evi_estimator> estimators;
        if (opts.estimators.empty()) {
            estimators = all_estimators();
        } else {
            for (const auto& name : opts.estimators) estimators.push_back(estimator_from_name(name));
        }
        std::vector<double> s_grid = opts.s_grid.empty() ? default_s_grid() : opts.s_grid;
        for (double s : s_grid)
            if (!(s > 0.0) || !(s < 1.0))
                raise(errc::invalid_config, "s values must lie strictly between 0 and 1");

        std::vector<double> raw = read_values_file(opts.input_path);
        ordered_sample xs = filter_sample(raw, opts.min_exclusive);

        mf.parameters.emplace_back("input", opts.input_path.string());
        mf.parameters.emplace_back("n_raw", std::to_string(raw.size()));
        mf.parameters.emplace_back("n_filtered", std::to_string(xs.size()));
        mf.parameters.emplace_back("min_exclusive", format_double(opts.min_exclusive));
        {
            std::string names;
            for (evi_estimator est : estimators) {
                if (!names.empty()) names += ',';
                names += estimator_name(est);
            }
            mf.parameters.emplace_back("estimators", names);
        }
        prepare_out_dir(opts.out_dir);

        auto sweep = evi_sweep(xs, estimators, s_grid);
        write_file_atomic(opts.out_dir / "evi_sweep.csv", evi_sweep_csv(sweep));
        mf.outputs.push_back("evi_sweep.csv");

        if (opts.plots) {
            std::vector<plot_series> series;
            for (std::size_t e = 0; e < estimators.size(); ++e) {
                plot_series s{estimator_name(estimators[e]), {}, {},
                              palette[e % palette.size()], false};
                for (const auto& cell : sweep) {
                    if (cell.estimator != estimators[e]) continue;
                    s.x.push_back(cell.s);
                    s.y.push_back(cell.valid ? cell.gamma
                                             : std::numeric_limits<double>::quiet_NaN());
                }
                series.push_back(std::move(s));
            }
            write_svg_line_chart(opts.out_dir / "evi_sweep.svg", "Tail-index estimates", "s",
                                 "gamma", series);
            mf.outputs.push_back("evi_sweep.svg");
        }

        mf.finished_utc = utc_timestamp();
        write_manifest(opts.out_dir / "manifest.json", mf);
        return 0;
    } catch (const error& e) {
        return report(diag, e);
    }
}

int cmd_ingest(const ingest_options& opts, std::ostream& diag) {
    run_manifest mf;
    mf.command = "ingest";
    mf.version = tool_version;
    mf.started_utc = utc_timestamp();
    try {
        if (opts.window <= 0) raise(errc::invalid_config, "--window must be positive");
        std::ifstream in(opts.input_path);
        if (!in) raise(errc::parse_error, "cannot open \"" + opts.input_path.string() + "\"");
        temporal_parse_result parsed = parse_temporal_edges(in, opts.format);
        if (parsed.events.empty())
            raise(errc::empty_input, "no events in \"" + opts.input_path.string() + "\"");

        window_series series = snapshot_series(parsed.events, opts.window, opts.mode,
                                               opts.degrees, opts.tracked);

        mf.parameters.emplace_back("input", opts.input_path.string());
        mf.parameters.emplace_back("window", std::to_string(opts.window));
        mf.parameters.emplace_back(
            "mode", opts.mode == window_mode::per_window ? "per_window" : "cumulative");
        mf.parameters.emplace_back("degrees", opts.degrees == degree_semantics::simple
                                                  ? "simple"
                                                  : "event_multiplicity");
        mf.parameters.emplace_back("events", std::to_string(parsed.events.size()));
        mf.parameters.emplace_back("dropped_self_loops",
                                   std::to_string(parsed.dropped_self_loops));
        mf.parameters.emplace_back("nodes", std::to_string(series.n_nodes));
        mf.parameters.emplace_back("windows", std::to_string(series.records.size()));
        prepare_out_dir(opts.out_dir);

        write_file_atomic(opts.out_dir / "window_series.csv", window_series_csv(series));
        write_file_atomic(opts.out_dir / "final_degrees.txt", values_file(series.final_degrees));
        write_file_atomic(opts.out_dir / "final_triangles.txt",
                          values_file(series.final_triangles));
        mf.outputs.insert(mf.outputs.end(),
                          {"window_series.csv", "final_degrees.txt", "final_triangles.txt"});

        if (opts.plots) {
            plot_series cbar{"avg clustering", {}, {}, palette[0], false};
            for (const auto& rec : series.records) {
                cbar.x.push_back(static_cast<double>(rec.t));
                cbar.y.push_back(rec.avg_clustering);
            }
            write_svg_line_chart(opts.out_dir / "window_clustering.svg",
                                 "Per-window average clustering", "window", "avg clustering",
                                 {cbar});
            mf.outputs.push_back("window_clustering.svg");
        }

        mf.finished_utc = utc_timestamp();
        write_manifest(opts.out_dir / "manifest.json", mf);
        return 0;
    } catch (const error& e) {
        return report(diag, e);
    }
}

} // namespace cagl
