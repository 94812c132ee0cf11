#include "cagl/submartingale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cagl/metrics.hpp"

namespace cagl {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

/// |freq - p| in units of the binomial standard error.
double z_score(double freq, double p, long n) {
    double var = p * (1.0 - p) / static_cast<double>(n);
    if (var <= 0.0) return freq == p ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(freq - p) / std::sqrt(var);
}

} // namespace

submartingale_state_probe probe_state(const graph& g, const attachment_params& params,
                                      std::size_t m0, long replays, rng_t& rng) {
    submartingale_state_probe probe;
    probe.n_nodes = g.node_count();
    probe.replays = replays;

    std::vector<node_id> ids = g.node_ids();
    const std::size_t n = ids.size();
    std::vector<std::size_t> index(g.max_node_id() + 1, 0);
    for (std::size_t a = 0; a < n; ++a) index[ids[a]] = a;

    std::vector<double> p1_closed, p2_closed;
    if (m0 == 2) {
        auto dist = attachment_distribution(g, params);
        p1_closed.resize(n);
        p2_closed.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            p1_closed[a] = degree_increment_probability(dist, ids[a]);
            p2_closed[a] = triangle_increment_probability(g, dist, ids[a]);
        }

        // Ground truth by brute force: every unordered target pair.
        std::vector<double> p1_enum(n, 0.0), p2_enum(n, 0.0);
        double pair_total = 0.0, p_adjacent = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                double w = pair_probability(dist, ids[a], ids[b]);
                pair_total += w;
                p1_enum[a] += w;
                p1_enum[b] += w;
                if (g.has_edge(ids[a], ids[b])) {
                    p_adjacent += w;
                    p2_enum[a] += w;
                    p2_enum[b] += w;
                }
            }
        }

        probe.pair_total = pair_total;
        probe.p_adjacent = p_adjacent;
        probe.sum_p1 = 0.0;
        probe.min_p1 = std::numeric_limits<double>::infinity();
        probe.min_p2 = std::numeric_limits<double>::infinity();
        double sum_p2 = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            probe.sum_p1 += p1_closed[a];
            sum_p2 += p2_closed[a];
            probe.min_p1 = std::min(probe.min_p1, p1_closed[a]);
            probe.min_p2 = std::min(probe.min_p2, p2_closed[a]);
            probe.max_p1_discrepancy =
                std::max(probe.max_p1_discrepancy, std::abs(p1_closed[a] - p1_enum[a]));
            probe.max_p2_discrepancy =
                std::max(probe.max_p2_discrepancy, std::abs(p2_closed[a] - p2_enum[a]));
        }
        probe.expected_triangle_gain = (sum_p2 + p_adjacent) / 3.0;
    } else {
        probe.sum_p1 = probe.pair_total = probe.p_adjacent = nan_v;
        probe.max_p1_discrepancy = probe.max_p2_discrepancy = nan_v;
        probe.min_p1 = probe.min_p2 = nan_v;
        probe.expected_triangle_gain = nan_v;
    }

    if (replays > 0) {
        std::vector<long> hit_degree(n, 0), hit_triangle(n, 0);
        long long triangle_gain_total = 0;
        for (long r = 0; r < replays; ++r) {
            std::vector<node_id> targets = sample_targets(g, params, m0, rng);
            for (std::size_t a = 0; a < targets.size(); ++a) {
                ++hit_degree[index[targets[a]]];
                bool adjacent_to_other = false;
                for (std::size_t b = 0; b < targets.size(); ++b)
                    if (b != a && g.has_edge(targets[a], targets[b])) adjacent_to_other = true;
                if (adjacent_to_other) ++hit_triangle[index[targets[a]]];
            }
            // The appended node closes one triangle per adjacent target pair.
            for (std::size_t a = 0; a < targets.size(); ++a)
                for (std::size_t b = a + 1; b < targets.size(); ++b)
                    if (g.has_edge(targets[a], targets[b])) ++triangle_gain_total;
        }
        probe.mc_mean_degree_gain = static_cast<double>(m0); // exactly m0 per replay
        probe.mc_mean_triangle_gain =
            static_cast<double>(triangle_gain_total) / static_cast<double>(replays);
        if (m0 == 2) {
            for (std::size_t a = 0; a < n; ++a) {
                double fd = static_cast<double>(hit_degree[a]) / static_cast<double>(replays);
                double ft = static_cast<double>(hit_triangle[a]) / static_cast<double>(replays);
                probe.max_degree_z = std::max(probe.max_degree_z, z_score(fd, p1_closed[a], replays));
                probe.max_triangle_z =
                    std::max(probe.max_triangle_z, z_score(ft, p2_closed[a], replays));
            }
        } else {
            probe.max_degree_z = probe.max_triangle_z = nan_v;
        }
    } else {
        probe.max_degree_z = probe.max_triangle_z = nan_v;
        probe.mc_mean_degree_gain = probe.mc_mean_triangle_gain = nan_v;
    }
    return probe;
}

submartingale_report submartingale_check(const trajectory& tr, const std::vector<long>& at_steps,
                                         long replays, std::uint64_t replay_seed) {
    const evolution_config& cfg = tr.config;
    if (cfg.deletion != deletion_mode::none)
        raise(errc::invalid_config,
              "submartingale audit covers pure growth; deletion modes change the one-step law");
    std::vector<long> steps = at_steps;
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    if (!steps.empty() && (steps.front() < 0 || steps.back() > cfg.steps))
        raise(errc::invalid_argument, "probe steps must lie in [0, steps]");

    submartingale_report rep;
    rep.min_p1 = rep.min_p2 = std::numeric_limits<double>::infinity();
    rep.min_expected_triangle_gain = std::numeric_limits<double>::infinity();

    engine e(cfg);
    rng_t mc_rng(replay_seed);
    for (long target : steps) {
        while (e.t() < target) e.step();
        submartingale_state_probe probe =
            probe_state(e.state(), cfg.attachment, static_cast<std::size_t>(cfg.m0), replays,
                        mc_rng);
        probe.t = target;
        if (cfg.m0 == 2) {
            rep.max_p1_discrepancy = std::max(rep.max_p1_discrepancy, probe.max_p1_discrepancy);
            rep.max_p2_discrepancy = std::max(rep.max_p2_discrepancy, probe.max_p2_discrepancy);
            rep.max_sum_p1_error = std::max(rep.max_sum_p1_error, std::abs(probe.sum_p1 - 2.0));
            rep.max_pair_total_error =
                std::max(rep.max_pair_total_error, std::abs(probe.pair_total - 1.0));
            rep.min_p1 = std::min(rep.min_p1, probe.min_p1);
            rep.min_p2 = std::min(rep.min_p2, probe.min_p2);
            rep.min_expected_triangle_gain =
                std::min(rep.min_expected_triangle_gain, probe.expected_triangle_gain);
            if (replays > 0) {
                rep.max_degree_z = std::max(rep.max_degree_z, probe.max_degree_z);
                rep.max_triangle_z = std::max(rep.max_triangle_z, probe.max_triangle_z);
            }
        }
        rep.probes.push_back(std::move(probe));
    }
    return rep;
}

} // namespace cagl
