#include "cagl/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cagl/io_util.hpp"

namespace cagl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        raise(errc::invalid_config, key + ": bad number \"" + value + "\"");
    }
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        raise(errc::invalid_config, key + ": bad integer \"" + value + "\"");
    }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        raise(errc::invalid_config, key + ": bad seed \"" + value + "\"");
    }
}

std::vector<node_id> parse_id_list(const std::string& key, const std::string& value) {
    std::vector<node_id> ids;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        long long v = parse_integer(key, item);
        if (v <= 0) raise(errc::invalid_config, key + ": ids must be positive");
        ids.push_back(static_cast<node_id>(v));
    }
    return ids;
}

} // namespace

evolution_config parse_evolution_config(std::istream& in) {
    evolution_config cfg;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(errc::invalid_config,
                  "line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            raise(errc::invalid_config,
                  "line " + std::to_string(line_no) + ": empty key or value");
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            raise(errc::invalid_config, "duplicate key \"" + key + "\"");
        seen.push_back(key);

        if (key == "alpha") {
            cfg.attachment.alpha = parse_real(key, value);
        } else if (key == "epsilon") {
            cfg.attachment.epsilon = parse_real(key, value);
        } else if (key == "attachment") {
            if (value == "ca") cfg.attachment.family = attachment_family::clustering;
            else if (value == "lpa") cfg.attachment.family = attachment_family::degree;
            else raise(errc::invalid_config, "attachment must be ca or lpa, got \"" + value + "\"");
        } else if (key == "m0") {
            long long v = parse_integer(key, value);
            if (v < 2) raise(errc::invalid_config, "m0 must be at least 2");
            cfg.m0 = static_cast<int>(v);
        } else if (key == "steps") {
            long long v = parse_integer(key, value);
            if (v < 0) raise(errc::invalid_config, "steps must be nonnegative");
            cfg.steps = static_cast<long>(v);
        } else if (key == "deletion") {
            if (value == "none") cfg.deletion = deletion_mode::none;
            else if (value == "node") cfg.deletion = deletion_mode::uniform_node;
            else if (value == "edge") cfg.deletion = deletion_mode::uniform_edge;
            else raise(errc::invalid_config, "deletion must be none, node or edge");
        } else if (key == "initial") {
            cfg.initial = initial_graph_spec::parse(value);
        } else if (key == "seed") {
            cfg.seed = parse_seed(key, value);
        } else if (key == "tracked_nodes") {
            cfg.tracked_nodes = parse_id_list(key, value);
        } else if (key == "recompute_period") {
            long long v = parse_integer(key, value);
            if (v < 1) raise(errc::invalid_config, "recompute_period must be positive");
            cfg.recompute_period = static_cast<long>(v);
        } else if (key == "forced_targets") {
            cfg.forced_targets = parse_id_list(key, value);
        } else if (key == "edge_deletion_pool") {
            if (value == "post") cfg.edge_deletion_pool_pre_attachment = false;
            else if (value == "pre") cfg.edge_deletion_pool_pre_attachment = true;
            else raise(errc::invalid_config, "edge_deletion_pool must be post or pre");
        } else {
            raise(errc::invalid_config,
                  "line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
        }
    }
    if (cfg.attachment.alpha < 0.0) raise(errc::invalid_config, "alpha must be nonnegative");
    if (cfg.attachment.epsilon < 0.0) raise(errc::invalid_config, "epsilon must be nonnegative");
    return cfg;
}

evolution_config load_evolution_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(errc::invalid_config, "cannot open config \"" + path.string() + "\"");
    return parse_evolution_config(in);
}

std::vector<std::pair<std::string, std::string>> config_key_values(const evolution_config& cfg) {
    auto join_ids = [](const std::vector<node_id>& ids) {
        std::string s;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(ids[i]);
        }
        return s;
    };
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("alpha", format_double(cfg.attachment.alpha));
    kv.emplace_back("epsilon", format_double(cfg.attachment.epsilon));
    kv.emplace_back("attachment",
                    cfg.attachment.family == attachment_family::clustering ? "ca" : "lpa");
    kv.emplace_back("m0", std::to_string(cfg.m0));
    kv.emplace_back("steps", std::to_string(cfg.steps));
    kv.emplace_back("deletion", cfg.deletion == deletion_mode::none           ? "none"
                                : cfg.deletion == deletion_mode::uniform_node ? "node"
                                                                              : "edge");
    kv.emplace_back("initial", cfg.initial.to_string());
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("tracked_nodes", join_ids(cfg.tracked_nodes));
    kv.emplace_back("recompute_period", std::to_string(cfg.recompute_period));
    if (!cfg.forced_targets.empty()) kv.emplace_back("forced_targets", join_ids(cfg.forced_targets));
    if (cfg.deletion == deletion_mode::uniform_edge)
        kv.emplace_back("edge_deletion_pool",
                        cfg.edge_deletion_pool_pre_attachment ? "pre" : "post");
    return kv;
}

} // namespace cagl
