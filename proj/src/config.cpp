#include "ducba/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ducba/fraction.hpp"

namespace ducba {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::runtime_error("expected a boolean, got: " + v);
}

std::vector<double> parse_double_list(const std::string& v) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    std::string v = trim(value);
    if (key == "data.path") cfg.data_path = v;
    else if (key == "data.target") cfg.target = v;
    else if (key == "data.positive_label") cfg.positive_label = v;
    else if (key == "out.dir") cfg.out_dir = v;
    else if (key == "split.train_fraction") cfg.split.train_fraction = std::stod(v);
    else if (key == "split.clients") cfg.split.client_count = std::stoi(v);
    else if (key == "split.seed") cfg.split.seed = std::stoull(v);
    else if (key == "mining.min_support") cfg.mining.min_support = fraction_from_decimal(v);
    else if (key == "mining.min_confidence") cfg.mining.min_confidence = fraction_from_decimal(v);
    else if (key == "mining.max_antecedent_len") cfg.mining.max_antecedent_len = static_cast<uint32_t>(std::stoul(v));
    else if (key == "prune") cfg.prune = parse_bool(v);
    else if (key == "alpha") cfg.alpha = std::stod(v);
    else if (key == "rr.epsilon") {
        if (v.empty() || v == "none") cfg.rr_epsilon.reset();
        else cfg.rr_epsilon = std::stod(v);
    }
    else if (key == "rr.perturb_label") cfg.rr_perturb_label = parse_bool(v);
    else if (key == "sweep.grid") cfg.epsilon_grid = parse_double_list(v);
    else if (key == "sweep.reseed_per_epsilon") cfg.reseed_per_epsilon = parse_bool(v);
    else if (key == "disc.bins") cfg.disc.default_bins = std::stoi(v);
    else if (key.starts_with("disc.cuts.")) cfg.disc.explicit_cuts[key.substr(10)] = parse_double_list(v);
    else if (key.starts_with("disc.range.")) {
        auto vals = parse_double_list(v);
        if (vals.size() != 2) throw std::runtime_error("disc.range wants `lo,hi`: " + key);
        cfg.disc.value_ranges[key.substr(11)] = {vals[0], vals[1]};
    }
    else throw std::runtime_error("unknown config key: " + key);
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + " lacks '='");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        apply_override(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.data_path.empty()) throw std::runtime_error("data.path is required");
    if (!(cfg.split.train_fraction > 0.0 && cfg.split.train_fraction < 1.0))
        throw std::runtime_error("split.train_fraction must lie in (0,1)");
    if (cfg.split.client_count < 1) throw std::runtime_error("split.clients must be >= 1");
    if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0) throw std::runtime_error("alpha must lie in (0,1)");
    if (cfg.rr_epsilon && !(*cfg.rr_epsilon > 0.0))
        throw std::runtime_error("rr.epsilon must be positive");
    for (size_t i = 0; i + 1 < cfg.epsilon_grid.size(); ++i)
        if (!(cfg.epsilon_grid[i] < cfg.epsilon_grid[i + 1]))
            throw std::runtime_error("sweep.grid must be strictly increasing");
    for (double e : cfg.epsilon_grid)
        if (!(e > 0.0)) throw std::runtime_error("sweep.grid values must be positive");
}

Fraction fraction_from_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return fraction_from_decimal(std::string_view(buf, res.ptr - buf));
}

}  // namespace ducba
