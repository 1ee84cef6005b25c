#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ducba/dataset.hpp"
#include "ducba/mining.hpp"

namespace ducba {

struct ExperimentConfig {
    std::string data_path;
    std::string target = "target";
    std::string positive_label = "1";
    std::string out_dir = "out";

    SplitSpec split;        // 0.8 train fraction, 3 clients, seed 42
    MiningParams mining;    // min support 0.02, min confidence 0.5
    bool prune = true;
    double alpha = 0.05;

    std::optional<double> rr_epsilon;  // unset = train on clean data
    bool rr_perturb_label = false;

    std::vector<double> epsilon_grid = {0.1, 0.5, 1.0, 2.0, 3.0, 5.0};
    bool reseed_per_epsilon = false;

    DiscretizationPlan disc;
};

// Plain `key = value` lines; '#' starts a comment. Keys mirror the config
// field paths (data.path, split.seed, mining.min_support, rr.epsilon,
// sweep.grid, disc.bins, disc.cuts.<column>, disc.range.<column>, ...).
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// A CLI override `key=value` lands exactly like the config-file line.
void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value);

void validate_config(const ExperimentConfig& cfg);

}  // namespace ducba
