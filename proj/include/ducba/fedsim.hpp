#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ducba/cba.hpp"
#include "ducba/config.hpp"
#include "ducba/dataset.hpp"
#include "ducba/ducba.hpp"
#include "ducba/metrics.hpp"

namespace ducba {

// Preprocessed, split data shared by every run in a sweep: the test
// partition is fixed once and never perturbed.
struct PreparedData {
    Dataset full;  // cleaned, derived, discretized, feature-selected
    SplitResult split;
    std::vector<std::string> dropped_features;
    size_t dropped_rows = 0;
    uint16_t positive_code = 0;
};

PreparedData prepare_data(const ExperimentConfig& cfg);
PreparedData prepare_data(const ExperimentConfig& cfg, uint64_t seed);

struct RunOutcome {
    EvaluationReport report;
    std::optional<double> epsilon;
    std::vector<size_t> client_rule_counts;
    size_t merged_rule_count = 0;
    std::string run_dir;  // empty when artifacts were not persisted
};

// One experiment: optionally perturb each client partition, train local
// classifiers, merge on the server, evaluate the merged model on the clean
// test partition. Artifacts land under cfg.out_dir when persist is set.
RunOutcome run_single(const ExperimentConfig& cfg, std::optional<double> epsilon,
                      bool persist = true);
RunOutcome run_single(const PreparedData& prepared, const ExperimentConfig& cfg,
                      std::optional<double> epsilon, bool persist);

struct SweepOutcome {
    RunOutcome baseline;
    std::vector<std::pair<double, RunOutcome>> per_epsilon;
    std::string sweep_csv;
};

// Baseline plus one run per grid epsilon, all sharing the same split.
SweepOutcome run_sweep(const ExperimentConfig& cfg, bool persist = true);

struct InspectOutcome {
    DatasetStats stats;
    size_t dropped_rows = 0;
    std::vector<std::pair<std::string, ChiSquareResult>> chi_square;
};

InspectOutcome inspect_dataset(const ExperimentConfig& cfg);

// Merged-model evaluation with the rule-list scoring convention.
EvaluationReport evaluate_model(const RuleModel& model, const Dataset& test, uint16_t positive_code);

}  // namespace ducba
