#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ducba {

enum class AttrKind { numeric, categorical };

struct AttributeSchema {
    std::string name;
    AttrKind kind = AttrKind::categorical;
    std::vector<std::string> domain;  // category codes; filled once categorical
};

// Rectangular table of attribute values plus a class label per record.
// Categorical cells are stored as indices into the attribute domain,
// numeric cells as raw doubles pending discretization. Storage is
// column-major; record views are assembled on demand.
struct Dataset {
    std::vector<AttributeSchema> schema;
    std::vector<std::vector<double>> numeric_cols;    // per attribute; empty unless numeric
    std::vector<std::vector<uint16_t>> cat_cols;      // per attribute; empty unless categorical
    std::vector<uint16_t> labels;                     // class code per record
    std::vector<std::string> class_domain;

    size_t n_records() const { return labels.size(); }
    size_t n_attrs() const { return schema.size(); }

    bool fully_categorical() const;
    std::optional<size_t> find_attr(const std::string& name) const;

    uint16_t cat_code(size_t row, size_t attr) const { return cat_cols[attr][row]; }
    double num_value(size_t row, size_t attr) const { return numeric_cols[attr][row]; }

    // Row of categorical codes aligned with the schema (attrs must all be categorical).
    std::vector<uint16_t> record_codes(size_t row) const;

    Dataset subset(const std::vector<uint32_t>& rows) const;
    Dataset drop_attrs(const std::vector<size_t>& attr_indices) const;
};

struct DatasetStats {
    size_t record_count = 0;
    std::map<std::string, size_t> class_counts;
    double imbalance_ratio = 1.0;  // majority count / minority count
};

struct SplitSpec {
    double train_fraction = 0.8;
    int client_count = 3;
    uint64_t seed = 42;
};

struct LoadResult {
    Dataset data;
    size_t dropped_rows = 0;
};

// Reads a comma-delimited, UTF-8, header-first CSV. Header names must match
// the schema names plus the target exactly (order-insensitive). Rows with
// empty or unparseable cells are dropped and counted.
LoadResult load_csv(const std::string& path,
                    const std::vector<AttributeSchema>& schema,
                    const std::string& target_name);

// The hypertension table layout: 13 attributes plus a 0/1 target.
std::vector<AttributeSchema> standard_schema();

struct DiscretizationPlan {
    int default_bins = 4;  // equal-frequency bins for columns without explicit cuts
    std::map<std::string, std::vector<double>> explicit_cuts;       // half-open [low, high) bins
    std::map<std::string, std::pair<double, double>> value_ranges;  // optional [lo, hi) bounds
};

// Converts every numeric attribute to categorical bin labels b0..b{k-1}.
Dataset discretize(const Dataset& ds, const DiscretizationPlan& plan);

// Adds numeric thalach_ratio = thalach / (220 - age) and removes thalach.
Dataset derive_thalach_ratio(const Dataset& ds);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 1;
    double p_value = 1.0;
};

// Pearson chi-square test of independence on a contingency table of counts.
ChiSquareResult chi_square_statistic(const std::vector<std::vector<int64_t>>& table);

// Per-attribute chi-square of attribute vs class label; requires a fully
// categorical dataset.
std::vector<std::pair<std::string, ChiSquareResult>> chi_square_per_attribute(const Dataset& ds);

struct SelectResult {
    Dataset data;
    std::vector<std::string> dropped;
};

// Removes attributes whose p-value against the class exceeds alpha.
SelectResult select_features(const Dataset& ds, double alpha);

struct SplitResult {
    std::vector<Dataset> train_parts;
    Dataset test;
};

// Deterministic shuffle, train/test split, and equal client partitioning.
SplitResult split_and_partition(const Dataset& ds, const SplitSpec& spec);

DatasetStats dataset_stats(const Dataset& ds);

// Regularized upper incomplete gamma Q(a, x); exposed for tests.
double regularized_gamma_q(double a, double x);

}  // namespace ducba
