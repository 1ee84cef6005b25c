#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ducba {

struct ConfusionMatrix {
    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
    int64_t total() const { return tp + fp + tn + fn; }
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_zero_den = false;  // flagged when a zero denominator forced the 0
    bool recall_zero_den = false;
};

struct EvaluationReport {
    ConfusionMatrix confusion;
    std::map<std::string, ClassMetrics> per_class;
    ClassMetrics macro;  // unweighted mean over classes
    double accuracy = 0.0;
    std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr)
    double auc = 0.0;
};

// Binary confusion counts; `pred`/`truth` are class codes, `positive` names
// the positive class code.
ConfusionMatrix confusion(const std::vector<std::pair<uint16_t, uint16_t>>& true_pred_pairs,
                          uint16_t positive);

struct Prf1Result {
    ClassMetrics positive;
    ClassMetrics negative;
    ClassMetrics macro;
    double accuracy = 0.0;
};

Prf1Result prf1(const ConfusionMatrix& cm);

struct RocResult {
    std::vector<std::pair<double, double>> points;
    double auc = 0.0;
};

// ROC by sweeping thresholds over the distinct scores; AUC by trapezoid,
// cross-checked against the pairwise (ties count 1/2) formulation.
RocResult roc_auc(const std::vector<std::pair<bool, double>>& is_positive_and_score);

// Positive-class score for a rule-list prediction: the deciding rule's
// confidence when it predicts positive, its complement otherwise. The
// default path follows the same convention.
inline double positive_class_score(uint16_t predicted, double score, uint16_t positive) {
    return predicted == positive ? score : 1.0 - score;
}

// Report emission. JSON carries full precision; the CSV is a flat
// (metric, class, value) table; the text table rounds percentages half-up
// to two decimals.
std::string report_to_json(const EvaluationReport& report);
std::string report_to_csv(const EvaluationReport& report);
std::string roc_to_csv(const std::vector<std::pair<double, double>>& points);
std::string report_table(const EvaluationReport& report, const std::string& positive_name,
                         const std::string& negative_name);

double round_half_up_2dp(double percent);

}  // namespace ducba
