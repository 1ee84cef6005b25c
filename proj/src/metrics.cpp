#include "ducba/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ducba {

ConfusionMatrix confusion(const std::vector<std::pair<uint16_t, uint16_t>>& true_pred_pairs,
                          uint16_t positive) {
    if (true_pred_pairs.empty()) throw std::runtime_error("no predictions to score");
    ConfusionMatrix cm;
    for (const auto& [truth, pred] : true_pred_pairs) {
        bool t = truth == positive;
        bool p = pred == positive;
        if (t && p) cm.tp++;
        else if (!t && p) cm.fp++;
        else if (!t && !p) cm.tn++;
        else cm.fn++;
    }
    return cm;
}

namespace {

ClassMetrics class_metrics(int64_t tp, int64_t fp, int64_t fn) {
    ClassMetrics m;
    if (tp + fp == 0) { m.precision = 0.0; m.precision_zero_den = true; }
    else m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn == 0) { m.recall = 0.0; m.recall_zero_den = true; }
    else m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

}  // namespace

Prf1Result prf1(const ConfusionMatrix& cm) {
    Prf1Result out;
    out.positive = class_metrics(cm.tp, cm.fp, cm.fn);
    // Negative class with roles swapped: its true positives are the tn cells.
    out.negative = class_metrics(cm.tn, cm.fn, cm.fp);
    out.macro.precision = (out.positive.precision + out.negative.precision) / 2.0;
    out.macro.recall = (out.positive.recall + out.negative.recall) / 2.0;
    out.macro.f1 = (out.positive.f1 + out.negative.f1) / 2.0;
    int64_t total = cm.total();
    out.accuracy = total > 0 ? static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total) : 0.0;
    return out;
}

namespace {

// Pairwise AUC via midranks: (sum of positive ranks - P(P+1)/2) / (P*N),
// identical to counting score_pos > score_neg with ties worth 1/2.
double pairwise_auc(std::vector<std::pair<bool, double>> scored) {
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    size_t n = scored.size();
    std::vector<double> rank(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && scored[j + 1].second == scored[i].second) ++j;
        double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k) rank[k] = mid;
        i = j + 1;
    }
    double pos_rank_sum = 0.0;
    int64_t pos = 0, neg = 0;
    for (size_t k = 0; k < n; ++k) {
        if (scored[k].first) { pos_rank_sum += rank[k]; pos++; }
        else neg++;
    }
    if (pos == 0 || neg == 0) throw std::runtime_error("AUC undefined for single-class input");
    return (pos_rank_sum - static_cast<double>(pos) * (static_cast<double>(pos) + 1.0) / 2.0) /
           (static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace

RocResult roc_auc(const std::vector<std::pair<bool, double>>& is_positive_and_score) {
    int64_t pos = 0, neg = 0;
    for (const auto& [is_pos, score] : is_positive_and_score) (is_pos ? pos : neg)++;
    if (pos == 0 || neg == 0) throw std::runtime_error("AUC undefined for single-class input");

    std::vector<std::pair<bool, double>> sorted = is_positive_and_score;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });

    RocResult out;
    out.points.emplace_back(0.0, 0.0);
    int64_t tp = 0, fp = 0;
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        // Take all predictions sharing this score in one threshold step.
        while (j + 1 < sorted.size() && sorted[j + 1].second == sorted[i].second) ++j;
        for (size_t k = i; k <= j; ++k) (sorted[k].first ? tp : fp)++;
        out.points.emplace_back(static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos));
        i = j + 1;
    }

    double auc = 0.0;
    for (size_t k = 1; k < out.points.size(); ++k) {
        auto [x0, y0] = out.points[k - 1];
        auto [x1, y1] = out.points[k];
        auc += (x1 - x0) * (y0 + y1) / 2.0;
    }

    double check = pairwise_auc(is_positive_and_score);
    if (std::fabs(check - auc) > 1e-9)
        throw std::logic_error("trapezoidal and pairwise AUC disagree");
    out.auc = auc;
    return out;
}

double round_half_up_2dp(double percent) {
    return std::floor(percent * 100.0 + 0.5) / 100.0;
}

namespace {

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", round_half_up_2dp(fraction * 100.0));
    return buf;
}

nlohmann::ordered_json class_json(const ClassMetrics& m) {
    nlohmann::ordered_json j;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    if (m.precision_zero_den) j["precision_zero_denominator"] = true;
    if (m.recall_zero_den) j["recall_zero_denominator"] = true;
    return j;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["confusion"] = {{"tp", report.confusion.tp},
                      {"fp", report.confusion.fp},
                      {"tn", report.confusion.tn},
                      {"fn", report.confusion.fn}};
    j["accuracy"] = report.accuracy;
    nlohmann::ordered_json per;
    for (const auto& [name, m] : report.per_class) per[name] = class_json(m);
    j["per_class"] = per;
    j["macro"] = class_json(report.macro);
    j["auc"] = report.auc;
    return j.dump(2) + "\n";
}

std::string report_to_csv(const EvaluationReport& report) {
    std::ostringstream out;
    char buf[40];
    auto row = [&](const std::string& metric, const std::string& cls, double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << metric << ',' << cls << ',' << buf << '\n';
    };
    out << "metric,class,value\n";
    for (const auto& [name, m] : report.per_class) {
        row("precision", name, m.precision);
        row("recall", name, m.recall);
        row("f1", name, m.f1);
    }
    row("precision", "macro", report.macro.precision);
    row("recall", "macro", report.macro.recall);
    row("f1", "macro", report.macro.f1);
    row("accuracy", "", report.accuracy);
    row("auc", "", report.auc);
    return out.str();
}

std::string roc_to_csv(const std::vector<std::pair<double, double>>& points) {
    std::ostringstream out;
    out << "fpr,tpr\n";
    char buf[96];
    for (const auto& [fpr, tpr] : points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", fpr, tpr);
        out << buf;
    }
    return out.str();
}

std::string report_table(const EvaluationReport& report, const std::string& positive_name,
                         const std::string& negative_name) {
    std::ostringstream out;
    out << "Class\tPrecision\tRecall\tF1-Score\tAccuracy\n";
    auto row = [&](const std::string& name, const ClassMetrics& m) {
        out << name << '\t' << pct(m.precision) << '\t' << pct(m.recall) << '\t' << pct(m.f1)
            << '\t' << pct(report.accuracy) << '\n';
    };
    auto neg = report.per_class.find(negative_name);
    auto pos = report.per_class.find(positive_name);
    if (neg != report.per_class.end()) row(negative_name, neg->second);
    if (pos != report.per_class.end()) row(positive_name, pos->second);
    row("Macro Average", report.macro);
    return out.str();
}

}  // namespace ducba
