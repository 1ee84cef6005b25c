#include "ducba/fedsim.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "ducba/privacy.hpp"

namespace fs = std::filesystem;

namespace ducba {

namespace {

Dataset preprocess(const ExperimentConfig& cfg, std::vector<std::string>* dropped_features,
                   size_t* dropped_rows) {
    LoadResult loaded = load_csv(cfg.data_path, standard_schema(), cfg.target);
    if (dropped_rows) *dropped_rows = loaded.dropped_rows;

    Dataset ds = std::move(loaded.data);
    auto thalach = ds.find_attr("thalach");
    auto age = ds.find_attr("age");
    if (thalach && age && ds.schema[*thalach].kind == AttrKind::numeric &&
        ds.schema[*age].kind == AttrKind::numeric)
        ds = derive_thalach_ratio(ds);

    ds = discretize(ds, cfg.disc);
    SelectResult selected = select_features(ds, cfg.alpha);
    if (dropped_features) *dropped_features = selected.dropped;
    return std::move(selected.data);
}

uint16_t positive_code_of(const Dataset& ds, const std::string& positive_label) {
    auto it = std::find(ds.class_domain.begin(), ds.class_domain.end(), positive_label);
    if (it == ds.class_domain.end())
        throw std::runtime_error("positive label '" + positive_label + "' not in class domain");
    return static_cast<uint16_t>(it - ds.class_domain.begin());
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string epsilon_dir_name(std::optional<double> epsilon) {
    if (!epsilon) return "baseline";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "eps_%g", *epsilon);
    return buf;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_report_rows(std::ostringstream& out, const std::string& epsilon_label,
                        const EvaluationReport& report) {
    auto row = [&](const std::string& metric, const std::string& cls, double v) {
        out << epsilon_label << ',' << metric << ',' << cls << ',' << fmt_g(v) << '\n';
    };
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
}

}  // namespace

PreparedData prepare_data(const ExperimentConfig& cfg, uint64_t seed) {
    validate_config(cfg);
    PreparedData prep;
    prep.full = preprocess(cfg, &prep.dropped_features, &prep.dropped_rows);
    SplitSpec spec = cfg.split;
    spec.seed = seed;
    prep.split = split_and_partition(prep.full, spec);
    prep.positive_code = positive_code_of(prep.full, cfg.positive_label);
    return prep;
}

PreparedData prepare_data(const ExperimentConfig& cfg) {
    return prepare_data(cfg, cfg.split.seed);
}

EvaluationReport evaluate_model(const RuleModel& model, const Dataset& test, uint16_t positive_code) {
    if (test.n_records() == 0) throw std::runtime_error("empty test partition");

    std::vector<std::pair<uint16_t, uint16_t>> pairs;
    std::vector<std::pair<bool, double>> scored;
    pairs.reserve(test.n_records());
    scored.reserve(test.n_records());
    for (size_t r = 0; r < test.n_records(); ++r) {
        Prediction p = classify(model, test, r);
        pairs.emplace_back(test.labels[r], p.label);
        scored.emplace_back(test.labels[r] == positive_code,
                            positive_class_score(p.label, p.score, positive_code));
    }

    EvaluationReport report;
    report.confusion = confusion(pairs, positive_code);
    Prf1Result pr = prf1(report.confusion);
    report.accuracy = pr.accuracy;
    report.macro = pr.macro;
    for (size_t c = 0; c < test.class_domain.size(); ++c)
        report.per_class[test.class_domain[c]] =
            (static_cast<uint16_t>(c) == positive_code) ? pr.positive : pr.negative;

    RocResult roc = roc_auc(scored);
    report.roc_points = std::move(roc.points);
    report.auc = roc.auc;
    return report;
}

RunOutcome run_single(const PreparedData& prepared, const ExperimentConfig& cfg,
                      std::optional<double> epsilon, bool persist) {
    RunOutcome outcome;
    outcome.epsilon = epsilon;

    std::vector<ClientModel> clients;
    std::vector<std::string> wires;
    for (size_t c = 0; c < prepared.split.train_parts.size(); ++c) {
        const Dataset& part = prepared.split.train_parts[c];
        Dataset training = part;
        if (epsilon) {
            RRConfig rr{*epsilon, cfg.rr_perturb_label, 0};
            Rng rng = Rng::stream(cfg.split.seed,
                                  {stream_tag::perturb, std::bit_cast<uint64_t>(*epsilon),
                                   static_cast<uint64_t>(c)});
            training = perturb_dataset(part, rr, rng);
        }

        std::vector<ClassAssociationRule> cars = mine_cars(training, cfg.mining);
        if (cars.empty())
            std::cerr << "warning: client " << c << " mined zero rules; sending default-only model\n";
        ClientModel cm;
        cm.model = build_classifier(std::move(cars), training, cfg.prune);
        cm.train_count = static_cast<int64_t>(training.n_records());
        cm.client_id = static_cast<int>(c);
        outcome.client_rule_counts.push_back(cm.model.rules.size());
        if (persist) wires.push_back(to_wire(cm.model, prepared.full, cm.train_count));
        clients.push_back(std::move(cm));
    }

    MergedModel merged = merge(clients);
    outcome.merged_rule_count = merged.model.rules.size();
    outcome.report = evaluate_model(merged.model, prepared.split.test, prepared.positive_code);

    if (persist) {
        fs::path dir = fs::path(cfg.out_dir) / epsilon_dir_name(epsilon);
        fs::create_directories(dir);
        for (size_t c = 0; c < wires.size(); ++c)
            write_file(dir / ("client_" + std::to_string(c) + ".rules"), wires[c]);
        write_file(dir / "merged.rules",
                   to_wire(merged.model, prepared.full, merged.total_train_count));
        write_file(dir / "merged.provenance", provenance_sidecar(merged));
        write_file(dir / "report.json", report_to_json(outcome.report));
        write_file(dir / "report.csv", report_to_csv(outcome.report));
        write_file(dir / "roc.csv", roc_to_csv(outcome.report.roc_points));
        outcome.run_dir = dir.string();
    }
    return outcome;
}

RunOutcome run_single(const ExperimentConfig& cfg, std::optional<double> epsilon, bool persist) {
    PreparedData prepared = prepare_data(cfg);
    return run_single(prepared, cfg, epsilon, persist);
}

SweepOutcome run_sweep(const ExperimentConfig& cfg, bool persist) {
    validate_config(cfg);
    if (cfg.epsilon_grid.empty()) throw std::runtime_error("sweep.grid is empty");

    SweepOutcome outcome;
    PreparedData prepared = prepare_data(cfg);
    outcome.baseline = run_single(prepared, cfg, std::nullopt, persist);

    for (double eps : cfg.epsilon_grid) {
        if (cfg.reseed_per_epsilon) {
            uint64_t seed = derive_stream_seed(cfg.split.seed, {std::bit_cast<uint64_t>(eps)});
            PreparedData reseeded = prepare_data(cfg, seed);
            outcome.per_epsilon.emplace_back(eps, run_single(reseeded, cfg, eps, persist));
        } else {
            outcome.per_epsilon.emplace_back(eps, run_single(prepared, cfg, eps, persist));
        }
    }

    std::ostringstream csv;
    csv << "epsilon,metric,class,value\n";
    append_report_rows(csv, "baseline", outcome.baseline.report);
    for (const auto& [eps, run] : outcome.per_epsilon) {
        char label[40];
        std::snprintf(label, sizeof(label), "%g", eps);
        append_report_rows(csv, label, run.report);
    }
    outcome.sweep_csv = csv.str();

    if (persist) {
        fs::create_directories(cfg.out_dir);
        write_file(fs::path(cfg.out_dir) / "sweep.csv", outcome.sweep_csv);
    }
    return outcome;
}

InspectOutcome inspect_dataset(const ExperimentConfig& cfg) {
    if (cfg.data_path.empty()) throw std::runtime_error("data.path is required");
    InspectOutcome out;
    LoadResult loaded = load_csv(cfg.data_path, standard_schema(), cfg.target);
    out.dropped_rows = loaded.dropped_rows;
    Dataset ds = std::move(loaded.data);
    auto thalach = ds.find_attr("thalach");
    auto age = ds.find_attr("age");
    if (thalach && age && ds.schema[*thalach].kind == AttrKind::numeric &&
        ds.schema[*age].kind == AttrKind::numeric)
        ds = derive_thalach_ratio(ds);
    ds = discretize(ds, cfg.disc);
    out.stats = dataset_stats(ds);
    out.chi_square = chi_square_per_attribute(ds);
    return out;
}

}  // namespace ducba
