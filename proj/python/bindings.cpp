// Python bindings exposing the pipeline's main operations: dataset
// handling, rule mining, classifier construction, the server-side merge,
// randomized response, metrics, and the experiment drivers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ducba/cba.hpp"
#include "ducba/config.hpp"
#include "ducba/dataset.hpp"
#include "ducba/ducba.hpp"
#include "ducba/fedsim.hpp"
#include "ducba/fraction.hpp"
#include "ducba/metrics.hpp"
#include "ducba/mining.hpp"
#include "ducba/privacy.hpp"
#include "ducba/rng.hpp"
#include "ducba/synth.hpp"

namespace py = pybind11;
using namespace ducba;

namespace {

Dataset make_dataset(const std::vector<std::string>& attr_names,
                     const std::vector<std::vector<std::string>>& domains,
                     const std::vector<std::vector<uint16_t>>& rows,
                     const std::vector<uint16_t>& labels,
                     const std::vector<std::string>& class_domain) {
    if (attr_names.size() != domains.size())
        throw std::invalid_argument("attr_names and domains differ in length");
    if (rows.size() != labels.size())
        throw std::invalid_argument("rows and labels differ in length");
    Dataset ds;
    for (size_t a = 0; a < attr_names.size(); ++a)
        ds.schema.push_back({attr_names[a], AttrKind::categorical, domains[a]});
    ds.numeric_cols.resize(attr_names.size());
    ds.cat_cols.resize(attr_names.size());
    for (const auto& row : rows) {
        if (row.size() != attr_names.size())
            throw std::invalid_argument("row width does not match the schema");
        for (size_t a = 0; a < row.size(); ++a) {
            if (row[a] >= domains[a].size()) throw std::invalid_argument("value code out of domain");
            ds.cat_cols[a].push_back(row[a]);
        }
    }
    for (uint16_t l : labels) {
        if (l >= class_domain.size()) throw std::invalid_argument("label code out of domain");
        ds.labels.push_back(l);
    }
    ds.class_domain = class_domain;
    return ds;
}

py::dict class_metrics_dict(const ClassMetrics& m) {
    py::dict d;
    d["precision"] = m.precision;
    d["recall"] = m.recall;
    d["f1"] = m.f1;
    return d;
}

py::dict report_dict(const EvaluationReport& r) {
    py::dict d;
    py::dict confusion;
    confusion["tp"] = r.confusion.tp;
    confusion["fp"] = r.confusion.fp;
    confusion["tn"] = r.confusion.tn;
    confusion["fn"] = r.confusion.fn;
    d["confusion"] = confusion;
    d["accuracy"] = r.accuracy;
    py::dict per_class;
    for (const auto& [name, m] : r.per_class) per_class[py::str(name)] = class_metrics_dict(m);
    d["per_class"] = per_class;
    d["macro"] = class_metrics_dict(r.macro);
    d["auc"] = r.auc;
    d["roc_points"] = r.roc_points;
    return d;
}

MiningParams mining_params(double min_support, double min_confidence, uint32_t max_len) {
    MiningParams p;
    p.min_support = fraction_from_double(min_support);
    p.min_confidence = fraction_from_double(min_confidence);
    p.max_antecedent_len = max_len;
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Federated rule-based classification with randomized-response privacy";

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_records", &Dataset::n_records)
        .def_property_readonly("n_attrs", &Dataset::n_attrs)
        .def_property_readonly("class_domain",
                               [](const Dataset& ds) { return ds.class_domain; })
        .def_property_readonly("attr_names",
                               [](const Dataset& ds) {
                                   std::vector<std::string> names;
                                   for (const auto& a : ds.schema) names.push_back(a.name);
                                   return names;
                               })
        .def_property_readonly("fully_categorical", &Dataset::fully_categorical)
        .def("domain",
             [](const Dataset& ds, size_t attr) { return ds.schema.at(attr).domain; },
             py::arg("attr"))
        .def("record",
             [](const Dataset& ds, size_t row) {
                 if (row >= ds.n_records()) throw py::index_error();
                 return ds.record_codes(row);
             },
             py::arg("row"))
        .def("label",
             [](const Dataset& ds, size_t row) {
                 if (row >= ds.n_records()) throw py::index_error();
                 return ds.labels[row];
             },
             py::arg("row"))
        .def("stats", [](const Dataset& ds) {
            DatasetStats st = dataset_stats(ds);
            py::dict d;
            d["record_count"] = st.record_count;
            d["class_counts"] = st.class_counts;
            d["imbalance_ratio"] = st.imbalance_ratio;
            return d;
        });

    py::class_<ClassAssociationRule>(m, "Rule")
        .def_property_readonly("antecedent",
                               [](const ClassAssociationRule& r) {
                                   std::vector<std::pair<uint16_t, uint16_t>> items;
                                   for (const auto& it : r.antecedent)
                                       items.emplace_back(it.attr, it.value);
                                   return items;
                               })
        .def_readonly("label", &ClassAssociationRule::label)
        .def_readonly("support", &ClassAssociationRule::support)
        .def_readonly("confidence", &ClassAssociationRule::confidence)
        .def_readonly("order", &ClassAssociationRule::order)
        .def("__repr__", [](const ClassAssociationRule& r) {
            std::string s = "Rule(";
            for (size_t i = 0; i < r.antecedent.size(); ++i) {
                if (i) s += " & ";
                s += "a" + std::to_string(r.antecedent[i].attr) + "=" +
                     std::to_string(r.antecedent[i].value);
            }
            s += " -> " + std::to_string(r.label) +
                 ", conf=" + std::to_string(r.confidence) +
                 ", supp=" + std::to_string(r.support) + ")";
            return s;
        });

    py::class_<RuleModel>(m, "RuleModel")
        .def_readonly("rules", &RuleModel::rules)
        .def_readonly("default_class", &RuleModel::default_class)
        .def_readonly("default_confidence", &RuleModel::default_confidence);

    py::class_<ClientModel>(m, "ClientModel")
        .def(py::init([](const RuleModel& model, int64_t train_count, int client_id) {
                 return ClientModel{model, train_count, client_id};
             }),
             py::arg("model"), py::arg("train_count"), py::arg("client_id"))
        .def_readonly("model", &ClientModel::model)
        .def_readonly("train_count", &ClientModel::train_count)
        .def_readonly("client_id", &ClientModel::client_id);

    py::class_<MergedModel>(m, "MergedModel")
        .def_readonly("model", &MergedModel::model)
        .def_readonly("provenance", &MergedModel::provenance)
        .def_readonly("total_train_count", &MergedModel::total_train_count);

    py::class_<RRChannel>(m, "RRChannel")
        .def(py::init(&RRChannel::make), py::arg("epsilon"), py::arg("domain_size"))
        .def_readonly("domain_size", &RRChannel::domain_size)
        .def_readonly("keep_prob", &RRChannel::keep_prob)
        .def_readonly("flip_prob", &RRChannel::flip_prob);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def("override", &apply_override, py::arg("key"), py::arg("value"))
        .def_readwrite("data_path", &ExperimentConfig::data_path)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir);

    m.def("parse_config", &parse_config_text, py::arg("text"),
          "Parse an experiment config from key = value text");
    m.def("parse_config_file", &parse_config_file, py::arg("path"));

    m.def("make_dataset", &make_dataset, py::arg("attr_names"), py::arg("domains"),
          py::arg("rows"), py::arg("labels"), py::arg("class_domain"),
          "Build a categorical dataset from coded rows");
    m.def("load_csv",
          [](const std::string& path, const std::string& target) {
              LoadResult res = load_csv(path, standard_schema(), target);
              return py::make_tuple(std::move(res.data), res.dropped_rows);
          },
          py::arg("path"), py::arg("target") = "target",
          "Load the 14-column hypertension-style CSV; returns (dataset, dropped_rows)");
    m.def("derive_thalach_ratio", &derive_thalach_ratio, py::arg("dataset"));
    m.def("discretize",
          [](const Dataset& ds, int bins) {
              DiscretizationPlan plan;
              plan.default_bins = bins;
              return discretize(ds, plan);
          },
          py::arg("dataset"), py::arg("bins") = 4,
          "Equal-frequency binning of every numeric attribute");
    m.def("select_features",
          [](const Dataset& ds, double alpha) {
              SelectResult res = select_features(ds, alpha);
              return py::make_tuple(std::move(res.data), res.dropped);
          },
          py::arg("dataset"), py::arg("alpha") = 0.05);
    m.def("split_partition",
          [](const Dataset& ds, double train_fraction, int clients, uint64_t seed) {
              SplitResult res = split_and_partition(ds, {train_fraction, clients, seed});
              return py::make_tuple(std::move(res.train_parts), std::move(res.test));
          },
          py::arg("dataset"), py::arg("train_fraction") = 0.8, py::arg("clients") = 3,
          py::arg("seed") = 42);
    m.def("chi_square",
          [](const std::vector<std::vector<int64_t>>& table) {
              ChiSquareResult r = chi_square_statistic(table);
              return py::make_tuple(r.statistic, r.dof, r.p_value);
          },
          py::arg("table"), "Chi-square test of independence; returns (statistic, dof, p)");

    m.def("mine_cars",
          [](const Dataset& ds, double min_support, double min_confidence, uint32_t max_len) {
              return mine_cars(ds, mining_params(min_support, min_confidence, max_len));
          },
          py::arg("dataset"), py::arg("min_support") = 0.02, py::arg("min_confidence") = 0.5,
          py::arg("max_antecedent_len") = 0);
    m.def("build_classifier",
          [](const std::vector<ClassAssociationRule>& rules, const Dataset& train, bool prune) {
              return build_classifier(rules, train, prune);
          },
          py::arg("rules"), py::arg("train"), py::arg("prune") = true);
    m.def("classify",
          [](const RuleModel& model, std::vector<int32_t> record) {
              std::vector<uint16_t> rec;
              for (int32_t v : record)
                  rec.push_back(v < 0 ? kUnknownValue : static_cast<uint16_t>(v));
              Prediction p = classify(model, rec);
              return py::make_tuple(p.label, p.score);
          },
          py::arg("model"), py::arg("record"),
          "First-match prediction; negative codes mean unknown values");
    m.def("merge", &merge, py::arg("clients"),
          "Server-side merge of client models into the global rule list");
    m.def("to_wire", &to_wire, py::arg("model"), py::arg("schema_source"),
          py::arg("train_count"), "Serialize a model in the client-to-server text format");
    m.def("bind_wire",
          [](const std::string& text, const Dataset& schema_source, int client_id) {
              return bind_model(parse_wire(text), schema_source, client_id);
          },
          py::arg("text"), py::arg("schema_source"), py::arg("client_id") = 0);

    m.def("perturb_dataset",
          [](const Dataset& ds, double epsilon, uint64_t seed, bool perturb_label) {
              RRConfig cfg{epsilon, perturb_label, 0};
              Rng rng = Rng::stream(seed, {stream_tag::perturb});
              return perturb_dataset(ds, cfg, rng);
          },
          py::arg("dataset"), py::arg("epsilon"), py::arg("seed"),
          py::arg("perturb_label") = false);
    m.def("estimate_true_frequency",
          [](const std::map<uint16_t, int64_t>& observed, const RRChannel& ch, int64_t n) {
              return estimate_true_frequency(observed, ch, n);
          },
          py::arg("observed"), py::arg("channel"), py::arg("n"));

    m.def("evaluate",
          [](const RuleModel& model, const Dataset& test, uint16_t positive_code) {
              return report_dict(evaluate_model(model, test, positive_code));
          },
          py::arg("model"), py::arg("test"), py::arg("positive_code") = 1);
    m.def("roc_auc",
          [](const std::vector<std::pair<bool, double>>& scored) {
              RocResult r = roc_auc(scored);
              return py::make_tuple(r.points, r.auc);
          },
          py::arg("scored"));

    m.def("run_single",
          [](const ExperimentConfig& cfg, std::optional<double> epsilon, bool persist) {
              RunOutcome run = run_single(cfg, epsilon ? epsilon : cfg.rr_epsilon, persist);
              py::dict d = report_dict(run.report);
              d["epsilon"] = run.epsilon;
              d["run_dir"] = run.run_dir;
              d["client_rule_counts"] = run.client_rule_counts;
              d["merged_rule_count"] = run.merged_rule_count;
              return d;
          },
          py::arg("config"), py::arg("epsilon") = py::none(), py::arg("persist") = true);
    m.def("run_sweep",
          [](const ExperimentConfig& cfg, bool persist) {
              SweepOutcome sweep = run_sweep(cfg, persist);
              py::dict d;
              d["baseline"] = report_dict(sweep.baseline.report);
              py::dict per;
              for (const auto& [eps, run] : sweep.per_epsilon)
                  per[py::float_(eps)] = report_dict(run.report);
              d["per_epsilon"] = per;
              d["sweep_csv"] = sweep.sweep_csv;
              return d;
          },
          py::arg("config"), py::arg("persist") = true);
    m.def("inspect",
          [](const ExperimentConfig& cfg) {
              InspectOutcome out = inspect_dataset(cfg);
              py::dict d;
              d["record_count"] = out.stats.record_count;
              d["class_counts"] = out.stats.class_counts;
              d["imbalance_ratio"] = out.stats.imbalance_ratio;
              d["dropped_rows"] = out.dropped_rows;
              py::dict chi;
              for (const auto& [name, cs] : out.chi_square)
                  chi[py::str(name)] = py::make_tuple(cs.statistic, cs.dof, cs.p_value);
              d["chi_square"] = chi;
              return d;
          },
          py::arg("config"));

    m.def("synthesize_csv",
          [](size_t positives, size_t negatives, uint64_t seed) {
              return synthesize_csv({positives, negatives, seed});
          },
          py::arg("positives") = 14274, py::arg("negatives") = 11809, py::arg("seed") = 7,
          "Generate the synthetic hypertension-style table as CSV text");
    m.def("write_synthetic_csv",
          [](const std::string& path, size_t positives, size_t negatives, uint64_t seed) {
              write_synthetic_csv(path, {positives, negatives, seed});
          },
          py::arg("path"), py::arg("positives") = 14274, py::arg("negatives") = 11809,
          py::arg("seed") = 7);
}
