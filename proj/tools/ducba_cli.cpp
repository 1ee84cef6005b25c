// Command-line front end: dataset inspection, single experiment runs,
// epsilon sweeps, and model inspection.
//
// Exit codes: 0 success, 1 usage error, 2 data/pipeline error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ducba/cba.hpp"
#include "ducba/config.hpp"
#include "ducba/fedsim.hpp"

namespace {

// Bad invocations (unknown flags, absent config files) exit 1; failures
// inside the pipeline (bad data, bad config values) exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<uint64_t> seed;
    std::optional<int> clients;
    std::optional<std::string> min_support;
    std::optional<std::string> min_confidence;
    std::optional<double> epsilon;
    std::optional<std::string> sweep_grid;
    std::optional<std::string> data_path;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
    auto* c = cmd->add_option("-c,--config", opts.config_path, "experiment config file");
    if (config_required) c->required();
    cmd->add_option("--override", opts.overrides, "config override, key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "alias for split.seed");
    cmd->add_option("--clients", opts.clients, "alias for split.clients");
    cmd->add_option("--min-support", opts.min_support, "alias for mining.min_support");
    cmd->add_option("--min-confidence", opts.min_confidence, "alias for mining.min_confidence");
    cmd->add_option("--epsilon", opts.epsilon, "alias for rr.epsilon");
    cmd->add_option("--sweep-grid", opts.sweep_grid, "alias for sweep.grid");
    cmd->add_option("--data", opts.data_path, "alias for data.path");
    cmd->add_option("--out", opts.out_dir, "alias for out.dir");
}

ducba::ExperimentConfig build_config(const CommonOpts& opts) {
    ducba::ExperimentConfig cfg;
    if (!opts.config_path.empty()) {
        std::ifstream probe(opts.config_path);
        if (!probe) throw UsageError("config file not found: " + opts.config_path);
        cfg = ducba::parse_config_file(opts.config_path);
    }
    if (opts.data_path) ducba::apply_override(cfg, "data.path", *opts.data_path);
    if (opts.out_dir) ducba::apply_override(cfg, "out.dir", *opts.out_dir);
    if (opts.seed) ducba::apply_override(cfg, "split.seed", std::to_string(*opts.seed));
    if (opts.clients) ducba::apply_override(cfg, "split.clients", std::to_string(*opts.clients));
    if (opts.min_support) ducba::apply_override(cfg, "mining.min_support", *opts.min_support);
    if (opts.min_confidence) ducba::apply_override(cfg, "mining.min_confidence", *opts.min_confidence);
    if (opts.epsilon) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", *opts.epsilon);
        ducba::apply_override(cfg, "rr.epsilon", buf);
    }
    if (opts.sweep_grid) ducba::apply_override(cfg, "sweep.grid", *opts.sweep_grid);
    for (const auto& ov : opts.overrides) {
        size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--override", "expected key=value, got: " + ov);
        ducba::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    return cfg;
}

void print_report_summary(const ducba::RunOutcome& run) {
    const auto& r = run.report;
    if (run.epsilon) std::printf("epsilon          %g\n", *run.epsilon);
    else std::printf("epsilon          none (baseline)\n");
    std::printf("accuracy         %.4f\n", r.accuracy);
    std::printf("auc              %.4f\n", r.auc);
    std::printf("confusion        tp=%lld fp=%lld tn=%lld fn=%lld\n",
                static_cast<long long>(r.confusion.tp), static_cast<long long>(r.confusion.fp),
                static_cast<long long>(r.confusion.tn), static_cast<long long>(r.confusion.fn));
    for (const auto& [name, m] : r.per_class)
        std::printf("class %-10s precision=%.4f recall=%.4f f1=%.4f\n", name.c_str(), m.precision,
                    m.recall, m.f1);
    std::printf("macro            precision=%.4f recall=%.4f f1=%.4f\n", r.macro.precision,
                r.macro.recall, r.macro.f1);
    if (!run.run_dir.empty()) std::printf("artifacts        %s\n", run.run_dir.c_str());
}

int cmd_inspect(const CommonOpts& opts) {
    ducba::ExperimentConfig cfg = build_config(opts);
    ducba::InspectOutcome out = ducba::inspect_dataset(cfg);
    std::printf("records          %zu\n", out.stats.record_count);
    std::printf("dropped rows     %zu\n", out.dropped_rows);
    for (const auto& [cls, count] : out.stats.class_counts)
        std::printf("class %-10s %zu\n", cls.c_str(), count);
    std::printf("imbalance ratio  %.4f\n", out.stats.imbalance_ratio);
    std::printf("\n%-16s %12s %5s %12s\n", "attribute", "chi-square", "dof", "p-value");
    for (const auto& [name, cs] : out.chi_square)
        std::printf("%-16s %12.4f %5d %12.4g\n", name.c_str(), cs.statistic, cs.dof, cs.p_value);
    return 0;
}

int cmd_run(const CommonOpts& opts) {
    ducba::ExperimentConfig cfg = build_config(opts);
    ducba::RunOutcome run = ducba::run_single(cfg, cfg.rr_epsilon, true);
    print_report_summary(run);
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    ducba::ExperimentConfig cfg = build_config(opts);
    ducba::SweepOutcome sweep = ducba::run_sweep(cfg, true);
    std::printf("baseline accuracy %.4f\n", sweep.baseline.report.accuracy);
    for (const auto& [eps, run] : sweep.per_epsilon)
        std::printf("eps %-8g accuracy %.4f  macro_f1 %.4f\n", eps, run.report.accuracy,
                    run.report.macro.f1);
    std::printf("sweep csv        %s/sweep.csv\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_show_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ducba::PortableModel pm = ducba::parse_wire(buf.str());
    std::printf("rules        %zu\n", pm.rules.size());
    std::printf("default      %s (confidence %.4f)\n", pm.default_label.c_str(),
                pm.default_confidence);
    std::printf("train count  %lld\n\n", static_cast<long long>(pm.train_count));
    std::printf("%4s  %8s %8s %6s  %s\n", "#", "conf", "supp", "label", "antecedent");
    for (size_t i = 0; i < pm.rules.size(); ++i) {
        const auto& r = pm.rules[i];
        std::string ante;
        for (size_t j = 0; j < r.items.size(); ++j) {
            if (j) ante += " & ";
            ante += r.items[j].first + "=" + r.items[j].second;
        }
        std::printf("%4zu  %8.4f %8.4f %6s  %s\n", i + 1, r.confidence, r.support,
                    r.label.c_str(), ante.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Federated rule-based classification simulator"};
    app.require_subcommand(1);

    CommonOpts inspect_opts, run_opts, sweep_opts;
    std::string model_path;

    CLI::App* inspect = app.add_subcommand("inspect", "dataset statistics and chi-square scan");
    add_common(inspect, inspect_opts, false);
    CLI::App* run = app.add_subcommand("run", "single experiment run");
    add_common(run, run_opts, true);
    CLI::App* sweep = app.add_subcommand("sweep", "epsilon sweep");
    add_common(sweep, sweep_opts, true);
    CLI::App* show = app.add_subcommand("show-model", "pretty-print a serialized rule model");
    show->add_option("model", model_path, "serialized model file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints help to stdout for --help; usage errors go to stderr.
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*inspect) return cmd_inspect(inspect_opts);
        if (*run) return cmd_run(run_opts);
        if (*sweep) return cmd_sweep(sweep_opts);
        if (*show) return cmd_show_model(model_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
