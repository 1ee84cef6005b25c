// Generates the synthetic hypertension-style table used to exercise the
// pipeline when the real survey extract is not on disk.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ducba/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Synthetic hypertension-style dataset generator"};

    std::string out_path = "data/hypertension_synth.csv";
    ducba::SynthSpec spec;
    app.add_option("-o,--out", out_path, "output CSV path");
    app.add_option("--positives", spec.positive_count, "records with target=1");
    app.add_option("--negatives", spec.negative_count, "records with target=0");
    app.add_option("--seed", spec.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ducba::write_synthetic_csv(out_path, spec);
        std::printf("wrote %zu records to %s\n", spec.positive_count + spec.negative_count,
                    out_path.c_str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
