#pragma once

#include <cstdint>
#include <string>

namespace ducba {

// Synthetic stand-in for the BRFSS-derived hypertension table, for running
// the pipeline offline. Matches the documented layout: 14 columns, ~26k
// rows, class counts 14274/11809 (imbalance ratio ~1.21), age and sex
// independent of the target, the clinical attributes correlated with it.
struct SynthSpec {
    size_t positive_count = 14274;  // target = 1
    size_t negative_count = 11809;  // target = 0
    uint64_t seed = 7;
};

std::string synthesize_csv(const SynthSpec& spec);
void write_synthetic_csv(const std::string& path, const SynthSpec& spec);

}  // namespace ducba
