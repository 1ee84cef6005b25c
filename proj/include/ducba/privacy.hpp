#pragma once

#include <cstdint>
#include <map>

#include "ducba/dataset.hpp"
#include "ducba/rng.hpp"

namespace ducba {

struct RRConfig {
    double epsilon = 1.0;
    bool perturb_label = false;
    uint64_t seed_stream = 0;
};

// k-ary randomized response channel: the true category survives with
// probability p = e^eps / (e^eps + k - 1), any specific other category is
// emitted with probability q = 1 / (e^eps + k - 1), so p/q = e^eps.
struct RRChannel {
    size_t domain_size = 2;
    double keep_prob = 1.0;
    double flip_prob = 0.0;

    static RRChannel make(double epsilon, size_t domain_size);
};

uint16_t perturb_value(const RRChannel& channel, uint16_t true_value, Rng& rng);

// Perturbs every attribute cell through that attribute's channel; the class
// label only when cfg.perturb_label is set. Cells are visited record-major,
// attributes in schema order, so a fixed stream reproduces exactly.
// Attributes whose domain has fewer than two values are passed through.
Dataset perturb_dataset(const Dataset& ds, const RRConfig& cfg, Rng& rng);

// Standard k-RR frequency debiasing, used for diagnostics only:
// est(v) = n * (observed(v)/n - q) / (p - q). Estimates may be negative.
std::map<uint16_t, double> estimate_true_frequency(const std::map<uint16_t, int64_t>& observed,
                                                   const RRChannel& channel, int64_t n);

}  // namespace ducba
