#include "ducba/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace ducba {

RRChannel RRChannel::make(double epsilon, size_t domain_size) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (domain_size < 2) throw std::invalid_argument("randomized response needs a domain of size >= 2");
    double e = std::exp(epsilon);
    double denom = e + static_cast<double>(domain_size) - 1.0;
    return {domain_size, e / denom, 1.0 / denom};
}

uint16_t perturb_value(const RRChannel& channel, uint16_t true_value, Rng& rng) {
    if (true_value >= channel.domain_size) throw std::invalid_argument("value outside channel domain");
    if (rng.unit() < channel.keep_prob) return true_value;
    uint64_t other = rng.below(channel.domain_size - 1);
    return static_cast<uint16_t>(other >= true_value ? other + 1 : other);
}

Dataset perturb_dataset(const Dataset& ds, const RRConfig& cfg, Rng& rng) {
    if (!ds.fully_categorical())
        throw std::runtime_error("randomized response requires a fully categorical dataset");

    Dataset out = ds;
    std::vector<RRChannel> channels(ds.n_attrs());
    for (size_t a = 0; a < ds.n_attrs(); ++a) {
        size_t k = ds.schema[a].domain.size();
        if (k >= 2) channels[a] = RRChannel::make(cfg.epsilon, k);
    }
    RRChannel label_channel;
    if (cfg.perturb_label) label_channel = RRChannel::make(cfg.epsilon, ds.class_domain.size());

    for (size_t r = 0; r < ds.n_records(); ++r) {
        for (size_t a = 0; a < ds.n_attrs(); ++a) {
            if (ds.schema[a].domain.size() < 2) continue;
            out.cat_cols[a][r] = perturb_value(channels[a], ds.cat_cols[a][r], rng);
        }
        if (cfg.perturb_label)
            out.labels[r] = perturb_value(label_channel, ds.labels[r], rng);
    }
    return out;
}

std::map<uint16_t, double> estimate_true_frequency(const std::map<uint16_t, int64_t>& observed,
                                                   const RRChannel& channel, int64_t n) {
    if (channel.keep_prob == channel.flip_prob)
        throw std::invalid_argument("estimator undefined when p equals q");
    int64_t total = 0;
    for (const auto& [value, count] : observed) total += count;
    if (total != n) throw std::invalid_argument("observed counts do not sum to n");

    std::map<uint16_t, double> est;
    double p = channel.keep_prob, q = channel.flip_prob;
    for (size_t v = 0; v < channel.domain_size; ++v) {
        auto it = observed.find(static_cast<uint16_t>(v));
        double freq = it == observed.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
        est[static_cast<uint16_t>(v)] = static_cast<double>(n) * (freq - q) / (p - q);
    }
    return est;
}

}  // namespace ducba
