#include "ducba/ducba.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ducba {

namespace {

struct Contribution {
    int client_id;
    int64_t n;
    double support;
    double confidence;
    uint64_t arrival;
};

struct LabelGroup {
    double merged_support = 0.0;
    double merged_confidence = 0.0;
    uint64_t first_arrival = 0;
    std::vector<int> clients;
};

using AntecedentKey = std::vector<Item>;

}  // namespace

MergedModel merge(const std::vector<ClientModel>& clients) {
    if (clients.empty()) throw std::runtime_error("merge needs at least one client model");

    // Group contributions by antecedent, then by label.
    std::map<AntecedentKey, std::map<uint16_t, std::vector<Contribution>>> groups;
    uint64_t arrival = 0;
    for (const auto& client : clients) {
        for (const auto& rule : client.model.rules) {
            AntecedentKey key = rule.antecedent;
            std::sort(key.begin(), key.end());
            groups[key][rule.label].push_back(
                {client.client_id, client.train_count, rule.support, rule.confidence, arrival++});
        }
    }

    MergedModel out;
    std::vector<std::pair<ClassAssociationRule, std::vector<int>>> survivors;

    for (const auto& [antecedent, by_label] : groups) {
        // Step 1: weighted average within each label group.
        std::map<uint16_t, LabelGroup> merged;
        for (const auto& [label, contribs] : by_label) {
            LabelGroup g;
            double weight = 0.0, s = 0.0, c = 0.0;
            g.first_arrival = UINT64_MAX;
            for (const auto& contrib : contribs) {
                weight += static_cast<double>(contrib.n);
                s += static_cast<double>(contrib.n) * contrib.support;
                c += static_cast<double>(contrib.n) * contrib.confidence;
                g.first_arrival = std::min(g.first_arrival, contrib.arrival);
                g.clients.push_back(contrib.client_id);
            }
            g.merged_support = s / weight;
            g.merged_confidence = c / weight;
            merged[label] = std::move(g);
        }

        // Step 2: label conflict -> higher merged support, earlier arrival on tie.
        uint16_t best_label = 0;
        const LabelGroup* best = nullptr;
        for (const auto& [label, g] : merged) {
            if (!best || g.merged_support > best->merged_support ||
                (g.merged_support == best->merged_support && g.first_arrival < best->first_arrival)) {
                best = &g;
                best_label = label;
            }
        }

        ClassAssociationRule rule;
        rule.antecedent = antecedent;
        rule.label = best_label;
        rule.support = best->merged_support;
        rule.confidence = best->merged_confidence;
        rule.order = static_cast<uint32_t>(best->first_arrival);
        std::vector<int> prov = best->clients;
        std::sort(prov.begin(), prov.end());
        prov.erase(std::unique(prov.begin(), prov.end()), prov.end());
        survivors.emplace_back(std::move(rule), std::move(prov));
    }

    // Step 3: global ranking; provenance follows its rule.
    std::stable_sort(survivors.begin(), survivors.end(), [](const auto& a, const auto& b) {
        const auto& ra = a.first;
        const auto& rb = b.first;
        if (ra.confidence != rb.confidence) return ra.confidence > rb.confidence;
        if (ra.support != rb.support) return ra.support > rb.support;
        return ra.order < rb.order;
    });
    for (auto& [rule, prov] : survivors) {
        out.model.rules.push_back(std::move(rule));
        out.provenance.push_back(std::move(prov));
    }

    // Default class: train-count weighted vote, class-domain order on ties.
    std::map<uint16_t, int64_t> votes;
    for (const auto& client : clients) {
        votes[client.model.default_class] += client.train_count;
        out.total_train_count += client.train_count;
    }
    int64_t best_vote = -1;
    uint16_t default_class = 0;
    for (const auto& [label, weight] : votes) {  // map iterates labels ascending
        if (weight > best_vote) { best_vote = weight; default_class = label; }
    }
    double conf_weighted = 0.0, conf_weight = 0.0;
    for (const auto& client : clients) {
        if (client.model.default_class != default_class) continue;
        conf_weighted += static_cast<double>(client.train_count) * client.model.default_confidence;
        conf_weight += static_cast<double>(client.train_count);
    }
    out.model.default_class = default_class;
    out.model.default_confidence = conf_weight > 0 ? conf_weighted / conf_weight : 0.0;
    return out;
}

MergedModel merge_serialized(const std::vector<std::string>& wire_texts, const Dataset& schema_source) {
    std::vector<ClientModel> clients;
    for (size_t i = 0; i < wire_texts.size(); ++i)
        clients.push_back(bind_model(parse_wire(wire_texts[i]), schema_source, static_cast<int>(i)));
    return merge(clients);
}

std::string provenance_sidecar(const MergedModel& merged) {
    std::ostringstream out;
    for (size_t i = 0; i < merged.provenance.size(); ++i) {
        out << (i + 1) << '\t';
        const auto& clients = merged.provenance[i];
        for (size_t j = 0; j < clients.size(); ++j) {
            if (j) out << ',';
            out << clients[j];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ducba
