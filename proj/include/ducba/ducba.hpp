#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ducba/cba.hpp"

namespace ducba {

struct MergedModel {
    RuleModel model;
    std::vector<std::vector<int>> provenance;  // per final rule, sorted contributing client ids
    int64_t total_train_count = 0;
};

// Server-side merge of client rule models:
//   1. identical rules (same antecedent and label) are combined with
//      train-count weighted averages of support and confidence;
//   2. antecedents carrying several labels keep the label group with the
//      higher merged support, earlier arrival breaking exact ties;
//   3. survivors are re-ranked and the default class is decided by a
//      train-count weighted vote.
// Arrival order is (client index, position in the client's rule list).
MergedModel merge(const std::vector<ClientModel>& clients);

// File-level variant consuming the serialized client models.
MergedModel merge_serialized(const std::vector<std::string>& wire_texts, const Dataset& schema_source);

// Provenance sidecar: one line per merged rule, "<line>\t<client,client,...>".
std::string provenance_sidecar(const MergedModel& merged);

}  // namespace ducba
