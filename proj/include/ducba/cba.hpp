#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ducba/dataset.hpp"
#include "ducba/mining.hpp"

namespace ducba {

// Cleared cell / unknown attribute value; matches no item.
inline constexpr uint16_t kUnknownValue = 0xffff;

struct RuleModel {
    std::vector<ClassAssociationRule> rules;  // sorted per rank_rules
    uint16_t default_class = 0;
    double default_confidence = 0.0;
};

// One client's transmitted artifact.
struct ClientModel {
    RuleModel model;
    int64_t train_count = 0;
    int client_id = 0;
};

// Stable total order: confidence desc, support desc, arrival order asc.
std::vector<ClassAssociationRule> rank_rules(std::vector<ClassAssociationRule> rules);

// Ranks the mined rules and, when prune is set, runs the database-coverage
// walk: a rule is kept iff it correctly classifies at least one
// still-uncovered training record, and then covers everything it matches.
// The default class is the majority class of the uncovered remainder.
RuleModel build_classifier(std::vector<ClassAssociationRule> rules, const Dataset& train, bool prune);

struct Prediction {
    uint16_t label = 0;
    double score = 0.0;  // confidence of the deciding rule, or the default confidence
};

// First matching rule wins; the default class catches everything else.
Prediction classify(const RuleModel& model, std::span<const uint16_t> record);
Prediction classify(const RuleModel& model, const Dataset& ds, size_t row);

// --- wire format -----------------------------------------------------------
// One rule per line: conf<TAB>supp<TAB>order<TAB>label<TAB>attr=val,attr=val
// Footer line:       DEFAULT<TAB>label<TAB>confidence<TAB>train_count

std::string to_wire(const RuleModel& model, const Dataset& schema_source, int64_t train_count);

struct PortableRule {
    double confidence = 0.0;
    double support = 0.0;
    uint32_t order = 0;
    std::string label;
    std::vector<std::pair<std::string, std::string>> items;  // (attribute, value)
};

struct PortableModel {
    std::vector<PortableRule> rules;
    std::string default_label;
    double default_confidence = 0.0;
    int64_t train_count = 0;
};

PortableModel parse_wire(const std::string& text);

// Re-binds a parsed model onto a concrete schema / class domain.
ClientModel bind_model(const PortableModel& pm, const Dataset& schema_source, int client_id);

}  // namespace ducba
