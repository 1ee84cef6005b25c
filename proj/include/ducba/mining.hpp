#pragma once

#include <cstdint>
#include <vector>

#include "ducba/dataset.hpp"
#include "ducba/fraction.hpp"

namespace ducba {

// One antecedent element: attribute index (into the dataset schema) and a
// category code from that attribute's domain.
struct Item {
    uint16_t attr = 0;
    uint16_t value = 0;

    friend bool operator==(const Item&, const Item&) = default;
    friend auto operator<=>(const Item& a, const Item& b) {
        if (auto c = a.attr <=> b.attr; c != 0) return c;
        return a.value <=> b.value;
    }
};

struct ClassAssociationRule {
    std::vector<Item> antecedent;  // sorted by attribute; attributes distinct
    uint16_t label = 0;
    double support = 0.0;
    double confidence = 0.0;
    uint32_t order = 0;  // arrival index; reassigned at merge

    // Exact counts backing support/confidence; zero n means the rule came
    // from a merge and only the real-valued fields are meaningful.
    int64_t rule_count = 0;
    int64_t ante_count = 0;
    int64_t n = 0;
};

struct MiningParams {
    Fraction min_support{1, 50};     // 0.02
    Fraction min_confidence{1, 2};   // 0.5
    uint32_t max_antecedent_len = 0; // 0 = unbounded
};

// Level-wise Apriori search for class association rules. Thresholds are
// closed (>=) and evaluated on exact integer counts. Rules are emitted in
// generation order: level by level, antecedents in lexicographic
// (attribute, value) order, labels in class-domain order.
std::vector<ClassAssociationRule> mine_cars(const Dataset& ds, const MiningParams& params);

}  // namespace ducba
