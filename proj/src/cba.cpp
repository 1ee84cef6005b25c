#include "ducba/cba.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ducba/bitvec.hpp"

namespace ducba {

std::vector<ClassAssociationRule> rank_rules(std::vector<ClassAssociationRule> rules) {
    std::stable_sort(rules.begin(), rules.end(),
                     [](const ClassAssociationRule& a, const ClassAssociationRule& b) {
                         if (a.confidence != b.confidence) return a.confidence > b.confidence;
                         if (a.support != b.support) return a.support > b.support;
                         return a.order < b.order;
                     });
    return rules;
}

namespace {

struct ItemIndex {
    std::vector<std::vector<BitVec>> by_attr_value;  // [attr][value] -> rows

    ItemIndex(const Dataset& ds) {
        by_attr_value.resize(ds.n_attrs());
        for (size_t a = 0; a < ds.n_attrs(); ++a) {
            by_attr_value[a].assign(ds.schema[a].domain.size(), BitVec(ds.n_records()));
            for (size_t r = 0; r < ds.n_records(); ++r)
                by_attr_value[a][ds.cat_code(r, a)].set(r);
        }
    }

    BitVec matches(const std::vector<Item>& antecedent, size_t n) const {
        BitVec acc(n);
        bool first = true;
        for (const Item& it : antecedent) {
            const BitVec& bv = by_attr_value[it.attr][it.value];
            if (first) { acc = bv; first = false; }
            else acc.intersect_with(bv);
        }
        return acc;
    }
};

struct DefaultChoice {
    uint16_t label;
    double confidence;
};

DefaultChoice pick_default(const std::vector<int64_t>& uncovered_counts,
                           const std::vector<int64_t>& global_counts) {
    int64_t uncovered_total = 0;
    for (int64_t c : uncovered_counts) uncovered_total += c;

    const std::vector<int64_t>& basis = uncovered_total > 0 ? uncovered_counts : global_counts;
    int64_t basis_total = 0;
    for (int64_t c : basis) basis_total += c;

    int64_t best = -1;
    std::vector<size_t> cands;
    for (size_t c = 0; c < basis.size(); ++c) {
        if (basis[c] > best) { best = basis[c]; cands = {c}; }
        else if (basis[c] == best) cands.push_back(c);
    }
    size_t winner = cands[0];
    if (cands.size() > 1) {
        // Tie among uncovered majorities: fall back to the global majority,
        // then to class-domain order.
        int64_t g = -1;
        for (size_t c : cands) {
            if (global_counts[c] > g) { g = global_counts[c]; winner = c; }
        }
    }
    double conf = basis_total > 0 ? static_cast<double>(basis[winner]) / static_cast<double>(basis_total) : 0.0;
    return {static_cast<uint16_t>(winner), conf};
}

}  // namespace

RuleModel build_classifier(std::vector<ClassAssociationRule> rules, const Dataset& train, bool prune) {
    if (!train.fully_categorical())
        throw std::runtime_error("classifier build requires a fully categorical dataset");

    RuleModel model;
    std::vector<ClassAssociationRule> ranked = rank_rules(std::move(rules));

    size_t n = train.n_records();
    size_t n_classes = train.class_domain.size();
    std::vector<int64_t> global_counts(n_classes, 0);
    for (uint16_t l : train.labels) global_counts[l]++;

    ItemIndex index(train);
    std::vector<BitVec> class_mask(n_classes, BitVec(n));
    for (size_t r = 0; r < n; ++r) class_mask[train.labels[r]].set(r);

    BitVec uncovered(n);
    for (size_t r = 0; r < n; ++r) uncovered.set(r);

    if (prune) {
        for (auto& rule : ranked) {
            BitVec matched = index.matches(rule.antecedent, n);
            matched.intersect_with(uncovered);
            if (BitVec::intersect_count(matched, class_mask[rule.label]) == 0) continue;
            model.rules.push_back(rule);
            uncovered.subtract(matched);
        }
    } else {
        model.rules = ranked;
        for (const auto& rule : model.rules) {
            BitVec matched = index.matches(rule.antecedent, n);
            uncovered.subtract(matched);
        }
    }

    std::vector<int64_t> uncovered_counts(n_classes, 0);
    uncovered.for_each([&](size_t r) { uncovered_counts[train.labels[r]]++; });

    DefaultChoice d = pick_default(uncovered_counts, global_counts);
    model.default_class = d.label;
    model.default_confidence = d.confidence;
    return model;
}

Prediction classify(const RuleModel& model, std::span<const uint16_t> record) {
    for (const auto& rule : model.rules) {
        bool match = true;
        for (const Item& it : rule.antecedent) {
            if (it.attr >= record.size() || record[it.attr] != it.value) { match = false; break; }
        }
        if (match) return {rule.label, rule.confidence};
    }
    return {model.default_class, model.default_confidence};
}

Prediction classify(const RuleModel& model, const Dataset& ds, size_t row) {
    std::vector<uint16_t> rec = ds.record_codes(row);
    return classify(model, rec);
}

// --- wire format -----------------------------------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string to_wire(const RuleModel& model, const Dataset& schema_source, int64_t train_count) {
    std::ostringstream out;
    for (const auto& rule : model.rules) {
        out << fmt_double(rule.confidence) << '\t' << fmt_double(rule.support) << '\t'
            << rule.order << '\t' << schema_source.class_domain.at(rule.label) << '\t';
        for (size_t i = 0; i < rule.antecedent.size(); ++i) {
            const Item& it = rule.antecedent[i];
            if (i) out << ',';
            out << schema_source.schema.at(it.attr).name << '='
                << schema_source.schema.at(it.attr).domain.at(it.value);
        }
        out << '\n';
    }
    out << "DEFAULT\t" << schema_source.class_domain.at(model.default_class) << '\t'
        << fmt_double(model.default_confidence) << '\t' << train_count << '\n';
    return out.str();
}

PortableModel parse_wire(const std::string& text) {
    PortableModel pm;
    std::istringstream in(text);
    std::string line;
    bool saw_footer = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            if (tab == std::string::npos) { fields.push_back(line.substr(start)); break; }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (fields[0] == "DEFAULT") {
            if (fields.size() != 4) throw std::runtime_error("malformed DEFAULT line: " + line);
            pm.default_label = fields[1];
            pm.default_confidence = std::stod(fields[2]);
            pm.train_count = std::stoll(fields[3]);
            saw_footer = true;
            continue;
        }
        if (fields.size() != 5) throw std::runtime_error("malformed rule line: " + line);
        PortableRule rule;
        rule.confidence = std::stod(fields[0]);
        rule.support = std::stod(fields[1]);
        rule.order = static_cast<uint32_t>(std::stoul(fields[2]));
        rule.label = fields[3];
        std::string items = fields[4];
        size_t pos = 0;
        while (pos < items.size()) {
            size_t comma = items.find(',', pos);
            std::string pair = items.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            size_t eq = pair.find('=');
            if (eq == std::string::npos) throw std::runtime_error("malformed item: " + pair);
            rule.items.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        pm.rules.push_back(std::move(rule));
    }
    if (!saw_footer) throw std::runtime_error("serialized model lacks DEFAULT footer");
    return pm;
}

ClientModel bind_model(const PortableModel& pm, const Dataset& schema_source, int client_id) {
    auto attr_of = [&](const std::string& name) -> uint16_t {
        auto idx = schema_source.find_attr(name);
        if (!idx) throw std::runtime_error("unknown attribute in serialized model: " + name);
        return static_cast<uint16_t>(*idx);
    };
    auto value_of = [&](uint16_t attr, const std::string& value) -> uint16_t {
        const auto& dom = schema_source.schema[attr].domain;
        auto it = std::find(dom.begin(), dom.end(), value);
        if (it == dom.end())
            throw std::runtime_error("unknown value " + value + " for attribute " +
                                     schema_source.schema[attr].name);
        return static_cast<uint16_t>(it - dom.begin());
    };
    auto class_of = [&](const std::string& label) -> uint16_t {
        const auto& dom = schema_source.class_domain;
        auto it = std::find(dom.begin(), dom.end(), label);
        if (it == dom.end()) throw std::runtime_error("unknown class label: " + label);
        return static_cast<uint16_t>(it - dom.begin());
    };

    ClientModel cm;
    cm.client_id = client_id;
    cm.train_count = pm.train_count;
    cm.model.default_class = class_of(pm.default_label);
    cm.model.default_confidence = pm.default_confidence;
    for (const auto& pr : pm.rules) {
        ClassAssociationRule rule;
        rule.confidence = pr.confidence;
        rule.support = pr.support;
        rule.order = pr.order;
        rule.label = class_of(pr.label);
        for (const auto& [attr, value] : pr.items) {
            uint16_t a = attr_of(attr);
            rule.antecedent.push_back(Item{a, value_of(a, value)});
        }
        std::sort(rule.antecedent.begin(), rule.antecedent.end());
        cm.model.rules.push_back(std::move(rule));
    }
    return cm;
}

}  // namespace ducba
