#pragma once

// Shared helpers for building small datasets and oracle implementations in
// tests. Everything here is test-only and independent of the library's
// mining/merge code paths.

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ducba/cba.hpp"
#include "ducba/dataset.hpp"
#include "ducba/fraction.hpp"
#include "ducba/mining.hpp"
#include "ducba/rng.hpp"

namespace testutil {

// Builds a fully categorical dataset from rows of domain codes.
inline ducba::Dataset make_dataset(const std::vector<std::string>& attr_names,
                                   const std::vector<std::vector<std::string>>& domains,
                                   const std::vector<std::vector<uint16_t>>& rows,
                                   const std::vector<uint16_t>& labels,
                                   const std::vector<std::string>& class_domain) {
    ducba::Dataset ds;
    for (size_t a = 0; a < attr_names.size(); ++a)
        ds.schema.push_back({attr_names[a], ducba::AttrKind::categorical, domains[a]});
    ds.numeric_cols.resize(attr_names.size());
    ds.cat_cols.resize(attr_names.size());
    for (size_t a = 0; a < attr_names.size(); ++a)
        for (const auto& row : rows) ds.cat_cols[a].push_back(row[a]);
    ds.labels = labels;
    ds.class_domain = class_domain;
    return ds;
}

// Simple two-valued domain helper: attrs named a0..a{n-1} with v0..v{k-1}.
inline ducba::Dataset make_coded_dataset(const std::vector<std::vector<uint16_t>>& rows,
                                         const std::vector<uint16_t>& labels,
                                         const std::vector<size_t>& domain_sizes,
                                         size_t n_classes = 2) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> domains;
    for (size_t a = 0; a < domain_sizes.size(); ++a) {
        names.push_back("a" + std::to_string(a));
        std::vector<std::string> dom;
        for (size_t v = 0; v < domain_sizes[a]; ++v) dom.push_back("v" + std::to_string(v));
        domains.push_back(dom);
    }
    std::vector<std::string> classes;
    for (size_t c = 0; c < n_classes; ++c) classes.push_back("c" + std::to_string(c));
    return make_dataset(names, domains, rows, labels, classes);
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/ducba_test_") + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

// ---------------------------------------------------------------------------
// Brute-force rule mining oracle: enumerates every antecedent over the item
// universe (no two items per attribute) and counts support by direct record
// scans. Kept deliberately naive.

struct OracleRule {
    std::vector<ducba::Item> antecedent;
    uint16_t label;
    int64_t rule_count;
    int64_t ante_count;

    bool operator<(const OracleRule& o) const {
        if (antecedent != o.antecedent) return antecedent < o.antecedent;
        return label < o.label;
    }
    bool operator==(const OracleRule& o) const = default;
};

inline std::vector<OracleRule> brute_force_cars(const ducba::Dataset& ds,
                                                const ducba::MiningParams& p) {
    std::vector<ducba::Item> universe;
    for (size_t a = 0; a < ds.n_attrs(); ++a)
        for (size_t v = 0; v < ds.schema[a].domain.size(); ++v)
            universe.push_back({static_cast<uint16_t>(a), static_cast<uint16_t>(v)});

    int64_t n = static_cast<int64_t>(ds.n_records());
    size_t n_classes = ds.class_domain.size();
    std::vector<OracleRule> out;

    std::vector<ducba::Item> current;
    auto count_and_emit = [&]() {
        if (current.empty()) return;
        if (p.max_antecedent_len && current.size() > p.max_antecedent_len) return;
        std::vector<int64_t> per_class(n_classes, 0);
        int64_t total = 0;
        for (size_t r = 0; r < ds.n_records(); ++r) {
            bool match = true;
            for (const auto& it : current)
                if (ds.cat_code(r, it.attr) != it.value) { match = false; break; }
            if (!match) continue;
            ++total;
            per_class[ds.labels[r]]++;
        }
        for (size_t c = 0; c < n_classes; ++c) {
            if (!p.min_support.leq_ratio(per_class[c], n)) continue;
            if (!p.min_confidence.leq_ratio(per_class[c], total)) continue;
            out.push_back({current, static_cast<uint16_t>(c), per_class[c], total});
        }
    };

    // Depth-first over the universe; items are attribute-sorted so skipping
    // ahead never reuses an attribute.
    auto rec = [&](auto&& self, size_t start) -> void {
        count_and_emit();
        for (size_t i = start; i < universe.size(); ++i) {
            if (!current.empty() && universe[i].attr == current.back().attr) continue;
            current.push_back(universe[i]);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<OracleRule> to_oracle_rules(const std::vector<ducba::ClassAssociationRule>& rules) {
    std::vector<OracleRule> out;
    for (const auto& r : rules) out.push_back({r.antecedent, r.label, r.rule_count, r.ante_count});
    std::sort(out.begin(), out.end());
    return out;
}

// Random small dataset for oracle comparisons: at most `max_items` distinct
// items spread over a few attributes.
inline ducba::Dataset random_dataset(ducba::Rng& rng, size_t max_records = 200,
                                     size_t max_items = 12) {
    size_t n_attrs = 2 + rng.below(3);                 // 2..4 attributes
    std::vector<size_t> domain_sizes(n_attrs);
    size_t items = 0;
    for (size_t a = 0; a < n_attrs; ++a) {
        domain_sizes[a] = 2 + rng.below(2);            // 2..3 values
        items += domain_sizes[a];
    }
    while (items > max_items) { items -= domain_sizes.back(); domain_sizes.pop_back(); }
    n_attrs = domain_sizes.size();

    size_t n = 20 + rng.below(max_records - 19);
    std::vector<std::vector<uint16_t>> rows(n, std::vector<uint16_t>(n_attrs));
    std::vector<uint16_t> labels(n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t a = 0; a < n_attrs; ++a)
            rows[r][a] = static_cast<uint16_t>(rng.below(domain_sizes[a]));
        labels[r] = static_cast<uint16_t>(rng.below(2));
    }
    return make_coded_dataset(rows, labels, domain_sizes);
}

}  // namespace testutil
