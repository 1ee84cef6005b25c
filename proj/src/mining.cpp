#include "ducba/mining.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "ducba/bitvec.hpp"

namespace ducba {

namespace {

struct Candidate {
    std::vector<Item> items;
    BitVec rows;                      // records containing the antecedent
    std::vector<int64_t> class_count; // per class, records also carrying that label
    uint32_t alive_mask = 0;          // bit c set: frequent for class c
};

void validate(const MiningParams& p) {
    if (p.min_support.num <= 0 || p.min_support.num > p.min_support.den)
        throw std::invalid_argument("min_support must lie in (0,1]");
    if (p.min_confidence.num <= 0 || p.min_confidence.num > p.min_confidence.den)
        throw std::invalid_argument("min_confidence must lie in (0,1]");
}

}  // namespace

std::vector<ClassAssociationRule> mine_cars(const Dataset& ds, const MiningParams& params) {
    if (ds.n_records() == 0) throw std::runtime_error("cannot mine an empty dataset");
    if (!ds.fully_categorical()) throw std::runtime_error("mining requires a fully categorical dataset");
    validate(params);

    const int64_t n = static_cast<int64_t>(ds.n_records());
    const size_t n_classes = ds.class_domain.size();
    if (n_classes > 32) throw std::runtime_error("too many classes");

    std::vector<BitVec> class_mask(n_classes, BitVec(ds.n_records()));
    for (size_t r = 0; r < ds.n_records(); ++r) class_mask[ds.labels[r]].set(r);

    auto frequent = [&](int64_t count) { return params.min_support.leq_ratio(count, n); };
    auto confident = [&](int64_t rule_count, int64_t ante_count) {
        return params.min_confidence.leq_ratio(rule_count, ante_count);
    };

    std::vector<ClassAssociationRule> rules;
    uint32_t order = 0;

    auto emit = [&](const Candidate& c) {
        int64_t total = 0;
        for (int64_t cc : c.class_count) total += cc;
        for (size_t cls = 0; cls < n_classes; ++cls) {
            int64_t rc = c.class_count[cls];
            if (!frequent(rc)) continue;
            if (!confident(rc, total)) continue;
            ClassAssociationRule rule;
            rule.antecedent = c.items;
            rule.label = static_cast<uint16_t>(cls);
            rule.rule_count = rc;
            rule.ante_count = total;
            rule.n = n;
            rule.support = static_cast<double>(rc) / static_cast<double>(n);
            rule.confidence = static_cast<double>(rc) / static_cast<double>(total);
            rule.order = order++;
            rules.push_back(std::move(rule));
        }
    };

    // Level 1: single items in lexicographic (attribute, value) order.
    std::vector<Candidate> level;
    for (size_t a = 0; a < ds.n_attrs(); ++a) {
        for (size_t v = 0; v < ds.schema[a].domain.size(); ++v) {
            Candidate c;
            c.items = {Item{static_cast<uint16_t>(a), static_cast<uint16_t>(v)}};
            c.rows = BitVec(ds.n_records());
            for (size_t r = 0; r < ds.n_records(); ++r)
                if (ds.cat_code(r, a) == v) c.rows.set(r);
            c.class_count.resize(n_classes);
            for (size_t cls = 0; cls < n_classes; ++cls) {
                c.class_count[cls] = static_cast<int64_t>(BitVec::intersect_count(c.rows, class_mask[cls]));
                if (frequent(c.class_count[cls])) c.alive_mask |= 1u << cls;
            }
            if (c.alive_mask) level.push_back(std::move(c));
        }
    }
    for (const auto& c : level) emit(c);

    // Subset lookup for pruning: itemset -> per-class alive mask.
    std::map<std::vector<Item>, uint32_t> alive;
    for (const auto& c : level) alive[c.items] = c.alive_mask;

    size_t depth = 1;
    while (!level.empty()) {
        if (params.max_antecedent_len && depth >= params.max_antecedent_len) break;
        ++depth;

        std::vector<Candidate> next;
        // Join step: two antecedents sharing all but the last item, on
        // distinct attributes. The level is lex sorted, so output stays sorted.
        for (size_t i = 0; i < level.size(); ++i) {
            for (size_t j = i + 1; j < level.size(); ++j) {
                const auto& a = level[i].items;
                const auto& b = level[j].items;
                if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
                if (a.back().attr == b.back().attr) continue;
                uint32_t joint = level[i].alive_mask & level[j].alive_mask;
                if (!joint) continue;

                std::vector<Item> items = a;
                items.push_back(b.back());

                // Prune: every (k-1)-subset must be frequent for some shared class.
                uint32_t mask = joint;
                if (items.size() > 2) {
                    for (size_t drop = 0; drop + 2 < items.size() && mask; ++drop) {
                        std::vector<Item> sub;
                        sub.reserve(items.size() - 1);
                        for (size_t t = 0; t < items.size(); ++t)
                            if (t != drop) sub.push_back(items[t]);
                        auto it = alive.find(sub);
                        mask &= (it == alive.end()) ? 0u : it->second;
                    }
                }
                if (!mask) continue;

                Candidate c;
                c.items = std::move(items);
                c.rows = BitVec::intersect(level[i].rows, level[j].rows);
                c.class_count.resize(n_classes);
                c.alive_mask = 0;
                for (size_t cls = 0; cls < n_classes; ++cls) {
                    c.class_count[cls] = static_cast<int64_t>(BitVec::intersect_count(c.rows, class_mask[cls]));
                    if (frequent(c.class_count[cls])) {
                        // Anti-monotonicity: all subsets were frequent for this class.
                        assert(mask & (1u << cls));
                        c.alive_mask |= 1u << cls;
                    }
                }
                c.alive_mask &= mask;
                if (c.alive_mask) next.push_back(std::move(c));
            }
        }

        for (const auto& c : next) emit(c);
        alive.clear();
        for (const auto& c : next) alive[c.items] = c.alive_mask;
        level = std::move(next);
    }

    return rules;
}

}  // namespace ducba
