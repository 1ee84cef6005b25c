#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "ducba/cba.hpp"
#include "ducba/rng.hpp"
#include "test_util.hpp"

using namespace ducba;

namespace {

ClassAssociationRule rule(std::vector<Item> ante, uint16_t label, double conf, double supp,
                          uint32_t order) {
    ClassAssociationRule r;
    r.antecedent = std::move(ante);
    r.label = label;
    r.confidence = conf;
    r.support = supp;
    r.order = order;
    return r;
}

std::vector<ClassAssociationRule> random_rules(Rng& rng, size_t max_rules = 12) {
    std::vector<ClassAssociationRule> out;
    size_t n = 1 + rng.below(max_rules);
    for (size_t i = 0; i < n; ++i) {
        std::vector<Item> ante;
        size_t len = 1 + rng.below(3);
        uint16_t attr = 0;
        for (size_t j = 0; j < len; ++j) {
            attr = static_cast<uint16_t>(attr + 1 + rng.below(2));
            ante.push_back({attr, static_cast<uint16_t>(rng.below(3))});
        }
        // quantized scores make score ties common, exercising tie-breaks
        double conf = static_cast<double>(rng.below(5)) / 4.0;
        double supp = static_cast<double>(rng.below(5)) / 8.0;
        out.push_back(rule(std::move(ante), static_cast<uint16_t>(rng.below(2)), conf, supp,
                           static_cast<uint32_t>(i)));
    }
    return out;
}

}  // namespace

TEST_CASE("rank_rules sorts by confidence, support, then arrival") {
    auto rules = std::vector<ClassAssociationRule>{
        rule({{0, 0}}, 0, 0.9, 0.1, 2),
        rule({{0, 1}}, 0, 0.9, 0.2, 1),
        rule({{0, 2}}, 0, 0.8, 0.9, 0),
    };
    auto ranked = rank_rules(rules);
    CHECK(ranked[0].support == doctest::Approx(0.2));
    CHECK(ranked[1].support == doctest::Approx(0.1));
    CHECK(ranked[2].confidence == doctest::Approx(0.8));
}

TEST_CASE("rank_rules breaks exact ties by earlier arrival") {
    auto rules = std::vector<ClassAssociationRule>{
        rule({{0, 0}}, 0, 0.7, 0.3, 5),
        rule({{0, 1}}, 1, 0.7, 0.3, 3),
    };
    auto ranked = rank_rules(rules);
    CHECK(ranked[0].order == 3);
    CHECK(ranked[1].order == 5);
}

TEST_CASE("rank_rules on a singleton returns it unchanged") {
    auto ranked = rank_rules({rule({{0, 0}}, 1, 0.5, 0.5, 0)});
    REQUIRE(ranked.size() == 1);
    CHECK(ranked[0].label == 1);
}

TEST_CASE("rank_rules is a permutation and idempotent") {
    Rng rng(2718);
    for (int rep = 0; rep < 25; ++rep) {
        auto rules = random_rules(rng);
        auto ranked = rank_rules(rules);
        REQUIRE(ranked.size() == rules.size());

        auto key = [](const ClassAssociationRule& r) {
            return std::tuple(r.antecedent, r.label, r.confidence, r.support, r.order);
        };
        std::multiset<decltype(key(rules[0]))> before, after;
        for (const auto& r : rules) before.insert(key(r));
        for (const auto& r : ranked) after.insert(key(r));
        CHECK(before == after);

        auto twice = rank_rules(ranked);
        for (size_t i = 0; i < ranked.size(); ++i) CHECK(twice[i].order == ranked[i].order);
    }
}

TEST_CASE("build_classifier: all records covered correctly -> global majority default") {
    // two attrs; rule on a0 covers everything correctly
    Dataset ds = testutil::make_coded_dataset({{0, 0}, {0, 1}, {1, 0}}, {1, 1, 0}, {2, 2});
    auto rules = std::vector<ClassAssociationRule>{rule({{0, 0}}, 1, 0.9, 0.6, 0),
                                                   rule({{0, 1}}, 0, 0.9, 0.3, 1)};
    RuleModel model = build_classifier(rules, ds, true);
    CHECK(model.rules.size() == 2);
    CHECK(model.default_class == 1);  // global majority
    CHECK(model.default_confidence == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("build_classifier without pruning passes ranked rules through") {
    Dataset ds = testutil::make_coded_dataset({{0}, {1}}, {1, 0}, {2});
    auto rules = std::vector<ClassAssociationRule>{
        rule({{0, 0}}, 1, 0.6, 0.5, 0),
        rule({{0, 1}}, 0, 0.9, 0.5, 1),
        rule({{0, 0}}, 0, 0.2, 0.1, 2),  // junk rule survives without pruning
    };
    RuleModel model = build_classifier(rules, ds, false);
    auto ranked = rank_rules(rules);
    REQUIRE(model.rules.size() == ranked.size());
    for (size_t i = 0; i < ranked.size(); ++i) {
        CHECK(model.rules[i].antecedent == ranked[i].antecedent);
        CHECK(model.rules[i].order == ranked[i].order);
    }
}

TEST_CASE("build_classifier coverage walk keeps useful rules and picks the default") {
    // {A=1,+} x3, {A=2,-} x1 with rules (A=1 -> +), (A=2 -> -)
    Dataset ds = testutil::make_coded_dataset({{0}, {0}, {0}, {1}}, {1, 1, 1, 0}, {2});
    auto rules = std::vector<ClassAssociationRule>{rule({{0, 0}}, 1, 0.9, 0.75, 0),
                                                   rule({{0, 1}}, 0, 0.8, 0.25, 1)};
    RuleModel model = build_classifier(rules, ds, true);
    CHECK(model.rules.size() == 2);
    CHECK(model.default_class == 1);
}

TEST_CASE("build_classifier prunes rules that classify nothing new correctly") {
    Dataset ds = testutil::make_coded_dataset({{0, 0}, {0, 0}, {1, 0}}, {1, 1, 0}, {2, 2});
    auto rules = std::vector<ClassAssociationRule>{
        rule({{0, 0}}, 1, 0.95, 0.6, 0),
        rule({{1, 0}}, 1, 0.60, 0.6, 1),  // covers only already-covered records
        rule({{0, 1}}, 0, 0.90, 0.3, 2),
    };
    RuleModel model = build_classifier(rules, ds, true);
    REQUIRE(model.rules.size() == 2);
    CHECK(model.rules[0].antecedent == std::vector<Item>{{0, 0}});
    CHECK(model.rules[1].antecedent == std::vector<Item>{{0, 1}});
}

TEST_CASE("classify: first match, default path, and rank interaction") {
    RuleModel single;
    single.rules = {rule({{0, 0}}, 1, 0.9, 0.5, 0)};
    single.default_class = 0;
    single.default_confidence = 0.55;

    std::vector<uint16_t> rec_match = {0};
    std::vector<uint16_t> rec_miss = {1};
    Prediction hit = classify(single, rec_match);
    CHECK(hit.label == 1);
    CHECK(hit.score == doctest::Approx(0.9));
    Prediction miss = classify(single, rec_miss);
    CHECK(miss.label == 0);
    CHECK(miss.score == doctest::Approx(0.55));

    // equal confidence, higher support ranks first and wins the match
    auto rules = std::vector<ClassAssociationRule>{rule({{0, 0}}, 1, 0.9, 0.1, 1),
                                                   rule({{0, 0}}, 0, 0.9, 0.3, 0)};
    Dataset ds = testutil::make_coded_dataset({{0}}, {1}, {2});
    RuleModel ranked = build_classifier(rules, ds, false);
    Prediction p = classify(ranked, rec_match);
    CHECK(p.label == 0);
    CHECK(p.score == doctest::Approx(0.9));
}

TEST_CASE("classify treats unknown values as matching no item") {
    RuleModel model;
    model.rules = {rule({{0, 0}}, 1, 0.9, 0.5, 0)};
    model.default_class = 0;
    model.default_confidence = 0.5;
    std::vector<uint16_t> unknown = {kUnknownValue};
    CHECK(classify(model, unknown).label == 0);
}

TEST_CASE("classify is total and deterministic on random models") {
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        Dataset ds = testutil::random_dataset(rng, 60);
        MiningParams p;
        p.min_support = Fraction(1, 10);
        p.min_confidence = Fraction(1, 4);
        RuleModel model = build_classifier(mine_cars(ds, p), ds, true);
        for (size_t r = 0; r < ds.n_records(); ++r) {
            Prediction a = classify(model, ds, r);
            Prediction b = classify(model, ds, r);
            CHECK(a.label == b.label);
            CHECK(a.label < ds.class_domain.size());
        }
    }
}

TEST_CASE("pruned model beats the default-only model on its training set") {
    Rng rng(123);
    for (int rep = 0; rep < 10; ++rep) {
        Dataset ds = testutil::random_dataset(rng, 120);
        MiningParams p;
        p.min_support = Fraction(1, 20);
        p.min_confidence = Fraction(1, 2);
        RuleModel model = build_classifier(mine_cars(ds, p), ds, true);

        std::vector<int64_t> counts(ds.class_domain.size(), 0);
        for (uint16_t l : ds.labels) counts[l]++;
        int64_t majority = *std::max_element(counts.begin(), counts.end());

        int64_t correct = 0;
        for (size_t r = 0; r < ds.n_records(); ++r)
            if (classify(model, ds, r).label == ds.labels[r]) ++correct;
        CHECK(correct >= majority);
    }
}

TEST_CASE("wire format round-trips models exactly") {
    Rng rng(2025);
    Dataset ds = testutil::random_dataset(rng, 80);
    MiningParams p;
    p.min_support = Fraction(1, 15);
    p.min_confidence = Fraction(1, 3);
    RuleModel model = build_classifier(mine_cars(ds, p), ds, true);

    std::string wire = to_wire(model, ds, static_cast<int64_t>(ds.n_records()));
    PortableModel pm = parse_wire(wire);
    ClientModel bound = bind_model(pm, ds, 3);

    CHECK(bound.train_count == static_cast<int64_t>(ds.n_records()));
    CHECK(bound.client_id == 3);
    CHECK(bound.model.default_class == model.default_class);
    CHECK(bound.model.default_confidence == model.default_confidence);
    REQUIRE(bound.model.rules.size() == model.rules.size());
    for (size_t i = 0; i < model.rules.size(); ++i) {
        CHECK(bound.model.rules[i].antecedent == model.rules[i].antecedent);
        CHECK(bound.model.rules[i].label == model.rules[i].label);
        CHECK(bound.model.rules[i].confidence == model.rules[i].confidence);  // %.17g exact
        CHECK(bound.model.rules[i].support == model.rules[i].support);
        CHECK(bound.model.rules[i].order == model.rules[i].order);
    }

    // serialize -> parse -> serialize is a fixed point
    std::string again = to_wire(bound.model, ds, bound.train_count);
    CHECK(again == wire);
}

TEST_CASE("parse_wire rejects malformed payloads") {
    CHECK_THROWS_AS(parse_wire("not a model"), std::runtime_error);
    CHECK_THROWS_AS(parse_wire("0.5\t0.5\t0\tc0\ta0=v0\n"), std::runtime_error);  // no footer
    CHECK_THROWS_AS(parse_wire("DEFAULT\tc0\n"), std::runtime_error);
}

TEST_CASE("bind_model validates attributes, values, and labels") {
    Dataset ds = testutil::make_coded_dataset({{0}}, {0}, {2});
    PortableModel pm;
    pm.default_label = "c0";
    pm.train_count = 1;
    pm.rules.push_back({0.5, 0.5, 0, "c0", {{"nope", "v0"}}});
    CHECK_THROWS_AS(bind_model(pm, ds, 0), std::runtime_error);
    pm.rules[0].items = {{"a0", "bogus"}};
    CHECK_THROWS_AS(bind_model(pm, ds, 0), std::runtime_error);
    pm.rules[0].items = {{"a0", "v0"}};
    pm.rules[0].label = "mystery";
    CHECK_THROWS_AS(bind_model(pm, ds, 0), std::runtime_error);
}
