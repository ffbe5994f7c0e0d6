#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rulemine/rule.hpp"
#include "rulemine/rule_eval.hpp"

using namespace rulemine;
namespace rt = rulemine::testing;

namespace {

const char* kHandKg =
    "alice\tbornIn\tparis\n"
    "bob\tbornIn\tlyon\n"
    "paris\tcountry\tfrance\n"
    "lyon\tcountry\tfrance\n"
    "carol\tbornIn\tberlin\n"
    "berlin\tcountry\tgermany\n";

}  // namespace

TEST_CASE("single-atom body grounds to its fact pairs") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\n");
    const PredicateId p = *kg.predicate_id("p");
    const auto g = body_groundings(kg, std::vector<PredicateId>{p});
    CHECK(g.pairs.size() == 1);
    CHECK(g.pairs.count(pack_entity_pair(*kg.entity_id("a"), *kg.entity_id("b"))));
}

TEST_CASE("a path through an inverse returns to its origin") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\n");
    const PredicateId p = *kg.predicate_id("p");
    const auto g = body_groundings(kg, std::vector<PredicateId>{p, inverse_of(p)});
    CHECK(g.pairs.size() == 1);
    CHECK(g.pairs.count(pack_entity_pair(*kg.entity_id("a"), *kg.entity_id("a"))));
}

TEST_CASE("hand KG chain matches the nested-loop oracle") {
    const KnowledgeGraph kg = rt::kg_from_triples(kHandKg);
    const std::vector<PredicateId> body{*kg.predicate_id("bornIn"), *kg.predicate_id("country")};
    const auto got = body_groundings(kg, body);
    const auto expected = rt::oracle_body_groundings(kg, body);
    REQUIRE(got.pairs.size() == expected.size());
    for (const auto& [x, y] : expected) CHECK(got.pairs.count(pack_entity_pair(x, y)));
}

TEST_CASE("identity rule has conf = hc = pca = 1") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\nc\tp\td\n");
    const Rule r{*kg.predicate_id("p"), {*kg.predicate_id("p")}};
    const RuleStats stats = evaluate_rule(kg, r);
    CHECK(stats.supp == kg.pair_count(r.head));
    CHECK(stats.conf == 1.0);
    CHECK(stats.hc == 1.0);
    CHECK(stats.pca_conf == 1.0);
}

TEST_CASE("empty head or disjoint body give zero ratios") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\nc\tq\td\n");
    const Rule r{*kg.predicate_id("q"), {*kg.predicate_id("p")}};
    const RuleStats stats = evaluate_rule(kg, r);
    CHECK(stats.supp == 0);
    CHECK(stats.conf == 0.0);
    CHECK(stats.pca_conf == 0.0);
}

TEST_CASE("PCA denominator drops subjects with no head fact") {
    // body pairs: (a,b) and (c,d); only a has any head fact.
    const KnowledgeGraph kg = rt::kg_from_triples(
        "a\tp\tb\n"
        "c\tp\td\n"
        "a\th\tb\n");
    const Rule r{*kg.predicate_id("h"), {*kg.predicate_id("p")}};
    const RuleStats stats = evaluate_rule(kg, r);
    CHECK(stats.supp == 1);
    CHECK(stats.body_count == 2);
    CHECK(stats.conf == doctest::Approx(0.5));
    CHECK(stats.pca_conf == doctest::Approx(1.0));  // (c,d) excluded
}

TEST_CASE("engine matches the oracle on random graphs, all short rules") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const KnowledgeGraph kg = rt::random_kg(18, 3, 90, seed);
        const auto vocab = kg.predicate_vocabulary();
        for (PredicateId head : kg.original_predicates()) {
            for (PredicateId b0 : vocab) {
                {
                    const Rule r{head, {b0}};
                    const RuleStats got = evaluate_rule(kg, r);
                    const auto want = rt::oracle_rule_stats(kg, r);
                    CHECK(got.supp == want.supp);
                    CHECK(got.body_count == want.body_count);
                    CHECK(got.conf == want.conf);
                    CHECK(got.hc == want.hc);
                    CHECK(got.pca_conf == want.pca_conf);
                }
                for (PredicateId b1 : vocab) {
                    const Rule r{head, {b0, b1}};
                    const RuleStats got = evaluate_rule(kg, r);
                    const auto want = rt::oracle_rule_stats(kg, r);
                    CHECK(got.supp == want.supp);
                    CHECK(got.body_count == want.body_count);
                    CHECK(got.pca_conf == want.pca_conf);
                }
            }
        }
    }
}

TEST_CASE("support of an extension never exceeds the prefix join width") {
    const KnowledgeGraph kg = rt::random_kg(15, 3, 70, 42);
    const auto vocab = kg.predicate_vocabulary();
    for (PredicateId head : kg.original_predicates())
        for (PredicateId b0 : vocab)
            for (PredicateId b1 : vocab) {
                const auto prefix_reach = reachable_end_set(kg, std::vector<PredicateId>{b0});
                const RuleStats ext = evaluate_rule(kg, Rule{head, {b0, b1}});
                // every grounding of the extended body goes through the prefix frontier
                CHECK(ext.supp <= ext.body_count);
                if (prefix_reach.empty()) CHECK(ext.body_count == 0);
            }
}

TEST_CASE("repeated evaluation is deterministic") {
    const KnowledgeGraph kg = rt::random_kg(20, 4, 100, 3);
    const Rule r{0, {2, 5}};
    const RuleStats a = evaluate_rule(kg, r);
    const RuleStats b = evaluate_rule(kg, r);
    CHECK(a.supp == b.supp);
    CHECK(a.body_count == b.body_count);
    CHECK(a.conf == b.conf);
    CHECK(a.pca_conf == b.pca_conf);
}

TEST_CASE("refine keeps exactly the connectable children") {
    const KnowledgeGraph kg = rt::kg_from_triples(kHandKg);
    const auto vocab = kg.predicate_vocabulary();
    SUBCASE("empty prefix fans out to every non-empty predicate") {
        const auto children = refine(kg, Rule{0, {}}, vocab);
        CHECK(children.size() == vocab.size());  // every predicate has facts here
    }
    SUBCASE("unground prefix yields nothing") {
        // country(x, .) then country again: no country edges leave a country object
        const Rule prefix{0, {*kg.predicate_id("country"), *kg.predicate_id("country")}};
        CHECK(refine(kg, prefix, vocab).empty());
    }
    SUBCASE("children match a brute-force connectivity check") {
        const Rule prefix{0, {*kg.predicate_id("bornIn")}};
        const auto children = refine(kg, prefix, vocab);
        for (PredicateId p : vocab) {
            bool connectable = false;
            for (const auto& [x, z] : rt::oracle_body_groundings(kg, prefix.body))
                if (!kg.objects_of(z, p).empty()) connectable = true;
            const bool present =
                std::any_of(children.begin(), children.end(),
                            [&](const Rule& c) { return c.body.back() == p; });
            CHECK(present == connectable);
        }
    }
}

TEST_CASE("grounding budget truncates explicitly") {
    const KnowledgeGraph kg = rt::random_kg(30, 2, 200, 9);
    const std::vector<PredicateId> body{0, 1, 0};
    const auto full = body_groundings(kg, body);
    CHECK_FALSE(full.truncated);
    const auto capped = body_groundings(kg, body, 3);
    CHECK(capped.truncated);
    CHECK(capped.pairs.size() <= full.pairs.size());
}

TEST_CASE("rule lines render and parse back") {
    const KnowledgeGraph kg = rt::kg_from_triples(kHandKg);
    Rule r{*kg.predicate_id("country"), {inverse_of(*kg.predicate_id("bornIn"))}};
    CHECK(rule_text(kg, r) == "bornIn^-1(x,y) => country(x,y)");

    Rule chain{*kg.predicate_id("country"), {*kg.predicate_id("bornIn"), *kg.predicate_id("country"),
                                             inverse_of(*kg.predicate_id("country"))}};
    RuleStats stats;
    stats.supp = 7;
    stats.conf = 0.5;
    stats.hc = 0.25;
    const std::string line = rule_line(kg, chain, stats, 0.75, 0.525);
    CHECK(line ==
          "bornIn(x,z1) & country(z1,z2) & country^-1(z2,y) => country(x,y)\t7\t0.500000\t0."
          "250000\t0.750000\t0.525000");
    const ParsedRuleLine parsed = parse_rule_line(kg, line);
    CHECK(parsed.rule == chain);
    CHECK(parsed.supp == 7);
    CHECK(parsed.score == doctest::Approx(0.525));
}

TEST_CASE("malformed rule lines are rejected") {
    const KnowledgeGraph kg = rt::kg_from_triples(kHandKg);
    CHECK_THROWS_AS(parse_rule_line(kg, "nonsense"), ParseError);
    CHECK_THROWS_AS(parse_rule_line(kg, "unknown(x,y) => country(x,y)\t1\t1\t1\t1\t1"),
                    LookupError);
}
