#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rulemine/kg.hpp"

using namespace rulemine;
using rulemine::testing::random_kg;

TEST_CASE("load counts distinct triples and augments inverses") {
    std::istringstream in("a\tp\tb\nb\tq\tc\na\tp\tc\n");
    const KnowledgeGraph kg = load_triples(in);
    CHECK(kg.fact_count() == 3);
    CHECK(kg.entity_count() == 3);
    CHECK(kg.original_predicate_count() == 2);
    CHECK(kg.predicate_count() == 4);  // 2 * originals
}

TEST_CASE("duplicate triples are deduplicated") {
    std::istringstream in("a\tp\tb\na\tp\tb\n");
    const KnowledgeGraph kg = load_triples(in);
    CHECK(kg.fact_count() == 1);
}

TEST_CASE("comments and blank lines are ignored") {
    std::istringstream in("# header\n\na\tp\tb\n   \n# tail\n");
    CHECK(load_triples(in).fact_count() == 1);
}

TEST_CASE("malformed line reports its line number") {
    std::istringstream in("a\tp\tb\na\tp\n");
    try {
        load_triples(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("empty input is a valid empty KG") {
    std::istringstream in("");
    const KnowledgeGraph kg = load_triples(in);
    CHECK(kg.fact_count() == 0);
    CHECK(kg.predicate_vocabulary().empty());
}

TEST_CASE("literal objects are dropped unless whitelisted") {
    std::istringstream in("a\tp\t\"42\"\na\tp\tb\n");
    CHECK(load_triples(in).fact_count() == 1);
    std::istringstream again("a\tp\t\"42\"\na\tp\tb\n");
    CHECK(load_triples(again, LoadOptions{.keep_literals = true}).fact_count() == 2);
}

TEST_CASE("objects_of resolves both directions") {
    std::istringstream in("a\tp\tb\na\tp\tc\n");
    const KnowledgeGraph kg = load_triples(in);
    const EntityId a = *kg.entity_id("a"), b = *kg.entity_id("b"), c = *kg.entity_id("c");
    const PredicateId p = *kg.predicate_id("p");

    auto objs = kg.objects_of(a, p);
    CHECK(std::vector<EntityId>(objs.begin(), objs.end()) == std::vector<EntityId>{b, c});
    auto inv = kg.objects_of(b, inverse_of(p));
    CHECK(std::vector<EntityId>(inv.begin(), inv.end()) == std::vector<EntityId>{a});
    CHECK(kg.objects_of(c, p).empty());
}

TEST_CASE("unknown ids raise lookup errors") {
    std::istringstream in("a\tp\tb\n");
    const KnowledgeGraph kg = load_triples(in);
    CHECK_THROWS_AS((void)kg.objects_of(99, 0), LookupError);
    CHECK_THROWS_AS((void)kg.objects_of(0, 99), LookupError);
    CHECK_THROWS_AS((void)kg.entity_name(99), LookupError);
}

TEST_CASE("predicate vocabulary is ordered and includes inverses") {
    std::istringstream in("a\tp\tb\n");
    const KnowledgeGraph kg = load_triples(in);
    CHECK(kg.predicate_vocabulary() == std::vector<PredicateId>{0, 1});
    CHECK(kg.predicate_name(0) == "p");
    CHECK(kg.predicate_name(1) == "p^-1");
    CHECK(*kg.predicate_id("p^-1") == 1);
    CHECK(inverse_of(inverse_of(0)) == 0);
    CHECK(inverse_of(0) != 0);
}

TEST_CASE("round trip preserves the fact set") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const KnowledgeGraph kg = random_kg(20, 4, 80, seed);
        std::ostringstream exported;
        kg.export_triples(exported);
        std::istringstream in(exported.str());
        const KnowledgeGraph reloaded = load_triples(in);
        REQUIRE(reloaded.fact_count() == kg.fact_count());
        // Name-level equality: every fact survives the round trip.
        for (PredicateId p : kg.original_predicates()) {
            const auto rp = reloaded.predicate_id(kg.predicate_name(p));
            REQUIRE(rp.has_value());
            kg.for_each_pair(p, [&](EntityId s, EntityId o) {
                const auto rs = reloaded.entity_id(kg.entity_name(s));
                const auto ro = reloaded.entity_id(kg.entity_name(o));
                REQUIRE(rs.has_value());
                REQUIRE(ro.has_value());
                CHECK(reloaded.has_fact(*rs, *rp, *ro));
            });
        }
        // Re-export reproduces the bytes.
        std::ostringstream again;
        reloaded.export_triples(again);
        CHECK(again.str() == exported.str());
    }
}

TEST_CASE("inverse closure holds for every fact") {
    const KnowledgeGraph kg = random_kg(15, 3, 60, 7);
    for (PredicateId p : kg.original_predicates()) {
        kg.for_each_pair(p, [&](EntityId s, EntityId o) {
            CHECK(kg.has_fact(o, inverse_of(p), s));
        });
    }
}

TEST_CASE("indexes agree with the fact set") {
    const KnowledgeGraph kg = random_kg(12, 3, 50, 11);
    std::size_t via_subjects = 0;
    for (PredicateId p : kg.predicate_vocabulary()) {
        for (EntityId s : kg.subjects_of(p)) via_subjects += kg.objects_of(s, p).size();
        CHECK(kg.pair_count(p) == kg.pair_count(inverse_of(p)));
    }
    CHECK(via_subjects == 2 * kg.fact_count());  // both directions
}

TEST_CASE("min-degree filter keeps symbol tables stable") {
    std::istringstream in("a\tp\tb\na\tp\tc\na\tq\tb\nd\tq\te\n");
    const KnowledgeGraph kg = load_triples(in);
    const KnowledgeGraph filtered = kg.filtered_by_min_degree(2);
    CHECK(filtered.same_symbol_tables(kg));
    CHECK(filtered.fact_count() < kg.fact_count());
    // d and e have degree 1, so (d,q,e) is gone
    CHECK_FALSE(filtered.has_fact(*kg.entity_id("d"), *kg.predicate_id("q"), *kg.entity_id("e")));
    CHECK(filtered.has_fact(*kg.entity_id("a"), *kg.predicate_id("p"), *kg.entity_id("b")));
}
