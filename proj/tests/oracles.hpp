#pragma once

// Test-only reference implementations, deliberately naive. The rule-stats
// oracle joins fact lists with nested loops and never touches the indexed
// join path it is checking.

#include <cstdint>
#include <random>
#include <sstream>
#include <set>
#include <utility>
#include <vector>

#include "rulemine/kg.hpp"
#include "rulemine/rule.hpp"
#include "rulemine/rule_eval.hpp"

namespace rulemine::testing {

using EntityPair = std::pair<EntityId, EntityId>;

inline std::vector<EntityPair> oracle_pairs_of(const KnowledgeGraph& kg, PredicateId p) {
    std::vector<EntityPair> out;
    kg.for_each_pair(p, [&](EntityId s, EntityId o) { out.emplace_back(s, o); });
    return out;
}

struct OracleStats {
    std::uint64_t supp = 0;
    std::uint64_t body_count = 0;
    double conf = 0.0;
    double hc = 0.0;
    double pca_conf = 0.0;
};

inline std::set<EntityPair> oracle_body_groundings(const KnowledgeGraph& kg,
                                                   const std::vector<PredicateId>& body) {
    std::set<EntityPair> pairs;
    std::vector<std::vector<EntityPair>> atom_facts;
    for (PredicateId p : body) atom_facts.push_back(oracle_pairs_of(kg, p));

    // Depth-first nested loops over the per-atom fact lists.
    auto rec = [&](auto&& self, std::size_t depth, EntityId x, EntityId tail) -> void {
        if (depth == body.size()) {
            pairs.emplace(x, tail);
            return;
        }
        for (const auto& [s, o] : atom_facts[depth])
            if (s == tail) self(self, depth + 1, x, o);
    };
    for (const auto& [s, o] : atom_facts[0]) rec(rec, 1, s, o);
    return pairs;
}

inline OracleStats oracle_rule_stats(const KnowledgeGraph& kg, const Rule& r) {
    const std::set<EntityPair> groundings = oracle_body_groundings(kg, r.body);
    std::set<EntityPair> head_pairs;
    std::set<EntityId> head_subjects;
    for (const auto& [s, o] : oracle_pairs_of(kg, r.head)) {
        head_pairs.emplace(s, o);
        head_subjects.insert(s);
    }

    OracleStats stats;
    stats.body_count = groundings.size();
    std::uint64_t pca_denom = 0;
    for (const auto& pair : groundings) {
        if (head_subjects.count(pair.first)) ++pca_denom;
        if (head_pairs.count(pair)) ++stats.supp;
    }
    stats.conf = stats.body_count ? double(stats.supp) / double(stats.body_count) : 0.0;
    stats.hc = head_pairs.empty() ? 0.0 : double(stats.supp) / double(head_pairs.size());
    stats.pca_conf = pca_denom ? double(stats.supp) / double(pca_denom) : 0.0;
    return stats;
}

// Every rule of the given total length for one head, filtered by the same
// thresholds the miner applies. Stats come from the engine; their own
// correctness is pinned by the nested-loop oracle elsewhere.
inline std::vector<Rule> oracle_exhaustive_mine(const KnowledgeGraph& kg, PredicateId head,
                                                std::size_t target_length, double min_conf,
                                                double min_hc) {
    const std::vector<PredicateId> vocab = kg.predicate_vocabulary();
    const std::size_t body_len = target_length - 1;
    std::vector<Rule> out;
    std::vector<std::size_t> odo(body_len, 0);
    while (true) {
        Rule r;
        r.head = head;
        for (std::size_t slot : odo) r.body.push_back(vocab[slot]);
        const RuleStats stats = evaluate_rule(kg, r);
        if (stats.conf >= min_conf && stats.hc >= min_hc) out.push_back(std::move(r));
        std::size_t d = 0;
        while (d < body_len && ++odo[d] == vocab.size()) odo[d++] = 0;
        if (d == body_len) break;
    }
    return out;
}

inline KnowledgeGraph random_kg(std::size_t entities, std::size_t predicates, std::size_t facts,
                                std::uint64_t seed) {
    KnowledgeGraphBuilder b;
    for (std::size_t e = 0; e < entities; ++e) b.intern_entity("e" + std::to_string(e));
    for (std::size_t p = 0; p < predicates; ++p) b.intern_predicate("p" + std::to_string(p));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<EntityId> ent(0, EntityId(entities - 1));
    std::uniform_int_distribution<PredicateId> pred(0, PredicateId(predicates - 1));
    for (std::size_t i = 0; i < facts; ++i) b.add_fact(ent(rng), pred(rng) * 2, ent(rng));
    return b.freeze();
}

inline KnowledgeGraph kg_from_triples(const std::string& tsv) {
    std::istringstream in(tsv);
    return load_triples(in);
}

}  // namespace rulemine::testing
