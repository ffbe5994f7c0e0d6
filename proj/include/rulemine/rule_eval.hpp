#pragma once

// Exact statistical measures for closed-path rules, computed by forward
// chaining joins over the immutable graph. All functions are pure; it is
// safe to evaluate many rules concurrently.
//
// Join strategy: left to right, keyed by the start entity x, deduplicating
// the reachable node set after every step. Distinct-pair semantics are
// enforced with an (x, y) set. All ratios are defined as 0 on an empty
// denominator.

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "rulemine/kg.hpp"
#include "rulemine/rule.hpp"

namespace rulemine {

struct GroundingResult {
    // Packed (x << 32 | y) pairs realizing the body chain.
    std::unordered_set<std::uint64_t> pairs;
    bool truncated = false;
};

constexpr std::uint64_t pack_entity_pair(EntityId x, EntityId y) {
    return (std::uint64_t(x) << 32) | std::uint64_t(y);
}

// Distinct (x, y) with an entity chain realizing every body atom. `budget`
// caps the number of edge expansions; 0 means unlimited. When the budget is
// hit the partial set is returned with `truncated` set — never a silent
// approximation.
GroundingResult body_groundings(const KnowledgeGraph& kg, std::span<const PredicateId> body,
                                std::uint64_t budget = 0);

// Distinct end nodes reachable from any start by walking the whole body.
std::vector<EntityId> reachable_end_set(const KnowledgeGraph& kg,
                                        std::span<const PredicateId> body,
                                        std::uint64_t budget = 0);

// supp, body grounding count, conf, hc and PCA confidence in one pass.
RuleStats evaluate_rule(const KnowledgeGraph& kg, const Rule& r, std::uint64_t budget = 0);

std::uint64_t support(const KnowledgeGraph& kg, const Rule& r);
double confidence(const KnowledgeGraph& kg, const Rule& r);
double head_coverage(const KnowledgeGraph& kg, const Rule& r);
double pca_confidence(const KnowledgeGraph& kg, const Rule& r);

// One child per vocabulary predicate appended to the body, in vocabulary
// order; children whose extended body has no grounding are dropped. The
// prefix body may be empty (children are the single-atom bodies).
std::vector<Rule> refine(const KnowledgeGraph& kg, const Rule& prefix,
                         std::span<const PredicateId> vocabulary);

}  // namespace rulemine
