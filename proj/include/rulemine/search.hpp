#pragma once

// Online value-guided rule mining. The miner alternates a maintaining phase
// (drain the candidate buffer through the value function in batches, push
// survivors into a max heap) and an exploring phase (pop the best state;
// refine it if the rule is still short, otherwise evaluate and emit it).
// The value function is frozen during mining; cached heap values are never
// recomputed.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rulemine/embedding.hpp"
#include "rulemine/kg.hpp"
#include "rulemine/mdp.hpp"
#include "rulemine/rule_eval.hpp"

namespace rulemine {

enum class StatMeasure { kCwa, kPca };

struct SearchConfig {
    PredicateId head = 0;          // P0; must be an original predicate
    std::size_t target_length = 3; // L: total rule length, bodies grow to L-1
    std::size_t value_batch = 128; // B
    double min_conf = 0.1;         // minC
    double min_hc = 0.01;          // minH
    double min_value = 0.0001;     // minV
    double lambda = 0.9;
    StatMeasure measure = StatMeasure::kCwa;
    double time_limit_seconds = 0.0;   // 0 = unlimited; per mine() call
    std::uint64_t grounding_budget = 0;

    void validate(const KnowledgeGraph& kg) const;
};

struct MinedRule {
    Rule rule;
    RuleStats stats;
    double rho = 0.0;
    double score = 0.0;         // lambda * psi + (1 - lambda) * rho
    double emit_seconds = 0.0;  // wall clock relative to the mine() start
    std::string text;           // rendered rule, also the sort tiebreaker
};

// Batched V over encoded states; must be safe for concurrent calls.
using ValueFn = std::function<std::vector<double>(const std::vector<TokenSeq>&)>;

ValueFn value_fn_of(const ValueNetwork& net);

double hybrid_score(const RuleStats& stats, double rho, double lambda, StatMeasure measure);

struct MineResult {
    std::vector<MinedRule> rules;  // score descending, rule text ascending
    bool truncated = false;        // stopped on the time limit
    std::uint64_t value_evaluations = 0;
    std::uint64_t refine_children = 0;
    std::uint64_t states_explored = 0;
};

MineResult mine(const KnowledgeGraph& kg, const SearchConfig& cfg, const ValueFn& value_fn,
                const EmbeddingModel& model);

struct PredicateMineOutcome {
    PredicateId head = 0;
    std::vector<MinedRule> rules;  // merged across the length sweep
    bool truncated = false;
    std::string error;  // non-empty when this predicate's run failed
};

// Runs mine() for every requested head predicate (all originals when
// `heads` is empty), sweeping L from 2 to cfg.target_length under a shared
// per-predicate time budget. Failures are isolated per predicate.
std::vector<PredicateMineOutcome> mine_all(const KnowledgeGraph& kg, const SearchConfig& cfg,
                                           const ValueFn& value_fn, const EmbeddingModel& model,
                                           std::span<const PredicateId> heads = {}, int jobs = 1);

}  // namespace rulemine
