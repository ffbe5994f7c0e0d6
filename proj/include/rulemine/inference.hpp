#pragma once

// Rule application with Noisy-OR confidence degrees, held-out evaluation
// (predictive power, link prediction) and the value/quality correlation
// diagnostic.
//
// Link prediction protocol: filtered setting (other known-true answers are
// removed from the candidate pool) with average-rank tie handling — every
// candidate sharing the answer's confidence degree, including the zero-cd
// tail, contributes the mean rank of its tie group. This convention moves
// MRR and is applied identically to both query directions.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rulemine/kg.hpp"
#include "rulemine/search.hpp"

namespace rulemine {

class UndefinedCorrelationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Prediction {
    Fact fact;
    double cd = 0.0;  // 1 - prod(1 - S(r)) over deriving rules
    std::vector<std::uint32_t> rule_ids;
    bool known = false;  // already a fact of the source KG
};

// All head facts derivable by grounding any rule body, with Noisy-OR
// aggregated confidence degrees. Scores are capped below 1 so the product
// stays defined. Output is sorted by cd descending, then by fact ids.
std::vector<Prediction> apply_rules(const KnowledgeGraph& kg, std::span<const MinedRule> rules);

struct EvalSplit {
    KnowledgeGraph train;
    std::vector<Fact> held_out;  // canonical direction
    double ratio = 0.0;
    std::uint64_t seed = 0;
};

// Removes `ratio` of each selected head predicate's facts (uniformly, per
// predicate) into the held-out set; all remaining facts form the train KG,
// which shares the source symbol tables.
EvalSplit make_split(const KnowledgeGraph& kg, double ratio, std::uint64_t seed,
                     std::span<const PredicateId> head_predicates = {});

struct PredictivePower {
    std::uint64_t facts = 0;    // predictions landing in the held-out set
    std::uint64_t q_facts = 0;  // those with cd >= threshold
};

PredictivePower predictive_power(const EvalSplit& split, std::span<const Prediction> predictions,
                                 double cd_threshold = 0.7);

struct RankingMetrics {
    double mrr = 0.0;
    double hits_at_10 = 0.0;
    std::uint64_t query_count = 0;
};

// MRR / Hits@10 over both directions of every held-out fact.
RankingMetrics link_prediction(const EvalSplit& split, std::span<const Prediction> predictions);

// Pearson correlation between V(state) and the fraction of the state's
// completions whose confidence passes `conf_threshold`. States are body
// prefixes reachable during search (groundable, 1..L-2 atoms filled).
// Throws UndefinedCorrelationError when either variable has no variance.
struct CorrelationConfig {
    std::size_t sample_size = 2000;
    std::size_t target_length = 3;       // L
    double conf_threshold = 0.1;
    std::size_t max_completions = 64;    // exhaustive below, sampled above
    std::uint64_t seed = 0;
};

double value_quality_correlation(const KnowledgeGraph& kg, const ValueFn& value_fn,
                                 const CorrelationConfig& cfg);

double pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace rulemine
