#pragma once

// Synthetic KG generator with planted closed-path rules. Chains are built
// over globally disjoint entity tuples, so with zero dropout and zero noise
// every planted rule has confidence exactly 1 on the generated graph. Head
// facts are closed with probability 1 - dropout; uniform noise facts are
// added at the configured rate.

#include <cstdint>
#include <string>
#include <vector>

#include "rulemine/kg.hpp"
#include "rulemine/rule.hpp"

namespace rulemine {

struct PlantedBodyAtom {
    std::string predicate;
    bool inverted = false;
};

struct PlantedRuleSpec {
    std::string head;
    std::vector<PlantedBodyAtom> body;
    std::size_t chains = 200;  // body groundings to sample
};

struct PlantedKgSpec {
    std::vector<PlantedRuleSpec> rules;
    std::size_t extra_entities = 0;    // pool beyond what the chains consume
    std::size_t extra_predicates = 0;  // distractor predicates (noise only)
    double dropout = 0.0;              // probability a chain's head fact is withheld
    double noise_rate = 0.0;           // noise facts as a fraction of structural facts
    std::uint64_t seed = 0;
};

struct PlantedKg {
    KnowledgeGraph kg;
    std::vector<Rule> ground_truth;  // planted rules over the generated ids
};

PlantedKg generate_planted_kg(const PlantedKgSpec& spec);

}  // namespace rulemine
