#pragma once

// Rule-generation MDP: a state is a head predicate plus a fixed number of
// body slots, each holding a predicate or the mask sentinel. An action
// materializes one masked slot. Token form for the value network:
// [head, separator, slot_1 ... slot_n].

#include <optional>
#include <span>
#include <vector>

#include "rulemine/embedding.hpp"
#include "rulemine/rule.hpp"
#include "rulemine/value_net.hpp"

namespace rulemine {

class InvalidActionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

constexpr PredicateId kMaskedSlot = 0xffffffffu;

struct State {
    PredicateId head = 0;
    std::vector<PredicateId> slots;  // body length is fixed at construction

    static State fully_masked(PredicateId head, std::size_t body_length);
    static State from_rule(const Rule& r);

    std::size_t mask_count() const;
    bool terminal() const { return mask_count() == 0; }

    // The mapping from states to rules; nullopt stands for "incomplete".
    std::optional<Rule> to_rule() const;

    friend bool operator==(const State&, const State&) = default;
};

struct Action {
    std::size_t slot = 0;  // 0-based index into State::slots; must be masked
    PredicateId predicate = 0;

    friend bool operator==(const Action&, const Action&) = default;
};

// New state with slot a.slot set to a.predicate; throws InvalidActionError
// if the slot is already filled.
State transition(const State& s, const Action& a);

// All (slot, predicate) fills, ordered by slot then vocabulary position.
std::vector<Action> valid_actions(const State& s, std::span<const PredicateId> vocabulary);

// rho of the completed rule when the action completes it, exactly 0 otherwise.
double reward(const State& s, const Action& a, const EmbeddingModel& model);

// Fixed token layout over Γ: predicate ids map to themselves, then the
// separator and mask tokens.
struct TokenVocabulary {
    std::size_t predicate_count = 0;  // |Γ|

    int vocab_size() const { return int(predicate_count) + 2; }
    std::int32_t separator_token() const { return std::int32_t(predicate_count); }
    std::int32_t mask_token() const { return std::int32_t(predicate_count) + 1; }
    TokenSeq encode(const State& s) const;
};

}  // namespace rulemine
