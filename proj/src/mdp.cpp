#include "rulemine/mdp.hpp"

namespace rulemine {

State State::fully_masked(PredicateId head, std::size_t body_length) {
    State s;
    s.head = head;
    s.slots.assign(body_length, kMaskedSlot);
    return s;
}

State State::from_rule(const Rule& r) {
    State s;
    s.head = r.head;
    s.slots = r.body;
    return s;
}

std::size_t State::mask_count() const {
    std::size_t n = 0;
    for (PredicateId p : slots)
        if (p == kMaskedSlot) ++n;
    return n;
}

std::optional<Rule> State::to_rule() const {
    Rule r;
    r.head = head;
    r.body.reserve(slots.size());
    for (PredicateId p : slots) {
        if (p == kMaskedSlot) return std::nullopt;
        r.body.push_back(p);
    }
    return r;
}

State transition(const State& s, const Action& a) {
    if (a.slot >= s.slots.size()) throw InvalidActionError("slot index out of range");
    if (s.slots[a.slot] != kMaskedSlot) throw InvalidActionError("slot already filled");
    State next = s;
    next.slots[a.slot] = a.predicate;
    return next;
}

std::vector<Action> valid_actions(const State& s, std::span<const PredicateId> vocabulary) {
    std::vector<Action> actions;
    actions.reserve(s.mask_count() * vocabulary.size());
    for (std::size_t u = 0; u < s.slots.size(); ++u) {
        if (s.slots[u] != kMaskedSlot) continue;
        for (PredicateId v : vocabulary) actions.push_back(Action{u, v});
    }
    return actions;
}

double reward(const State& s, const Action& a, const EmbeddingModel& model) {
    const State next = transition(s, a);
    const std::optional<Rule> r = next.to_rule();
    return r ? rho(model, *r) : 0.0;
}

TokenSeq TokenVocabulary::encode(const State& s) const {
    TokenSeq seq;
    seq.reserve(s.slots.size() + 2);
    seq.push_back(std::int32_t(s.head));
    seq.push_back(separator_token());
    for (PredicateId p : s.slots)
        seq.push_back(p == kMaskedSlot ? mask_token() : std::int32_t(p));
    return seq;
}

}  // namespace rulemine
