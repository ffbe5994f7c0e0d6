#pragma once

// Temporal-difference training of the value network over the rule MDP.
//
// Each episode: initialize a state from the active curriculum stage,
// simulate with the epsilon-greedy policy derived from V, store every
// transition in the replay memory, then take one optimizer step on a batch
// sampled from the memory. The TD target for a tuple (s, a, s', r) is
//   q = r + gamma * max_{a'} V(T(s', a'))   for non-terminal s'
//   q = r                                   for terminal s' (empty max)
// and the step minimizes mean |V(s') - q| with q held constant.
//
// Epsilon decays linearly over the concatenated stage budgets; one seeded
// generator drives episode initialization, policy draws, and replay
// sampling.

#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "rulemine/embedding.hpp"
#include "rulemine/kg.hpp"
#include "rulemine/mdp.hpp"
#include "rulemine/value_net.hpp"

namespace rulemine {

struct TransitionRecord {
    State state;
    Action action;
    State next;
    double reward = 0.0;
};

class ReplayMemory {
public:
    explicit ReplayMemory(std::size_t capacity);

    void push(TransitionRecord record);
    std::size_t size() const { return records_.size(); }
    std::size_t capacity() const { return capacity_; }
    // FIFO position: 0 is the oldest resident record.
    const TransitionRecord& at(std::size_t i) const { return records_.at(i); }

    // Uniform sample of min(k, size) distinct records.
    std::vector<const TransitionRecord*> sample(std::size_t k, std::mt19937_64& rng) const;

private:
    std::size_t capacity_;
    std::deque<TransitionRecord> records_;
};

struct CurriculumStage {
    // Probability of body length 2 + i; must sum to 1.
    std::vector<double> length_probs = {0.25, 0.25, 0.50, 0.00, 0.00};
    double masked_prob = 0.0;  // q: probability of a fully masked episode
    std::size_t episodes = 0;

    void validate() const;
    std::size_t sample_body_length(std::mt19937_64& rng) const;
};

// The paper-style 4-stage schedule with the given per-stage budgets.
std::vector<CurriculumStage> default_curriculum(const std::vector<std::size_t>& budgets);

struct AgentTrainConfig {
    double gamma = 0.99;
    double learning_rate = 0.001;
    std::size_t replay_capacity = 10000;
    std::size_t batch_size = 128;
    double eps_start = 0.95;
    double eps_end = 0.05;
    int token_dim = 32;
    int hidden = 64;
    int layers = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct EpisodeRecord {
    std::size_t episode = 0;
    std::size_t stage = 0;
    double epsilon = 0.0;
    double terminal_reward = 0.0;
    double loss = 0.0;
};

struct TrainingLog {
    std::uint64_t seed = 0;
    std::vector<EpisodeRecord> episodes;

    std::string to_text() const;
    static TrainingLog from_text(const std::string& text);
};

struct AgentArtifacts {
    ValueNetwork net;
    TrainingLog log;
};

// With probability eps a uniformly random valid action, otherwise the
// action maximizing V(T(s, a)); ties resolve to the lowest (slot,
// predicate). Throws InvalidActionError on a terminal state.
Action epsilon_greedy(const ValueNetwork& net, const TokenVocabulary& tokens, const State& s,
                      double eps, std::span<const PredicateId> vocabulary, std::mt19937_64& rng);

// One optimizer step over the batch; returns the loss.
double td_update(ValueNetwork& net, const TokenVocabulary& tokens,
                 const std::vector<const TransitionRecord*>& batch,
                 std::span<const PredicateId> vocabulary, double gamma, double learning_rate);

// Draw an initial state per the stage setting: with probability q a fully
// masked body of sampled length under a uniformly random head; otherwise a
// seed rule with 1..n body slots re-masked.
State curriculum_init(const CurriculumStage& stage, std::span<const Rule> seed_rules,
                      std::span<const PredicateId> original_heads,
                      std::mt19937_64& rng);

struct SeedRuleResult {
    std::vector<Rule> rules;  // sorted by rho descending, then rule ascending
    bool complete = true;     // false: fewer than `count` cleared the threshold
};

// Uniformly sampled candidate rules with body length 2 or 3, retained when
// rho reaches the top `top_fraction` quantile of the sampled pool.
SeedRuleResult sample_seed_rules(const KnowledgeGraph& kg, const EmbeddingModel& model,
                                 std::size_t count, std::size_t pool_size, double top_fraction,
                                 std::mt19937_64& rng);

AgentArtifacts train_agent(const KnowledgeGraph& kg, const EmbeddingModel& model,
                           std::span<const Rule> seed_rules,
                           std::span<const CurriculumStage> stages, const AgentTrainConfig& cfg);

}  // namespace rulemine
