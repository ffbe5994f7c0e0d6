#include "rulemine/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include "rulemine/util.hpp"

namespace rulemine {

// --- ReplayMemory ---

ReplayMemory::ReplayMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("replay capacity must be positive");
}

void ReplayMemory::push(TransitionRecord record) {
    if (records_.size() == capacity_) records_.pop_front();
    records_.push_back(std::move(record));
}

std::vector<const TransitionRecord*> ReplayMemory::sample(std::size_t k,
                                                          std::mt19937_64& rng) const {
    const std::size_t n = records_.size();
    k = std::min(k, n);
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<const TransitionRecord*> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, n - 1);
        std::swap(idx[j], idx[pick(rng)]);
        out.push_back(&records_[idx[j]]);
    }
    return out;
}

// --- curriculum ---

void CurriculumStage::validate() const {
    if (length_probs.empty()) throw ConfigError("curriculum stage has no length distribution");
    double sum = 0.0;
    for (double p : length_probs) {
        if (p < 0.0) throw ConfigError("curriculum length probability is negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("curriculum length distribution must sum to 1");
    if (masked_prob < 0.0 || masked_prob > 1.0) throw ConfigError("curriculum q must be in [0,1]");
}

std::size_t CurriculumStage::sample_body_length(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p = u(rng);
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < length_probs.size(); ++i) {
        if (length_probs[i] > 0.0) last_positive = i;
        p -= length_probs[i];
        if (p < 0.0) return 2 + i;
    }
    return 2 + last_positive;  // top of the cumulative range
}

std::vector<CurriculumStage> default_curriculum(const std::vector<std::size_t>& budgets) {
    if (budgets.size() != 4) throw ConfigError("default curriculum takes 4 stage budgets");
    std::vector<CurriculumStage> stages(4);
    stages[0].length_probs = {0.25, 0.25, 0.50, 0.00, 0.00};
    stages[0].masked_prob = 0.0;
    stages[1].length_probs = {0.17, 0.33, 0.50, 0.00, 0.00};
    stages[1].masked_prob = 0.3;
    stages[2].length_probs = {0.15, 0.20, 0.25, 0.40, 0.00};
    stages[2].masked_prob = 0.6;
    stages[3].length_probs = {0.10, 0.15, 0.20, 0.25, 0.30};
    stages[3].masked_prob = 0.8;
    for (std::size_t i = 0; i < 4; ++i) stages[i].episodes = budgets[i];
    return stages;
}

void AgentTrainConfig::validate() const {
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("gamma must be in (0,1]");
    if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (batch_size == 0) throw ConfigError("batch size must be positive");
    if (eps_start < eps_end) throw ConfigError("epsilon schedule must not increase");
    if (eps_start > 1.0 || eps_end < 0.0) throw ConfigError("epsilon endpoints must be in [0,1]");
}

// --- policy and updates ---

Action epsilon_greedy(const ValueNetwork& net, const TokenVocabulary& tokens, const State& s,
                      double eps, std::span<const PredicateId> vocabulary, std::mt19937_64& rng) {
    const std::vector<Action> actions = valid_actions(s, vocabulary);
    if (actions.empty()) throw InvalidActionError("no valid action in a terminal state");

    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < eps) {
        std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
        return actions[pick(rng)];
    }
    std::vector<TokenSeq> successor_seqs;
    successor_seqs.reserve(actions.size());
    for (const Action& a : actions) successor_seqs.push_back(tokens.encode(transition(s, a)));
    const std::vector<double> vals = net.values(successor_seqs);
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[best]) best = i;  // strict: first max keeps lowest (slot, predicate)
    return actions[best];
}

double td_update(ValueNetwork& net, const TokenVocabulary& tokens,
                 const std::vector<const TransitionRecord*>& batch,
                 std::span<const PredicateId> vocabulary, double gamma, double learning_rate) {
    if (batch.empty()) throw std::invalid_argument("td_update: empty batch");

    // One batched forward pass over every successor of every non-terminal s'.
    std::vector<TokenSeq> successor_seqs;
    std::vector<std::pair<std::size_t, std::size_t>> ranges(batch.size(), {0, 0});
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const State& next = batch[i]->next;
        if (next.terminal()) continue;
        const std::size_t begin = successor_seqs.size();
        for (const Action& a : valid_actions(next, vocabulary))
            successor_seqs.push_back(tokens.encode(transition(next, a)));
        ranges[i] = {begin, successor_seqs.size()};
    }
    std::vector<double> successor_vals;
    if (!successor_seqs.empty()) successor_vals = net.values(successor_seqs);

    std::vector<TokenSeq> train_seqs;
    std::vector<double> targets;
    train_seqs.reserve(batch.size());
    targets.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        double q = batch[i]->reward;
        const auto [begin, end] = ranges[i];
        if (end > begin) {
            double best = successor_vals[begin];
            for (std::size_t j = begin + 1; j < end; ++j) best = std::max(best, successor_vals[j]);
            q += gamma * best;
        }
        train_seqs.push_back(tokens.encode(batch[i]->next));
        targets.push_back(q);
    }
    return net.train_step(train_seqs, targets, learning_rate);
}

State curriculum_init(const CurriculumStage& stage, std::span<const Rule> seed_rules,
                      std::span<const PredicateId> original_heads, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) > stage.masked_prob) {
        if (seed_rules.empty())
            throw ConfigError("curriculum stage with q < 1 requires a non-empty seed rule set");
        std::uniform_int_distribution<std::size_t> pick(0, seed_rules.size() - 1);
        State s = State::from_rule(seed_rules[pick(rng)]);
        const std::size_t n = s.slots.size();
        std::uniform_int_distribution<std::size_t> count(1, n);
        const std::size_t m = count(rng);
        std::vector<std::size_t> slots(n);
        for (std::size_t i = 0; i < n; ++i) slots[i] = i;
        for (std::size_t j = 0; j < m; ++j) {
            std::uniform_int_distribution<std::size_t> swap_pick(j, n - 1);
            std::swap(slots[j], slots[swap_pick(rng)]);
            s.slots[slots[j]] = kMaskedSlot;
        }
        return s;
    }
    const std::size_t body_length = stage.sample_body_length(rng);
    if (original_heads.empty()) throw ConfigError("no head predicates to sample from");
    std::uniform_int_distribution<std::size_t> pick(0, original_heads.size() - 1);
    return State::fully_masked(original_heads[pick(rng)], body_length);
}

SeedRuleResult sample_seed_rules(const KnowledgeGraph& kg, const EmbeddingModel& model,
                                 std::size_t count, std::size_t pool_size, double top_fraction,
                                 std::mt19937_64& rng) {
    if (top_fraction <= 0.0 || top_fraction > 1.0)
        throw ConfigError("seed top_fraction must be in (0,1]");
    const std::vector<PredicateId> heads = kg.original_predicates();
    const std::size_t vocab = kg.predicate_count();
    if (heads.empty()) throw ConfigError("cannot sample seed rules from an empty KG");

    std::uniform_int_distribution<std::size_t> head_pick(0, heads.size() - 1);
    std::uniform_int_distribution<PredicateId> pred_pick(0, PredicateId(vocab - 1));
    std::uniform_int_distribution<int> len_pick(2, 3);

    std::unordered_set<Rule, RuleHash> seen;
    std::vector<std::pair<Rule, double>> scored;
    for (std::size_t i = 0; i < pool_size; ++i) {
        Rule r;
        r.head = heads[head_pick(rng)];
        const int len = len_pick(rng);
        for (int j = 0; j < len; ++j) r.body.push_back(pred_pick(rng));
        if (!seen.insert(r).second) continue;
        scored.emplace_back(r, rho(model, r));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    const std::size_t eligible =
        std::max<std::size_t>(1, std::size_t(top_fraction * double(scored.size())));
    SeedRuleResult result;
    const std::size_t take = std::min(count, std::min(eligible, scored.size()));
    for (std::size_t i = 0; i < take; ++i) result.rules.push_back(scored[i].first);
    result.complete = take == count;
    return result;
}

// --- training loop ---

namespace {

std::string format_fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string TrainingLog::to_text() const {
    std::ostringstream out;
    out << "# seed=" << seed << "\n";
    for (const EpisodeRecord& e : episodes)
        out << e.episode << '\t' << e.stage << '\t' << format_fixed(e.epsilon) << '\t'
            << format_fixed(e.terminal_reward) << '\t' << format_fixed(e.loss) << '\n';
    return out.str();
}

TrainingLog TrainingLog::from_text(const std::string& text) {
    TrainingLog log;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            const std::string_view key = "seed=";
            auto pos = sv.find(key);
            if (pos != std::string_view::npos)
                log.seed = std::strtoull(std::string(sv.substr(pos + key.size())).c_str(), nullptr, 10);
            continue;
        }
        auto cols = split(sv, '\t');
        if (cols.size() != 5) throw ParseError("expected 5 columns in training log", line_no);
        EpisodeRecord e;
        e.episode = std::strtoull(std::string(cols[0]).c_str(), nullptr, 10);
        e.stage = std::strtoull(std::string(cols[1]).c_str(), nullptr, 10);
        e.epsilon = std::strtod(std::string(cols[2]).c_str(), nullptr);
        e.terminal_reward = std::strtod(std::string(cols[3]).c_str(), nullptr);
        e.loss = std::strtod(std::string(cols[4]).c_str(), nullptr);
        log.episodes.push_back(e);
    }
    return log;
}

AgentArtifacts train_agent(const KnowledgeGraph& kg, const EmbeddingModel& model,
                           std::span<const Rule> seed_rules,
                           std::span<const CurriculumStage> stages, const AgentTrainConfig& cfg) {
    cfg.validate();
    if (stages.empty()) throw ConfigError("agent training needs at least one curriculum stage");
    for (const CurriculumStage& stage : stages) {
        stage.validate();
        if (stage.masked_prob < 1.0 && seed_rules.empty())
            throw ConfigError("curriculum stage with q < 1 requires seed rules");
    }
    if (!model.matches(kg)) throw ConfigError("embedding model does not match the KG symbol tables");

    const std::vector<PredicateId> vocabulary = kg.predicate_vocabulary();
    const std::vector<PredicateId> heads = kg.original_predicates();
    const TokenVocabulary tokens{kg.predicate_count()};

    ValueNetConfig net_cfg;
    net_cfg.vocab = tokens.vocab_size();
    net_cfg.token_dim = cfg.token_dim;
    net_cfg.hidden = cfg.hidden;
    net_cfg.layers = cfg.layers;
    net_cfg.seed = cfg.seed;
    ValueNetwork net(net_cfg);

    std::mt19937_64 rng(cfg.seed);
    ReplayMemory memory(cfg.replay_capacity);

    std::size_t total_episodes = 0;
    for (const CurriculumStage& stage : stages) total_episodes += stage.episodes;

    AgentArtifacts artifacts{std::move(net), TrainingLog{cfg.seed, {}}};
    artifacts.log.episodes.reserve(total_episodes);

    std::size_t global_episode = 0;
    for (std::size_t stage_idx = 0; stage_idx < stages.size(); ++stage_idx) {
        const CurriculumStage& stage = stages[stage_idx];
        for (std::size_t e = 0; e < stage.episodes; ++e, ++global_episode) {
            const double frac = total_episodes > 1
                                    ? double(global_episode) / double(total_episodes - 1)
                                    : 0.0;
            const double eps = cfg.eps_start + (cfg.eps_end - cfg.eps_start) * frac;

            State s = curriculum_init(stage, seed_rules, heads, rng);
            double terminal_reward = 0.0;
            while (!s.terminal()) {
                const Action a = epsilon_greedy(artifacts.net, tokens, s, eps, vocabulary, rng);
                State next = transition(s, a);
                const std::optional<Rule> completed = next.to_rule();
                const double r = completed ? rho(model, *completed) : 0.0;
                if (completed) terminal_reward = r;
                memory.push(TransitionRecord{std::move(s), a, next, r});
                s = std::move(next);
            }
            const auto batch = memory.sample(cfg.batch_size, rng);
            const double loss =
                td_update(artifacts.net, tokens, batch, vocabulary, cfg.gamma, cfg.learning_rate);
            artifacts.log.episodes.push_back(
                EpisodeRecord{global_episode, stage_idx, eps, terminal_reward, loss});
        }
    }
    return artifacts;
}

}  // namespace rulemine

