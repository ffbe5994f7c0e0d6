#include "rulemine/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <queue>
#include <thread>
#include <unordered_set>

#include "rulemine/util.hpp"

namespace rulemine {

void SearchConfig::validate(const KnowledgeGraph& kg) const {
    if (head >= kg.predicate_count() || is_inverse(head))
        throw ConfigError("search head must be an original predicate id");
    if (target_length < 2) throw ConfigError("target rule length must be >= 2");
    if (value_batch < 1) throw ConfigError("value batch size must be >= 1");
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must be in [0,1]");
    if (min_conf < 0.0 || min_hc < 0.0 || min_value < 0.0)
        throw ConfigError("thresholds must be non-negative");
}

ValueFn value_fn_of(const ValueNetwork& net) {
    return [&net](const std::vector<TokenSeq>& seqs) { return net.values(seqs); };
}

double hybrid_score(const RuleStats& stats, double rho, double lambda, StatMeasure measure) {
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("lambda must be in [0,1]");
    const double psi = measure == StatMeasure::kCwa ? stats.conf : stats.pca_conf;
    return lambda * psi + (1.0 - lambda) * rho;
}

namespace {

struct HeapEntry {
    double value = 0.0;
    std::uint64_t seq = 0;  // insertion counter; earlier pops first on ties
    Rule rule;
};

struct HeapCompare {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.value != b.value) return a.value < b.value;
        return a.seq > b.seq;
    }
};

// Candidate state for V: body prefix in the leftmost slots, masks to L-1.
State prefix_state(const Rule& prefix, std::size_t target_length) {
    State s = State::fully_masked(prefix.head, target_length - 1);
    for (std::size_t i = 0; i < prefix.body.size(); ++i) s.slots[i] = prefix.body[i];
    return s;
}

}  // namespace

MineResult mine(const KnowledgeGraph& kg, const SearchConfig& cfg, const ValueFn& value_fn,
                const EmbeddingModel& model) {
    cfg.validate(kg);
    const TokenVocabulary tokens{kg.predicate_count()};
    const std::vector<PredicateId> vocabulary = kg.predicate_vocabulary();
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    MineResult result;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
    std::vector<Rule> buffer;
    buffer.push_back(Rule{cfg.head, {}});
    std::uint64_t push_seq = 0;

    while (!heap.empty() || !buffer.empty()) {
        if (cfg.time_limit_seconds > 0.0 && elapsed() >= cfg.time_limit_seconds) {
            result.truncated = true;
            break;
        }
        if (heap.empty() || buffer.size() >= cfg.value_batch) {
            for (std::size_t begin = 0; begin < buffer.size(); begin += cfg.value_batch) {
                const std::size_t end = std::min(buffer.size(), begin + cfg.value_batch);
                std::vector<TokenSeq> seqs;
                seqs.reserve(end - begin);
                for (std::size_t i = begin; i < end; ++i)
                    seqs.push_back(tokens.encode(prefix_state(buffer[i], cfg.target_length)));
                const std::vector<double> vals = value_fn(seqs);
                result.value_evaluations += vals.size();
                for (std::size_t i = begin; i < end; ++i)
                    if (vals[i - begin] >= cfg.min_value)
                        heap.push(HeapEntry{vals[i - begin], push_seq++, std::move(buffer[i])});
            }
            buffer.clear();
        }
        if (!heap.empty()) {
            Rule rule = heap.top().rule;
            heap.pop();
            ++result.states_explored;
            if (rule.length() < cfg.target_length) {
                std::vector<Rule> children = refine(kg, rule, vocabulary);
                result.refine_children += children.size();
                for (Rule& child : children) buffer.push_back(std::move(child));
            } else {
                const RuleStats stats = evaluate_rule(kg, rule, cfg.grounding_budget);
                if (stats.conf >= cfg.min_conf && stats.hc >= cfg.min_hc) {
                    const double r = rho(model, rule);
                    MinedRule mined;
                    mined.stats = stats;
                    mined.rho = r;
                    mined.score = hybrid_score(stats, r, cfg.lambda, cfg.measure);
                    mined.emit_seconds = elapsed();
                    mined.text = rule_text(kg, rule);
                    mined.rule = std::move(rule);
                    result.rules.push_back(std::move(mined));
                }
            }
        }
    }

    std::sort(result.rules.begin(), result.rules.end(), [](const MinedRule& a, const MinedRule& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.text < b.text;
    });
    return result;
}

namespace {

PredicateMineOutcome mine_one_predicate(const KnowledgeGraph& kg, const SearchConfig& cfg,
                                        const ValueFn& value_fn, const EmbeddingModel& model,
                                        PredicateId head) {
    PredicateMineOutcome outcome;
    outcome.head = head;
    const auto start = std::chrono::steady_clock::now();
    try {
        std::unordered_set<Rule, RuleHash> seen;
        for (std::size_t length = 2; length <= cfg.target_length; ++length) {
            SearchConfig run_cfg = cfg;
            run_cfg.head = head;
            run_cfg.target_length = length;
            if (cfg.time_limit_seconds > 0.0) {
                const double spent =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                const double remaining = cfg.time_limit_seconds - spent;
                if (remaining <= 0.0) {
                    outcome.truncated = true;
                    break;
                }
                run_cfg.time_limit_seconds = remaining;
            }
            MineResult res = mine(kg, run_cfg, value_fn, model);
            outcome.truncated = outcome.truncated || res.truncated;
            for (MinedRule& r : res.rules)
                if (seen.insert(r.rule).second) outcome.rules.push_back(std::move(r));
        }
        std::sort(outcome.rules.begin(), outcome.rules.end(),
                  [](const MinedRule& a, const MinedRule& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.text < b.text;
                  });
    } catch (const std::exception& e) {
        outcome.error = e.what();
        outcome.rules.clear();
    }
    return outcome;
}

}  // namespace

std::vector<PredicateMineOutcome> mine_all(const KnowledgeGraph& kg, const SearchConfig& cfg,
                                           const ValueFn& value_fn, const EmbeddingModel& model,
                                           std::span<const PredicateId> heads, int jobs) {
    std::vector<PredicateId> all_heads;
    if (heads.empty()) {
        all_heads = kg.original_predicates();
    } else {
        all_heads.assign(heads.begin(), heads.end());
    }
    std::vector<PredicateMineOutcome> outcomes(all_heads.size());

    if (jobs <= 1 || all_heads.size() <= 1) {
        for (std::size_t i = 0; i < all_heads.size(); ++i)
            outcomes[i] = mine_one_predicate(kg, cfg, value_fn, model, all_heads[i]);
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= all_heads.size()) return;
            outcomes[i] = mine_one_predicate(kg, cfg, value_fn, model, all_heads[i]);
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, int(all_heads.size()));
    pool.reserve(std::size_t(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return outcomes;
}

}  // namespace rulemine

