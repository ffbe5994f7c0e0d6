#include "rulemine/inference.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "rulemine/util.hpp"

namespace rulemine {

namespace {

constexpr double kMaxRuleScore = 1.0 - 1e-9;  // keeps the Noisy-OR product defined

struct Accumulator {
    double one_minus_prod = 1.0;
    std::vector<std::uint32_t> rule_ids;
};

}  // namespace

std::vector<Prediction> apply_rules(const KnowledgeGraph& kg, std::span<const MinedRule> rules) {
    // per head predicate: packed (x, y) -> accumulator
    std::unordered_map<PredicateId, std::unordered_map<std::uint64_t, Accumulator>> derived;
    for (std::uint32_t rule_id = 0; rule_id < rules.size(); ++rule_id) {
        const MinedRule& r = rules[rule_id];
        const double s = std::min(r.score, kMaxRuleScore);
        const GroundingResult g = body_groundings(kg, r.rule.body);
        auto& per_head = derived[r.rule.head];
        for (std::uint64_t packed : g.pairs) {
            Accumulator& acc = per_head[packed];
            acc.one_minus_prod *= 1.0 - s;
            acc.rule_ids.push_back(rule_id);
        }
    }

    std::vector<Prediction> out;
    for (auto& [head, per_head] : derived) {
        for (auto& [packed, acc] : per_head) {
            Prediction p;
            p.fact.subject = static_cast<EntityId>(packed >> 32);
            p.fact.predicate = head;
            p.fact.object = static_cast<EntityId>(packed & 0xffffffffu);
            p.cd = 1.0 - acc.one_minus_prod;
            p.rule_ids = std::move(acc.rule_ids);
            p.known = kg.has_fact(p.fact.subject, head, p.fact.object);
            out.push_back(std::move(p));
        }
    }
    std::sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) {
        if (a.cd != b.cd) return a.cd > b.cd;
        if (a.fact.predicate != b.fact.predicate) return a.fact.predicate < b.fact.predicate;
        if (a.fact.subject != b.fact.subject) return a.fact.subject < b.fact.subject;
        return a.fact.object < b.fact.object;
    });
    return out;
}

EvalSplit make_split(const KnowledgeGraph& kg, double ratio, std::uint64_t seed,
                     std::span<const PredicateId> head_predicates) {
    if (ratio < 0.0 || ratio >= 1.0) throw ConfigError("holdout ratio must be in [0,1)");
    std::vector<PredicateId> heads;
    if (head_predicates.empty()) {
        heads = kg.original_predicates();
    } else {
        heads.assign(head_predicates.begin(), head_predicates.end());
    }
    std::unordered_set<PredicateId> head_set(heads.begin(), heads.end());

    KnowledgeGraphBuilder builder;
    for (std::size_t e = 0; e < kg.entity_count(); ++e) builder.intern_entity(kg.entity_name(EntityId(e)));
    for (PredicateId p : kg.original_predicates()) builder.intern_predicate(kg.predicate_name(p));

    EvalSplit split;
    split.ratio = ratio;
    split.seed = seed;
    std::mt19937_64 rng(seed);

    for (PredicateId p : kg.original_predicates()) {
        std::vector<Fact> facts;
        kg.for_each_pair(p, [&](EntityId s, EntityId o) { facts.push_back(Fact{s, p, o}); });
        std::size_t held = 0;
        if (head_set.count(p)) {
            held = static_cast<std::size_t>(std::llround(ratio * double(facts.size())));
            for (std::size_t j = 0; j + 1 < facts.size() && j < held; ++j) {
                std::uniform_int_distribution<std::size_t> pick(j, facts.size() - 1);
                std::swap(facts[j], facts[pick(rng)]);
            }
        }
        for (std::size_t i = 0; i < facts.size(); ++i) {
            if (i < held) {
                split.held_out.push_back(facts[i]);
            } else {
                builder.add_fact(facts[i].subject, facts[i].predicate, facts[i].object);
            }
        }
    }
    split.train = builder.freeze();
    return split;
}

PredictivePower predictive_power(const EvalSplit& split, std::span<const Prediction> predictions,
                                 double cd_threshold) {
    std::unordered_map<PredicateId, std::unordered_set<std::uint64_t>> held;
    for (const Fact& f : split.held_out)
        held[f.predicate].insert(pack_entity_pair(f.subject, f.object));

    PredictivePower power;
    for (const Prediction& p : predictions) {
        auto it = held.find(p.fact.predicate);
        if (it == held.end() || !it->second.count(pack_entity_pair(p.fact.subject, p.fact.object)))
            continue;
        ++power.facts;
        if (p.cd >= cd_threshold) ++power.q_facts;
    }
    return power;
}

namespace {

struct DirectionIndex {
    // key entity -> (candidate entity, cd) of the predictions
    std::unordered_map<EntityId, std::vector<std::pair<EntityId, double>>> scored;
    // key entity -> known-true candidate entities (train + held out)
    std::unordered_map<EntityId, std::unordered_set<EntityId>> known;
};

double query_rank(const DirectionIndex& index, EntityId key, EntityId answer,
                  std::size_t entity_count) {
    const std::unordered_set<EntityId>* known = nullptr;
    if (auto it = index.known.find(key); it != index.known.end()) known = &it->second;
    const std::size_t filtered = known ? known->size() - 1 : 0;  // answer itself stays
    const std::size_t candidates = entity_count - filtered;

    double cd_answer = 0.0;
    std::size_t above = 0, scored_count = 0, equal_scored = 0;
    if (auto it = index.scored.find(key); it != index.scored.end()) {
        for (const auto& [e, cd] : it->second)
            if (e == answer) cd_answer = cd;
        for (const auto& [e, cd] : it->second) {
            if (e != answer && known && known->count(e)) continue;  // filtered out
            ++scored_count;
            if (cd > cd_answer) ++above;
            else if (cd == cd_answer) ++equal_scored;
        }
    }
    // Unscored candidates sit at cd = 0; they join the answer's tie group
    // only when no rule fired for it.
    const std::size_t unscored = candidates - scored_count;
    const std::size_t ties = equal_scored + (cd_answer == 0.0 ? unscored : 0);
    return double(above) + (double(ties) + 1.0) / 2.0;
}

}  // namespace

RankingMetrics link_prediction(const EvalSplit& split, std::span<const Prediction> predictions) {
    const std::size_t entity_count = split.train.entity_count();
    std::unordered_map<PredicateId, DirectionIndex> forward, backward;

    for (const Prediction& p : predictions) {
        forward[p.fact.predicate].scored[p.fact.subject].emplace_back(p.fact.object, p.cd);
        backward[p.fact.predicate].scored[p.fact.object].emplace_back(p.fact.subject, p.cd);
    }
    auto add_known = [&](const Fact& f) {
        forward[f.predicate].known[f.subject].insert(f.object);
        backward[f.predicate].known[f.object].insert(f.subject);
    };
    for (PredicateId p : split.train.original_predicates())
        split.train.for_each_pair(p, [&](EntityId s, EntityId o) { add_known(Fact{s, p, o}); });
    for (const Fact& f : split.held_out) add_known(f);

    RankingMetrics metrics;
    double rr_sum = 0.0, hits_sum = 0.0;
    for (const Fact& f : split.held_out) {
        const double rank_o = query_rank(forward[f.predicate], f.subject, f.object, entity_count);
        const double rank_s = query_rank(backward[f.predicate], f.object, f.subject, entity_count);
        rr_sum += 1.0 / rank_o + 1.0 / rank_s;
        hits_sum += (rank_o <= 10.0 ? 1.0 : 0.0) + (rank_s <= 10.0 ? 1.0 : 0.0);
        metrics.query_count += 2;
    }
    if (metrics.query_count > 0) {
        metrics.mrr = rr_sum / double(metrics.query_count);
        metrics.hits_at_10 = hits_sum / double(metrics.query_count);
    }
    return metrics;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw UndefinedCorrelationError("need at least two paired samples");
    const double n = double(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw UndefinedCorrelationError("correlation undefined: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double value_quality_correlation(const KnowledgeGraph& kg, const ValueFn& value_fn,
                                 const CorrelationConfig& cfg) {
    if (cfg.target_length < 3)
        throw ConfigError("correlation needs target length >= 3 for intermediate states");
    const std::vector<PredicateId> vocabulary = kg.predicate_vocabulary();
    const std::vector<PredicateId> heads = kg.original_predicates();
    if (heads.empty()) throw ConfigError("empty KG");
    const TokenVocabulary tokens{kg.predicate_count()};

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> head_pick(0, heads.size() - 1);
    std::uniform_int_distribution<std::size_t> k_pick(1, cfg.target_length - 2);
    std::uniform_int_distribution<PredicateId> pred_pick(0, PredicateId(vocabulary.size() - 1));

    std::vector<Rule> prefixes;
    const std::size_t max_attempts = cfg.sample_size * 50;
    for (std::size_t attempt = 0; attempt < max_attempts && prefixes.size() < cfg.sample_size;
         ++attempt) {
        Rule prefix;
        prefix.head = heads[head_pick(rng)];
        const std::size_t k = k_pick(rng);
        for (std::size_t i = 0; i < k; ++i) prefix.body.push_back(pred_pick(rng));
        // Only states reachable during search: the prefix must be groundable.
        if (reachable_end_set(kg, prefix.body).empty()) continue;
        prefixes.push_back(std::move(prefix));
    }
    if (prefixes.size() < 2)
        throw UndefinedCorrelationError("could not sample enough groundable states");

    std::vector<TokenSeq> seqs;
    seqs.reserve(prefixes.size());
    for (const Rule& prefix : prefixes) {
        State s = State::fully_masked(prefix.head, cfg.target_length - 1);
        for (std::size_t i = 0; i < prefix.body.size(); ++i) s.slots[i] = prefix.body[i];
        seqs.push_back(tokens.encode(s));
    }
    const std::vector<double> values = value_fn(seqs);

    std::unordered_map<Rule, double, RuleHash> quality_cache;
    std::unordered_map<Rule, double, RuleHash> conf_cache;
    auto rule_conf = [&](const Rule& r) {
        auto it = conf_cache.find(r);
        if (it != conf_cache.end()) return it->second;
        const double c = evaluate_rule(kg, r).conf;
        conf_cache.emplace(r, c);
        return c;
    };

    std::vector<double> qualities;
    qualities.reserve(prefixes.size());
    for (const Rule& prefix : prefixes) {
        if (auto it = quality_cache.find(prefix); it != quality_cache.end()) {
            qualities.push_back(it->second);
            continue;
        }
        const std::size_t remaining = cfg.target_length - 1 - prefix.body.size();
        double total_completions = std::pow(double(vocabulary.size()), double(remaining));
        std::size_t passing = 0, evaluated = 0;
        if (total_completions <= double(cfg.max_completions)) {
            // Exhaustive odometer over the remaining slots.
            std::vector<std::size_t> odo(remaining, 0);
            while (true) {
                Rule full = prefix;
                for (std::size_t slot : odo) full.body.push_back(vocabulary[slot]);
                ++evaluated;
                if (rule_conf(full) >= cfg.conf_threshold) ++passing;
                std::size_t d = 0;
                while (d < remaining && ++odo[d] == vocabulary.size()) odo[d++] = 0;
                if (d == remaining) break;
            }
        } else {
            for (std::size_t i = 0; i < cfg.max_completions; ++i) {
                Rule full = prefix;
                for (std::size_t j = 0; j < remaining; ++j)
                    full.body.push_back(vocabulary[pred_pick(rng)]);
                ++evaluated;
                if (rule_conf(full) >= cfg.conf_threshold) ++passing;
            }
        }
        const double q = evaluated ? double(passing) / double(evaluated) : 0.0;
        quality_cache.emplace(prefix, q);
        qualities.push_back(q);
    }
    return pearson(values, qualities);
}

}  // namespace rulemine
