#include "rulemine/synthetic.hpp"

#include <algorithm>
#include <random>

#include "rulemine/util.hpp"

namespace rulemine {

PlantedKg generate_planted_kg(const PlantedKgSpec& spec) {
    if (spec.rules.empty()) throw ConfigError("planted KG needs at least one rule");
    for (const PlantedRuleSpec& r : spec.rules)
        if (r.body.empty()) throw ConfigError("planted rule has an empty body");
    if (spec.dropout < 0.0 || spec.dropout > 1.0) throw ConfigError("dropout must be in [0,1]");
    if (spec.noise_rate < 0.0) throw ConfigError("noise rate must be non-negative");

    KnowledgeGraphBuilder builder;
    // Predicates first so their ids do not depend on chain layout.
    PredicateId max_pred = 0;
    for (const PlantedRuleSpec& r : spec.rules) {
        max_pred = std::max(max_pred, builder.intern_predicate(r.head));
        for (const PlantedBodyAtom& atom : r.body)
            max_pred = std::max(max_pred, builder.intern_predicate(atom.predicate));
    }
    for (std::size_t i = 0; i < spec.extra_predicates; ++i)
        max_pred = std::max(max_pred, builder.intern_predicate("noise_p" + std::to_string(i)));
    const std::size_t n_original = max_pred / 2 + 1;

    std::size_t total_entities = spec.extra_entities;
    for (const PlantedRuleSpec& r : spec.rules) total_entities += r.chains * (r.body.size() + 1);
    std::vector<EntityId> entities;
    entities.reserve(total_entities);
    for (std::size_t i = 0; i < total_entities; ++i)
        entities.push_back(builder.intern_entity("e" + std::to_string(i)));

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    PlantedKg out;
    std::size_t next_entity = 0;
    std::size_t structural_facts = 0;

    for (const PlantedRuleSpec& r : spec.rules) {
        const PredicateId head = builder.intern_predicate(r.head);
        Rule truth;
        truth.head = head;
        for (const PlantedBodyAtom& atom : r.body) {
            const PredicateId p = builder.intern_predicate(atom.predicate);
            truth.body.push_back(atom.inverted ? inverse_of(p) : p);
        }
        out.ground_truth.push_back(truth);

        const std::size_t n = r.body.size();
        for (std::size_t chain = 0; chain < r.chains; ++chain) {
            // Disjoint entity tuple per chain: accidental cross-chain joins
            // cannot arise, so dropout alone controls the confidence.
            const std::size_t base = next_entity;
            next_entity += n + 1;
            for (std::size_t i = 0; i < n; ++i) {
                const PredicateId p = builder.intern_predicate(r.body[i].predicate);
                EntityId from = entities[base + i], to = entities[base + i + 1];
                if (r.body[i].inverted) std::swap(from, to);
                builder.add_fact(from, p, to);
                ++structural_facts;
            }
            if (coin(rng) >= spec.dropout) {
                builder.add_fact(entities[base], head, entities[base + n]);
                ++structural_facts;
            }
        }
    }

    const std::size_t noise_facts =
        static_cast<std::size_t>(spec.noise_rate * double(structural_facts) + 0.5);
    std::uniform_int_distribution<std::size_t> ent_pick(0, entities.size() - 1);
    std::uniform_int_distribution<std::size_t> pred_pick(0, n_original - 1);
    for (std::size_t i = 0; i < noise_facts; ++i)
        builder.add_fact(entities[ent_pick(rng)], PredicateId(pred_pick(rng) * 2),
                         entities[ent_pick(rng)]);

    out.kg = builder.freeze();
    return out;
}

}  // namespace rulemine
