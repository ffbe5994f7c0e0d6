#include "rulemine/rule_eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulemine {

namespace {

// Walks the body chain start-by-start, handing the final reachable frontier
// of every start entity to `sink(x, frontier)`. Returns false when the
// expansion budget was exhausted (walk aborted).
template <typename Sink>
bool walk_body(const KnowledgeGraph& kg, std::span<const PredicateId> body, std::uint64_t budget,
               Sink&& sink) {
    if (body.empty()) throw std::invalid_argument("body_groundings: empty body");
    std::uint64_t expansions = 0;
    std::vector<EntityId> frontier, next;
    std::unordered_set<EntityId> dedup;
    for (EntityId x : kg.subjects_of(body[0])) {
        auto first = kg.objects_of(x, body[0]);
        if (budget) {
            expansions += first.size();
            if (expansions > budget) return false;
        }
        frontier.assign(first.begin(), first.end());
        for (std::size_t step = 1; step < body.size() && !frontier.empty(); ++step) {
            dedup.clear();
            for (EntityId z : frontier) {
                auto objs = kg.objects_of(z, body[step]);
                if (budget) {
                    expansions += objs.size();
                    if (expansions > budget) return false;
                }
                dedup.insert(objs.begin(), objs.end());
            }
            next.assign(dedup.begin(), dedup.end());
            frontier.swap(next);
        }
        if (!frontier.empty()) sink(x, frontier);
    }
    return true;
}

}  // namespace

GroundingResult body_groundings(const KnowledgeGraph& kg, std::span<const PredicateId> body,
                                std::uint64_t budget) {
    GroundingResult result;
    result.truncated = !walk_body(kg, body, budget, [&](EntityId x, const std::vector<EntityId>& ys) {
        for (EntityId y : ys) result.pairs.insert(pack_entity_pair(x, y));
    });
    return result;
}

std::vector<EntityId> reachable_end_set(const KnowledgeGraph& kg,
                                        std::span<const PredicateId> body, std::uint64_t budget) {
    std::unordered_set<EntityId> ends;
    walk_body(kg, body, budget,
              [&](EntityId, const std::vector<EntityId>& ys) { ends.insert(ys.begin(), ys.end()); });
    std::vector<EntityId> out(ends.begin(), ends.end());
    std::sort(out.begin(), out.end());
    return out;
}

RuleStats evaluate_rule(const KnowledgeGraph& kg, const Rule& r, std::uint64_t budget) {
    GroundingResult g = body_groundings(kg, r.body, budget);
    RuleStats stats;
    stats.truncated = g.truncated;
    stats.body_count = g.pairs.size();

    std::uint64_t pca_denom = 0;
    for (std::uint64_t packed : g.pairs) {
        EntityId x = static_cast<EntityId>(packed >> 32);
        EntityId y = static_cast<EntityId>(packed & 0xffffffffu);
        if (!kg.objects_of(x, r.head).empty()) {
            ++pca_denom;
            if (kg.has_fact(x, r.head, y)) ++stats.supp;
        }
    }
    const std::uint64_t head_pairs = kg.pair_count(r.head);
    stats.conf = stats.body_count ? double(stats.supp) / double(stats.body_count) : 0.0;
    stats.hc = head_pairs ? double(stats.supp) / double(head_pairs) : 0.0;
    stats.pca_conf = pca_denom ? double(stats.supp) / double(pca_denom) : 0.0;
    return stats;
}

std::uint64_t support(const KnowledgeGraph& kg, const Rule& r) { return evaluate_rule(kg, r).supp; }

double confidence(const KnowledgeGraph& kg, const Rule& r) { return evaluate_rule(kg, r).conf; }

double head_coverage(const KnowledgeGraph& kg, const Rule& r) { return evaluate_rule(kg, r).hc; }

double pca_confidence(const KnowledgeGraph& kg, const Rule& r) {
    return evaluate_rule(kg, r).pca_conf;
}

std::vector<Rule> refine(const KnowledgeGraph& kg, const Rule& prefix,
                         std::span<const PredicateId> vocabulary) {
    std::vector<Rule> children;
    if (prefix.body.empty()) {
        for (PredicateId p : vocabulary) {
            if (kg.pair_count(p) == 0) continue;
            Rule child = prefix;
            child.body.push_back(p);
            children.push_back(std::move(child));
        }
        return children;
    }
    const std::vector<EntityId> reach = reachable_end_set(kg, prefix.body);
    if (reach.empty()) return children;
    for (PredicateId p : vocabulary) {
        // Extended body is groundable iff some reachable node has a p-edge.
        auto subjects = kg.subjects_of(p);
        bool connectable = false;
        auto it = reach.begin();
        auto jt = subjects.begin();
        while (it != reach.end() && jt != subjects.end()) {
            if (*it < *jt) ++it;
            else if (*jt < *it) ++jt;
            else { connectable = true; break; }
        }
        if (!connectable) continue;
        Rule child = prefix;
        child.body.push_back(p);
        children.push_back(std::move(child));
    }
    return children;
}

}  // namespace rulemine
