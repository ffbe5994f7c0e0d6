#pragma once

// Closed-path rule representation and the line-oriented rule text format:
//   P1(x,z1) & P2(z1,y) => P0(x,y)<TAB>supp<TAB>conf<TAB>hc<TAB>rho<TAB>score
// Inverse predicates render with a `^-1` suffix on the predicate name.

#include <cstdint>
#include <string>
#include <vector>

#include "rulemine/kg.hpp"

namespace rulemine {

struct Rule {
    PredicateId head = 0;
    std::vector<PredicateId> body;  // chain order; may be empty only as a search prefix

    std::size_t length() const { return body.size() + 1; }  // atoms incl. head

    friend bool operator==(const Rule&, const Rule&) = default;
    friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct RuleHash {
    std::size_t operator()(const Rule& r) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(r.head);
        for (PredicateId p : r.body) mix(p + 0x9e3779b9u);
        return static_cast<std::size_t>(h);
    }
};

struct RuleStats {
    std::uint64_t supp = 0;
    std::uint64_t body_count = 0;  // distinct (x, y) grounding the body
    double conf = 0.0;             // supp / body_count, 0 on empty denominator
    double hc = 0.0;               // supp / head pair count
    double pca_conf = 0.0;
    bool truncated = false;        // grounding budget was hit; counts are partial
};

// Body atoms chained through x, z1, ..., z_{n-1}, y. The numeric columns are
// written with fixed precision so identical runs emit identical bytes.
std::string rule_body_text(const KnowledgeGraph& kg, const Rule& r);
std::string rule_text(const KnowledgeGraph& kg, const Rule& r);
std::string rule_line(const KnowledgeGraph& kg, const Rule& r, const RuleStats& stats, double rho,
                      double score);

struct ParsedRuleLine {
    Rule rule;
    std::uint64_t supp = 0;
    double conf = 0.0;
    double hc = 0.0;
    double rho = 0.0;
    double score = 0.0;
};

// Inverse of rule_line. Throws ParseError on malformed input or LookupError
// on predicates unknown to `kg`.
ParsedRuleLine parse_rule_line(const KnowledgeGraph& kg, std::string_view line,
                               std::size_t line_no = 0);

}  // namespace rulemine
