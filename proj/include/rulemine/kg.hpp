#pragma once

// Immutable, dictionary-encoded triple store with inverse-predicate views.
//
// Predicates use a parity scheme: even ids are the predicates as loaded,
// odd ids are the inverse of the preceding even id. A fact (s, P, o) is
// served through both directions: objects_of(s, P) and objects_of(o, P^-1).
// Only the canonical (even) direction is stored; inverse queries swap
// arguments. Per-direction CSR indexes give deterministic iteration order
// and O(log n) adjacency lookup.

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rulemine/util.hpp"

namespace rulemine {

using EntityId = std::uint32_t;
using PredicateId = std::uint32_t;

constexpr PredicateId inverse_of(PredicateId p) { return p ^ 1u; }
constexpr bool is_inverse(PredicateId p) { return (p & 1u) != 0; }

struct Fact {
    EntityId subject;
    PredicateId predicate;  // always even (canonical direction) in storage
    EntityId object;

    friend bool operator==(const Fact&, const Fact&) = default;
};

struct LoadOptions {
    // Objects whose surface form starts with a double quote are treated as
    // literals and dropped unless this is set.
    bool keep_literals = false;
};

class KnowledgeGraphBuilder;

class KnowledgeGraph {
public:
    // --- symbol tables ---
    std::size_t entity_count() const { return entity_names_.size(); }
    std::size_t original_predicate_count() const { return predicate_names_.size(); }
    std::size_t predicate_count() const { return predicate_names_.size() * 2; }  // |Γ|
    std::size_t fact_count() const { return fact_count_; }

    const std::string& entity_name(EntityId e) const;
    std::string predicate_name(PredicateId p) const;  // odd ids rendered "<name>^-1"
    std::optional<EntityId> entity_id(std::string_view name) const;
    std::optional<PredicateId> predicate_id(std::string_view name) const;  // accepts "^-1" suffix

    // All predicate ids (originals and inverses) in ascending id order.
    std::vector<PredicateId> predicate_vocabulary() const;
    // Even ids only, ascending.
    std::vector<PredicateId> original_predicates() const;

    // --- fact access ---
    // Distinct objects o with (s, P, o); inverse P swaps the arguments.
    // Sorted ascending. Throws LookupError on out-of-range ids.
    std::span<const EntityId> objects_of(EntityId s, PredicateId p) const;
    bool has_fact(EntityId s, PredicateId p, EntityId o) const;

    // Number of distinct (s, o) pairs of predicate `p` (direction-independent).
    std::size_t pair_count(PredicateId p) const;

    // Subjects that have at least one outgoing `p` edge, ascending.
    std::span<const EntityId> subjects_of(PredicateId p) const;

    // Visit every (s, o) of `p` in deterministic (s, o) ascending order,
    // interpreting inverse predicates by swap.
    void for_each_pair(PredicateId p, const std::function<void(EntityId, EntityId)>& fn) const;

    // A copy sharing this graph's symbol tables, restricted to facts whose
    // subject and object both touch at least `min_degree` facts. min_degree
    // <= 1 returns an identical graph. Ids remain stable by construction.
    KnowledgeGraph filtered_by_min_degree(std::size_t min_degree) const;

    // --- serialization ---
    // One `subject<TAB>predicate<TAB>object` line per canonical fact, in
    // load order. Reloading the output reproduces the fact set.
    void export_triples(std::ostream& out) const;

    bool same_symbol_tables(const KnowledgeGraph& other) const;

private:
    friend class KnowledgeGraphBuilder;

    struct Csr {
        std::vector<EntityId> subjects;   // sorted unique
        std::vector<std::uint32_t> offsets;  // subjects.size() + 1
        std::vector<EntityId> objects;    // sorted within each subject range
    };

    void check_entity(EntityId e) const;
    void check_predicate(PredicateId p) const;
    const Csr& csr(PredicateId p) const { return csr_[p]; }

    std::vector<std::string> entity_names_;
    std::vector<std::string> predicate_names_;  // originals only
    std::unordered_map<std::string, EntityId> entity_ids_;
    std::unordered_map<std::string, PredicateId> predicate_ids_;  // name -> even id
    std::vector<Csr> csr_;  // indexed by Γ id (size = 2 * originals)
    std::vector<std::vector<Fact>> canonical_facts_;  // per original predicate, load order
    std::size_t fact_count_ = 0;
};

// Incremental construction; `freeze()` produces the immutable graph.
class KnowledgeGraphBuilder {
public:
    EntityId intern_entity(std::string_view name);
    PredicateId intern_predicate(std::string_view name);  // returns the even id
    // Returns false if the (canonical) fact was already present.
    bool add_fact(EntityId s, PredicateId p, EntityId o);
    KnowledgeGraph freeze();

private:
    KnowledgeGraph kg_;
    std::vector<std::unordered_map<std::uint64_t, bool>> seen_;  // per original predicate
};

// Parse `subject<TAB>predicate<TAB>object` lines. `#`-prefixed and blank
// lines are ignored; duplicate triples are deduplicated. Throws ParseError
// (with line number) on any line that does not have exactly three fields.
KnowledgeGraph load_triples(std::istream& in, const LoadOptions& opts = {});
KnowledgeGraph load_triples_file(const std::string& path, const LoadOptions& opts = {});

}  // namespace rulemine
