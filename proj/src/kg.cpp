#include "rulemine/kg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rulemine {

namespace {

std::uint64_t pack_pair(EntityId a, EntityId b) {
    return (std::uint64_t(a) << 32) | std::uint64_t(b);
}

}  // namespace

// --- KnowledgeGraph ---

void KnowledgeGraph::check_entity(EntityId e) const {
    if (e >= entity_names_.size())
        throw LookupError("unknown entity id " + std::to_string(e));
}

void KnowledgeGraph::check_predicate(PredicateId p) const {
    if (p >= predicate_count())
        throw LookupError("unknown predicate id " + std::to_string(p));
}

const std::string& KnowledgeGraph::entity_name(EntityId e) const {
    check_entity(e);
    return entity_names_[e];
}

std::string KnowledgeGraph::predicate_name(PredicateId p) const {
    check_predicate(p);
    const std::string& base = predicate_names_[p >> 1];
    return is_inverse(p) ? base + "^-1" : base;
}

std::optional<EntityId> KnowledgeGraph::entity_id(std::string_view name) const {
    auto it = entity_ids_.find(std::string(name));
    if (it == entity_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<PredicateId> KnowledgeGraph::predicate_id(std::string_view name) const {
    bool inv = false;
    if (name.size() > 3 && name.substr(name.size() - 3) == "^-1") {
        inv = true;
        name.remove_suffix(3);
    }
    auto it = predicate_ids_.find(std::string(name));
    if (it == predicate_ids_.end()) return std::nullopt;
    return inv ? inverse_of(it->second) : it->second;
}

std::vector<PredicateId> KnowledgeGraph::predicate_vocabulary() const {
    std::vector<PredicateId> v(predicate_count());
    for (PredicateId p = 0; p < v.size(); ++p) v[p] = p;
    return v;
}

std::vector<PredicateId> KnowledgeGraph::original_predicates() const {
    std::vector<PredicateId> v;
    v.reserve(original_predicate_count());
    for (PredicateId p = 0; p < predicate_count(); p += 2) v.push_back(p);
    return v;
}

std::span<const EntityId> KnowledgeGraph::objects_of(EntityId s, PredicateId p) const {
    check_entity(s);
    check_predicate(p);
    const Csr& c = csr_[p];
    auto it = std::lower_bound(c.subjects.begin(), c.subjects.end(), s);
    if (it == c.subjects.end() || *it != s) return {};
    std::size_t i = static_cast<std::size_t>(it - c.subjects.begin());
    return {c.objects.data() + c.offsets[i], c.offsets[i + 1] - c.offsets[i]};
}

bool KnowledgeGraph::has_fact(EntityId s, PredicateId p, EntityId o) const {
    auto objs = objects_of(s, p);
    return std::binary_search(objs.begin(), objs.end(), o);
}

std::size_t KnowledgeGraph::pair_count(PredicateId p) const {
    check_predicate(p);
    return csr_[p].objects.size();
}

std::span<const EntityId> KnowledgeGraph::subjects_of(PredicateId p) const {
    check_predicate(p);
    return csr_[p].subjects;
}

void KnowledgeGraph::for_each_pair(PredicateId p,
                                   const std::function<void(EntityId, EntityId)>& fn) const {
    check_predicate(p);
    const Csr& c = csr_[p];
    for (std::size_t i = 0; i < c.subjects.size(); ++i)
        for (std::uint32_t j = c.offsets[i]; j < c.offsets[i + 1]; ++j)
            fn(c.subjects[i], c.objects[j]);
}

KnowledgeGraph KnowledgeGraph::filtered_by_min_degree(std::size_t min_degree) const {
    KnowledgeGraphBuilder b;
    // Re-intern every symbol first so the id spaces are identical.
    for (const auto& name : entity_names_) b.intern_entity(name);
    for (const auto& name : predicate_names_) b.intern_predicate(name);
    if (min_degree <= 1) {
        for (const auto& facts : canonical_facts_)
            for (const Fact& f : facts) b.add_fact(f.subject, f.predicate, f.object);
        return b.freeze();
    }
    std::vector<std::size_t> degree(entity_names_.size(), 0);
    for (const auto& facts : canonical_facts_)
        for (const Fact& f : facts) {
            ++degree[f.subject];
            ++degree[f.object];
        }
    for (const auto& facts : canonical_facts_)
        for (const Fact& f : facts)
            if (degree[f.subject] >= min_degree && degree[f.object] >= min_degree)
                b.add_fact(f.subject, f.predicate, f.object);
    return b.freeze();
}

void KnowledgeGraph::export_triples(std::ostream& out) const {
    for (const auto& facts : canonical_facts_)
        for (const Fact& f : facts)
            out << entity_names_[f.subject] << '\t' << predicate_names_[f.predicate >> 1] << '\t'
                << entity_names_[f.object] << '\n';
}

bool KnowledgeGraph::same_symbol_tables(const KnowledgeGraph& other) const {
    return entity_names_ == other.entity_names_ && predicate_names_ == other.predicate_names_;
}

// --- KnowledgeGraphBuilder ---

EntityId KnowledgeGraphBuilder::intern_entity(std::string_view name) {
    auto [it, inserted] =
        kg_.entity_ids_.try_emplace(std::string(name), EntityId(kg_.entity_names_.size()));
    if (inserted) kg_.entity_names_.emplace_back(name);
    return it->second;
}

PredicateId KnowledgeGraphBuilder::intern_predicate(std::string_view name) {
    auto [it, inserted] = kg_.predicate_ids_.try_emplace(std::string(name),
                                                         PredicateId(kg_.predicate_names_.size() * 2));
    if (inserted) {
        kg_.predicate_names_.emplace_back(name);
        kg_.canonical_facts_.emplace_back();
        seen_.emplace_back();
    }
    return it->second;
}

bool KnowledgeGraphBuilder::add_fact(EntityId s, PredicateId p, EntityId o) {
    if (is_inverse(p)) {
        std::swap(s, o);
        p = inverse_of(p);
    }
    auto& seen = seen_[p >> 1];
    auto [it, inserted] = seen.try_emplace(pack_pair(s, o), true);
    if (!inserted) return false;
    kg_.canonical_facts_[p >> 1].push_back(Fact{s, p, o});
    ++kg_.fact_count_;
    return true;
}

KnowledgeGraph KnowledgeGraphBuilder::freeze() {
    const std::size_t n_preds = kg_.predicate_names_.size();
    kg_.csr_.assign(n_preds * 2, {});
    std::vector<std::pair<EntityId, EntityId>> pairs;
    for (std::size_t pi = 0; pi < n_preds; ++pi) {
        for (int dir = 0; dir < 2; ++dir) {
            pairs.clear();
            pairs.reserve(kg_.canonical_facts_[pi].size());
            for (const Fact& f : kg_.canonical_facts_[pi])
                pairs.emplace_back(dir == 0 ? f.subject : f.object, dir == 0 ? f.object : f.subject);
            std::sort(pairs.begin(), pairs.end());
            KnowledgeGraph::Csr& c = kg_.csr_[pi * 2 + dir];
            for (const auto& [s, o] : pairs) {
                if (c.subjects.empty() || c.subjects.back() != s) {
                    c.subjects.push_back(s);
                    c.offsets.push_back(static_cast<std::uint32_t>(c.objects.size()));
                }
                c.objects.push_back(o);
            }
            c.offsets.push_back(static_cast<std::uint32_t>(c.objects.size()));
        }
    }
    seen_.clear();
    return std::move(kg_);
}

// --- loading ---

KnowledgeGraph load_triples(std::istream& in, const LoadOptions& opts) {
    KnowledgeGraphBuilder b;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto fields = split(sv, '\t');
        if (fields.size() != 3)
            throw ParseError("expected 3 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        std::string_view s = trim(fields[0]), p = trim(fields[1]), o = trim(fields[2]);
        if (s.empty() || p.empty() || o.empty())
            throw ParseError("empty field in triple", line_no);
        if (!opts.keep_literals && o.front() == '"') continue;  // literal object
        b.add_fact(b.intern_entity(s), b.intern_predicate(p), b.intern_entity(o));
    }
    return b.freeze();
}

KnowledgeGraph load_triples_file(const std::string& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triple file: " + path);
    return load_triples(in, opts);
}

}  // namespace rulemine
