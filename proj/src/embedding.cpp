#include "rulemine/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace rulemine {

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void EmbedTrainConfig::validate() const {
    if (dim <= 0) throw ConfigError("embedding dim must be positive");
    if (eta <= 0.0) throw ConfigError("embedding eta must be positive");
    if (negatives <= 0) throw ConfigError("negative sample count must be positive");
    if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
    if (batch_size <= 0) throw ConfigError("batch size must be positive");
    if (epochs < 0) throw ConfigError("epochs must be non-negative");
}

Eigen::VectorXd EmbeddingModel::predicate_vector(PredicateId p) const {
    const Eigen::Index row = p >> 1;
    if (row >= predicate_vecs.rows()) throw LookupError("predicate id out of range");
    Eigen::VectorXd v = predicate_vecs.row(row).transpose();
    if (is_inverse(p) && kind == EmbeddingKind::kTranslational) v = -v;
    return v;
}

bool EmbeddingModel::matches(const KnowledgeGraph& kg) const {
    if (entity_names.size() != kg.entity_count()) return false;
    if (predicate_names.size() != kg.original_predicate_count()) return false;
    for (std::size_t i = 0; i < entity_names.size(); ++i)
        if (entity_names[i] != kg.entity_name(EntityId(i))) return false;
    for (std::size_t i = 0; i < predicate_names.size(); ++i)
        if (predicate_names[i] != kg.predicate_name(PredicateId(i * 2))) return false;
    return true;
}

namespace {

std::vector<Fact> collect_facts(const KnowledgeGraph& kg) {
    std::vector<Fact> facts;
    facts.reserve(kg.fact_count());
    for (PredicateId p : kg.original_predicates())
        kg.for_each_pair(p, [&](EntityId s, EntityId o) { facts.push_back(Fact{s, p, o}); });
    return facts;
}

void fisher_yates(std::vector<std::uint32_t>& idx, std::mt19937_64& rng) {
    for (std::size_t i = idx.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(idx[i - 1], idx[pick(rng)]);
    }
}

EmbeddingModel init_model(const KnowledgeGraph& kg, const EmbedTrainConfig& cfg,
                          EmbeddingKind kind) {
    EmbeddingModel m;
    m.kind = kind;
    m.dim = cfg.dim;
    m.eta = cfg.eta;
    for (std::size_t e = 0; e < kg.entity_count(); ++e) m.entity_names.push_back(kg.entity_name(EntityId(e)));
    for (std::size_t p = 0; p < kg.original_predicate_count(); ++p)
        m.predicate_names.push_back(kg.predicate_name(PredicateId(p * 2)));

    // Init range keeps initial L1 distances near eta so the loss sigmoids
    // start unsaturated.
    const double range = (cfg.eta + 2.0) / double(cfg.dim);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-range, range);
    m.entity_vecs.resize(Eigen::Index(kg.entity_count()), cfg.dim);
    m.predicate_vecs.resize(Eigen::Index(kg.original_predicate_count()), cfg.dim);
    for (Eigen::Index i = 0; i < m.entity_vecs.rows(); ++i)
        for (int j = 0; j < cfg.dim; ++j) m.entity_vecs(i, j) = u(rng);
    for (Eigen::Index i = 0; i < m.predicate_vecs.rows(); ++i)
        for (int j = 0; j < cfg.dim; ++j) m.predicate_vecs(i, j) = u(rng);
    return m;
}

// Sparse gradient accumulator for one mini-batch.
struct GradMap {
    std::unordered_map<Eigen::Index, Eigen::RowVectorXd> rows;
    int dim;

    explicit GradMap(int d) : dim(d) {}
    Eigen::RowVectorXd& at(Eigen::Index r) {
        auto it = rows.find(r);
        if (it == rows.end()) it = rows.emplace(r, Eigen::RowVectorXd::Zero(dim)).first;
        return it->second;
    }
    void apply(Eigen::MatrixXd& target, double scale) {
        for (auto& [r, g] : rows) target.row(r) -= scale * g;
        rows.clear();
    }
};

struct CorruptedFact {
    EntityId s;
    EntityId o;
};

// Uniform corruption of subject or object; corruptions that reproduce a
// true fact are resampled a few times, then kept as-is (degenerate graphs).
CorruptedFact corrupt(const KnowledgeGraph& kg, const Fact& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> side(0, 1);
    std::uniform_int_distribution<EntityId> ent(0, EntityId(kg.entity_count() - 1));
    const bool corrupt_subject = side(rng) == 0;
    for (int attempt = 0; attempt < 10; ++attempt) {
        EntityId e = ent(rng);
        EntityId s = corrupt_subject ? e : f.subject;
        EntityId o = corrupt_subject ? f.object : e;
        if (!kg.has_fact(s, f.predicate, o)) return {s, o};
    }
    EntityId e = ent(rng);
    return corrupt_subject ? CorruptedFact{e, f.object} : CorruptedFact{f.subject, e};
}

}  // namespace

EmbeddingModel train_transe(const KnowledgeGraph& kg, const EmbedTrainConfig& cfg) {
    cfg.validate();
    if (kg.fact_count() == 0) throw ConfigError("cannot train embeddings on an empty KG");

    EmbeddingModel m = init_model(kg, cfg, EmbeddingKind::kTranslational);
    const std::vector<Fact> facts = collect_facts(kg);
    std::vector<std::uint32_t> order(facts.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;

    std::mt19937_64 rng(cfg.seed + 1);
    GradMap ent_grad(cfg.dim), pred_grad(cfg.dim);
    Eigen::RowVectorXd z(cfg.dim), sgn(cfg.dim);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        fisher_yates(order, rng);
        for (std::size_t start = 0; start < order.size(); start += std::size_t(cfg.batch_size)) {
            const std::size_t end = std::min(order.size(), start + std::size_t(cfg.batch_size));
            for (std::size_t i = start; i < end; ++i) {
                const Fact& f = facts[order[i]];
                const Eigen::Index pr = f.predicate >> 1;

                z = m.entity_vecs.row(f.subject) + m.predicate_vecs.row(pr) -
                    m.entity_vecs.row(f.object);
                const double d_pos = z.lpNorm<1>();
                const double pos_coeff = sigmoid(d_pos - cfg.eta);
                sgn = z.array().sign();
                ent_grad.at(f.subject) += pos_coeff * sgn;
                pred_grad.at(pr) += pos_coeff * sgn;
                ent_grad.at(f.object) -= pos_coeff * sgn;

                const double neg_weight = 1.0 / double(cfg.negatives);
                for (int k = 0; k < cfg.negatives; ++k) {
                    const CorruptedFact c = corrupt(kg, f, rng);
                    z = m.entity_vecs.row(c.s) + m.predicate_vecs.row(pr) - m.entity_vecs.row(c.o);
                    const double d_neg = z.lpNorm<1>();
                    const double neg_coeff = -neg_weight * sigmoid(cfg.eta - d_neg);
                    sgn = z.array().sign();
                    ent_grad.at(c.s) += neg_coeff * sgn;
                    pred_grad.at(pr) += neg_coeff * sgn;
                    ent_grad.at(c.o) -= neg_coeff * sgn;
                }
            }
            const double scale = cfg.learning_rate / double(end - start);
            ent_grad.apply(m.entity_vecs, scale);
            pred_grad.apply(m.predicate_vecs, scale);
        }
    }
    return m;
}

EmbeddingModel train_bilinear(const KnowledgeGraph& kg, const EmbedTrainConfig& cfg) {
    cfg.validate();
    if (kg.fact_count() == 0) throw ConfigError("cannot train embeddings on an empty KG");

    EmbeddingModel m = init_model(kg, cfg, EmbeddingKind::kBilinear);
    const std::vector<Fact> facts = collect_facts(kg);
    std::vector<std::uint32_t> order(facts.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;

    std::mt19937_64 rng(cfg.seed + 1);
    GradMap ent_grad(cfg.dim), pred_grad(cfg.dim);

    auto triple_score = [&](EntityId s, Eigen::Index pr, EntityId o) {
        return (m.entity_vecs.row(s).array() * m.predicate_vecs.row(pr).array() *
                m.entity_vecs.row(o).array())
            .sum();
    };

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        fisher_yates(order, rng);
        for (std::size_t start = 0; start < order.size(); start += std::size_t(cfg.batch_size)) {
            const std::size_t end = std::min(order.size(), start + std::size_t(cfg.batch_size));
            for (std::size_t i = start; i < end; ++i) {
                const Fact& f = facts[order[i]];
                const Eigen::Index pr = f.predicate >> 1;

                auto accumulate = [&](EntityId s, EntityId o, double df) {
                    ent_grad.at(s) +=
                        df * (m.predicate_vecs.row(pr).array() * m.entity_vecs.row(o).array())
                                 .matrix();
                    ent_grad.at(o) +=
                        df * (m.predicate_vecs.row(pr).array() * m.entity_vecs.row(s).array())
                                 .matrix();
                    pred_grad.at(pr) +=
                        df * (m.entity_vecs.row(s).array() * m.entity_vecs.row(o).array())
                                 .matrix();
                };

                accumulate(f.subject, f.object, sigmoid(triple_score(f.subject, pr, f.object)) - 1.0);
                const double neg_weight = 1.0 / double(cfg.negatives);
                for (int k = 0; k < cfg.negatives; ++k) {
                    const CorruptedFact c = corrupt(kg, f, rng);
                    accumulate(c.s, c.o, neg_weight * sigmoid(triple_score(c.s, pr, c.o)));
                }
            }
            const double scale = cfg.learning_rate / double(end - start);
            ent_grad.apply(m.entity_vecs, scale);
            pred_grad.apply(m.predicate_vecs, scale);
        }
    }
    return m;
}

double rho(const EmbeddingModel& model, const Rule& r) {
    if (model.kind != EmbeddingKind::kTranslational)
        throw ConfigError("rho requires a translational embedding model");
    if (r.body.empty()) throw std::invalid_argument("rho: rule body is empty");
    // Summation order is fixed by sorting so permuted bodies score
    // bit-identically.
    std::vector<PredicateId> sorted = r.body;
    std::sort(sorted.begin(), sorted.end());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(model.dim);
    for (PredicateId p : sorted) sum += model.predicate_vector(p);
    const double dist = (model.predicate_vector(r.head) - sum).lpNorm<1>();
    return sigmoid(model.eta - dist);
}

double rho_bilinear(const EmbeddingModel& model, const Rule& r) {
    if (model.kind != EmbeddingKind::kBilinear)
        throw ConfigError("rho_bilinear requires a bilinear embedding model");
    if (r.body.empty()) throw std::invalid_argument("rho_bilinear: rule body is empty");
    std::vector<PredicateId> sorted = r.body;
    std::sort(sorted.begin(), sorted.end());
    Eigen::VectorXd composite = Eigen::VectorXd::Ones(model.dim);
    for (PredicateId p : sorted) composite.array() *= model.predicate_vector(p).array();
    const Eigen::VectorXd head = model.predicate_vector(r.head);
    const double denom = composite.norm() * head.norm();
    const double cos = denom > 0.0 ? composite.dot(head) / denom : 0.0;
    return 0.5 * (1.0 + cos);
}

std::pair<double, double> mean_fact_distances(const KnowledgeGraph& kg,
                                              const EmbeddingModel& model, std::uint64_t seed) {
    const std::vector<Fact> facts = collect_facts(kg);
    if (facts.empty()) return {0.0, 0.0};
    std::mt19937_64 rng(seed);
    double pos = 0.0, neg = 0.0;
    for (const Fact& f : facts) {
        const Eigen::Index pr = f.predicate >> 1;
        pos += (model.entity_vecs.row(f.subject) + model.predicate_vecs.row(pr) -
                model.entity_vecs.row(f.object))
                   .lpNorm<1>();
        const CorruptedFact c = corrupt(kg, f, rng);
        neg += (model.entity_vecs.row(c.s) + model.predicate_vecs.row(pr) -
                model.entity_vecs.row(c.o))
                   .lpNorm<1>();
    }
    return {pos / double(facts.size()), neg / double(facts.size())};
}

}  // namespace rulemine
