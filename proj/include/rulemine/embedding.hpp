#pragma once

// Translation-based predicate/entity embeddings and the rule score rho.
//
// rho(r) = sigmoid(eta - || P0 - sum_i Pi ||_1), where inverse predicates
// contribute the negated vector of their original. The same eta is used for
// training and scoring. A diagonal-bilinear model is available as an
// alternative scorer (rho_bilinear); the two kinds are not interchangeable.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rulemine/kg.hpp"
#include "rulemine/rule.hpp"

namespace rulemine {

enum class EmbeddingKind : std::uint32_t { kTranslational = 0, kBilinear = 1 };

struct EmbedTrainConfig {
    int dim = 100;
    int negatives = 16;      // corrupted samples per positive
    double learning_rate = 0.1;
    int epochs = 100;
    int batch_size = 256;
    double eta = 12.0;       // margin, same units as the L1 distance
    std::uint64_t seed = 0;

    void validate() const;
};

struct EmbeddingModel {
    EmbeddingKind kind = EmbeddingKind::kTranslational;
    int dim = 0;
    double eta = 0.0;
    // Row e / row (p >> 1): embedding of entity e / original predicate p.
    Eigen::MatrixXd entity_vecs;
    Eigen::MatrixXd predicate_vecs;
    // Symbol tables frozen at training time; ids are addressed against these.
    std::vector<std::string> entity_names;
    std::vector<std::string> predicate_names;

    // Vector of any Γ id. For translational models the inverse is the
    // negation; for bilinear models the inverse shares the original's vector.
    Eigen::VectorXd predicate_vector(PredicateId p) const;

    bool matches(const KnowledgeGraph& kg) const;
};

double sigmoid(double x);

// Margin-based logistic loss with uniform negative sampling: for a fact the
// distance ||s + P - o||_1 is pushed below eta, corrupted-triple distances
// above it. Deterministic given the seed (single-threaded).
EmbeddingModel train_transe(const KnowledgeGraph& kg, const EmbedTrainConfig& cfg);

// Diagonal bilinear alternative: fact score <s, P, o> pushed high for
// positives, low for corruptions.
EmbeddingModel train_bilinear(const KnowledgeGraph& kg, const EmbedTrainConfig& cfg);

// sigmoid(eta - L1(head, body sum)); strictly decreasing in the distance.
// The body sum is accumulated in a canonical order so permuted bodies score
// bit-identically. Throws ConfigError on a bilinear model, LookupError on
// out-of-range predicates.
double rho(const EmbeddingModel& model, const Rule& r);

// (1 + cosine(elementwise product of body vectors, head vector)) / 2.
// Throws ConfigError on a translational model.
double rho_bilinear(const EmbeddingModel& model, const Rule& r);

// Mean L1 distance of all facts under the model, and the same for uniformly
// corrupted facts. Diagnostic used to sanity-check training.
std::pair<double, double> mean_fact_distances(const KnowledgeGraph& kg,
                                              const EmbeddingModel& model, std::uint64_t seed);

}  // namespace rulemine
