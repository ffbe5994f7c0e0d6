#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "rulemine/checkpoint.hpp"
#include "rulemine/embedding.hpp"

using namespace rulemine;
namespace rt = rulemine::testing;

namespace {

// Model with hand-set predicate vectors (one row per original predicate).
EmbeddingModel hand_model(double eta, const std::vector<Eigen::VectorXd>& predicate_rows,
                          EmbeddingKind kind = EmbeddingKind::kTranslational) {
    EmbeddingModel m;
    m.kind = kind;
    m.eta = eta;
    m.dim = int(predicate_rows.at(0).size());
    m.predicate_vecs.resize(Eigen::Index(predicate_rows.size()), m.dim);
    for (std::size_t i = 0; i < predicate_rows.size(); ++i)
        m.predicate_vecs.row(Eigen::Index(i)) = predicate_rows[i].transpose();
    m.entity_vecs.resize(1, m.dim);
    m.entity_vecs.setZero();
    m.entity_names = {"e0"};
    for (std::size_t i = 0; i < predicate_rows.size(); ++i)
        m.predicate_names.push_back("p" + std::to_string(i));
    return m;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
    Eigen::VectorXd v(4);
    v << a, b, c, d;
    return v;
}

}  // namespace

TEST_CASE("rho is sigmoid(eta) at zero distance") {
    const auto m = hand_model(24.0, {vec4(1, 2, 3, 4), vec4(1, 2, 3, 4)});
    const double r = rho(m, Rule{0, {2}});  // body p1 == head p0
    CHECK(std::abs(r - 1.0) < 4e-11);
    CHECK(r < 1.0);
}

TEST_CASE("rho at distance exactly eta is one half") {
    const auto m = hand_model(12.0, {vec4(12, 0, 0, 0), vec4(0, 0, 0, 0)});
    CHECK(rho(m, Rule{0, {2}}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("inverse body atoms cancel") {
    const auto m = hand_model(24.0, {vec4(0, 0, 0, 0), vec4(5, -3, 2, 7)});
    // p1 followed by p1^-1 sums to zero; head p0 is zero too.
    const double r = rho(m, Rule{0, {2, 3}});
    CHECK(r == doctest::Approx(sigmoid(24.0)).epsilon(1e-15));
}

TEST_CASE("rho decreases strictly with distance") {
    double prev = 2.0;
    for (int step = 0; step <= 20; ++step) {
        const auto m = hand_model(12.0, {vec4(double(step), 0, 0, 0), vec4(0, 0, 0, 0)});
        const double r = rho(m, Rule{0, {2}});
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("rho is exactly invariant under body permutation") {
    const auto m = hand_model(
        10.0, {vec4(0.3, -1.7, 2.2, 0.9), vec4(1.1, 0.2, -0.4, 0.7), vec4(-0.6, 0.8, 1.3, -2.1),
               vec4(0.05, -0.33, 0.21, 1.9)});
    const Rule a{0, {2, 4, 6, 5}};
    const Rule b{0, {6, 2, 5, 4}};
    const Rule c{0, {5, 6, 4, 2}};
    CHECK(rho(m, a) == rho(m, b));
    CHECK(rho(m, a) == rho(m, c));
}

TEST_CASE("rho rejects unknown predicates and wrong model kinds") {
    const auto m = hand_model(12.0, {vec4(1, 0, 0, 0)});
    CHECK_THROWS_AS(rho(m, Rule{0, {99}}), LookupError);
    const auto bil = hand_model(12.0, {vec4(1, 0, 0, 0)}, EmbeddingKind::kBilinear);
    CHECK_THROWS_AS(rho(bil, Rule{0, {0}}), ConfigError);
    CHECK_THROWS_AS(rho_bilinear(m, Rule{0, {0}}), ConfigError);
}

TEST_CASE("bilinear scorer: ones are the identity element") {
    const auto m = hand_model(12.0, {vec4(0.5, -1, 2, 0.25), vec4(1, 1, 1, 1)},
                              EmbeddingKind::kBilinear);
    // body <p1, p0> composes to p0 itself: cosine 1, squashed to the max
    CHECK(rho_bilinear(m, Rule{0, {2, 0}}) == doctest::Approx(1.0));
}

TEST_CASE("bilinear scorer: orthogonal composite squashes to the midpoint") {
    const auto m =
        hand_model(12.0, {vec4(1, 0, 0, 0), vec4(0, 1, 0, 0)}, EmbeddingKind::kBilinear);
    CHECK(rho_bilinear(m, Rule{0, {2}}) == doctest::Approx(0.5));
}

TEST_CASE("bilinear scorer matches direct formula evaluation") {
    const auto m =
        hand_model(12.0, {vec4(1, 2, 0, -1), vec4(0.5, 1, 3, 2), vec4(2, -1, 0.5, 1)},
                   EmbeddingKind::kBilinear);
    // composite = p1 ∘ p2, cosine against p0
    Eigen::VectorXd comp = vec4(0.5 * 2, 1 * -1, 3 * 0.5, 2 * 1);
    Eigen::VectorXd head = vec4(1, 2, 0, -1);
    const double cos = comp.dot(head) / (comp.norm() * head.norm());
    CHECK(rho_bilinear(m, Rule{0, {2, 4}}) == doctest::Approx(0.5 * (1.0 + cos)));
}

TEST_CASE("training config is validated") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\n");
    EmbedTrainConfig cfg;
    cfg.dim = 0;
    CHECK_THROWS_AS(train_transe(kg, cfg), ConfigError);
    cfg.dim = 8;
    cfg.eta = -1.0;
    CHECK_THROWS_AS(train_transe(kg, cfg), ConfigError);
    std::istringstream empty("");
    CHECK_THROWS_AS(train_transe(load_triples(empty), EmbedTrainConfig{}), ConfigError);
}

TEST_CASE("a single fact trains inside the margin") {
    const KnowledgeGraph kg = rt::kg_from_triples("a\tp\tb\n");
    EmbedTrainConfig cfg;
    cfg.dim = 8;
    cfg.eta = 4.0;
    cfg.negatives = 4;
    cfg.epochs = 400;
    cfg.batch_size = 8;
    cfg.learning_rate = 0.1;
    cfg.seed = 1;
    const EmbeddingModel m = train_transe(kg, cfg);
    const Eigen::VectorXd diff = m.entity_vecs.row(0) + m.predicate_vecs.row(0) -
                                 m.entity_vecs.row(1);
    CHECK(diff.lpNorm<1>() < cfg.eta);
}

TEST_CASE("desk-scale training separates facts from corruptions") {
    const KnowledgeGraph kg = rt::random_kg(40, 4, 200, 5);
    EmbedTrainConfig cfg;
    cfg.dim = 32;
    cfg.eta = 8.0;
    cfg.negatives = 8;
    cfg.epochs = 40;
    cfg.batch_size = 64;
    cfg.learning_rate = 0.25;
    cfg.seed = 2;
    const EmbeddingModel m = train_transe(kg, cfg);
    const auto [pos, neg] = mean_fact_distances(kg, m, 99);
    CHECK(pos < neg);
}

TEST_CASE("training is bitwise deterministic for a fixed seed") {
    const KnowledgeGraph kg = rt::random_kg(20, 3, 80, 17);
    EmbedTrainConfig cfg;
    cfg.dim = 16;
    cfg.eta = 6.0;
    cfg.negatives = 4;
    cfg.epochs = 5;
    cfg.seed = 123;
    const EmbeddingModel a = train_transe(kg, cfg);
    const EmbeddingModel b = train_transe(kg, cfg);
    CHECK(a.entity_vecs == b.entity_vecs);
    CHECK(a.predicate_vecs == b.predicate_vecs);
}

TEST_CASE("bilinear training pushes positives above corruptions") {
    const KnowledgeGraph kg = rt::random_kg(30, 3, 150, 8);
    EmbedTrainConfig cfg;
    cfg.dim = 16;
    cfg.eta = 6.0;
    cfg.negatives = 4;
    cfg.epochs = 30;
    cfg.learning_rate = 0.1;
    cfg.seed = 3;
    const EmbeddingModel m = train_bilinear(kg, cfg);
    CHECK(m.kind == EmbeddingKind::kBilinear);
    // spot check: mean triple score of facts should exceed random triples
    double pos = 0.0, neg = 0.0;
    std::size_t n = 0;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<EntityId> ent(0, EntityId(kg.entity_count() - 1));
    for (PredicateId p : kg.original_predicates())
        kg.for_each_pair(p, [&](EntityId s, EntityId o) {
            const auto pr = p >> 1;
            pos += (m.entity_vecs.row(s).array() * m.predicate_vecs.row(pr).array() *
                    m.entity_vecs.row(o).array())
                       .sum();
            neg += (m.entity_vecs.row(ent(rng)).array() * m.predicate_vecs.row(pr).array() *
                    m.entity_vecs.row(ent(rng)).array())
                       .sum();
            ++n;
        });
    CHECK(pos / double(n) > neg / double(n));
}

TEST_CASE("embedding checkpoints round trip through float32") {
    const KnowledgeGraph kg = rt::random_kg(15, 3, 60, 21);
    EmbedTrainConfig cfg;
    cfg.dim = 12;
    cfg.eta = 5.0;
    cfg.epochs = 3;
    cfg.seed = 9;
    const EmbeddingModel m = train_transe(kg, cfg);

    const std::string path = (std::filesystem::temp_directory_path() / "rm_emb_test.bin").string();
    save_embedding(m, path);
    const EmbeddingModel loaded = load_embedding(path);
    const EmbeddingModel loaded2 = load_embedding(path);
    std::remove(path.c_str());

    CHECK(loaded.kind == m.kind);
    CHECK(loaded.dim == m.dim);
    CHECK(loaded.eta == m.eta);
    CHECK(loaded.entity_names == m.entity_names);
    CHECK(loaded.predicate_names == m.predicate_names);
    CHECK(loaded.matches(kg));
    // float32 rounding only
    CHECK((loaded.entity_vecs - m.entity_vecs).cwiseAbs().maxCoeff() < 1e-6);
    // reloading the same file reproduces rho bit-for-bit
    CHECK(rho(loaded, Rule{0, {2, 5}}) == rho(loaded2, Rule{0, {2, 5}}));
}
