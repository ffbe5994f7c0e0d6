#pragma once

// Run configuration: flat, typed key-value sections. Unknown sections or
// keys are rejected with the offending name. `print_config` emits the
// canonical form (all keys, default or not); its SHA-256 is the config
// fingerprint recorded in manifests and checkpoints.

#include <cstdint>
#include <string>
#include <vector>

#include "rulemine/agent.hpp"
#include "rulemine/embedding.hpp"
#include "rulemine/search.hpp"

namespace rulemine {

struct RunConfig {
    // [paths]
    std::string kg_path = "data/toy_kg.tsv";
    std::string out_dir = "out";

    // [embedding]
    std::string embedding_kind = "transe";  // transe | bilinear
    EmbedTrainConfig embedding;
    std::size_t min_entity_degree = 0;  // 0 disables degree filtering

    // [seeds]
    std::size_t seed_count = 1000;
    std::size_t seed_pool = 50000;
    double seed_top_fraction = 0.1;

    // [agent]
    AgentTrainConfig agent;

    // [curriculum] — fixed 4-stage schedule
    std::vector<CurriculumStage> stages;

    // [search]
    std::size_t max_length = 3;  // L upper bound; lengths sweep 2..max_length
    SearchConfig search;         // head is filled per mining run

    // [eval]
    double holdout_ratio = 0.3;
    double cd_threshold = 0.7;

    // [run]
    std::uint64_t seed = 42;
    int jobs = 1;

    void validate() const;
};

RunConfig default_config();
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string print_config(const RunConfig& cfg);
std::string config_fingerprint(const RunConfig& cfg);

}  // namespace rulemine
