#pragma once

// Pipeline phases behind the CLI: each phase loads its prerequisites from
// disk, writes its artifacts plus a JSON manifest (config fingerprint, code
// version, wall clock, input/output digests), and is idempotent for a fixed
// config and seed. Manifests are written atomically.

#include <optional>
#include <string>
#include <vector>

#include "rulemine/config.hpp"

namespace rulemine {

inline constexpr const char* kCodeVersion = "0.1.0";

struct PipelinePaths {
    std::string out_dir;

    std::string kg_normalized() const { return out_dir + "/kg_normalized.tsv"; }
    std::string embedding_checkpoint() const { return out_dir + "/embeddings.bin"; }
    std::string seeds_file() const { return out_dir + "/seed_rules.tsv"; }
    std::string agent_checkpoint() const { return out_dir + "/agent.bin"; }
    std::string training_log() const { return out_dir + "/training_log.tsv"; }
    std::string rules_dir() const { return out_dir + "/rules"; }
    std::string predictions_file() const { return out_dir + "/predictions.tsv"; }
    std::string prediction_rules_file() const { return out_dir + "/prediction_rules.txt"; }
    std::string eval_dir() const { return out_dir + "/eval"; }
    std::string metrics_txt() const { return out_dir + "/metrics.txt"; }
    std::string metrics_json() const { return out_dir + "/metrics.json"; }
    std::string report_dir() const { return out_dir + "/report"; }
    std::string manifest(const std::string& phase) const {
        return out_dir + "/manifest_" + phase + ".json";
    }
};

// Per-invocation switches that are not part of the config file.
struct PhaseOptions {
    std::vector<std::string> predicates;  // restrict mining to these head names
    bool verbose = false;
};

void run_load(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_embed(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_seeds(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_train_agent(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_mine(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_predict(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_evaluate(const RunConfig& cfg, const PhaseOptions& opts = {});
void run_report(const RunConfig& cfg, const PhaseOptions& opts = {});

// load -> embed -> seeds -> train-agent -> mine -> predict -> evaluate.
void run_full_pipeline(const RunConfig& cfg, const PhaseOptions& opts = {});

}  // namespace rulemine
