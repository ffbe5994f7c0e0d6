#pragma once

// Versioned binary checkpoints. Numeric payloads are little-endian 32-bit
// floats (row-major for matrices); symbol tables ride along so ids stay
// stable across runs. Byte-level layout is written explicitly, independent
// of host endianness.

#include <string>
#include <vector>

#include "rulemine/agent.hpp"
#include "rulemine/embedding.hpp"
#include "rulemine/value_net.hpp"

namespace rulemine {

void save_embedding(const EmbeddingModel& model, const std::string& path);
EmbeddingModel load_embedding(const std::string& path);

struct LoadedAgent {
    ValueNetwork net;
    std::vector<std::string> predicate_names;  // originals, id order
    std::string config_fingerprint;
};

void save_agent(const ValueNetwork& net, const std::vector<std::string>& predicate_names,
                const std::string& config_fingerprint, const std::string& path);
LoadedAgent load_agent(const std::string& path);

// Seed-rule file: `<rule text><TAB>rho`, one per line.
void save_seed_rules(const KnowledgeGraph& kg, const EmbeddingModel& model,
                     const std::vector<Rule>& rules, const std::string& path);
std::vector<Rule> load_seed_rules(const KnowledgeGraph& kg, const std::string& path);

}  // namespace rulemine
