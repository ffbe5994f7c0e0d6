#include "rulemine/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "rulemine/util.hpp"

namespace rulemine {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"paths", {"kg", "out"}},
        {"embedding",
         {"model", "dim", "eta", "negatives", "epochs", "batch", "lr", "min_entity_degree"}},
        {"seeds", {"count", "pool", "top_fraction"}},
        {"agent",
         {"token_dim", "hidden", "layers", "gamma", "lr", "replay", "batch", "eps_start",
          "eps_end"}},
        {"curriculum",
         {"stage0_phi", "stage0_q", "stage0_budget", "stage1_phi", "stage1_q", "stage1_budget",
          "stage2_phi", "stage2_q", "stage2_budget", "stage3_phi", "stage3_q", "stage3_budget"}},
        {"search",
         {"max_length", "batch", "min_conf", "min_hc", "min_value", "lambda", "measure",
          "time_limit", "grounding_budget"}},
        {"eval", {"holdout", "cd_threshold"}},
        {"run", {"seed", "jobs"}},
    };
    return s;
}

double to_double(const std::string& key, std::string_view v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config key `" + key + "`: not a number: `" + std::string(v) + "`");
    return out;
}

std::int64_t to_int(const std::string& key, std::string_view v) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("config key `" + key + "`: not an integer: `" + std::string(v) + "`");
    return out;
}

std::vector<double> to_probs(const std::string& key, std::string_view v) {
    std::vector<double> probs;
    for (std::string_view part : split(v, ',')) probs.push_back(to_double(key, trim(part)));
    if (probs.size() != 5)
        throw ConfigError("config key `" + key + "`: expected 5 comma-separated probabilities");
    return probs;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

RunConfig default_config() {
    RunConfig cfg;
    cfg.stages = default_curriculum({500, 1000, 1000, 1500});
    return cfg;
}

void RunConfig::validate() const {
    embedding.validate();
    agent.validate();
    if (embedding_kind != "transe" && embedding_kind != "bilinear")
        throw ConfigError("embedding model must be `transe` or `bilinear`");
    if (stages.size() != 4) throw ConfigError("curriculum must have 4 stages");
    for (const CurriculumStage& s : stages) s.validate();
    if (seed_top_fraction <= 0.0 || seed_top_fraction > 1.0)
        throw ConfigError("seeds top_fraction must be in (0,1]");
    if (max_length < 2) throw ConfigError("search max_length must be >= 2");
    if (search.lambda < 0.0 || search.lambda > 1.0) throw ConfigError("lambda must be in [0,1]");
    if (holdout_ratio < 0.0 || holdout_ratio >= 1.0)
        throw ConfigError("eval holdout must be in [0,1)");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg = default_config();
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#' || sv.front() == ';') continue;
        if (sv.front() == '[') {
            if (sv.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
            section = std::string(trim(sv.substr(1, sv.size() - 2)));
            if (!schema().count(section))
                throw ConfigError("unknown config section `" + section + "`");
            continue;
        }
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string value(trim(sv.substr(eq + 1)));
        if (section.empty()) throw ConfigError("config key `" + key + "` outside any section");
        if (!schema().at(section).count(key))
            throw ConfigError("unknown config key `" + section + "." + key + "`");
        const std::string qual = section + "." + key;

        if (section == "paths") {
            if (key == "kg") cfg.kg_path = value;
            else cfg.out_dir = value;
        } else if (section == "embedding") {
            if (key == "model") cfg.embedding_kind = value;
            else if (key == "dim") cfg.embedding.dim = int(to_int(qual, value));
            else if (key == "eta") cfg.embedding.eta = to_double(qual, value);
            else if (key == "negatives") cfg.embedding.negatives = int(to_int(qual, value));
            else if (key == "epochs") cfg.embedding.epochs = int(to_int(qual, value));
            else if (key == "batch") cfg.embedding.batch_size = int(to_int(qual, value));
            else if (key == "lr") cfg.embedding.learning_rate = to_double(qual, value);
            else cfg.min_entity_degree = std::size_t(to_int(qual, value));
        } else if (section == "seeds") {
            if (key == "count") cfg.seed_count = std::size_t(to_int(qual, value));
            else if (key == "pool") cfg.seed_pool = std::size_t(to_int(qual, value));
            else cfg.seed_top_fraction = to_double(qual, value);
        } else if (section == "agent") {
            if (key == "token_dim") cfg.agent.token_dim = int(to_int(qual, value));
            else if (key == "hidden") cfg.agent.hidden = int(to_int(qual, value));
            else if (key == "layers") cfg.agent.layers = int(to_int(qual, value));
            else if (key == "gamma") cfg.agent.gamma = to_double(qual, value);
            else if (key == "lr") cfg.agent.learning_rate = to_double(qual, value);
            else if (key == "replay") cfg.agent.replay_capacity = std::size_t(to_int(qual, value));
            else if (key == "batch") cfg.agent.batch_size = std::size_t(to_int(qual, value));
            else if (key == "eps_start") cfg.agent.eps_start = to_double(qual, value);
            else cfg.agent.eps_end = to_double(qual, value);
        } else if (section == "curriculum") {
            const std::size_t stage = std::size_t(key[5] - '0');
            if (key.ends_with("_phi")) cfg.stages[stage].length_probs = to_probs(qual, value);
            else if (key.ends_with("_q")) cfg.stages[stage].masked_prob = to_double(qual, value);
            else cfg.stages[stage].episodes = std::size_t(to_int(qual, value));
        } else if (section == "search") {
            if (key == "max_length") cfg.max_length = std::size_t(to_int(qual, value));
            else if (key == "batch") cfg.search.value_batch = std::size_t(to_int(qual, value));
            else if (key == "min_conf") cfg.search.min_conf = to_double(qual, value);
            else if (key == "min_hc") cfg.search.min_hc = to_double(qual, value);
            else if (key == "min_value") cfg.search.min_value = to_double(qual, value);
            else if (key == "lambda") cfg.search.lambda = to_double(qual, value);
            else if (key == "measure") {
                if (value == "cwa") cfg.search.measure = StatMeasure::kCwa;
                else if (value == "pca") cfg.search.measure = StatMeasure::kPca;
                else throw ConfigError("search.measure must be `cwa` or `pca`");
            } else if (key == "time_limit") cfg.search.time_limit_seconds = to_double(qual, value);
            else cfg.search.grounding_budget = std::uint64_t(to_int(qual, value));
        } else if (section == "eval") {
            if (key == "holdout") cfg.holdout_ratio = to_double(qual, value);
            else cfg.cd_threshold = to_double(qual, value);
        } else {  // run
            if (key == "seed") cfg.seed = std::uint64_t(to_int(qual, value));
            else cfg.jobs = int(to_int(qual, value));
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) { return parse_config(read_file(path)); }

std::string print_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[paths]\n";
    out << "kg = " << cfg.kg_path << "\n";
    out << "out = " << cfg.out_dir << "\n";
    out << "\n[embedding]\n";
    out << "model = " << cfg.embedding_kind << "\n";
    out << "dim = " << cfg.embedding.dim << "\n";
    out << "eta = " << fmt(cfg.embedding.eta) << "\n";
    out << "negatives = " << cfg.embedding.negatives << "\n";
    out << "epochs = " << cfg.embedding.epochs << "\n";
    out << "batch = " << cfg.embedding.batch_size << "\n";
    out << "lr = " << fmt(cfg.embedding.learning_rate) << "\n";
    out << "min_entity_degree = " << cfg.min_entity_degree << "\n";
    out << "\n[seeds]\n";
    out << "count = " << cfg.seed_count << "\n";
    out << "pool = " << cfg.seed_pool << "\n";
    out << "top_fraction = " << fmt(cfg.seed_top_fraction) << "\n";
    out << "\n[agent]\n";
    out << "token_dim = " << cfg.agent.token_dim << "\n";
    out << "hidden = " << cfg.agent.hidden << "\n";
    out << "layers = " << cfg.agent.layers << "\n";
    out << "gamma = " << fmt(cfg.agent.gamma) << "\n";
    out << "lr = " << fmt(cfg.agent.learning_rate) << "\n";
    out << "replay = " << cfg.agent.replay_capacity << "\n";
    out << "batch = " << cfg.agent.batch_size << "\n";
    out << "eps_start = " << fmt(cfg.agent.eps_start) << "\n";
    out << "eps_end = " << fmt(cfg.agent.eps_end) << "\n";
    out << "\n[curriculum]\n";
    for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
        out << "stage" << i << "_phi = ";
        for (std::size_t j = 0; j < cfg.stages[i].length_probs.size(); ++j)
            out << (j ? "," : "") << fmt(cfg.stages[i].length_probs[j]);
        out << "\n";
        out << "stage" << i << "_q = " << fmt(cfg.stages[i].masked_prob) << "\n";
        out << "stage" << i << "_budget = " << cfg.stages[i].episodes << "\n";
    }
    out << "\n[search]\n";
    out << "max_length = " << cfg.max_length << "\n";
    out << "batch = " << cfg.search.value_batch << "\n";
    out << "min_conf = " << fmt(cfg.search.min_conf) << "\n";
    out << "min_hc = " << fmt(cfg.search.min_hc) << "\n";
    out << "min_value = " << fmt(cfg.search.min_value) << "\n";
    out << "lambda = " << fmt(cfg.search.lambda) << "\n";
    out << "measure = " << (cfg.search.measure == StatMeasure::kCwa ? "cwa" : "pca") << "\n";
    out << "time_limit = " << fmt(cfg.search.time_limit_seconds) << "\n";
    out << "grounding_budget = " << cfg.search.grounding_budget << "\n";
    out << "\n[eval]\n";
    out << "holdout = " << fmt(cfg.holdout_ratio) << "\n";
    out << "cd_threshold = " << fmt(cfg.cd_threshold) << "\n";
    out << "\n[run]\n";
    out << "seed = " << cfg.seed << "\n";
    out << "jobs = " << cfg.jobs << "\n";
    return out.str();
}

std::string config_fingerprint(const RunConfig& cfg) { return sha256_hex(print_config(cfg)); }

}  // namespace rulemine
