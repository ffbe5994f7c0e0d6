#include "rulemine/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "rulemine/checkpoint.hpp"
#include "rulemine/inference.hpp"
#include "rulemine/util.hpp"

namespace rulemine {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void log_line(const PhaseOptions& opts, const std::string& phase, const std::string& msg) {
    if (opts.verbose) std::cerr << "[" << phase << "] " << msg << "\n";
}

class Manifest {
public:
    Manifest(std::string phase, const RunConfig& cfg)
        : phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {
        doc_["phase"] = phase_;
        doc_["code_version"] = kCodeVersion;
        doc_["config_fingerprint"] = config_fingerprint(cfg);
        doc_["inputs"] = json::object();
        doc_["outputs"] = json::object();
    }
    void input(const std::string& path) { doc_["inputs"][path] = sha256_file_hex(path); }
    void output(const std::string& path) { doc_["outputs"][path] = sha256_file_hex(path); }
    void note(const std::string& key, json value) { doc_[key] = std::move(value); }
    void write(const std::string& path) {
        doc_["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        write_file_atomic(path, doc_.dump(2) + "\n");
    }

private:
    std::string phase_;
    std::chrono::steady_clock::time_point start_;
    json doc_;
};

void require_file(const std::string& path, const std::string& what,
                  const std::string& producing_phase) {
    if (!fs::exists(path))
        throw PrerequisiteError(what + " not found at " + path, producing_phase);
}

KnowledgeGraph load_kg_checked(const RunConfig& cfg) {
    if (!fs::exists(cfg.kg_path))
        throw ConfigError("KG file not found: " + cfg.kg_path);
    return load_triples_file(cfg.kg_path);
}

EmbeddingModel load_embedding_checked(const PipelinePaths& paths, const KnowledgeGraph& kg) {
    require_file(paths.embedding_checkpoint(), "embedding checkpoint", "embed");
    EmbeddingModel model = load_embedding(paths.embedding_checkpoint());
    if (!model.matches(kg))
        throw ConfigError("embedding checkpoint does not match the KG symbol tables");
    return model;
}

std::string sanitize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_');
    return out;
}

std::string rule_file_name(const KnowledgeGraph& kg, PredicateId head) {
    return "head_" + std::to_string(head) + "_" +
           sanitize_name(kg.predicate_name(head)) + ".txt";
}

void write_rule_files(const KnowledgeGraph& kg, const std::string& dir,
                      const std::vector<PredicateMineOutcome>& outcomes, bool with_sidecar,
                      Manifest& manifest) {
    fs::create_directories(dir);
    json per_head = json::array();
    for (const PredicateMineOutcome& outcome : outcomes) {
        const std::string base = dir + "/" + rule_file_name(kg, outcome.head);
        std::ostringstream text;
        for (const MinedRule& r : outcome.rules)
            text << rule_line(kg, r.rule, r.stats, r.rho, r.score) << '\n';
        write_file_atomic(base, text.str());
        manifest.output(base);

        if (with_sidecar) {
            std::ostringstream side;
            for (const MinedRule& r : outcome.rules) {
                json rec;
                rec["head"] = r.rule.head;
                rec["body"] = r.rule.body;
                rec["supp"] = r.stats.supp;
                rec["body_count"] = r.stats.body_count;
                rec["conf"] = r.stats.conf;
                rec["pca_conf"] = r.stats.pca_conf;
                rec["hc"] = r.stats.hc;
                rec["rho"] = r.rho;
                rec["score"] = r.score;
                rec["emit_seconds"] = r.emit_seconds;
                side << rec.dump() << '\n';
            }
            const std::string sidecar = base.substr(0, base.size() - 4) + ".jsonl";
            write_file_atomic(sidecar, side.str());
        }
        json head_note;
        head_note["head"] = kg.predicate_name(outcome.head);
        head_note["rules"] = outcome.rules.size();
        head_note["truncated"] = outcome.truncated;
        if (!outcome.error.empty()) head_note["error"] = outcome.error;
        per_head.push_back(std::move(head_note));
    }
    manifest.note("heads", std::move(per_head));
}

EmbeddingModel train_embedding_in_memory(const KnowledgeGraph& kg, const RunConfig& cfg,
                                         std::uint64_t seed) {
    const KnowledgeGraph training_kg = cfg.min_entity_degree > 1
                                           ? kg.filtered_by_min_degree(cfg.min_entity_degree)
                                           : kg.filtered_by_min_degree(0);
    EmbedTrainConfig ecfg = cfg.embedding;
    ecfg.seed = seed;
    return cfg.embedding_kind == "bilinear" ? train_bilinear(training_kg, ecfg)
                                            : train_transe(training_kg, ecfg);
}

void require_translational(const EmbeddingModel& model, const std::string& phase) {
    if (model.kind != EmbeddingKind::kTranslational)
        throw ConfigError(phase + " needs a translational embedding model (rho is the reward); "
                                  "retrain with embedding.model = transe");
}

std::vector<MinedRule> read_rule_files(const KnowledgeGraph& kg, const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".txt") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<MinedRule> rules;
    for (const std::string& file : files) {
        std::istringstream in(read_file(file));
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (trim(line).empty()) continue;
            const ParsedRuleLine parsed = parse_rule_line(kg, line, line_no);
            MinedRule r;
            r.rule = parsed.rule;
            r.stats.supp = parsed.supp;
            r.stats.conf = parsed.conf;
            r.stats.hc = parsed.hc;
            r.rho = parsed.rho;
            r.score = parsed.score;
            r.text = rule_text(kg, parsed.rule);
            rules.push_back(std::move(r));
        }
    }
    return rules;
}

std::string render_predictions(const KnowledgeGraph& kg, std::span<const Prediction> predictions,
                               bool new_only) {
    std::ostringstream out;
    for (const Prediction& p : predictions) {
        if (new_only && p.known) continue;
        out << kg.entity_name(p.fact.subject) << '\t' << kg.predicate_name(p.fact.predicate)
            << '\t' << kg.entity_name(p.fact.object) << '\t' << fixed6(p.cd) << '\t';
        for (std::size_t i = 0; i < p.rule_ids.size(); ++i)
            out << (i ? "," : "") << p.rule_ids[i];
        out << '\n';
    }
    return out.str();
}

struct EvalComputation {
    PredictivePower power;
    RankingMetrics ranking;
    std::size_t rules_total = 0;
    std::size_t predictions_total = 0;
    std::size_t predictions_new = 0;
};

std::string render_metrics_txt(const EvalComputation& e) {
    std::ostringstream out;
    out << "rules_total = " << e.rules_total << "\n";
    out << "predictions_total = " << e.predictions_total << "\n";
    out << "predictions_new = " << e.predictions_new << "\n";
    out << "facts = " << e.power.facts << "\n";
    out << "q_facts = " << e.power.q_facts << "\n";
    out << "mrr = " << fixed6(e.ranking.mrr) << "\n";
    out << "hits_at_10 = " << fixed6(e.ranking.hits_at_10) << "\n";
    out << "query_count = " << e.ranking.query_count << "\n";
    return out.str();
}

}  // namespace

void run_load(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    fs::create_directories(cfg.out_dir);
    Manifest manifest("load", cfg);
    manifest.input(cfg.kg_path);

    const KnowledgeGraph kg = load_kg_checked(cfg);
    std::ostringstream exported;
    kg.export_triples(exported);
    write_file_atomic(paths.kg_normalized(), exported.str());
    manifest.output(paths.kg_normalized());
    manifest.note("facts", kg.fact_count());
    manifest.note("entities", kg.entity_count());
    manifest.note("original_predicates", kg.original_predicate_count());
    manifest.write(paths.manifest("load"));

    std::cout << "load: " << kg.fact_count() << " facts, " << kg.entity_count() << " entities, "
              << kg.original_predicate_count() << " predicates ("
              << kg.predicate_count() << " with inverses)\n";
    log_line(opts, "load", "normalized copy at " + paths.kg_normalized());
}

void run_embed(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    fs::create_directories(cfg.out_dir);
    Manifest manifest("embed", cfg);
    manifest.input(cfg.kg_path);

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const EmbeddingModel model = train_embedding_in_memory(kg, cfg, sub_seed(cfg.seed, "embed"));
    save_embedding(model, paths.embedding_checkpoint());
    manifest.output(paths.embedding_checkpoint());

    const auto [pos, neg] = mean_fact_distances(kg, model, sub_seed(cfg.seed, "embed-diag"));
    manifest.note("mean_positive_distance", pos);
    manifest.note("mean_corrupted_distance", neg);
    manifest.write(paths.manifest("embed"));

    std::cout << "embed: " << cfg.embedding_kind << " d=" << model.dim << " eta=" << model.eta
              << ", mean fact distance " << fixed6(pos) << " vs corrupted " << fixed6(neg) << "\n";
    log_line(opts, "embed", "checkpoint at " + paths.embedding_checkpoint());
}

void run_seeds(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("seeds", cfg);
    manifest.input(cfg.kg_path);

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const EmbeddingModel model = load_embedding_checked(paths, kg);
    require_translational(model, "seed sampling");
    manifest.input(paths.embedding_checkpoint());

    std::mt19937_64 rng(sub_seed(cfg.seed, "seeds"));
    const SeedRuleResult seeds =
        sample_seed_rules(kg, model, cfg.seed_count, cfg.seed_pool, cfg.seed_top_fraction, rng);
    if (!seeds.complete)
        std::cerr << "seeds: warning: only " << seeds.rules.size() << " of " << cfg.seed_count
                  << " requested seed rules cleared the rho threshold\n";
    save_seed_rules(kg, model, seeds.rules, paths.seeds_file());
    manifest.output(paths.seeds_file());
    manifest.note("seed_rules", seeds.rules.size());
    manifest.note("complete", seeds.complete);
    manifest.write(paths.manifest("seeds"));

    std::cout << "seeds: " << seeds.rules.size() << " seed rules\n";
    log_line(opts, "seeds", "file at " + paths.seeds_file());
}

void run_train_agent(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("train-agent", cfg);
    manifest.input(cfg.kg_path);

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const EmbeddingModel model = load_embedding_checked(paths, kg);
    require_translational(model, "agent training");
    require_file(paths.seeds_file(), "seed rule file", "seeds");
    manifest.input(paths.embedding_checkpoint());
    manifest.input(paths.seeds_file());
    const std::vector<Rule> seeds = load_seed_rules(kg, paths.seeds_file());

    AgentTrainConfig acfg = cfg.agent;
    acfg.seed = sub_seed(cfg.seed, "agent");
    AgentArtifacts artifacts = train_agent(kg, model, seeds, cfg.stages, acfg);

    std::vector<std::string> predicate_names;
    for (PredicateId p : kg.original_predicates()) predicate_names.push_back(kg.predicate_name(p));
    save_agent(artifacts.net, predicate_names, config_fingerprint(cfg), paths.agent_checkpoint());
    write_file_atomic(paths.training_log(), artifacts.log.to_text());
    manifest.output(paths.agent_checkpoint());
    manifest.output(paths.training_log());

    double tail_reward = 0.0;
    const std::size_t n = artifacts.log.episodes.size();
    const std::size_t tail = std::max<std::size_t>(1, n / 10);
    for (std::size_t i = n - tail; i < n; ++i)
        tail_reward += artifacts.log.episodes[i].terminal_reward;
    manifest.note("episodes", n);
    manifest.note("mean_terminal_reward_last_decile", tail_reward / double(tail));
    manifest.write(paths.manifest("train-agent"));

    std::cout << "train-agent: " << n << " episodes, last-decile mean terminal reward "
              << fixed6(tail_reward / double(tail)) << "\n";
    log_line(opts, "train-agent", "checkpoint at " + paths.agent_checkpoint());
}

void run_mine(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("mine", cfg);
    manifest.input(cfg.kg_path);

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const EmbeddingModel model = load_embedding_checked(paths, kg);
    require_translational(model, "mining");
    require_file(paths.agent_checkpoint(), "agent checkpoint", "train-agent");
    manifest.input(paths.embedding_checkpoint());
    manifest.input(paths.agent_checkpoint());

    const LoadedAgent agent = load_agent(paths.agent_checkpoint());
    std::vector<std::string> predicate_names;
    for (PredicateId p : kg.original_predicates()) predicate_names.push_back(kg.predicate_name(p));
    if (agent.predicate_names != predicate_names)
        throw ConfigError("agent checkpoint was trained on a different predicate vocabulary");

    std::vector<PredicateId> heads;
    for (const std::string& name : opts.predicates) {
        const auto id = kg.predicate_id(name);
        if (!id || is_inverse(*id)) throw LookupError("unknown head predicate `" + name + "`");
        heads.push_back(*id);
    }

    SearchConfig search = cfg.search;
    search.target_length = cfg.max_length;
    const std::vector<PredicateMineOutcome> outcomes =
        mine_all(kg, search, value_fn_of(agent.net), model, heads, cfg.jobs);

    write_rule_files(kg, paths.rules_dir(), outcomes, /*with_sidecar=*/true, manifest);
    manifest.write(paths.manifest("mine"));

    std::size_t total = 0, failed = 0;
    for (const PredicateMineOutcome& o : outcomes) {
        total += o.rules.size();
        if (!o.error.empty()) {
            ++failed;
            std::cerr << "mine: head " << kg.predicate_name(o.head) << " failed: " << o.error
                      << "\n";
        }
    }
    std::cout << "mine: " << total << " rules across " << outcomes.size() << " head predicates"
              << (failed ? " (" + std::to_string(failed) + " failed)" : "") << "\n";
    log_line(opts, "mine", "rule files under " + paths.rules_dir());
}

void run_predict(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("predict", cfg);
    manifest.input(cfg.kg_path);
    if (!fs::exists(paths.rules_dir()))
        throw PrerequisiteError("rule files not found under " + paths.rules_dir(), "mine");

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const std::vector<MinedRule> rules = read_rule_files(kg, paths.rules_dir());
    const std::vector<Prediction> predictions = apply_rules(kg, rules);

    write_file_atomic(paths.predictions_file(), render_predictions(kg, predictions, true));
    std::ostringstream rule_listing;
    for (std::size_t i = 0; i < rules.size(); ++i)
        rule_listing << i << '\t' << rules[i].text << '\n';
    write_file_atomic(paths.prediction_rules_file(), rule_listing.str());
    manifest.output(paths.predictions_file());
    manifest.output(paths.prediction_rules_file());

    std::size_t fresh = 0;
    for (const Prediction& p : predictions)
        if (!p.known) ++fresh;
    manifest.note("rules", rules.size());
    manifest.note("predictions_total", predictions.size());
    manifest.note("predictions_new", fresh);
    manifest.write(paths.manifest("predict"));

    std::cout << "predict: " << fresh << " new facts (" << predictions.size()
              << " derivations) from " << rules.size() << " rules\n";
    log_line(opts, "predict", "predictions at " + paths.predictions_file());
}

void run_evaluate(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("evaluate", cfg);
    manifest.input(cfg.kg_path);
    fs::create_directories(paths.eval_dir());

    const KnowledgeGraph kg = load_kg_checked(cfg);
    const EvalSplit split = make_split(kg, cfg.holdout_ratio, sub_seed(cfg.seed, "split"));

    // Persist the split for audit and for report's precision curve.
    {
        std::ostringstream train;
        split.train.export_triples(train);
        write_file_atomic(paths.eval_dir() + "/train.tsv", train.str());
        std::ostringstream held;
        for (const Fact& f : split.held_out)
            held << kg.entity_name(f.subject) << '\t' << kg.predicate_name(f.predicate) << '\t'
                 << kg.entity_name(f.object) << '\n';
        write_file_atomic(paths.eval_dir() + "/heldout.tsv", held.str());
        manifest.output(paths.eval_dir() + "/train.tsv");
        manifest.output(paths.eval_dir() + "/heldout.tsv");
    }

    // Nested offline phases on the train split only: held-out facts stay
    // invisible to embedding, agent, and mining.
    log_line(opts, "evaluate", "training split embedding");
    const EmbeddingModel model =
        train_embedding_in_memory(split.train, cfg, sub_seed(cfg.seed, "eval-embed"));
    require_translational(model, "evaluation");
    std::mt19937_64 seed_rng(sub_seed(cfg.seed, "eval-seeds"));
    const SeedRuleResult seeds = sample_seed_rules(split.train, model, cfg.seed_count,
                                                   cfg.seed_pool, cfg.seed_top_fraction, seed_rng);
    log_line(opts, "evaluate", "training split agent");
    AgentTrainConfig acfg = cfg.agent;
    acfg.seed = sub_seed(cfg.seed, "eval-agent");
    const AgentArtifacts agent = train_agent(split.train, model, seeds.rules, cfg.stages, acfg);

    log_line(opts, "evaluate", "mining split rules");
    SearchConfig search = cfg.search;
    search.target_length = cfg.max_length;
    const std::vector<PredicateMineOutcome> outcomes =
        mine_all(split.train, search, value_fn_of(agent.net), model, {}, cfg.jobs);
    write_rule_files(split.train, paths.eval_dir() + "/rules", outcomes, /*with_sidecar=*/false,
                     manifest);

    std::vector<MinedRule> rules;
    for (const PredicateMineOutcome& o : outcomes)
        rules.insert(rules.end(), o.rules.begin(), o.rules.end());
    const std::vector<Prediction> predictions = apply_rules(split.train, rules);
    write_file_atomic(paths.eval_dir() + "/predictions.tsv",
                      render_predictions(split.train, predictions, true));
    manifest.output(paths.eval_dir() + "/predictions.tsv");

    EvalComputation result;
    result.rules_total = rules.size();
    result.predictions_total = predictions.size();
    for (const Prediction& p : predictions)
        if (!p.known) ++result.predictions_new;
    result.power = predictive_power(split, predictions, cfg.cd_threshold);
    result.ranking = link_prediction(split, predictions);

    write_file_atomic(paths.metrics_txt(), render_metrics_txt(result));
    json metrics;
    metrics["rules_total"] = result.rules_total;
    metrics["predictions_total"] = result.predictions_total;
    metrics["predictions_new"] = result.predictions_new;
    metrics["facts"] = result.power.facts;
    metrics["q_facts"] = result.power.q_facts;
    metrics["mrr"] = result.ranking.mrr;
    metrics["hits_at_10"] = result.ranking.hits_at_10;
    metrics["query_count"] = result.ranking.query_count;
    write_file_atomic(paths.metrics_json(), metrics.dump(2) + "\n");
    manifest.output(paths.metrics_txt());
    manifest.output(paths.metrics_json());
    manifest.write(paths.manifest("evaluate"));

    std::cout << "evaluate: facts=" << result.power.facts << " q_facts=" << result.power.q_facts
              << " mrr=" << fixed6(result.ranking.mrr)
              << " hits@10=" << fixed6(result.ranking.hits_at_10) << " over "
              << result.ranking.query_count << " queries\n";
}

void run_report(const RunConfig& cfg, const PhaseOptions& opts) {
    const PipelinePaths paths{cfg.out_dir};
    Manifest manifest("report", cfg);
    fs::create_directories(paths.report_dir());
    bool produced = false;

    if (fs::exists(paths.rules_dir())) {
        const KnowledgeGraph kg = load_kg_checked(cfg);
        const std::vector<MinedRule> rules = read_rule_files(kg, paths.rules_dir());
        std::ostringstream out;
        out << "# top mined rules by hybrid score\n";
        std::vector<const MinedRule*> sorted;
        for (const MinedRule& r : rules) sorted.push_back(&r);
        std::sort(sorted.begin(), sorted.end(), [](const MinedRule* a, const MinedRule* b) {
            if (a->score != b->score) return a->score > b->score;
            return a->text < b->text;
        });
        const std::size_t top = std::min<std::size_t>(sorted.size(), 50);
        for (std::size_t i = 0; i < top; ++i)
            out << fixed6(sorted[i]->score) << '\t' << sorted[i]->text << '\n';
        write_file_atomic(paths.report_dir() + "/top_rules.txt", out.str());
        manifest.output(paths.report_dir() + "/top_rules.txt");
        produced = true;
    }

    if (fs::exists(paths.training_log())) {
        const TrainingLog log = TrainingLog::from_text(read_file(paths.training_log()));
        const std::size_t window = std::max<std::size_t>(1, log.episodes.size() / 50);
        std::ostringstream out;
        out << "episode\tstage\tepsilon\treward\treward_ma" << window << "\n";
        double window_sum = 0.0;
        std::deque<double> window_vals;
        for (const EpisodeRecord& e : log.episodes) {
            window_vals.push_back(e.terminal_reward);
            window_sum += e.terminal_reward;
            if (window_vals.size() > window) {
                window_sum -= window_vals.front();
                window_vals.pop_front();
            }
            out << e.episode << '\t' << e.stage << '\t' << fixed6(e.epsilon) << '\t'
                << fixed6(e.terminal_reward) << '\t'
                << fixed6(window_sum / double(window_vals.size())) << '\n';
        }
        write_file_atomic(paths.report_dir() + "/reward_curve.tsv", out.str());
        manifest.output(paths.report_dir() + "/reward_curve.tsv");
        produced = true;
    }

    const std::string eval_predictions = paths.eval_dir() + "/predictions.tsv";
    const std::string eval_heldout = paths.eval_dir() + "/heldout.tsv";
    if (fs::exists(eval_predictions) && fs::exists(eval_heldout)) {
        // Predictions are already ranked by cd descending.
        std::unordered_set<std::string> held;
        {
            std::istringstream in(read_file(eval_heldout));
            std::string line;
            while (std::getline(in, line))
                if (!trim(line).empty()) held.insert(std::string(trim(line)));
        }
        std::istringstream in(read_file(eval_predictions));
        std::ostringstream out;
        out << "rank\tcd\tcumulative_precision\n";
        std::string line;
        std::size_t rank = 0, hits = 0;
        while (std::getline(in, line)) {
            std::string_view sv = trim(line);
            if (sv.empty()) continue;
            auto cols = split(sv, '\t');
            if (cols.size() < 4) continue;
            ++rank;
            const std::string fact =
                std::string(cols[0]) + "\t" + std::string(cols[1]) + "\t" + std::string(cols[2]);
            if (held.count(fact)) ++hits;
            out << rank << '\t' << cols[3] << '\t' << fixed6(double(hits) / double(rank)) << '\n';
        }
        write_file_atomic(paths.report_dir() + "/precision_curve.tsv", out.str());
        manifest.output(paths.report_dir() + "/precision_curve.tsv");
        produced = true;
    }

    if (!produced)
        throw PrerequisiteError("no artifacts to report on under " + cfg.out_dir,
                                "mine (or train-agent / evaluate)");
    manifest.write(paths.manifest("report"));
    std::cout << "report: written under " << paths.report_dir() << "\n";
    log_line(opts, "report", "done");
}

void run_full_pipeline(const RunConfig& cfg, const PhaseOptions& opts) {
    run_load(cfg, opts);
    run_embed(cfg, opts);
    run_seeds(cfg, opts);
    run_train_agent(cfg, opts);
    run_mine(cfg, opts);
    run_predict(cfg, opts);
    run_evaluate(cfg, opts);
}

}  // namespace rulemine
