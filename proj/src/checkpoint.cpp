#include "rulemine/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rulemine/util.hpp"

namespace rulemine {

namespace {

constexpr std::uint32_t kEmbeddingMagic = 0x424d4552u;  // "REMB"
constexpr std::uint32_t kAgentMagic = 0x47414d52u;      // "RMAG"
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    }
    void u32(std::uint32_t v) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<char*>(b), 4);
    }
    void u64(std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<char*>(b), 8);
    }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u32(std::uint32_t(s.size()));
        out_.write(s.data(), std::streamsize(s.size()));
    }
    void matrix_f32(const Eigen::MatrixXd& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) f32(float(m(r, c)));
    }
    void close() {
        out_.flush();
        if (!out_) throw std::runtime_error("checkpoint write failed");
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw std::runtime_error("cannot open checkpoint: " + path);
    }
    std::uint32_t u32() {
        unsigned char b[4];
        read(b, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        unsigned char b[8];
        read(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const std::uint32_t n = u32();
        std::string s(n, '\0');
        read(s.data(), n);
        return s;
    }
    void matrix_f32(Eigen::MatrixXd& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = double(f32());
    }

private:
    void read(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), std::streamsize(n));
        if (std::size_t(in_.gcount()) != n)
            throw ParseError("truncated checkpoint file: " + path_);
    }
    std::ifstream in_;
    std::string path_;
};

}  // namespace

void save_embedding(const EmbeddingModel& model, const std::string& path) {
    Writer w(path);
    w.u32(kEmbeddingMagic);
    w.u32(kVersion);
    w.u32(std::uint32_t(model.kind));
    w.u32(std::uint32_t(model.dim));
    w.f64(model.eta);
    w.u64(model.entity_names.size());
    w.u64(model.predicate_names.size());
    for (const std::string& s : model.entity_names) w.str(s);
    for (const std::string& s : model.predicate_names) w.str(s);
    w.matrix_f32(model.entity_vecs);
    w.matrix_f32(model.predicate_vecs);
    w.close();
}

EmbeddingModel load_embedding(const std::string& path) {
    Reader r(path);
    if (r.u32() != kEmbeddingMagic) throw ParseError("not an embedding checkpoint: " + path);
    if (r.u32() != kVersion) throw ParseError("unsupported embedding checkpoint version");
    EmbeddingModel m;
    m.kind = EmbeddingKind(r.u32());
    m.dim = int(r.u32());
    m.eta = r.f64();
    const std::uint64_t n_ent = r.u64();
    const std::uint64_t n_pred = r.u64();
    m.entity_names.reserve(n_ent);
    for (std::uint64_t i = 0; i < n_ent; ++i) m.entity_names.push_back(r.str());
    m.predicate_names.reserve(n_pred);
    for (std::uint64_t i = 0; i < n_pred; ++i) m.predicate_names.push_back(r.str());
    m.entity_vecs.resize(Eigen::Index(n_ent), m.dim);
    m.predicate_vecs.resize(Eigen::Index(n_pred), m.dim);
    r.matrix_f32(m.entity_vecs);
    r.matrix_f32(m.predicate_vecs);
    return m;
}

void save_agent(const ValueNetwork& net, const std::vector<std::string>& predicate_names,
                const std::string& config_fingerprint, const std::string& path) {
    const ValueNetConfig& cfg = net.config();
    Writer w(path);
    w.u32(kAgentMagic);
    w.u32(kVersion);
    w.u32(std::uint32_t(cfg.vocab));
    w.u32(std::uint32_t(cfg.token_dim));
    w.u32(std::uint32_t(cfg.hidden));
    w.u32(std::uint32_t(cfg.layers));
    w.f64(cfg.rmsprop_decay);
    w.f64(cfg.rmsprop_epsilon);
    w.u64(cfg.seed);
    w.u64(predicate_names.size());
    for (const std::string& s : predicate_names) w.str(s);
    w.str(config_fingerprint);
    const Eigen::VectorXd params = net.parameters_flat();
    w.u64(std::uint64_t(params.size()));
    for (Eigen::Index i = 0; i < params.size(); ++i) w.f32(float(params(i)));
    w.close();
}

LoadedAgent load_agent(const std::string& path) {
    Reader r(path);
    if (r.u32() != kAgentMagic) throw ParseError("not an agent checkpoint: " + path);
    if (r.u32() != kVersion) throw ParseError("unsupported agent checkpoint version");
    ValueNetConfig cfg;
    cfg.vocab = int(r.u32());
    cfg.token_dim = int(r.u32());
    cfg.hidden = int(r.u32());
    cfg.layers = int(r.u32());
    cfg.rmsprop_decay = r.f64();
    cfg.rmsprop_epsilon = r.f64();
    cfg.seed = r.u64();
    const std::uint64_t n_pred = r.u64();
    std::vector<std::string> names;
    names.reserve(n_pred);
    for (std::uint64_t i = 0; i < n_pred; ++i) names.push_back(r.str());
    std::string fingerprint = r.str();

    ValueNetwork net(cfg);
    const std::uint64_t n_params = r.u64();
    if (n_params != net.parameter_count())
        throw ParseError("agent checkpoint parameter count mismatch");
    Eigen::VectorXd params{Eigen::Index(n_params)};
    for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = double(r.f32());
    net.set_parameters_flat(params);
    return LoadedAgent{std::move(net), std::move(names), std::move(fingerprint)};
}

void save_seed_rules(const KnowledgeGraph& kg, const EmbeddingModel& model,
                     const std::vector<Rule>& rules, const std::string& path) {
    std::ostringstream out;
    char buf[32];
    for (const Rule& r : rules) {
        std::snprintf(buf, sizeof(buf), "%.6f", rho(model, r));
        out << rule_text(kg, r) << '\t' << buf << '\n';
    }
    write_file_atomic(path, out.str());
}

std::vector<Rule> load_seed_rules(const KnowledgeGraph& kg, const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<Rule> rules;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto cols = split(sv, '\t');
        if (cols.size() != 2) throw ParseError("expected `rule<TAB>rho`", line_no);
        // Reuse the rule-line parser by padding the numeric columns.
        const std::string padded = std::string(cols[0]) + "\t0\t0\t0\t0\t0";
        rules.push_back(parse_rule_line(kg, padded, line_no).rule);
    }
    return rules;
}

}  // namespace rulemine
