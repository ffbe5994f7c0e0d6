#include "rulemine/value_net.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "rulemine/util.hpp"

namespace rulemine {

namespace {

Eigen::MatrixXd sigmoid_mat(const Eigen::MatrixXd& z) {
    return ((-z.array()).exp() + 1.0).inverse().matrix();
}

}  // namespace

void ValueNetConfig::validate() const {
    if (vocab < 3) throw ConfigError("value net vocab must include predicates plus special tokens");
    if (token_dim <= 0 || hidden <= 0 || layers <= 0)
        throw ConfigError("value net dimensions must be positive");
}

ValueNetwork::ValueNetwork(const ValueNetConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    std::mt19937_64 rng(cfg_.seed);
    auto uniform_init = [&rng](Mat& m, double scale) {
        std::uniform_real_distribution<double> u(-scale, scale);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
    };

    const int h = cfg_.hidden;
    token_table_.resize(cfg_.token_dim, cfg_.vocab);
    uniform_init(token_table_, 0.1);

    layers_.resize(cfg_.layers);
    for (int l = 0; l < cfg_.layers; ++l) {
        const int in_dim = layer_input_dim(l);
        for (auto& dir : layers_[l]) {
            dir.w_in.resize(4 * h, in_dim);
            dir.w_rec.resize(4 * h, h);
            dir.bias = Mat::Zero(4 * h, 1);
            uniform_init(dir.w_in, 1.0 / std::sqrt(double(in_dim)));
            uniform_init(dir.w_rec, 1.0 / std::sqrt(double(h)));
            dir.bias.block(h, 0, h, 1).setOnes();  // forget gate starts open
        }
    }
    head_w_.resize(1, output_dim());
    uniform_init(head_w_, 1.0 / std::sqrt(double(output_dim())));
    head_b_ = Mat::Zero(1, 1);

    for (const Mat* b : blocks()) rms_cache_.push_back(Mat::Zero(b->rows(), b->cols()));
}

int ValueNetwork::layer_input_dim(int layer) const {
    return layer == 0 ? cfg_.token_dim : 2 * cfg_.hidden;
}

std::vector<ValueNetwork::Mat*> ValueNetwork::blocks() {
    std::vector<Mat*> out;
    out.push_back(&token_table_);
    for (auto& layer : layers_)
        for (auto& dir : layer) {
            out.push_back(&dir.w_in);
            out.push_back(&dir.w_rec);
            out.push_back(&dir.bias);
        }
    out.push_back(&head_w_);
    out.push_back(&head_b_);
    return out;
}

std::vector<const ValueNetwork::Mat*> ValueNetwork::blocks() const {
    auto mutable_blocks = const_cast<ValueNetwork*>(this)->blocks();
    return {mutable_blocks.begin(), mutable_blocks.end()};
}

std::vector<ValueNetwork::Mat> ValueNetwork::zero_like_blocks() const {
    std::vector<Mat> out;
    for (const Mat* b : blocks()) out.push_back(Mat::Zero(b->rows(), b->cols()));
    return out;
}

void ValueNetwork::run_dir(const LstmDir& params, const std::vector<Mat>& inputs,
                           bool backward_dir, DirTape& tape) const {
    const int T = int(inputs.size());
    const auto B = inputs[0].cols();
    const int h = cfg_.hidden;
    tape.gate_i.resize(T);
    tape.gate_f.resize(T);
    tape.gate_g.resize(T);
    tape.gate_o.resize(T);
    tape.cell.resize(T);
    tape.tanh_cell.resize(T);
    tape.hidden.resize(T);

    Mat h_prev = Mat::Zero(h, B), c_prev = Mat::Zero(h, B);
    for (int step = 0; step < T; ++step) {
        const int pos = backward_dir ? T - 1 - step : step;
        Mat z = params.w_in * inputs[pos] + params.w_rec * h_prev;
        z.colwise() += params.bias.col(0);
        tape.gate_i[step] = sigmoid_mat(z.topRows(h));
        tape.gate_f[step] = sigmoid_mat(z.middleRows(h, h));
        tape.gate_g[step] = z.middleRows(2 * h, h).array().tanh().matrix();
        tape.gate_o[step] = sigmoid_mat(z.middleRows(3 * h, h));
        tape.cell[step] = tape.gate_f[step].cwiseProduct(c_prev) +
                          tape.gate_i[step].cwiseProduct(tape.gate_g[step]);
        tape.tanh_cell[step] = tape.cell[step].array().tanh().matrix();
        tape.hidden[step] = tape.gate_o[step].cwiseProduct(tape.tanh_cell[step]);
        h_prev = tape.hidden[step];
        c_prev = tape.cell[step];
    }
}

ValueNetwork::GroupTape ValueNetwork::forward_group(const std::vector<TokenSeq>& seqs,
                                                    const std::vector<std::size_t>& members) const {
    GroupTape tape;
    tape.members = members;
    tape.T = int(seqs[members[0]].size());
    const auto B = Eigen::Index(members.size());
    const int h = cfg_.hidden;
    tape.layers.resize(cfg_.layers);

    tape.layers[0].input.assign(tape.T, Mat(cfg_.token_dim, B));
    for (int t = 0; t < tape.T; ++t)
        for (Eigen::Index j = 0; j < B; ++j) {
            const std::int32_t tok = seqs[members[j]][t];
            if (tok < 0 || tok >= cfg_.vocab) throw LookupError("token id out of vocabulary");
            tape.layers[0].input[t].col(j) = token_table_.col(tok);
        }

    for (int l = 0; l < cfg_.layers; ++l) {
        LayerTape& lt = tape.layers[l];
        run_dir(layers_[l][0], lt.input, false, lt.dir[0]);
        run_dir(layers_[l][1], lt.input, true, lt.dir[1]);
        if (l + 1 < cfg_.layers) {
            tape.layers[l + 1].input.assign(tape.T, Mat(2 * h, B));
            for (int t = 0; t < tape.T; ++t) {
                tape.layers[l + 1].input[t].topRows(h) = lt.dir[0].hidden[t];
                tape.layers[l + 1].input[t].bottomRows(h) = lt.dir[1].hidden[tape.T - 1 - t];
            }
        }
    }

    const LayerTape& top = tape.layers[cfg_.layers - 1];
    tape.pooled = Mat::Zero(2 * h, B);
    for (int t = 0; t < tape.T; ++t) {
        tape.pooled.topRows(h) += top.dir[0].hidden[t];
        tape.pooled.bottomRows(h) += top.dir[1].hidden[tape.T - 1 - t];
    }
    tape.pooled /= double(tape.T);

    Eigen::RowVectorXd a = head_w_ * tape.pooled;
    a.array() += head_b_(0, 0);
    tape.v = ((-a.array()).exp() + 1.0).inverse().matrix();
    return tape;
}

void ValueNetwork::backward_group(const std::vector<TokenSeq>& seqs, const GroupTape& tape,
                                  const Eigen::RowVectorXd& dv, std::vector<Mat>& grads) const {
    const int T = tape.T;
    const auto B = Eigen::Index(tape.members.size());
    const int h = cfg_.hidden;

    const Eigen::RowVectorXd da =
        (dv.array() * tape.v.array() * (1.0 - tape.v.array())).matrix();

    const std::size_t head_w_idx = 1 + std::size_t(cfg_.layers) * 6;
    grads[head_w_idx] += da * tape.pooled.transpose();
    grads[head_w_idx + 1](0, 0) += da.sum();

    // Pooling distributes the same gradient to every position.
    const Mat dpool = (head_w_.transpose() * da) / double(T);
    std::vector<Mat> dout(T, dpool);

    for (int l = cfg_.layers - 1; l >= 0; --l) {
        const LayerTape& lt = tape.layers[l];
        const int in_dim = layer_input_dim(l);
        std::vector<Mat> dinput(T, Mat::Zero(in_dim, B));

        for (int d = 0; d < 2; ++d) {
            const bool backward_dir = d == 1;
            const LstmDir& params = layers_[l][d];
            const DirTape& dt = lt.dir[d];
            const std::size_t base = 1 + std::size_t(l) * 6 + std::size_t(d) * 3;

            Mat dh_next = Mat::Zero(h, B), dc_next = Mat::Zero(h, B);
            for (int step = T - 1; step >= 0; --step) {
                const int pos = backward_dir ? T - 1 - step : step;
                Mat dh = dout[pos].middleRows(d * h, h) + dh_next;

                const Mat& i = dt.gate_i[step];
                const Mat& f = dt.gate_f[step];
                const Mat& g = dt.gate_g[step];
                const Mat& o = dt.gate_o[step];
                const Mat& tc = dt.tanh_cell[step];

                Mat do_gate = dh.cwiseProduct(tc);
                Mat dc = (dh.array() * o.array() * (1.0 - tc.array().square())).matrix() + dc_next;
                Mat di = dc.cwiseProduct(g);
                Mat dg = dc.cwiseProduct(i);
                Mat df = step > 0 ? Mat(dc.cwiseProduct(dt.cell[step - 1])) : Mat(Mat::Zero(h, B));
                dc_next = dc.cwiseProduct(f);

                Mat dz(4 * h, B);
                dz.topRows(h) = (di.array() * i.array() * (1.0 - i.array())).matrix();
                dz.middleRows(h, h) = (df.array() * f.array() * (1.0 - f.array())).matrix();
                dz.middleRows(2 * h, h) = (dg.array() * (1.0 - g.array().square())).matrix();
                dz.bottomRows(h) = (do_gate.array() * o.array() * (1.0 - o.array())).matrix();

                grads[base + 0] += dz * lt.input[pos].transpose();
                if (step > 0) grads[base + 1] += dz * dt.hidden[step - 1].transpose();
                grads[base + 2] += dz.rowwise().sum();

                dh_next = params.w_rec.transpose() * dz;
                dinput[pos] += params.w_in.transpose() * dz;
            }
        }
        dout = std::move(dinput);
    }

    for (int t = 0; t < T; ++t)
        for (Eigen::Index j = 0; j < B; ++j)
            grads[0].col(seqs[tape.members[j]][t]) += dout[t].col(j);
}

std::vector<double> ValueNetwork::values(const std::vector<TokenSeq>& seqs) const {
    std::vector<double> out(seqs.size(), 0.0);
    std::map<std::size_t, std::vector<std::size_t>> by_len;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (seqs[i].empty()) throw std::invalid_argument("empty token sequence");
        by_len[seqs[i].size()].push_back(i);
    }
    for (const auto& [len, members] : by_len) {
        GroupTape tape = forward_group(seqs, members);
        for (std::size_t j = 0; j < members.size(); ++j) out[members[j]] = tape.v(Eigen::Index(j));
    }
    return out;
}

double ValueNetwork::value(const TokenSeq& seq) const { return values({seq})[0]; }

double ValueNetwork::train_step(const std::vector<TokenSeq>& seqs,
                                const std::vector<double>& targets, double learning_rate) {
    if (seqs.empty() || seqs.size() != targets.size())
        throw std::invalid_argument("train_step: batch/target size mismatch");

    std::vector<Mat> grads = zero_like_blocks();
    std::map<std::size_t, std::vector<std::size_t>> by_len;
    for (std::size_t i = 0; i < seqs.size(); ++i) by_len[seqs[i].size()].push_back(i);

    double loss = 0.0;
    const double inv_n = 1.0 / double(seqs.size());
    for (const auto& [len, members] : by_len) {
        GroupTape tape = forward_group(seqs, members);
        Eigen::RowVectorXd dv(Eigen::Index(members.size()));
        for (std::size_t j = 0; j < members.size(); ++j) {
            const double diff = tape.v(Eigen::Index(j)) - targets[members[j]];
            loss += std::abs(diff) * inv_n;
            dv(Eigen::Index(j)) = diff > 0.0 ? inv_n : (diff < 0.0 ? -inv_n : 0.0);
        }
        backward_group(seqs, tape, dv, grads);
    }

    auto params = blocks();
    for (std::size_t b = 0; b < params.size(); ++b) {
        rms_cache_[b] = cfg_.rmsprop_decay * rms_cache_[b] +
                        (1.0 - cfg_.rmsprop_decay) * grads[b].cwiseProduct(grads[b]);
        params[b]->array() -= learning_rate * grads[b].array() /
                              (rms_cache_[b].array().sqrt() + cfg_.rmsprop_epsilon);
    }
    return loss;
}

Eigen::VectorXd ValueNetwork::gradient(const std::vector<TokenSeq>& seqs,
                                       const std::vector<double>& coeffs) const {
    if (seqs.size() != coeffs.size())
        throw std::invalid_argument("gradient: batch/coefficient size mismatch");
    std::vector<Mat> grads = zero_like_blocks();
    std::map<std::size_t, std::vector<std::size_t>> by_len;
    for (std::size_t i = 0; i < seqs.size(); ++i) by_len[seqs[i].size()].push_back(i);
    for (const auto& [len, members] : by_len) {
        GroupTape tape = forward_group(seqs, members);
        Eigen::RowVectorXd dv(Eigen::Index(members.size()));
        for (std::size_t j = 0; j < members.size(); ++j) dv(Eigen::Index(j)) = coeffs[members[j]];
        backward_group(seqs, tape, dv, grads);
    }
    Eigen::VectorXd flat(parameter_count());
    Eigen::Index off = 0;
    for (const Mat& g : grads) {
        flat.segment(off, g.size()) = Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
        off += g.size();
    }
    return flat;
}

std::size_t ValueNetwork::parameter_count() const {
    std::size_t n = 0;
    for (const Mat* b : blocks()) n += std::size_t(b->size());
    return n;
}

Eigen::VectorXd ValueNetwork::parameters_flat() const {
    Eigen::VectorXd flat(parameter_count());
    Eigen::Index off = 0;
    for (const Mat* b : blocks()) {
        flat.segment(off, b->size()) = Eigen::Map<const Eigen::VectorXd>(b->data(), b->size());
        off += b->size();
    }
    return flat;
}

void ValueNetwork::set_parameters_flat(const Eigen::VectorXd& flat) {
    if (std::size_t(flat.size()) != parameter_count())
        throw std::invalid_argument("parameter vector size mismatch");
    Eigen::Index off = 0;
    for (Mat* b : blocks()) {
        *b = Eigen::Map<const Mat>(flat.data() + off, b->rows(), b->cols());
        off += b->size();
    }
}

}  // namespace rulemine
