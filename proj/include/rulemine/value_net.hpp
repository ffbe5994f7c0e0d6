#pragma once

// Recurrent state-value network: token embedding -> stacked bidirectional
// LSTM -> mean pooling over the sequence -> affine head -> sigmoid.
//
// Sequences of different lengths are grouped and processed per length, so
// pooling always runs over the actual sequence only; there is no padding
// anywhere. Forward passes on a const network are thread-safe; training
// steps are not.
//
// All math is double precision. Gradients are exact (validated against
// central finite differences); the optimizer is RMSprop.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

namespace rulemine {

struct ValueNetConfig {
    int vocab = 0;      // token count, including separator and mask
    int token_dim = 32;
    int hidden = 64;
    int layers = 1;
    double rmsprop_decay = 0.9;
    double rmsprop_epsilon = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

using TokenSeq = std::vector<std::int32_t>;

class ValueNetwork {
public:
    explicit ValueNetwork(const ValueNetConfig& cfg);

    const ValueNetConfig& config() const { return cfg_; }
    int output_dim() const { return 2 * cfg_.hidden; }

    double value(const TokenSeq& seq) const;
    std::vector<double> values(const std::vector<TokenSeq>& seqs) const;

    // One RMSprop step on the mean L1 loss |V(seq_j) - target_j|; targets are
    // constants (no gradient flows through them). Returns the loss.
    double train_step(const std::vector<TokenSeq>& seqs, const std::vector<double>& targets,
                      double learning_rate);

    // Gradient of sum_j coeffs[j] * V(seq_j) over all parameters, flattened
    // in parameter order. Exposed for gradient verification.
    Eigen::VectorXd gradient(const std::vector<TokenSeq>& seqs,
                             const std::vector<double>& coeffs) const;

    Eigen::VectorXd parameters_flat() const;
    void set_parameters_flat(const Eigen::VectorXd& flat);
    std::size_t parameter_count() const;

private:
    using Mat = Eigen::MatrixXd;

    struct LstmDir {
        Mat w_in;   // 4h x in_dim, gate rows ordered [i; f; g; o]
        Mat w_rec;  // 4h x h
        Mat bias;   // 4h x 1
    };

    struct DirTape {
        std::vector<Mat> gate_i, gate_f, gate_g, gate_o;  // h x B per step
        std::vector<Mat> cell, tanh_cell, hidden;         // h x B per step
    };
    struct LayerTape {
        std::vector<Mat> input;  // in_dim x B per sequence position
        DirTape dir[2];
    };
    struct GroupTape {
        std::vector<std::size_t> members;  // indices into the batch
        int T = 0;
        std::vector<LayerTape> layers;
        Mat pooled;            // d_o x B
        Eigen::RowVectorXd v;  // sigmoid outputs
    };

    int layer_input_dim(int layer) const;
    void run_dir(const LstmDir& params, const std::vector<Mat>& inputs, bool backward_dir,
                 DirTape& tape) const;
    GroupTape forward_group(const std::vector<TokenSeq>& seqs,
                            const std::vector<std::size_t>& members) const;
    // Accumulates parameter gradients for one group given dLoss/dV per member.
    void backward_group(const std::vector<TokenSeq>& seqs, const GroupTape& tape,
                        const Eigen::RowVectorXd& dv, std::vector<Mat>& grads) const;

    std::vector<Mat*> blocks();
    std::vector<const Mat*> blocks() const;
    std::vector<Mat> zero_like_blocks() const;

    ValueNetConfig cfg_;
    Mat token_table_;  // token_dim x vocab
    std::vector<std::array<LstmDir, 2>> layers_;
    Mat head_w_;  // 1 x d_o
    Mat head_b_;  // 1 x 1
    std::vector<Mat> rms_cache_;
};

}  // namespace rulemine
