#pragma once

#include "loadcast/seq2seq.hpp"

namespace loadcast::seq2seq::detail {

struct StepCache {
    Eigen::VectorXd z;  // [h_prev; x]
    Eigen::VectorXd c_prev;
    Eigen::VectorXd f, i, o, g;
    Eigen::VectorXd c;
    Eigen::VectorXd act;  // act(c)
    Eigen::VectorXd h;
};

void lstm_forward(const LstmLayerParams& p, const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
                  const Eigen::VectorXd& x, StepCache& s);

/// Accumulates parameter gradients into `grad`; dh/dc are gradients of the
/// step outputs. Writes the gradient of [h_prev; x] to dz and of c_prev to dc_prev.
void lstm_backward(const LstmLayerParams& p, const StepCache& s, const Eigen::VectorXd& dh, const Eigen::VectorXd& dc,
                   LstmLayerParams& grad, Eigen::VectorXd& dz, Eigen::VectorXd& dc_prev);

/// W_h h_s for every encoder column (concat mode only; empty otherwise).
Eigen::MatrixXd attention_projection(const AttentionParams& p, const Eigen::MatrixXd& hs);

struct AttentionCache {
    Eigen::VectorXd q;          // general: W_a' s
    Eigen::MatrixXd u;          // concat: tanh activations, H x T
    Eigen::VectorXd alignment;
    Eigen::VectorXd context;
};

void attend_forward(const Eigen::VectorXd& s, const Eigen::MatrixXd& hs, const AttentionParams& p,
                    const Eigen::MatrixXd& projection, AttentionCache& cache);

/// Accumulates into grad, ds and dhs.
void attend_backward(const Eigen::VectorXd& s, const Eigen::MatrixXd& hs, const AttentionParams& p,
                     const AttentionCache& cache, const Eigen::VectorXd& dcontext, AttentionParams& grad,
                     Eigen::VectorXd& ds, Eigen::MatrixXd& dhs);

}  // namespace loadcast::seq2seq::detail
