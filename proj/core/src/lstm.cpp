#include <cmath>
#include <stdexcept>

#include "seq2seq_detail.hpp"

namespace loadcast::seq2seq {

namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

double activate(Activation a, double v) {
    switch (a) {
        case Activation::tanh: return std::tanh(v);
        case Activation::sigmoid: return sigmoid(v);
        case Activation::relu: return v > 0.0 ? v : 0.0;
    }
    return v;
}

// Derivative given the input and the activated value.
double activate_grad(Activation a, double v, double out) {
    switch (a) {
        case Activation::tanh: return 1.0 - out * out;
        case Activation::sigmoid: return out * (1.0 - out);
        case Activation::relu: return v > 0.0 ? 1.0 : 0.0;
    }
    return 1.0;
}

void check_shapes(const LstmLayerParams& p, const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
                  const Eigen::VectorXd& x) {
    const auto hs = static_cast<Eigen::Index>(p.hidden_size());
    if (h_prev.size() != hs || c_prev.size() != hs || x.size() != static_cast<Eigen::Index>(p.input_size())) {
        throw std::invalid_argument("lstm_step: state or input size does not match the layer");
    }
}

}  // namespace

std::string to_string(Activation a) {
    switch (a) {
        case Activation::tanh: return "tanh";
        case Activation::sigmoid: return "sigmoid";
        case Activation::relu: return "relu";
    }
    return "?";
}

std::string to_string(AttentionMode m) {
    switch (m) {
        case AttentionMode::dot: return "dot";
        case AttentionMode::general: return "general";
        case AttentionMode::concat: return "concat";
    }
    return "?";
}

Activation parse_activation(const std::string& s) {
    if (s == "tanh") return Activation::tanh;
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "relu") return Activation::relu;
    throw std::invalid_argument("unknown activation: " + s);
}

AttentionMode parse_attention(const std::string& s) {
    if (s == "dot") return AttentionMode::dot;
    if (s == "general") return AttentionMode::general;
    if (s == "concat") return AttentionMode::concat;
    throw std::invalid_argument("unknown attention mode: " + s);
}

LstmLayerParams::LstmLayerParams(std::size_t input_size, std::size_t hidden_size, Activation act)
    : w(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(4 * hidden_size),
                              static_cast<Eigen::Index>(hidden_size + input_size))),
      b(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(4 * hidden_size))),
      activation(act) {
    if (hidden_size == 0 || input_size == 0) throw std::invalid_argument("LstmLayerParams: sizes must be positive");
}

void LstmLayerParams::validate() const {
    if (b.size() == 0 || b.size() % 4 != 0 || w.rows() != b.size() ||
        w.cols() <= static_cast<Eigen::Index>(hidden_size())) {
        throw std::invalid_argument("LstmLayerParams: inconsistent shapes");
    }
    if (!w.allFinite() || !b.allFinite()) throw std::invalid_argument("LstmLayerParams: non-finite entries");
}

LstmState lstm_step(const LstmLayerParams& params, const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
                    const Eigen::VectorXd& x) {
    check_shapes(params, h_prev, c_prev, x);
    detail::StepCache s;
    detail::lstm_forward(params, h_prev, c_prev, x, s);
    return {s.h, s.c};
}

AttentionParams::AttentionParams(AttentionMode m, std::size_t hidden) : mode(m) {
    const auto h = static_cast<Eigen::Index>(hidden);
    switch (m) {
        case AttentionMode::dot: break;
        case AttentionMode::general: w_a = Eigen::MatrixXd::Zero(h, h); break;
        case AttentionMode::concat:
            w_a = Eigen::MatrixXd::Zero(h, 2 * h);
            v_a = Eigen::VectorXd::Zero(h);
            break;
    }
}

void AttentionParams::validate(std::size_t hidden) const {
    const auto h = static_cast<Eigen::Index>(hidden);
    bool ok = true;
    switch (mode) {
        case AttentionMode::dot: ok = w_a.size() == 0 && v_a.size() == 0; break;
        case AttentionMode::general: ok = w_a.rows() == h && w_a.cols() == h && v_a.size() == 0; break;
        case AttentionMode::concat: ok = w_a.rows() == h && w_a.cols() == 2 * h && v_a.size() == h; break;
    }
    if (!ok) throw std::invalid_argument("AttentionParams: parameters do not match mode " + to_string(mode));
}

Attention attend(const Eigen::VectorXd& h_t, const Eigen::MatrixXd& encoder_states, const AttentionParams& params) {
    if (encoder_states.cols() == 0) throw std::invalid_argument("attend: no encoder states");
    if (h_t.size() != encoder_states.rows()) throw std::invalid_argument("attend: state size mismatch");
    params.validate(static_cast<std::size_t>(h_t.size()));
    detail::AttentionCache cache;
    detail::attend_forward(h_t, encoder_states, params, detail::attention_projection(params, encoder_states), cache);
    return {cache.context, cache.alignment};
}

namespace detail {

void lstm_forward(const LstmLayerParams& p, const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
                  const Eigen::VectorXd& x, StepCache& s) {
    const auto hs = static_cast<Eigen::Index>(p.hidden_size());
    s.z.resize(h_prev.size() + x.size());
    s.z << h_prev, x;
    const Eigen::VectorXd a = p.w * s.z + p.b;
    s.f = a.segment(0, hs).unaryExpr([](double v) { return sigmoid(v); });
    s.i = a.segment(hs, hs).unaryExpr([](double v) { return sigmoid(v); });
    s.o = a.segment(2 * hs, hs).unaryExpr([](double v) { return sigmoid(v); });
    s.g = a.segment(3 * hs, hs).array().tanh();
    s.c_prev = c_prev;
    s.c = s.f.cwiseProduct(c_prev) + s.i.cwiseProduct(s.g);
    const Activation act = p.activation;
    s.act = s.c.unaryExpr([act](double v) { return activate(act, v); });
    s.h = s.o.cwiseProduct(s.act);
}

void lstm_backward(const LstmLayerParams& p, const StepCache& s, const Eigen::VectorXd& dh, const Eigen::VectorXd& dc,
                   LstmLayerParams& grad, Eigen::VectorXd& dz, Eigen::VectorXd& dc_prev) {
    const auto hs = static_cast<Eigen::Index>(p.hidden_size());
    Eigen::VectorXd dct = dc;
    Eigen::VectorXd da(4 * hs);
    for (Eigen::Index k = 0; k < hs; ++k) {
        const double d_o = dh(k) * s.act(k);
        dct(k) += dh(k) * s.o(k) * activate_grad(p.activation, s.c(k), s.act(k));
        const double d_f = dct(k) * s.c_prev(k);
        const double d_i = dct(k) * s.g(k);
        const double d_g = dct(k) * s.i(k);
        da(k) = d_f * s.f(k) * (1.0 - s.f(k));
        da(hs + k) = d_i * s.i(k) * (1.0 - s.i(k));
        da(2 * hs + k) = d_o * s.o(k) * (1.0 - s.o(k));
        da(3 * hs + k) = d_g * (1.0 - s.g(k) * s.g(k));
    }
    dc_prev = dct.cwiseProduct(s.f);
    grad.w.noalias() += da * s.z.transpose();
    grad.b += da;
    dz.noalias() = p.w.transpose() * da;
}

Eigen::MatrixXd attention_projection(const AttentionParams& p, const Eigen::MatrixXd& hs) {
    if (p.mode != AttentionMode::concat) return {};
    const Eigen::Index h = hs.rows();
    return p.w_a.rightCols(h) * hs;
}

void attend_forward(const Eigen::VectorXd& s, const Eigen::MatrixXd& hs, const AttentionParams& p,
                    const Eigen::MatrixXd& projection, AttentionCache& cache) {
    Eigen::VectorXd scores;
    switch (p.mode) {
        case AttentionMode::dot: scores = hs.transpose() * s; break;
        case AttentionMode::general:
            cache.q = p.w_a.transpose() * s;
            scores = hs.transpose() * cache.q;
            break;
        case AttentionMode::concat: {
            const Eigen::Index h = hs.rows();
            const Eigen::VectorXd ws = p.w_a.leftCols(h) * s;
            cache.u = (projection.colwise() + ws).array().tanh();
            scores = cache.u.transpose() * p.v_a;
            break;
        }
    }
    const double mx = scores.maxCoeff();
    cache.alignment = (scores.array() - mx).exp();
    cache.alignment /= cache.alignment.sum();
    cache.context = hs * cache.alignment;
}

void attend_backward(const Eigen::VectorXd& s, const Eigen::MatrixXd& hs, const AttentionParams& p,
                     const AttentionCache& cache, const Eigen::VectorXd& dcontext, AttentionParams& grad,
                     Eigen::VectorXd& ds, Eigen::MatrixXd& dhs) {
    const Eigen::VectorXd& a = cache.alignment;
    dhs.noalias() += dcontext * a.transpose();
    const Eigen::VectorXd da = hs.transpose() * dcontext;
    const Eigen::VectorXd dscore = a.cwiseProduct((da.array() - a.dot(da)).matrix());
    switch (p.mode) {
        case AttentionMode::dot:
            ds.noalias() += hs * dscore;
            dhs.noalias() += s * dscore.transpose();
            break;
        case AttentionMode::general: {
            const Eigen::VectorXd dq = hs * dscore;
            ds.noalias() += p.w_a * dq;
            grad.w_a.noalias() += s * dq.transpose();
            dhs.noalias() += cache.q * dscore.transpose();
            break;
        }
        case AttentionMode::concat: {
            const Eigen::Index h = hs.rows();
            grad.v_a.noalias() += cache.u * dscore;
            const Eigen::MatrixXd dpre =
                ((p.v_a * dscore.transpose()).array() * (1.0 - cache.u.array().square())).matrix();
            const Eigen::VectorXd dsum = dpre.rowwise().sum();
            grad.w_a.leftCols(h).noalias() += dsum * s.transpose();
            grad.w_a.rightCols(h).noalias() += dpre * hs.transpose();
            ds.noalias() += p.w_a.leftCols(h).transpose() * dsum;
            dhs.noalias() += p.w_a.rightCols(h).transpose() * dpre;
            break;
        }
    }
}

}  // namespace detail

}  // namespace loadcast::seq2seq
