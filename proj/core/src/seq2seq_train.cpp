#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "loadcast/error.hpp"
#include "seq2seq_detail.hpp"

namespace loadcast::seq2seq {

namespace {

using detail::AttentionCache;
using detail::StepCache;

struct Trace {
    std::vector<std::vector<StepCache>> enc;               // [t][layer]
    std::vector<std::vector<Eigen::VectorXd>> enc_mask;    // empty vector = no dropout
    Eigen::MatrixXd hs;                                    // masked top encoder outputs
    Eigen::MatrixXd proj;
    std::vector<std::vector<StepCache>> dec;               // [k][layer]
    std::vector<std::vector<Eigen::VectorXd>> dec_mask;
    std::vector<Eigen::VectorXd> top;                      // masked top decoder output
    std::vector<AttentionCache> att;
    std::vector<Eigen::VectorXd> joint;
    std::vector<Eigen::VectorXd> tilde;
    std::vector<double> y;
};

Eigen::VectorXd sample_mask(Eigen::Index n, double rate, std::mt19937_64* rng) {
    if (rng == nullptr || rate <= 0.0) return {};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd m(n);
    const double keep = 1.0 - rate;
    for (Eigen::Index i = 0; i < n; ++i) m(i) = u(*rng) < keep ? 1.0 / keep : 0.0;
    return m;
}

Eigen::VectorXd apply_mask(const Eigen::VectorXd& v, const Eigen::VectorXd& mask) {
    return mask.size() == 0 ? v : Eigen::VectorXd(v.cwiseProduct(mask));
}

double forward(const Seq2SeqModel& m, const Window& w, std::mt19937_64* rng, Trace& tr) {
    const std::size_t layers = m.encoder.size();
    const std::size_t steps_in = w.input.size();
    const std::size_t steps_out = w.target.size();
    const auto top_h = static_cast<Eigen::Index>(m.top_hidden());
    tr.enc.assign(steps_in, std::vector<StepCache>(layers));
    tr.enc_mask.assign(steps_in, std::vector<Eigen::VectorXd>(layers));
    tr.hs.resize(top_h, static_cast<Eigen::Index>(steps_in));

    std::vector<LstmState> state(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const auto h = static_cast<Eigen::Index>(m.encoder[l].hidden_size());
        state[l] = {Eigen::VectorXd::Zero(h), Eigen::VectorXd::Zero(h)};
    }
    for (std::size_t t = 0; t < steps_in; ++t) {
        Eigen::VectorXd in(1);
        in(0) = w.input[t];
        for (std::size_t l = 0; l < layers; ++l) {
            StepCache& c = tr.enc[t][l];
            detail::lstm_forward(m.encoder[l], state[l].h, state[l].c, in, c);
            state[l] = {c.h, c.c};
            tr.enc_mask[t][l] = sample_mask(c.h.size(), m.config.dropout[l], rng);
            in = apply_mask(c.h, tr.enc_mask[t][l]);
        }
        tr.hs.col(static_cast<Eigen::Index>(t)) = in;
    }
    tr.proj = detail::attention_projection(m.attention, tr.hs);

    tr.dec.assign(steps_out, std::vector<StepCache>(layers));
    tr.dec_mask.assign(steps_out, std::vector<Eigen::VectorXd>(layers));
    tr.top.assign(steps_out, {});
    tr.att.assign(steps_out, {});
    tr.joint.assign(steps_out, {});
    tr.tilde.assign(steps_out, {});
    tr.y.assign(steps_out, 0.0);
    double prev = w.input.back();
    double loss = 0.0;
    for (std::size_t k = 0; k < steps_out; ++k) {
        Eigen::VectorXd in(1);
        in(0) = prev;
        for (std::size_t l = 0; l < layers; ++l) {
            StepCache& c = tr.dec[k][l];
            detail::lstm_forward(m.decoder[l], state[l].h, state[l].c, in, c);
            state[l] = {c.h, c.c};
            tr.dec_mask[k][l] = sample_mask(c.h.size(), m.config.dropout[l], rng);
            in = apply_mask(c.h, tr.dec_mask[k][l]);
        }
        tr.top[k] = in;
        detail::attend_forward(in, tr.hs, m.attention, tr.proj, tr.att[k]);
        tr.joint[k].resize(2 * top_h);
        tr.joint[k] << tr.att[k].context, in;
        tr.tilde[k] = (m.w_comb * tr.joint[k] + m.b_comb).array().tanh();
        prev = m.w_out.dot(tr.tilde[k]) + m.b_out;
        tr.y[k] = prev;
        loss += (prev - w.target[k]) * (prev - w.target[k]);
    }
    return loss / static_cast<double>(steps_out);
}

// Accumulates scale * dLoss/dtheta into grad.
void backward(const Seq2SeqModel& m, const Window& w, const Trace& tr, double scale, Seq2SeqModel& grad) {
    const std::size_t layers = m.encoder.size();
    const std::size_t steps_in = w.input.size();
    const std::size_t steps_out = w.target.size();
    const auto top_h = static_cast<Eigen::Index>(m.top_hidden());

    std::vector<Eigen::VectorXd> dh_rec(layers);
    std::vector<Eigen::VectorXd> dc_rec(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const auto h = static_cast<Eigen::Index>(m.decoder[l].hidden_size());
        dh_rec[l] = Eigen::VectorXd::Zero(h);
        dc_rec[l] = Eigen::VectorXd::Zero(h);
    }
    Eigen::MatrixXd dhs = Eigen::MatrixXd::Zero(top_h, static_cast<Eigen::Index>(steps_in));
    Eigen::VectorXd dz;
    Eigen::VectorXd dc_prev;
    double dy_carry = 0.0;
    const double loss_scale = 2.0 * scale / static_cast<double>(steps_out);

    for (std::size_t k = steps_out; k-- > 0;) {
        const double dy = loss_scale * (tr.y[k] - w.target[k]) + dy_carry;
        grad.w_out.noalias() += dy * tr.tilde[k];
        grad.b_out += dy;
        const Eigen::VectorXd dpre = (dy * m.w_out).cwiseProduct((1.0 - tr.tilde[k].array().square()).matrix());
        grad.w_comb.noalias() += dpre * tr.joint[k].transpose();
        grad.b_comb += dpre;
        const Eigen::VectorXd djoint = m.w_comb.transpose() * dpre;
        Eigen::VectorXd ds = djoint.tail(top_h);
        detail::attend_backward(tr.top[k], tr.hs, m.attention, tr.att[k], djoint.head(top_h), grad.attention, ds, dhs);
        Eigen::VectorXd dout = ds;
        for (std::size_t l = layers; l-- > 0;) {
            const auto h = static_cast<Eigen::Index>(m.decoder[l].hidden_size());
            const Eigen::VectorXd dh = apply_mask(dout, tr.dec_mask[k][l]) + dh_rec[l];
            detail::lstm_backward(m.decoder[l], tr.dec[k][l], dh, dc_rec[l], grad.decoder[l], dz, dc_prev);
            dh_rec[l] = dz.head(h);
            dc_rec[l] = dc_prev;
            dout = dz.tail(dz.size() - h);
        }
        dy_carry = dout(0);
    }

    for (std::size_t t = steps_in; t-- > 0;) {
        Eigen::VectorXd dout = dhs.col(static_cast<Eigen::Index>(t));
        for (std::size_t l = layers; l-- > 0;) {
            const auto h = static_cast<Eigen::Index>(m.encoder[l].hidden_size());
            const Eigen::VectorXd dh = apply_mask(dout, tr.enc_mask[t][l]) + dh_rec[l];
            detail::lstm_backward(m.encoder[l], tr.enc[t][l], dh, dc_rec[l], grad.encoder[l], dz, dc_prev);
            dh_rec[l] = dz.head(h);
            dc_rec[l] = dc_prev;
            dout = dz.tail(dz.size() - h);
        }
    }
}

struct TensorRef {
    double* data;
    Eigen::Index size;
};

std::vector<TensorRef> tensors(Seq2SeqModel& m) {
    std::vector<TensorRef> out;
    for_each_tensor(m, [&out](const std::string&, double* d, Eigen::Index r, Eigen::Index c) {
        out.push_back({d, r * c});
    });
    return out;
}

void check_window(const Seq2SeqModel& m, const Window& w) {
    if (w.input.size() != m.config.input_length) {
        throw std::invalid_argument("window input length " + std::to_string(w.input.size()) +
                                    " does not match the model (" + std::to_string(m.config.input_length) + ")");
    }
    if (w.target.empty()) throw std::invalid_argument("window target is empty");
}

}  // namespace

void TrainConfig::validate() const {
    if (epochs == 0 || batch_size == 0) throw std::invalid_argument("TrainConfig: epochs and batch size must be positive");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
        throw std::invalid_argument("TrainConfig: learning rate must be finite and non-negative");
    }
    if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0 && epsilon > 0.0)) {
        throw std::invalid_argument("TrainConfig: invalid Adam constants");
    }
}

double window_loss(const Seq2SeqModel& model, const Window& window) {
    check_window(model, window);
    const auto y = decode_forecast(model, encode(model, window.input), window.target.size());
    double loss = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) loss += (y[k] - window.target[k]) * (y[k] - window.target[k]);
    return loss / static_cast<double>(y.size());
}

Seq2SeqModel loss_gradient(const Seq2SeqModel& model, const Window& window) {
    check_window(model, window);
    Trace tr;
    forward(model, window, nullptr, tr);
    Seq2SeqModel grad = Seq2SeqModel::zeros(model.config);
    backward(model, window, tr, 1.0, grad);
    return grad;
}

TrainResult train(Seq2SeqModel& model, std::span<const Window> windows, const TrainConfig& config) {
    config.validate();
    model.config.validate();
    if (windows.empty()) throw std::invalid_argument("train: no training windows");
    for (const auto& w : windows) check_window(model, w);

    std::mt19937_64 rng(config.seed);
    Seq2SeqModel grad = Seq2SeqModel::zeros(model.config);
    Seq2SeqModel m1 = grad;
    Seq2SeqModel m2 = grad;
    const auto p_ref = tensors(model);
    const auto g_ref = tensors(grad);
    const auto m_ref = tensors(m1);
    const auto v_ref = tensors(m2);

    std::vector<std::size_t> order(windows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    TrainResult out;
    Trace tr;
    double b1t = 1.0;
    double b2t = 1.0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.shuffle) std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t stop = std::min(order.size(), start + config.batch_size);
            const double scale = 1.0 / static_cast<double>(stop - start);
            for (const auto& t : g_ref) std::fill(t.data, t.data + t.size, 0.0);
            for (std::size_t b = start; b < stop; ++b) {
                const Window& w = windows[order[b]];
                const double loss = forward(model, w, &rng, tr);
                if (!std::isfinite(loss)) {
                    throw FitError("train: loss is not finite at epoch " + std::to_string(epoch + 1) + ", window " +
                                   std::to_string(order[b]) + " (learning rate " +
                                   std::to_string(config.learning_rate) + ")");
                }
                epoch_loss += loss;
                backward(model, w, tr, scale, grad);
            }
            b1t *= config.beta1;
            b2t *= config.beta2;
            for (std::size_t t = 0; t < p_ref.size(); ++t) {
                for (Eigen::Index i = 0; i < p_ref[t].size; ++i) {
                    const double g = g_ref[t].data[i];
                    double& mm = m_ref[t].data[i];
                    double& vv = v_ref[t].data[i];
                    mm = config.beta1 * mm + (1.0 - config.beta1) * g;
                    vv = config.beta2 * vv + (1.0 - config.beta2) * g * g;
                    const double mhat = mm / (1.0 - b1t);
                    const double vhat = vv / (1.0 - b2t);
                    p_ref[t].data[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
                }
            }
            ++out.updates;
        }
        out.loss_history.push_back(epoch_loss / static_cast<double>(windows.size()));
    }
    return out;
}

GradientCheck gradient_check(const Seq2SeqModel& model, const Window& window, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("gradient_check: epsilon must be positive");
    Seq2SeqModel analytic = loss_gradient(model, window);
    Seq2SeqModel probe = model;
    const auto a_ref = tensors(analytic);
    const auto p_ref = tensors(probe);
    GradientCheck out;
    for (std::size_t t = 0; t < p_ref.size(); ++t) {
        for (Eigen::Index i = 0; i < p_ref[t].size; ++i) {
            double& p = p_ref[t].data[i];
            const double orig = p;
            p = orig + epsilon;
            const double up = window_loss(probe, window);
            p = orig - epsilon;
            const double down = window_loss(probe, window);
            p = orig;
            const double num = (up - down) / (2.0 * epsilon);
            const double ana = a_ref[t].data[i];
            const double rel = std::abs(ana - num) / std::max(std::abs(ana) + std::abs(num), 1e-6);
            out.max_relative_error = std::max(out.max_relative_error, rel);
            out.max_abs_analytic = std::max(out.max_abs_analytic, std::abs(ana));
            out.max_abs_numeric = std::max(out.max_abs_numeric, std::abs(num));
            ++out.parameters;
        }
    }
    return out;
}

}  // namespace loadcast::seq2seq
