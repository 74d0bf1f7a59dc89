#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

namespace loadcast::seq2seq {

enum class Activation { tanh, sigmoid, relu };
enum class AttentionMode { dot, general, concat };

[[nodiscard]] std::string to_string(Activation a);
[[nodiscard]] std::string to_string(AttentionMode m);
[[nodiscard]] Activation parse_activation(const std::string& s);
[[nodiscard]] AttentionMode parse_attention(const std::string& s);

/// One LSTM layer. The four gates share a stacked weight matrix acting on
/// [h_prev; x], row blocks ordered forget, input, output, candidate.
/// `activation` is applied to the cell state in h = o * act(c).
struct LstmLayerParams {
    Eigen::MatrixXd w;  ///< 4H x (H + I)
    Eigen::VectorXd b;  ///< 4H
    Activation activation = Activation::tanh;

    LstmLayerParams() = default;
    LstmLayerParams(std::size_t input_size, std::size_t hidden_size, Activation act = Activation::tanh);

    [[nodiscard]] std::size_t hidden_size() const noexcept { return static_cast<std::size_t>(b.size() / 4); }
    [[nodiscard]] std::size_t input_size() const noexcept {
        return static_cast<std::size_t>(w.cols()) - hidden_size();
    }
    /// Throws std::invalid_argument on inconsistent shapes or non-finite entries.
    void validate() const;
};

struct LstmState {
    Eigen::VectorXd h;
    Eigen::VectorXd c;
};

/// f, i, o = sigmoid(W [h_prev; x] + b) blocks; c~ = tanh(...);
/// c = f*c_prev + i*c~; h = o*act(c).
[[nodiscard]] LstmState lstm_step(const LstmLayerParams& params, const Eigen::VectorXd& h_prev,
                                  const Eigen::VectorXd& c_prev, const Eigen::VectorXd& x);

/// Luong scoring: dot h_t'h_s, general h_t'W_a h_s, concat v_a' tanh(W_a [h_t; h_s]).
struct AttentionParams {
    AttentionMode mode = AttentionMode::general;
    Eigen::MatrixXd w_a;  ///< general: H x H, concat: H x 2H, dot: empty
    Eigen::VectorXd v_a;  ///< concat: H, otherwise empty

    AttentionParams() = default;
    AttentionParams(AttentionMode m, std::size_t hidden);
    void validate(std::size_t hidden) const;
};

struct Attention {
    Eigen::VectorXd context;
    Eigen::VectorXd alignment;  ///< softmax of the scores, one per encoder step
};

/// `encoder_states` holds one column per encoder step.
[[nodiscard]] Attention attend(const Eigen::VectorXd& h_t, const Eigen::MatrixXd& encoder_states,
                               const AttentionParams& params);

struct Seq2SeqConfig {
    std::vector<std::size_t> hidden{118, 82};
    std::vector<Activation> activations{Activation::sigmoid, Activation::relu};
    std::vector<double> dropout{0.385, 0.08};
    std::size_t input_length = 584;
    std::size_t output_length = 730;
    AttentionMode attention = AttentionMode::general;

    void validate() const;
};

/// Per-feature min-max scaling to [0, 1].
class MinMaxScaler {
public:
    MinMaxScaler() = default;
    MinMaxScaler(double min, double max);
    [[nodiscard]] static MinMaxScaler fit(std::span<const double> x);

    [[nodiscard]] double scale(double v) const noexcept { return (v - min_) / (max_ - min_); }
    [[nodiscard]] double descale(double v) const noexcept { return v * (max_ - min_) + min_; }
    [[nodiscard]] std::vector<double> scale(std::span<const double> x) const;
    [[nodiscard]] std::vector<double> descale(std::span<const double> x) const;
    [[nodiscard]] double min() const noexcept { return min_; }
    [[nodiscard]] double max() const noexcept { return max_; }

private:
    double min_ = 0.0;
    double max_ = 1.0;
};

/// Encoder and decoder stacks of equal sizes, attention over the top encoder
/// states, attentional layer h~ = tanh(W_comb [context; s] + b_comb) and
/// scalar output y = w_out' h~ + b_out fed back as the next decoder input.
struct Seq2SeqModel {
    Seq2SeqConfig config;
    std::vector<LstmLayerParams> encoder;
    std::vector<LstmLayerParams> decoder;
    AttentionParams attention;
    Eigen::MatrixXd w_comb;  ///< H x 2H
    Eigen::VectorXd b_comb;  ///< H
    Eigen::VectorXd w_out;   ///< H
    double b_out = 0.0;
    MinMaxScaler scaler;

    /// All tensors zero.
    [[nodiscard]] static Seq2SeqModel zeros(const Seq2SeqConfig& config);
    /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, forget-gate bias 1.
    [[nodiscard]] static Seq2SeqModel initialize(const Seq2SeqConfig& config, std::uint64_t seed);

    [[nodiscard]] std::size_t top_hidden() const { return config.hidden.back(); }
    [[nodiscard]] std::size_t parameter_count() const;

    [[nodiscard]] nlohmann::json to_json() const;
    /// Validates every tensor shape against the stored config.
    [[nodiscard]] static Seq2SeqModel from_json(const nlohmann::json& j);
    void save(const std::filesystem::path& path) const;
    [[nodiscard]] static Seq2SeqModel load(const std::filesystem::path& path);
};

/// Calls f(name, data, rows, cols) for every parameter tensor in a fixed order.
template <class Model, class F>
void for_each_tensor(Model& m, F&& f) {
    auto layers = [&](auto& stack, const char* prefix) {
        for (std::size_t l = 0; l < stack.size(); ++l) {
            const std::string base = std::string(prefix) + std::to_string(l);
            f(base + ".w", stack[l].w.data(), stack[l].w.rows(), stack[l].w.cols());
            f(base + ".b", stack[l].b.data(), stack[l].b.rows(), Eigen::Index{1});
        }
    };
    layers(m.encoder, "encoder");
    layers(m.decoder, "decoder");
    f(std::string("attention.w_a"), m.attention.w_a.data(), m.attention.w_a.rows(), m.attention.w_a.cols());
    f(std::string("attention.v_a"), m.attention.v_a.data(), m.attention.v_a.rows(), Eigen::Index{1});
    f(std::string("w_comb"), m.w_comb.data(), m.w_comb.rows(), m.w_comb.cols());
    f(std::string("b_comb"), m.b_comb.data(), m.b_comb.rows(), Eigen::Index{1});
    f(std::string("w_out"), m.w_out.data(), m.w_out.rows(), Eigen::Index{1});
    f(std::string("b_out"), &m.b_out, Eigen::Index{1}, Eigen::Index{1});
}

struct Encoding {
    Eigen::MatrixXd states;          ///< top-layer hidden state per step (columns)
    Eigen::VectorXd context;         ///< last top-layer hidden state
    std::vector<LstmState> final;    ///< per layer, initial decoder state
    double last_input = 0.0;         ///< first decoder input
};

/// Runs the encoder over scaled inputs. Throws std::invalid_argument unless
/// input.size() == config.input_length.
[[nodiscard]] Encoding encode(const Seq2SeqModel& model, std::span<const double> input);

/// Autoregressive decoding in scaled units. Throws for steps == 0.
[[nodiscard]] std::vector<double> decode_forecast(const Seq2SeqModel& model, const Encoding& encoding,
                                                  std::size_t steps);

/// Scales raw values with the model's scaler, encodes the last input_length
/// of them, decodes `steps` values (output_length when 0) and descales.
[[nodiscard]] std::vector<double> predict(const Seq2SeqModel& model, std::span<const double> history,
                                          std::size_t steps = 0);

struct Window {
    std::vector<double> input;
    std::vector<double> target;
};

/// Sliding windows (stride `stride`) over a series already in model units.
[[nodiscard]] std::vector<Window> make_windows(std::span<const double> series, std::size_t input_length,
                                               std::size_t output_length, std::size_t stride = 1);

struct TrainConfig {
    std::size_t epochs = 300;
    std::size_t batch_size = 64;
    double learning_rate = 0.00074;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 42;
    bool shuffle = true;

    void validate() const;
};

struct TrainResult {
    std::vector<double> loss_history;  ///< mean training MSE per epoch
    std::size_t updates = 0;
};

/// Mini-batch Adam on the MSE of the decoded target. Dropout is active only
/// here. Throws FitError when the loss becomes NaN or infinite.
TrainResult train(Seq2SeqModel& model, std::span<const Window> windows, const TrainConfig& config);

/// MSE of one window, dropout off.
[[nodiscard]] double window_loss(const Seq2SeqModel& model, const Window& window);

/// Analytic gradient of window_loss, shaped like the model.
[[nodiscard]] Seq2SeqModel loss_gradient(const Seq2SeqModel& model, const Window& window);

struct GradientCheck {
    double max_relative_error = 0.0;  ///< |a - n| / max(|a| + |n|, 1e-6)
    double max_abs_analytic = 0.0;
    double max_abs_numeric = 0.0;
    std::size_t parameters = 0;
};

/// Compares loss_gradient against central differences for every parameter.
[[nodiscard]] GradientCheck gradient_check(const Seq2SeqModel& model, const Window& window, double epsilon = 1e-5);

}  // namespace loadcast::seq2seq
