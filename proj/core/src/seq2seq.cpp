#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <stdexcept>

#include "loadcast/atomic_file.hpp"
#include "seq2seq_detail.hpp"

namespace loadcast::seq2seq {

void Seq2SeqConfig::validate() const {
    if (hidden.empty()) throw std::invalid_argument("Seq2SeqConfig: at least one layer required");
    if (activations.size() != hidden.size() || dropout.size() != hidden.size()) {
        throw std::invalid_argument("Seq2SeqConfig: hidden, activations and dropout must have equal length");
    }
    for (std::size_t h : hidden) {
        if (h == 0) throw std::invalid_argument("Seq2SeqConfig: hidden sizes must be positive");
    }
    for (double d : dropout) {
        if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("Seq2SeqConfig: dropout must lie in [0, 1)");
    }
    if (input_length == 0 || output_length == 0) throw std::invalid_argument("Seq2SeqConfig: lengths must be positive");
}

MinMaxScaler::MinMaxScaler(double min, double max) : min_(min), max_(max) {
    if (!(std::isfinite(min) && std::isfinite(max) && max > min)) {
        throw std::invalid_argument("MinMaxScaler: need finite min < max");
    }
}

MinMaxScaler MinMaxScaler::fit(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("MinMaxScaler::fit: empty sample");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (!(*hi > *lo)) throw std::invalid_argument("MinMaxScaler::fit: constant sample");
    return {*lo, *hi};
}

std::vector<double> MinMaxScaler::scale(std::span<const double> x) const {
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [this](double v) { return scale(v); });
    return out;
}

std::vector<double> MinMaxScaler::descale(std::span<const double> x) const {
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), out.begin(), [this](double v) { return descale(v); });
    return out;
}

Seq2SeqModel Seq2SeqModel::zeros(const Seq2SeqConfig& config) {
    config.validate();
    Seq2SeqModel m;
    m.config = config;
    std::size_t in = 1;
    for (std::size_t l = 0; l < config.hidden.size(); ++l) {
        m.encoder.emplace_back(in, config.hidden[l], config.activations[l]);
        m.decoder.emplace_back(in, config.hidden[l], config.activations[l]);
        in = config.hidden[l];
    }
    const std::size_t h = config.hidden.back();
    const auto hi = static_cast<Eigen::Index>(h);
    m.attention = AttentionParams(config.attention, h);
    m.w_comb = Eigen::MatrixXd::Zero(hi, 2 * hi);
    m.b_comb = Eigen::VectorXd::Zero(hi);
    m.w_out = Eigen::VectorXd::Zero(hi);
    return m;
}

Seq2SeqModel Seq2SeqModel::initialize(const Seq2SeqConfig& config, std::uint64_t seed) {
    Seq2SeqModel m = zeros(config);
    std::mt19937_64 rng(seed);
    auto fill = [&rng](double* data, Eigen::Index count, Eigen::Index fan_in) {
        const double r = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> u(-r, r);
        for (Eigen::Index i = 0; i < count; ++i) data[i] = u(rng);
    };
    for (auto* stack : {&m.encoder, &m.decoder}) {
        for (auto& layer : *stack) {
            fill(layer.w.data(), layer.w.size(), layer.w.cols());
            layer.b.head(static_cast<Eigen::Index>(layer.hidden_size())).setOnes();
        }
    }
    const auto h = static_cast<Eigen::Index>(m.top_hidden());
    if (m.attention.w_a.size() > 0) fill(m.attention.w_a.data(), m.attention.w_a.size(), m.attention.w_a.cols());
    if (m.attention.v_a.size() > 0) fill(m.attention.v_a.data(), m.attention.v_a.size(), h);
    fill(m.w_comb.data(), m.w_comb.size(), 2 * h);
    fill(m.w_out.data(), m.w_out.size(), h);
    return m;
}

std::size_t Seq2SeqModel::parameter_count() const {
    std::size_t n = 0;
    for_each_tensor(*this, [&n](const std::string&, const double*, Eigen::Index r, Eigen::Index c) {
        n += static_cast<std::size_t>(r * c);
    });
    return n;
}

nlohmann::json Seq2SeqModel::to_json() const {
    nlohmann::json j;
    j["format"] = "loadcast-seq2seq";
    j["version"] = 1;
    auto& c = j["config"];
    c["hidden"] = config.hidden;
    std::vector<std::string> acts;
    for (auto a : config.activations) acts.push_back(to_string(a));
    c["activations"] = acts;
    c["dropout"] = config.dropout;
    c["input_length"] = config.input_length;
    c["output_length"] = config.output_length;
    c["attention"] = to_string(config.attention);
    j["scaler"] = {{"min", scaler.min()}, {"max", scaler.max()}};
    auto& tensors = j["tensors"] = nlohmann::json::array();
    for_each_tensor(*this, [&tensors](const std::string& name, const double* data, Eigen::Index rows,
                                      Eigen::Index cols) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(rows * cols));
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index k = 0; k < cols; ++k) values.push_back(data[k * rows + r]);
        }
        tensors.push_back({{"name", name}, {"rows", rows}, {"cols", cols}, {"values", values}});
    });
    return j;
}

Seq2SeqModel Seq2SeqModel::from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "loadcast-seq2seq" || j.at("version").get<int>() != 1) {
            throw std::invalid_argument("unsupported checkpoint format");
        }
        const auto& c = j.at("config");
        Seq2SeqConfig cfg;
        cfg.hidden = c.at("hidden").get<std::vector<std::size_t>>();
        cfg.activations.clear();
        for (const auto& a : c.at("activations")) cfg.activations.push_back(parse_activation(a.get<std::string>()));
        cfg.dropout = c.at("dropout").get<std::vector<double>>();
        cfg.input_length = c.at("input_length").get<std::size_t>();
        cfg.output_length = c.at("output_length").get<std::size_t>();
        cfg.attention = parse_attention(c.at("attention").get<std::string>());
        Seq2SeqModel m = zeros(cfg);
        m.scaler = MinMaxScaler(j.at("scaler").at("min").get<double>(), j.at("scaler").at("max").get<double>());

        std::map<std::string, const nlohmann::json*> stored;
        for (const auto& t : j.at("tensors")) stored[t.at("name").get<std::string>()] = &t;
        std::size_t seen = 0;
        for_each_tensor(m, [&](const std::string& name, double* data, Eigen::Index rows, Eigen::Index cols) {
            const auto it = stored.find(name);
            if (it == stored.end()) throw std::invalid_argument("missing tensor " + name);
            const auto& t = *it->second;
            const auto values = t.at("values").get<std::vector<double>>();
            if (t.at("rows").get<Eigen::Index>() != rows || t.at("cols").get<Eigen::Index>() != cols ||
                values.size() != static_cast<std::size_t>(rows * cols)) {
                throw std::invalid_argument("tensor " + name + " has shape " + std::to_string(t.at("rows").get<long>()) +
                                            "x" + std::to_string(t.at("cols").get<long>()) + ", expected " +
                                            std::to_string(rows) + "x" + std::to_string(cols));
            }
            for (Eigen::Index r = 0; r < rows; ++r) {
                for (Eigen::Index k = 0; k < cols; ++k) {
                    const double v = values[static_cast<std::size_t>(r * cols + k)];
                    if (!std::isfinite(v)) throw std::invalid_argument("tensor " + name + " has non-finite values");
                    data[k * rows + r] = v;
                }
            }
            ++seen;
        });
        if (seen != stored.size()) throw std::invalid_argument("checkpoint has unexpected tensors");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("Seq2SeqModel::from_json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("Seq2SeqModel::from_json: ") + e.what());
    }
}

void Seq2SeqModel::save(const std::filesystem::path& path) const { write_file_atomic(path, to_json().dump()); }

Seq2SeqModel Seq2SeqModel::load(const std::filesystem::path& path) {
    return from_json(nlohmann::json::parse(read_file(path)));
}

Encoding encode(const Seq2SeqModel& model, std::span<const double> input) {
    if (input.size() != model.config.input_length) {
        throw std::invalid_argument("encode: input has " + std::to_string(input.size()) + " steps, model expects " +
                                    std::to_string(model.config.input_length));
    }
    const std::size_t layers = model.encoder.size();
    Encoding e;
    e.final.resize(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        const auto h = static_cast<Eigen::Index>(model.encoder[l].hidden_size());
        e.final[l] = {Eigen::VectorXd::Zero(h), Eigen::VectorXd::Zero(h)};
    }
    const auto top = static_cast<Eigen::Index>(model.top_hidden());
    e.states.resize(top, static_cast<Eigen::Index>(input.size()));
    Eigen::VectorXd x(1);
    detail::StepCache cache;
    for (std::size_t t = 0; t < input.size(); ++t) {
        x(0) = input[t];
        Eigen::VectorXd in = x;
        for (std::size_t l = 0; l < layers; ++l) {
            detail::lstm_forward(model.encoder[l], e.final[l].h, e.final[l].c, in, cache);
            e.final[l] = {cache.h, cache.c};
            in = cache.h;
        }
        e.states.col(static_cast<Eigen::Index>(t)) = in;
    }
    e.context = e.final.back().h;
    e.last_input = input.back();
    return e;
}

std::vector<double> decode_forecast(const Seq2SeqModel& model, const Encoding& encoding, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("decode_forecast: steps must be positive");
    const std::size_t layers = model.decoder.size();
    if (encoding.final.size() != layers) throw std::invalid_argument("decode_forecast: encoding does not match model");
    std::vector<LstmState> state = encoding.final;
    const Eigen::MatrixXd proj = detail::attention_projection(model.attention, encoding.states);
    const auto h = static_cast<Eigen::Index>(model.top_hidden());
    Eigen::VectorXd joint(2 * h);
    detail::StepCache cache;
    detail::AttentionCache att;
    std::vector<double> out;
    out.reserve(steps);
    double prev = encoding.last_input;
    for (std::size_t k = 0; k < steps; ++k) {
        Eigen::VectorXd in(1);
        in(0) = prev;
        for (std::size_t l = 0; l < layers; ++l) {
            detail::lstm_forward(model.decoder[l], state[l].h, state[l].c, in, cache);
            state[l] = {cache.h, cache.c};
            in = cache.h;
        }
        detail::attend_forward(in, encoding.states, model.attention, proj, att);
        joint << att.context, in;
        const Eigen::VectorXd tilde = (model.w_comb * joint + model.b_comb).array().tanh();
        prev = model.w_out.dot(tilde) + model.b_out;
        out.push_back(prev);
    }
    return out;
}

std::vector<double> predict(const Seq2SeqModel& model, std::span<const double> history, std::size_t steps) {
    const std::size_t n = model.config.input_length;
    if (history.size() < n) {
        throw std::invalid_argument("predict: need " + std::to_string(n) + " history values, got " +
                                    std::to_string(history.size()));
    }
    const std::vector<double> scaled = model.scaler.scale(history.last(n));
    const auto y = decode_forecast(model, encode(model, scaled), steps == 0 ? model.config.output_length : steps);
    return model.scaler.descale(y);
}

std::vector<Window> make_windows(std::span<const double> series, std::size_t input_length, std::size_t output_length,
                                 std::size_t stride) {
    if (input_length == 0 || output_length == 0 || stride == 0) {
        throw std::invalid_argument("make_windows: lengths and stride must be positive");
    }
    if (series.size() < input_length + output_length) {
        throw std::invalid_argument("make_windows: series of " + std::to_string(series.size()) +
                                    " values is shorter than one window (" +
                                    std::to_string(input_length + output_length) + ")");
    }
    std::vector<Window> out;
    for (std::size_t s = 0; s + input_length + output_length <= series.size(); s += stride) {
        Window w;
        w.input.assign(series.begin() + static_cast<long>(s), series.begin() + static_cast<long>(s + input_length));
        w.target.assign(series.begin() + static_cast<long>(s + input_length),
                        series.begin() + static_cast<long>(s + input_length + output_length));
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace loadcast::seq2seq
