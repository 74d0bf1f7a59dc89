#include <algorithm>
#include <filesystem>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "loadcast/atomic_file.hpp"
#include "loadcast/error.hpp"
#include "loadcast/features.hpp"
#include "loadcast/pipeline.hpp"

namespace loadcast::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void reject_unknown(const json& j, const std::string& section, std::initializer_list<const char*> known) {
    if (!j.is_object()) throw ConfigError(section + ": expected an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(section + ": unknown key '" + key + "'");
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& section) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(section + "." + key + ": " + e.what());
    }
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out, const std::string& section) {
    if (!j.contains(key) || j.at(key).is_null()) return;
    T v{};
    read(j, key, v, section);
    out = v;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    if (p.empty()) return {};
    fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

YearSpan read_span(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string(key) + ": required");
    const json& s = j.at(key);
    YearSpan span;
    try {
        if (s.is_array() && s.size() == 2) {
            span.first = s[0].get<int>();
            span.last = s[1].get<int>();
        } else if (s.is_object()) {
            span.first = s.at("first").get<int>();
            span.last = s.at("last").get<int>();
        } else {
            throw ConfigError(std::string(key) + ": expected [first, last]");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
    return span;
}

json orders_json(const std::optional<arima::OrderBounds>& o) {
    if (!o) return nullptr;
    return json::array({o->p_max, o->q_max});
}

std::optional<arima::OrderBounds> read_orders(const json& j, const char* key, const std::string& section) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const json& o = j.at(key);
    if (!o.is_array() || o.size() != 2 || !o[0].is_number_integer() || !o[1].is_number_integer()) {
        throw ConfigError(section + "." + key + ": expected [p, q]");
    }
    return arima::OrderBounds{o[0].get<int>(), o[1].get<int>()};
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& j, const fs::path& base_dir) {
    reject_unknown(j, "config",
                   {"data", "train", "test", "longterm", "midterm", "arima", "seq2seq", "shortterm", "hybrid",
                    "output_dir", "seed", "jobs", "repeat_climatology"});
    PipelineConfig c;

    if (!j.contains("data")) throw ConfigError("data: required");
    const json& d = j.at("data");
    reject_unknown(d, "data",
                   {"load", "temperature", "macro", "holidays", "yearly_load", "future_temperature", "future_macro"});
    auto path_of = [&](const char* key) {
        std::string s;
        read(d, key, s, "data");
        return resolve(base_dir, s);
    };
    c.data.load = path_of("load");
    c.data.temperature = path_of("temperature");
    c.data.macro = path_of("macro");
    c.data.holidays = path_of("holidays");
    c.data.yearly_load = path_of("yearly_load");
    c.data.future_temperature = path_of("future_temperature");
    c.data.future_macro = path_of("future_macro");

    c.train = read_span(j, "train");
    c.test = read_span(j, "test");

    if (j.contains("longterm")) {
        const json& l = j.at("longterm");
        const std::string s = "longterm";
        reject_unknown(l, s,
                       {"indicators", "forced", "keep_n", "cv_folds", "cull_factor", "check_diagnostics",
                        "normality_alpha", "max_vif", "first_year", "holdout"});
        read(l, "indicators", c.longterm.indicators, s);
        read(l, "forced", c.longterm.forced, s);
        read(l, "keep_n", c.longterm.keep_n, s);
        read(l, "cv_folds", c.longterm.cv_folds, s);
        read(l, "cull_factor", c.longterm.cull_factor, s);
        read(l, "check_diagnostics", c.longterm.check_diagnostics, s);
        read(l, "normality_alpha", c.longterm.normality_alpha, s);
        read(l, "max_vif", c.longterm.max_vif, s);
        read_opt(l, "first_year", c.longterm.first_year, s);
        read(l, "holdout", c.longterm.holdout, s);
    }
    if (j.contains("midterm")) {
        const json& m = j.at("midterm");
        const std::string s = "midterm";
        reject_unknown(m, s, {"mode", "months", "candidates", "t_ref"});
        read(m, "mode", c.midterm.mode, s);
        read(m, "months", c.midterm.months, s);
        read(m, "candidates", c.midterm.candidates, s);
        read(m, "t_ref", c.midterm.t_ref, s);
    }
    if (c.midterm.months.empty()) c.midterm.months = features::default_midterm_months();
    if (j.contains("arima")) {
        const json& a = j.at("arima");
        const std::string s = "arima";
        reject_unknown(a, s,
                       {"max_lag", "max_p", "max_q", "fixed_orders", "d", "css_only", "max_iterations",
                        "screen_exogenous", "alpha"});
        read(a, "max_lag", c.arima.max_lag, s);
        read_opt(a, "max_p", c.arima.max_p, s);
        read_opt(a, "max_q", c.arima.max_q, s);
        c.arima.fixed_orders = read_orders(a, "fixed_orders", s);
        read_opt(a, "d", c.arima.d, s);
        read(a, "css_only", c.arima.css_only, s);
        read(a, "max_iterations", c.arima.max_iterations, s);
        read(a, "screen_exogenous", c.arima.screen_exogenous, s);
        read(a, "alpha", c.arima.alpha, s);
    }
    if (j.contains("seq2seq")) {
        const json& q = j.at("seq2seq");
        const std::string s = "seq2seq";
        reject_unknown(q, s,
                       {"enabled", "hidden", "activations", "dropout", "input_length", "output_length", "attention",
                        "epochs", "batch_size", "learning_rate", "beta1", "beta2", "epsilon", "shuffle", "stride"});
        auto& arch = c.seq2seq.architecture;
        auto& tr = c.seq2seq.train;
        read(q, "enabled", c.seq2seq.enabled, s);
        read(q, "hidden", arch.hidden, s);
        if (q.contains("activations")) {
            std::vector<std::string> names;
            read(q, "activations", names, s);
            arch.activations.clear();
            try {
                for (const auto& n : names) arch.activations.push_back(seq2seq::parse_activation(n));
            } catch (const std::exception& e) {
                throw ConfigError(s + ".activations: " + e.what());
            }
        }
        read(q, "dropout", arch.dropout, s);
        read(q, "input_length", arch.input_length, s);
        read(q, "output_length", arch.output_length, s);
        if (q.contains("attention")) {
            std::string mode;
            read(q, "attention", mode, s);
            try {
                arch.attention = seq2seq::parse_attention(mode);
            } catch (const std::exception& e) {
                throw ConfigError(s + ".attention: " + e.what());
            }
        }
        read(q, "epochs", tr.epochs, s);
        read(q, "batch_size", tr.batch_size, s);
        read(q, "learning_rate", tr.learning_rate, s);
        read(q, "beta1", tr.beta1, s);
        read(q, "beta2", tr.beta2, s);
        read(q, "epsilon", tr.epsilon, s);
        read(q, "shuffle", tr.shuffle, s);
        read(q, "stride", c.seq2seq.stride, s);
    }
    if (j.contains("shortterm")) {
        const json& t = j.at("shortterm");
        const std::string s = "shortterm";
        reject_unknown(t, s, {"max_p", "max_q", "max_lag", "holdout_hours", "fixed_orders", "css_only", "max_iterations"});
        read(t, "max_p", c.shortterm.max_p, s);
        read(t, "max_q", c.shortterm.max_q, s);
        read(t, "max_lag", c.shortterm.max_lag, s);
        read(t, "holdout_hours", c.shortterm.holdout_hours, s);
        c.shortterm.fixed_orders = read_orders(t, "fixed_orders", s);
        read(t, "css_only", c.shortterm.fit.css_only, s);
        read(t, "max_iterations", c.shortterm.fit.max_iterations, s);
    }
    if (j.contains("hybrid")) {
        const json& h = j.at("hybrid");
        const std::string s = "hybrid";
        reject_unknown(h, s, {"variants", "residual_sum", "variant"});
        try {
            if (h.contains("variants")) {
                c.hybrid.variants.clear();
                for (const auto& v : h.at("variants")) c.hybrid.variants.push_back(hybrid::parse_variant(v.get<std::string>()));
            }
            if (h.contains("variant") && !h.at("variant").is_null()) {
                c.hybrid.variant = hybrid::parse_variant(h.at("variant").get<std::string>());
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(s + ": " + e.what());
        }
        std::string kind = "absolute";
        read(h, "residual_sum", kind, s);
        if (kind == "absolute") {
            c.hybrid.residual_sum = hybrid::ResidualSum::absolute;
        } else if (kind == "squared") {
            c.hybrid.residual_sum = hybrid::ResidualSum::squared;
        } else {
            throw ConfigError("hybrid.residual_sum: expected 'absolute' or 'squared'");
        }
    }
    std::string out = "out";
    read(j, "output_dir", out, "config");
    c.output_dir = resolve(base_dir, out);
    read(j, "seed", c.seed, "config");
    read(j, "jobs", c.jobs, "config");
    read(j, "repeat_climatology", c.repeat_climatology, "config");
    c.validate();
    return c;
}

void PipelineConfig::validate() const {
    if (data.load.empty()) throw ConfigError("data.load: required");
    if (data.temperature.empty()) throw ConfigError("data.temperature: required");
    if (data.macro.empty()) throw ConfigError("data.macro: required");
    if (train.first > train.last) throw ConfigError("train: first year after last year");
    if (test.first > test.last) throw ConfigError("test: first year after last year");
    if (train.last >= test.first) throw ConfigError("train range must precede the test range");
    if (test.first != train.last + 1) throw ConfigError("test range must start the year after the train range");
    if (longterm.cull_factor < 1.0) throw ConfigError("longterm.cull_factor: must be >= 1");
    if (longterm.keep_n == 0) throw ConfigError("longterm.keep_n: must be positive");
    if (longterm.cv_folds < 2) throw ConfigError("longterm.cv_folds: must be >= 2");
    if (longterm.holdout != "test" && longterm.holdout != "cv") {
        throw ConfigError("longterm.holdout: expected 'test' or 'cv'");
    }
    if (midterm.mode != "search" && midterm.mode != "fixed") {
        throw ConfigError("midterm.mode: expected 'search' or 'fixed'");
    }
    for (unsigned m : midterm.months) {
        if (m < 1 || m > 11) throw ConfigError("midterm.months: month dummies run from 1 to 11");
    }
    if (arima.max_lag < 1) throw ConfigError("arima.max_lag: must be positive");
    if ((arima.max_p && *arima.max_p < 0) || (arima.max_q && *arima.max_q < 0)) {
        throw ConfigError("arima.max_p/max_q: must be non-negative");
    }
    if (arima.fixed_orders && (arima.fixed_orders->p_max < 0 || arima.fixed_orders->q_max < 0)) {
        throw ConfigError("arima.fixed_orders: orders must be non-negative");
    }
    if (arima.d && (*arima.d < 0 || *arima.d > 2)) throw ConfigError("arima.d: must be 0, 1 or 2");
    if (arima.max_iterations < 1) throw ConfigError("arima.max_iterations: must be positive");
    try {
        seq2seq.architecture.validate();
        seq2seq.train.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("seq2seq: ") + e.what());
    }
    if (seq2seq.stride == 0) throw ConfigError("seq2seq.stride: must be positive");
    if (hybrid.variants.empty()) throw ConfigError("hybrid.variants: at least one variant");
    if (!seq2seq.enabled) {
        auto needs_lstm = [](hybrid::Variant v) {
            return v == hybrid::Variant::lm_lstm || v == hybrid::Variant::lm_arima_lstm;
        };
        if (std::any_of(hybrid.variants.begin(), hybrid.variants.end(), needs_lstm) ||
            (hybrid.variant && needs_lstm(*hybrid.variant))) {
            throw ConfigError("hybrid: LSTM variants requested with seq2seq.enabled = false");
        }
    }
    if (jobs == 0) throw ConfigError("jobs: must be positive");
}

json PipelineConfig::to_json() const {
    json j;
    j["data"] = {{"load", data.load.string()},
                 {"temperature", data.temperature.string()},
                 {"macro", data.macro.string()},
                 {"holidays", data.holidays.string()},
                 {"yearly_load", data.yearly_load.string()},
                 {"future_temperature", data.future_temperature.string()},
                 {"future_macro", data.future_macro.string()}};
    j["train"] = json::array({train.first, train.last});
    j["test"] = json::array({test.first, test.last});
    j["longterm"] = {{"indicators", longterm.indicators},
                     {"forced", longterm.forced},
                     {"keep_n", longterm.keep_n},
                     {"cv_folds", longterm.cv_folds},
                     {"cull_factor", longterm.cull_factor},
                     {"check_diagnostics", longterm.check_diagnostics},
                     {"normality_alpha", longterm.normality_alpha},
                     {"max_vif", longterm.max_vif},
                     {"first_year", longterm.first_year ? json(*longterm.first_year) : json(nullptr)},
                     {"holdout", longterm.holdout}};
    j["midterm"] = {{"mode", midterm.mode},
                    {"months", midterm.months},
                    {"candidates", midterm.candidates},
                    {"t_ref", midterm.t_ref}};
    j["arima"] = {{"max_lag", arima.max_lag},
                  {"max_p", arima.max_p ? json(*arima.max_p) : json(nullptr)},
                  {"max_q", arima.max_q ? json(*arima.max_q) : json(nullptr)},
                  {"fixed_orders", orders_json(arima.fixed_orders)},
                  {"d", arima.d ? json(*arima.d) : json(nullptr)},
                  {"css_only", arima.css_only},
                  {"max_iterations", arima.max_iterations},
                  {"screen_exogenous", arima.screen_exogenous},
                  {"alpha", arima.alpha}};
    const auto& arch = seq2seq.architecture;
    const auto& tr = seq2seq.train;
    std::vector<std::string> acts;
    for (auto a : arch.activations) acts.push_back(seq2seq::to_string(a));
    j["seq2seq"] = {{"enabled", seq2seq.enabled},
                    {"hidden", arch.hidden},
                    {"activations", acts},
                    {"dropout", arch.dropout},
                    {"input_length", arch.input_length},
                    {"output_length", arch.output_length},
                    {"attention", seq2seq::to_string(arch.attention)},
                    {"epochs", tr.epochs},
                    {"batch_size", tr.batch_size},
                    {"learning_rate", tr.learning_rate},
                    {"beta1", tr.beta1},
                    {"beta2", tr.beta2},
                    {"epsilon", tr.epsilon},
                    {"shuffle", tr.shuffle},
                    {"stride", seq2seq.stride}};
    j["shortterm"] = {{"max_p", shortterm.max_p},
                      {"max_q", shortterm.max_q},
                      {"max_lag", shortterm.max_lag},
                      {"holdout_hours", shortterm.holdout_hours},
                      {"fixed_orders", orders_json(shortterm.fixed_orders)},
                      {"css_only", shortterm.fit.css_only},
                      {"max_iterations", shortterm.fit.max_iterations}};
    std::vector<std::string> variants;
    for (auto v : hybrid.variants) variants.push_back(hybrid::to_string(v));
    j["hybrid"] = {{"variants", variants},
                   {"residual_sum", hybrid.residual_sum == hybrid::ResidualSum::absolute ? "absolute" : "squared"},
                   {"variant", hybrid.variant ? json(hybrid::to_string(*hybrid.variant)) : json(nullptr)}};
    j["output_dir"] = output_dir.string();
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["repeat_climatology"] = repeat_climatology;
    return j;
}

PipelineConfig load_config(const fs::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": malformed JSON: " + e.what());
    }
    return PipelineConfig::from_json(j, path.parent_path());
}

// Bundle layout: manifest.json plus one JSON file per component.

namespace {

constexpr const char* kFormat = "loadcast-bundle";
constexpr int kVersion = 1;

json span_json(const YearSpan& s) { return json::array({s.first, s.last}); }

YearSpan span_from(const json& j) { return YearSpan{j.at(0).get<int>(), j.at(1).get<int>()}; }

}  // namespace

void save_bundle(const Bundle& b, const fs::path& dir) {
    json manifest{{"format", kFormat},
                  {"version", kVersion},
                  {"train", span_json(b.train)},
                  {"test", span_json(b.test)},
                  {"origin", format_iso_date(b.origin())},
                  {"t_ref", b.t_ref},
                  {"hourly_scale", b.hourly_scale},
                  {"mid_scale", b.mid_scale},
                  {"plan",
                   {{"variant", hybrid::to_string(b.plan.variant)},
                    {"arima_weight", b.plan.arima_weight},
                    {"lstm_weight", b.plan.lstm_weight}}},
                  {"has_lstm", b.lstm.has_value()}};
    json longterm{{"indicators", b.long_indicators}, {"model", regression::to_json(b.long_model)}};
    json midterm{{"model", regression::to_json(b.mid_model)}};

    write_file_atomic(dir / "longterm.json", longterm.dump(2));
    write_file_atomic(dir / "midterm_lm.json", midterm.dump(2));
    write_file_atomic(dir / "midterm_arima.json", b.arima.to_json().dump(2));
    if (b.lstm) {
        json lstm{{"history", b.lstm_history}, {"model", b.lstm->to_json()}};
        write_file_atomic(dir / "midterm_lstm.json", lstm.dump());
    }
    write_file_atomic(dir / "shortterm.json", b.short_model.to_json().dump());
    // Manifest last: its presence marks a complete bundle.
    write_file_atomic(dir / "manifest.json", manifest.dump(2));
}

Bundle load_bundle(const fs::path& dir) {
    auto load_json = [&](const char* name) {
        const fs::path p = dir / name;
        try {
            return json::parse(read_file(p));
        } catch (const json::parse_error& e) {
            throw DataError(p.string() + ": malformed JSON: " + e.what());
        }
    };
    const json manifest = load_json("manifest.json");
    Bundle b;
    try {
        if (manifest.at("format").get<std::string>() != kFormat || manifest.at("version").get<int>() != kVersion) {
            throw DataError((dir / "manifest.json").string() + ": not a version-1 model bundle");
        }
        b.train = span_from(manifest.at("train"));
        b.test = span_from(manifest.at("test"));
        b.t_ref = manifest.at("t_ref").get<double>();
        b.hourly_scale = manifest.at("hourly_scale").get<double>();
        b.mid_scale = manifest.at("mid_scale").get<double>();
        const json& plan = manifest.at("plan");
        b.plan.variant = hybrid::parse_variant(plan.at("variant").get<std::string>());
        b.plan.arima_weight = plan.at("arima_weight").get<double>();
        b.plan.lstm_weight = plan.at("lstm_weight").get<double>();

        const json longterm = load_json("longterm.json");
        b.long_indicators = longterm.at("indicators").get<std::vector<std::string>>();
        b.long_model = regression::linear_model_from_json(longterm.at("model"));
        b.mid_model = regression::linear_model_from_json(load_json("midterm_lm.json").at("model"));
        b.arima = arima::ArimaModel::from_json(load_json("midterm_arima.json"));
        if (manifest.at("has_lstm").get<bool>()) {
            const json lstm = load_json("midterm_lstm.json");
            b.lstm_history = lstm.at("history").get<std::vector<double>>();
            b.lstm = seq2seq::Seq2SeqModel::from_json(lstm.at("model"));
        }
        b.short_model = shortterm::ProfileModelSet::from_json(load_json("shortterm.json"));
    } catch (const json::exception& e) {
        throw DataError(dir.string() + ": invalid model bundle: " + e.what());
    }
    return b;
}

}  // namespace loadcast::pipeline
