#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "loadcast/arima.hpp"
#include "loadcast/decomposition.hpp"
#include "loadcast/selection.hpp"
#include "loadcast/seq2seq.hpp"

using namespace loadcast;

namespace {

regression::DesignMatrix random_design(int n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
    Eigen::VectorXd y = x.col(0) * 2.0 - x.col(1) + Eigen::VectorXd::NullaryExpr(n, [&] { return z(rng); });
    std::vector<std::string> names;
    for (int j = 0; j < k; ++j) names.push_back("x" + std::to_string(j));
    return {names, x, y};
}

std::vector<double> arma_sample(std::size_t n) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    std::vector<double> u(n);
    double u1 = 0, u2 = 0, e1 = 0;
    for (auto& v : u) {
        const double e = z(rng);
        v = 0.5 * u1 - 0.3 * u2 + e + 0.4 * e1;
        u2 = u1;
        u1 = v;
        e1 = e;
    }
    return u;
}

}  // namespace

static void BM_AiccEnumeration(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const auto d = random_design(300, k, 1);
    const auto names = d.regressor_names();
    for (auto _ : state) {
        auto r = regression::rank_subsets_by_aicc(d, names, {}, 1000);
        benchmark::DoNotOptimize(r.best.data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << k));
}
BENCHMARK(BM_AiccEnumeration)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_OlsFit(benchmark::State& state) {
    const auto d = random_design(static_cast<int>(state.range(0)), 8, 2);
    for (auto _ : state) benchmark::DoNotOptimize(regression::ols_fit(d).rss);
}
BENCHMARK(BM_OlsFit)->Arg(100)->Arg(2000);

static void BM_KalmanLikelihood(benchmark::State& state) {
    const auto u = arma_sample(static_cast<std::size_t>(state.range(0)));
    const std::vector<double> ar{0.5, -0.3}, ma{0.4};
    for (auto _ : state) benchmark::DoNotOptimize(arima::arma_likelihood(u, ar, ma).log_likelihood);
}
BENCHMARK(BM_KalmanLikelihood)->Arg(365)->Arg(5000);

static void BM_ArimaFit(benchmark::State& state) {
    const auto u = arma_sample(2000);
    for (auto _ : state) benchmark::DoNotOptimize(arima::fit_arima(u, {2, 0, 1, {}, true}).log_likelihood);
}
BENCHMARK(BM_ArimaFit)->Unit(benchmark::kMillisecond);

static void BM_LstmGradient(benchmark::State& state) {
    seq2seq::Seq2SeqConfig c;
    c.hidden = {static_cast<std::size_t>(state.range(0))};
    c.activations = {seq2seq::Activation::tanh};
    c.dropout = {0.0};
    c.input_length = 28;
    c.output_length = 14;
    c.attention = seq2seq::AttentionMode::general;
    const auto m = seq2seq::Seq2SeqModel::initialize(c, 1);
    seq2seq::Window w;
    for (int i = 0; i < 28; ++i) w.input.push_back(0.5 + 0.3 * std::sin(i * 0.4));
    for (int i = 0; i < 14; ++i) w.target.push_back(0.5 + 0.3 * std::sin((28 + i) * 0.4));
    for (auto _ : state) benchmark::DoNotOptimize(seq2seq::loss_gradient(m, w).b_out);
}
BENCHMARK(BM_LstmGradient)->Arg(16)->Arg(118)->Unit(benchmark::kMicrosecond);

static void BM_Decompose(benchmark::State& state) {
    std::vector<double> v(8760 * 3);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 20000.0 + 1000.0 * std::sin(static_cast<double>(i) / 500.0);
    const HourlySeries s(Hour{first_day_of_year(2017)}, v);
    for (auto _ : state) benchmark::DoNotOptimize(decompose(s).short_term.size());
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
