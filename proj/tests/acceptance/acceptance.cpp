// Acceptance runner: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance [--only 1,5,12] [--known-failure 4] [--data-config cfg.json]
//
// Exit status counts failures, minus those listed with --known-failure (they
// still print FAIL). Criterion 13 needs real data: --data-config or
// LOADCAST_DATA_CONFIG, otherwise it is skipped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "loadcast/arima.hpp"
#include "loadcast/arima_search.hpp"
#include "loadcast/atomic_file.hpp"
#include "loadcast/correlogram.hpp"
#include "loadcast/decomposition.hpp"
#include "loadcast/error.hpp"
#include "loadcast/hybrid.hpp"
#include "loadcast/pipeline.hpp"
#include "loadcast/regression.hpp"
#include "loadcast/selection.hpp"
#include "loadcast/seq2seq.hpp"
#include "loadcast/stationarity.hpp"
#include "synthetic.hpp"
#include "tempdir.hpp"

using namespace loadcast;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
    Status status = Status::fail;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome verdict(bool ok, std::string detail) { return {ok ? Status::pass : Status::fail, std::move(detail)}; }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------- 1

Outcome decomposition_identity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> year(1995, 2035);
    std::uniform_int_distribution<int> span(1, 3);
    std::uniform_real_distribution<double> level(500.0, 30000.0);
    std::normal_distribution<double> z;
    double worst = 0.0;
    std::size_t hours = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const int y0 = year(rng);
        const int ny = span(rng);
        const Hour start{first_day_of_year(y0)};
        const auto n = static_cast<std::size_t>((Hour{first_day_of_year(y0 + ny)} - start).count());
        const double base = level(rng);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double day = static_cast<double>(i / 24);
            v[i] = base * (1.0 + 0.1 * std::sin(day / 58.0) + 0.05 * std::sin(static_cast<double>(i % 24) / 3.8)) +
                   0.02 * base * z(rng);
        }
        const HourlySeries s(start, std::move(v));
        const auto back = recompose(decompose(s));
        if (back.size() != s.size() || back.start() != s.start()) return verdict(false, "recomposed span differs");
        for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back[i] - s[i]) / std::abs(s[i]));
        hours += s.size();
    }
    const double secs = seconds_since(t0);
    return verdict(worst <= 1e-9 && secs < 5.0,
                   fmt("100 series, %zu hours, max rel err %.2e (<= 1e-9), %.2f s (< 5 s)", hours, worst, secs));
}

// ---------------------------------------------------------------- 2

Outcome ols_oracle() {
    std::mt19937_64 rng(2002);
    std::uniform_int_distribution<int> kd(1, 8);
    std::normal_distribution<double> z;
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        const int k = kd(rng);
        const int n = std::uniform_int_distribution<int>(k + 3, 100)(rng);
        Eigen::MatrixXd x(n, k);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
        Eigen::VectorXd y(n);
        for (int r = 0; r < n; ++r) y[r] = 1.0 + x.row(r).sum() * 0.5 + z(rng);
        std::vector<std::string> names;
        for (int c = 0; c < k; ++c) names.push_back("v" + std::to_string(c));
        const auto m = regression::ols_fit(regression::DesignMatrix(names, x, y));

        // normal equations on [1 X]
        Eigen::MatrixXd a(n, k + 1);
        a.col(0).setOnes();
        a.rightCols(k) = x;
        const Eigen::VectorXd beta = (a.transpose() * a).ldlt().solve(a.transpose() * y);
        for (int j = 0; j <= k; ++j) {
            worst = std::max(worst, std::abs(m.coefficients[j] - beta[j]) / std::max(1.0, std::abs(beta[j])));
        }
    }
    return verdict(worst <= 1e-8, fmt("200 instances, max coefficient deviation %.2e (<= 1e-8)", worst));
}

// ---------------------------------------------------------------- 3

struct OracleFit {
    double aicc;
    double cv_rmse;
    double cv_mae;
    double test_max;
    std::vector<int> cols;
};

Eigen::VectorXd ne_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
    return (a.transpose() * a).ldlt().solve(a.transpose() * y);
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x, const std::vector<int>& cols) {
    Eigen::MatrixXd a(x.rows(), static_cast<Eigen::Index>(cols.size()) + 1);
    a.col(0).setOnes();
    for (std::size_t j = 0; j < cols.size(); ++j) a.col(static_cast<Eigen::Index>(j) + 1) = x.col(cols[j]);
    return a;
}

// The three staged rules applied directly: AICc (K = coefficients + 1) over
// every subset, keep_n best, contiguous 5-fold CV with the first n % 5 folds one
// row longer, cull above 1.5x the stage minimum of either CV metric, then the
// smallest maximum absolute error on the held-out rows.
std::vector<int> brute_force_winner(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::MatrixXd& xt,
                                    const Eigen::VectorXd& yt, std::size_t keep_n) {
    const int k = static_cast<int>(x.cols());
    const auto n = static_cast<double>(x.rows());
    std::vector<OracleFit> all;
    for (int mask = 0; mask < (1 << k); ++mask) {
        OracleFit f{};
        for (int j = 0; j < k; ++j)
            if (mask >> j & 1) f.cols.push_back(j);
        const auto a = with_intercept(x, f.cols);
        const double rss = (y - a * ne_solve(a, y)).squaredNorm();
        const double kk = static_cast<double>(a.cols()) + 1.0;
        const double llf = -0.5 * n * (std::log(2.0 * M_PI * rss / n) + 1.0);
        f.aicc = -2.0 * llf + 2.0 * kk + 2.0 * kk * (kk + 1.0) / (n - kk - 1.0);
        all.push_back(std::move(f));
    }
    std::stable_sort(all.begin(), all.end(), [](const OracleFit& a, const OracleFit& b) { return a.aicc < b.aicc; });
    if (all.size() > keep_n) all.resize(keep_n);

    const Eigen::Index rows = x.rows();
    const Eigen::Index folds = 5;
    for (auto& f : all) {
        const auto a = with_intercept(x, f.cols);
        Eigen::Index begin = 0;
        for (Eigen::Index fi = 0; fi < folds; ++fi) {
            const Eigen::Index size = rows / folds + (fi < rows % folds ? 1 : 0);
            Eigen::MatrixXd at(rows - size, a.cols());
            Eigen::VectorXd ytr(rows - size);
            at << a.topRows(begin), a.bottomRows(rows - begin - size);
            ytr << y.head(begin), y.tail(rows - begin - size);
            const Eigen::VectorXd err = y.segment(begin, size) - a.middleRows(begin, size) * ne_solve(at, ytr);
            f.cv_rmse += std::sqrt(err.squaredNorm() / static_cast<double>(size)) / folds;
            f.cv_mae += err.cwiseAbs().mean() / folds;
            begin += size;
        }
        const auto b = ne_solve(a, y);
        f.test_max = (yt - with_intercept(xt, f.cols) * b).cwiseAbs().maxCoeff();
    }
    double min_rmse = INFINITY, min_mae = INFINITY;
    for (const auto& f : all) {
        min_rmse = std::min(min_rmse, f.cv_rmse);
        min_mae = std::min(min_mae, f.cv_mae);
    }
    const OracleFit* best = nullptr;
    for (const auto& f : all) {
        if (f.cv_rmse > 1.5 * min_rmse || f.cv_mae > 1.5 * min_mae) continue;
        if (!best || f.test_max < best->test_max) best = &f;
    }
    return best->cols;
}

Outcome subset_search_oracle() {
    int agree = 0;
    std::string first_miss;
    for (int seed = 0; seed < 50; ++seed) {
        std::mt19937_64 rng(3000 + seed);
        std::normal_distribution<double> z;
        const int k = 6 + seed % 5;  // 6..10 candidates
        const int n = 100;
        Eigen::MatrixXd x(n, k);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
        std::vector<double> b(k);
        for (auto& v : b) v = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? 0.0 : 0.4 * z(rng);
        Eigen::VectorXd y(n);
        for (int r = 0; r < n; ++r) {
            y[r] = 2.0 + z(rng);
            for (int j = 0; j < k; ++j) y[r] += b[j] * x(r, j);
        }
        std::vector<std::string> names;
        for (int j = 0; j < k; ++j) names.push_back("c" + std::to_string(j));

        const int nt = 80;
        regression::SubsetSearchConfig cfg;
        cfg.check_diagnostics = false;
        const regression::DesignMatrix full(names, x, y);
        cfg.test = full.row_block(nt, n - nt);
        const auto rep = regression::subset_search(full.row_block(0, nt), cfg);

        const auto oracle = brute_force_winner(x.topRows(nt), y.head(nt), x.bottomRows(n - nt), y.tail(n - nt), cfg.keep_n);
        std::set<std::string> want;
        for (int c : oracle) want.insert(names[c]);
        const auto& got = rep.winning().regressors;
        if (std::set<std::string>(got.begin(), got.end()) == want) {
            ++agree;
        } else if (first_miss.empty()) {
            first_miss = fmt(", first mismatch seed %d", seed);
        }
    }
    return verdict(agree == 50, fmt("staged search equals brute force on %d/50 instances (6-10 candidates)%s", agree,
                                    first_miss.c_str()));
}

// ---------------------------------------------------------------- 4

Outcome synthetic_recovery() {
    int exact = 0, aicc_exact = 0, contains = 0, no_winner = 0;
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(4000 + seed);
        std::normal_distribution<double> z;
        const int n = 200;
        Eigen::MatrixXd x(n, 8);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(rng);
        Eigen::VectorXd y(n);
        for (int r = 0; r < n; ++r) y[r] = 2.0 * x(r, 0) - 3.0 * x(r, 2) + 0.1 * z(rng);
        std::vector<std::string> names;
        for (int j = 1; j <= 8; ++j) names.push_back("x" + std::to_string(j));
        const regression::DesignMatrix d(names, x, y);

        regression::SubsetSearchConfig cfg;  // no test block: survivors ranked by CV-RMSE
        regression::SelectionReport rep;
        try {
            rep = regression::subset_search(d, cfg);
        } catch (const regression::SelectionError& e) {
            // every survivor shares the same noise; a Shapiro rejection sinks them all
            ++no_winner;
            const auto& top = e.report().candidates.front().regressors;
            aicc_exact += std::set<std::string>(top.begin(), top.end()) == std::set<std::string>{"x1", "x3"};
            continue;
        }
        const auto& w = rep.winning().regressors;
        const std::set<std::string> got(w.begin(), w.end());
        exact += got == std::set<std::string>{"x1", "x3"};
        contains += got.count("x1") && got.count("x3");
        const auto& top = rep.candidates.front().regressors;
        aicc_exact += std::set<std::string>(top.begin(), top.end()) == std::set<std::string>{"x1", "x3"};
    }
    return verdict(exact >= 95, fmt("true subset {x1,x3} wins %d/100 (need 95); AICc-best is exact in %d/100; "
                                    "winner contains x1 and x3 in %d/100; no survivor passed diagnostics in %d/100",
                                    exact, aicc_exact, contains, no_winner));
}

// ---------------------------------------------------------------- 5

std::vector<double> simulate_arma(std::mt19937_64& rng, std::size_t n, std::vector<double> phi, std::vector<double> theta,
                                  double sigma = 1.0, std::size_t burn = 500) {
    std::normal_distribution<double> z(0.0, sigma);
    std::vector<double> u(n + burn, 0.0), e(n + burn, 0.0);
    for (std::size_t t = 0; t < u.size(); ++t) {
        e[t] = z(rng);
        double v = e[t];
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (t > i) v += phi[i] * u[t - 1 - i];
        for (std::size_t j = 0; j < theta.size(); ++j)
            if (t > j) v += theta[j] * e[t - 1 - j];
        u[t] = v;
    }
    return {u.begin() + static_cast<std::ptrdiff_t>(burn), u.end()};
}

Outcome arima_estimation() {
    int within = 0, ll_ok = 0;
    double worst_gap = INFINITY;
    const auto t0 = Clock::now();
    for (int seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(5000 + seed);
        const auto y = simulate_arma(rng, 5000, {0.5, -0.3}, {0.4});
        const arima::ArimaSpec spec{2, 0, 1, {}, true};
        arima::FitOptions css;
        css.css_only = true;
        const auto mc = arima::fit_arima(y, spec, nullptr, css);
        arima::ArimaModel m;
        try {
            m = arima::fit_arima(y, spec);
        } catch (const arima::ArimaFitError& e) {
            m = e.fallback();
        }
        within += std::abs(m.ar[0] - 0.5) <= 0.05 && std::abs(m.ar[1] + 0.3) <= 0.05 && std::abs(m.ma[0] - 0.4) <= 0.05;

        // exact likelihood at the MLE optimum vs at the CSS optimum
        auto exact_ll = [&](const arima::ArimaModel& mm) {
            std::vector<double> u(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) u[i] = y[i] - mm.constant;
            return arima::arma_likelihood(u, mm.ar, mm.ma).log_likelihood;
        };
        const double gap = exact_ll(m) - exact_ll(mc);
        worst_gap = std::min(worst_gap, gap);
        ll_ok += gap >= -1e-6;
    }
    return verdict(within >= 90 && ll_ok == 100,
                   fmt("estimates within 0.05 in %d/100 (need 90); exact LL at MLE >= at CSS in %d/100 "
                       "(min gain %.3g); %.1f s",
                       within, ll_ok, worst_gap, seconds_since(t0)));
}

// ---------------------------------------------------------------- 6

Outcome d_selection() {
    int walk = 0, ar = 0, twice = 0;
    for (int rep = 0; rep < 20; ++rep) {
        std::mt19937_64 rng(6000 + rep);
        std::normal_distribution<double> z;
        const std::size_t n = 500;
        std::vector<double> w(n), dd(n);
        double acc = 0.0, acc2 = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            acc += z(rng);
            w[t] = acc;
            acc2 += w[t];
            dd[t] = acc2;
        }
        const auto a = simulate_arma(rng, n, {0.5}, {});  // stationary start via burn-in
        walk += arima::select_d(w) == 1;
        ar += arima::select_d(a) == 0;
        twice += arima::select_d(dd) == 2;
    }
    return verdict(walk >= 18 && ar >= 18 && twice >= 18,
                   fmt("random walk d=1 %d/20, AR(1) d=0 %d/20, double-integrated d=2 %d/20 (need 18 each)", walk, ar,
                       twice));
}

// ---------------------------------------------------------------- 7

Outcome forecast_convergence() {
    double worst_ratio = 0.0;
    int nested = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng(7000 + rep);
        auto y = simulate_arma(rng, 1000, {0.6}, {}, 2.0);
        for (auto& v : y) v += 50.0;
        const auto m = arima::fit_arima(y, {1, 0, 0, {}, true});
        const std::vector<double> levels{0.8, 0.95};
        const auto f = arima::forecast(m, 300, levels);
        const double sd = std::sqrt(m.sigma2);
        for (std::size_t h = 99; h < f.horizon(); ++h) {
            worst_ratio = std::max(worst_ratio, std::abs(f.point[h] - m.constant) / sd);
        }
        bool ok = true;
        for (std::size_t h = 0; h < f.horizon(); ++h) {
            ok = ok && f.lower[1][h] <= f.lower[0][h] && f.upper[1][h] >= f.upper[0][h];
        }
        nested += ok;
    }
    return verdict(worst_ratio <= 0.01 && nested == reps,
                   fmt("%d fitted AR(1): max |point - mean| / sigma for h >= 100 is %.2e (<= 0.01); 95%% contains 80%% "
                       "in %d/%d",
                       reps, worst_ratio, nested, reps));
}

// ---------------------------------------------------------------- 8

Outcome lstm_gradient_check() {
    double worst = 0.0;
    std::size_t checks = 0;
    const seq2seq::Window w{{0.2, 0.7, 0.4, 0.9, 0.1, 0.5}, {0.6, 0.3, 0.8, 0.2}};
    for (auto mode : {seq2seq::AttentionMode::dot, seq2seq::AttentionMode::general, seq2seq::AttentionMode::concat}) {
        for (std::size_t layers = 1; layers <= 2; ++layers) {
            seq2seq::Seq2SeqConfig c;
            c.hidden.assign(layers, 4);
            c.activations.assign(layers, seq2seq::Activation::tanh);
            if (layers == 2) c.activations[1] = seq2seq::Activation::sigmoid;
            c.dropout.assign(layers, 0.0);
            c.input_length = 6;
            c.output_length = 4;
            c.attention = mode;
            const auto m = seq2seq::Seq2SeqModel::initialize(c, 80 + layers);
            const auto gc = seq2seq::gradient_check(m, w);
            worst = std::max(worst, gc.max_relative_error);
            checks += gc.parameters;
        }
    }
    return verdict(worst < 1e-4, fmt("hidden 4, T = 6, 3 attention modes x 1-2 layers, %zu parameters: max rel err "
                                     "%.2e (< 1e-4)",
                                     checks, worst));
}

// ---------------------------------------------------------------- 9

Outcome attention_normalization() {
    std::mt19937_64 rng(9009);
    std::normal_distribution<double> z(0.0, 4.0);
    double worst = 0.0;
    double min_w = INFINITY;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto mode = static_cast<seq2seq::AttentionMode>(rep % 3);
        const Eigen::Index hdim = 1 + rep % 8;
        const Eigen::Index steps = 1 + (rep * 7) % 30;
        seq2seq::AttentionParams p(mode, static_cast<std::size_t>(hdim));
        for (Eigen::Index i = 0; i < p.w_a.size(); ++i) p.w_a.data()[i] = z(rng);
        for (Eigen::Index i = 0; i < p.v_a.size(); ++i) p.v_a.data()[i] = z(rng);
        Eigen::MatrixXd hs(hdim, steps);
        for (Eigen::Index i = 0; i < hs.size(); ++i) hs.data()[i] = z(rng);
        Eigen::VectorXd ht(hdim);
        for (Eigen::Index i = 0; i < hdim; ++i) ht(i) = z(rng);
        const auto a = seq2seq::attend(ht, hs, p);
        worst = std::max(worst, std::abs(a.alignment.sum() - 1.0));
        min_w = std::min(min_w, a.alignment.minCoeff());
    }
    return verdict(worst <= 1e-6 && min_w >= 0.0,
                   fmt("1000 alignments: max |sum - 1| %.2e (<= 1e-6), min weight %.3g (>= 0)", worst, min_w));
}

// ---------------------------------------------------------------- 10

struct HybridSeed {
    double arima_ratio;
    double lstm_ratio;
    double seconds;
};

HybridSeed hybrid_seed(int seed) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(10000 + seed);
    std::normal_distribution<double> z;
    const std::size_t n_train = 730, horizon = 14, n = n_train + horizon;

    // planted daily load: linear in a seasonal driver plus a stationary AR(3) residual
    const auto r = simulate_arma(rng, n, {0.5, 0.2, 0.15}, {}, 25.0);
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXd y(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double season = std::cos(2.0 * M_PI * static_cast<double>(t) / 365.25);
        x(t, 0) = std::max(0.0, 8.0 * season + 2.0 * z(rng));   // heating-like
        x(t, 1) = std::max(0.0, -8.0 * season + 2.0 * z(rng));  // cooling-like
        y[t] = 400.0 + 30.0 * x(t, 0) + 22.0 * x(t, 1) + r[t];
    }
    const regression::DesignMatrix d({"hd", "cd"}, x, y);
    const auto lm = regression::ols_fit(d.row_block(0, static_cast<Eigen::Index>(n_train)));
    const Eigen::VectorXd lm_all = lm.predict(d);
    std::vector<double> res(n);
    for (std::size_t t = 0; t < n; ++t) res[t] = y[t] - lm_all[t];
    const std::vector<double> r_train(res.begin(), res.begin() + n_train);
    const std::vector<double> base(res.begin() + n_train, res.end());

    // ARIMA branch, as the pipeline selects it
    const int dd = arima::select_d(r_train, 1);
    auto bounds = arima::suggest_orders(arima::difference(r_train, dd), 30);
    bounds.p_max = std::min(bounds.p_max, 3);
    bounds.q_max = std::min(bounds.q_max, 2);
    arima::GridOptions go;
    go.d = dd;
    go.constant = dd == 0;
    const auto grid = arima::grid_search(res, n_train, bounds, go);
    const auto af = arima::forecast(grid.best, horizon).point;

    // LSTM branch
    seq2seq::Seq2SeqConfig arch;
    arch.hidden = {12};
    arch.activations = {seq2seq::Activation::tanh};
    arch.dropout = {0.0};
    arch.input_length = 28;
    arch.output_length = horizon;
    arch.attention = seq2seq::AttentionMode::general;
    auto model = seq2seq::Seq2SeqModel::initialize(arch, static_cast<std::uint64_t>(seed) + 1);
    model.scaler = seq2seq::MinMaxScaler::fit(r_train);
    const auto windows = seq2seq::make_windows(model.scaler.scale(r_train), arch.input_length, arch.output_length, 2);
    seq2seq::TrainConfig tc;
    tc.epochs = 40;
    tc.batch_size = 16;
    tc.learning_rate = 0.005;
    tc.seed = static_cast<std::uint64_t>(seed);
    (void)seq2seq::train(model, windows, tc);
    const auto lf = seq2seq::predict(model, r_train, horizon);

    std::vector<double> ha(horizon), hl(horizon);
    for (std::size_t i = 0; i < horizon; ++i) {
        ha[i] = base[i] - af[i];
        hl[i] = base[i] - lf[i];
    }
    return {hybrid::residual_sum_ratio(base, ha), hybrid::residual_sum_ratio(base, hl), seconds_since(t0)};
}

Outcome hybrid_improvement() {
    std::vector<double> ra, rl;
    double slowest = 0.0;
    for (int seed = 0; seed < 10; ++seed) {
        const auto s = hybrid_seed(seed);
        ra.push_back(s.arima_ratio);
        rl.push_back(s.lstm_ratio);
        slowest = std::max(slowest, s.seconds);
    }
    const double ma = median(ra), ml = median(rl);
    return verdict(ma < 95.0 && ml < 97.0 && slowest <= 60.0,
                   fmt("planted AR(3), 14-day horizon, 10 seeds: median residual sum LM+ARIMA %.1f%% (< 95), LM+LSTM "
                       "%.1f%% (< 97); slowest seed %.1f s (<= 60)",
                       ma, ml, slowest));
}

// ---------------------------------------------------------------- 11

Outcome metrics_oracle() {
    const std::vector<double> actual{100, 200, 300, 400};
    const std::vector<double> pred{110, 190, 330, 400};
    const std::vector<double> scaling{1, 3, 6, 10};  // naive MAD (2 + 3 + 4) / 3
    const auto m = hybrid::metrics(actual, pred, scaling);
    bool ok = m.mae == 12.5 && m.rmse == std::sqrt(275.0) && std::abs(m.mape - 6.25) < 1e-12 &&
              std::abs(m.mase - 12.5 / 3.0) < 1e-12;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1.0, 1000.0);
    for (int rep = 0; rep < 20 && ok; ++rep) {
        std::vector<double> v(50);
        for (auto& e : v) e = u(rng);
        const auto z = hybrid::metrics(v, v, v);
        ok = z.mae == 0.0 && z.rmse == 0.0 && z.mape == 0.0 && z.mase == 0.0;
    }
    return verdict(ok, fmt("hand vector MAE %.4g RMSE %.6g MAPE %.4g MASE %.6g; metrics(x, x) = 0 on 20 vectors", m.mae,
                           m.rmse, m.mape, m.mase));
}

// ---------------------------------------------------------------- 12

double mape(std::span<const double> a, std::span<const double> p) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs((a[i] - p[i]) / a[i]);
    return 100.0 * s / static_cast<double>(a.size());
}

Outcome end_to_end_synthetic() {
    const auto t0 = Clock::now();
    testing::TempDir dir;
    testing::SyntheticOptions opt;
    opt.first_year = 2016;
    opt.years = 3;
    const auto data = testing::make_synthetic(opt);
    testing::write_synthetic(data, dir / "data");
    auto cfg = pipeline::PipelineConfig::from_json(
        nlohmann::json::parse(testing::synthetic_config(dir / "data", opt, dir / "out")));
    cfg.validate();
    cfg.arima.css_only = true;
    cfg.shortterm.fit.css_only = true;
    const auto fit = pipeline::run_fit(cfg);
    const Date from = make_date(2018, 1, 1), to = make_date(2019, 1, 1);
    const auto fc = pipeline::run_forecast(cfg, fit.bundle, from, to);
    const auto truth = data.load.slice(Hour{from}, Hour{to});
    const double m = mape(truth.values(), fc.point.values());
    const double secs = seconds_since(t0);
    return verdict(m <= 2.0 && secs < 600.0,
                   fmt("train 2016-2017, test 2018 (%zu hours): MAPE %.3f%% (<= 2), plan %s, %.1f s (< 600)",
                       fc.point.size(), m, hybrid::to_string(fit.bundle.plan.variant).c_str(), secs));
}

// ---------------------------------------------------------------- 13

Outcome real_data(const std::string& config_path) {
    if (config_path.empty()) return {Status::skip, "no dataset (set LOADCAST_DATA_CONFIG or --data-config)"};
    const auto t0 = Clock::now();
    const auto cfg = pipeline::load_config(config_path);
    const auto fit = pipeline::run_fit(cfg);
    const Date from = make_date(2019, 1, 1), mid = make_date(2020, 1, 1), to = make_date(2021, 1, 1);
    const auto fc = pipeline::run_forecast(cfg, fit.bundle, from, to);
    const auto csv = pipeline::forecast_csv(fc);
    write_file_atomic(cfg.output_dir / "forecast_2019_2020.csv", csv);
    const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;

    const auto actual = ingest::load_hourly_csv(cfg.data.load);
    if (!actual.covers(Hour{from}, Hour{to})) return {Status::fail, "load file does not cover 2019-2020"};
    const auto a = actual.slice(Hour{from}, Hour{to}).values();
    const auto p = fc.point.values();
    const std::size_t n19 = static_cast<std::size_t>((Hour{mid} - Hour{from}).count());
    const double m19 = mape(a.first(n19), p.first(n19));
    const double mall = mape(a, p);
    const std::size_t hours = static_cast<std::size_t>((Hour{to} - Hour{from}).count());
    return verdict(m19 <= 4.5 && mall <= 5.0 && rows == hours,
                   fmt("2019 MAPE %.2f%% (<= 4.5), 2019-2020 MAPE %.2f%% (<= 5), %zu CSV rows (every hour of "
                       "2019-2020 incl. Feb 29), %.0f s",
                       m19, mall, rows, seconds_since(t0)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only, known;
    std::string data_config;
    if (const char* env = std::getenv("LOADCAST_DATA_CONFIG")) data_config = env;
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    app.add_option("--known-failure", known, "criteria whose failure does not affect the exit status")->delimiter(',');
    app.add_option("--data-config", data_config, "pipeline config for the real-data run");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, decomposition_identity},
        {2, ols_oracle},
        {3, subset_search_oracle},
        {4, synthetic_recovery},
        {5, arima_estimation},
        {6, d_selection},
        {7, forecast_convergence},
        {8, lstm_gradient_check},
        {9, attention_normalization},
        {10, hybrid_improvement},
        {11, metrics_oracle},
        {12, end_to_end_synthetic},
        {13, [&] { return real_data(data_config); }},
    };

    int failures = 0;
    for (const auto& [id, run] : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {Status::fail, std::string("exception: ") + e.what()};
        }
        const bool tolerated = std::find(known.begin(), known.end(), id) != known.end();
        const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::skip ? "SKIP" : "FAIL";
        std::printf("criterion %2d  %s  %s%s\n", id, tag, o.detail.c_str(),
                    o.status == Status::fail && tolerated ? "  [known failure]" : "");
        std::fflush(stdout);
        if (o.status == Status::fail && !tolerated) ++failures;
    }
    return failures;
}
