#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "doctest.h"
#include "loadcast/error.hpp"
#include "loadcast/hybrid.hpp"

using namespace loadcast;
using namespace loadcast::hybrid;

TEST_CASE("metrics on a hand-computed vector") {
    const std::vector<double> actual{100, 200, 300, 400};
    const std::vector<double> pred{110, 190, 330, 400};
    const std::vector<double> scaling{1, 3, 6, 10};  // naive diffs 2, 3, 4
    const auto m = metrics(actual, pred, scaling);
    CHECK(m.mae == 12.5);
    CHECK(m.rmse == std::sqrt(275.0));
    CHECK(m.mape == doctest::Approx(6.25).epsilon(1e-15));
    CHECK(m.mase == doctest::Approx(12.5 / 3.0).epsilon(1e-15));
    CHECK(naive_scale(scaling) == 3.0);

    const auto no_scale = metrics(actual, pred, {}, false);
    CHECK(std::isnan(no_scale.mase));
    CHECK(std::isnan(no_scale.mape));
    CHECK(no_scale.to_json().at("mase").is_null());
}

TEST_CASE("metrics of a perfect forecast are zero") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1.0, 100.0);
    std::vector<double> x(50);
    for (auto& v : x) v = u(rng);
    const auto m = metrics(x, x, x);
    CHECK(m.mae == 0.0);
    CHECK(m.rmse == 0.0);
    CHECK(m.mape == 0.0);
    CHECK(m.mase == 0.0);
}

TEST_CASE("metric input checks") {
    const std::vector<double> a{0.0, 1.0};
    const std::vector<double> b{0.5, 1.0};
    CHECK_THROWS_AS((void)metrics(a, b), DegenerateInputError);
    CHECK_NOTHROW((void)metrics(a, b, {}, false));
    CHECK_THROWS_AS((void)metrics(a, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)naive_scale(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)naive_scale(std::vector<double>{2.0, 2.0, 2.0}), DegenerateInputError);
}

TEST_CASE("residual sum ratio") {
    const std::vector<double> base{1, -2, 3, -4};
    const std::vector<double> hyb{0.5, -1, 1.5, -2};
    CHECK(residual_sum_ratio(base, hyb) == doctest::Approx(50.0));
    CHECK(residual_sum_ratio(base, hyb, ResidualSum::squared) == doctest::Approx(25.0));
    CHECK(residual_sum_ratio(base, base) == doctest::Approx(100.0));
}

TEST_CASE("variant names") {
    for (auto v : all_variants()) CHECK(parse_variant(to_string(v)) == v);
    CHECK(to_string(Variant::lm_arima_lstm) == "LM+ARIMA+LSTM");
    CHECK(all_variants().size() == 4);
    CHECK_THROWS_AS((void)parse_variant("LM+GRU"), std::invalid_argument);
}

TEST_CASE("combining residual forecasts") {
    const std::vector<double> lm{10, 20, 30};
    const ResidualForecasts r{{1, 2, 3}, {-1, 0, 5}};
    CHECK(combine(lm, r, {Variant::lm}) == lm);
    CHECK(combine(lm, r, {Variant::lm_arima}) == std::vector<double>{11, 22, 33});
    CHECK(combine(lm, r, {Variant::lm_lstm, 1.0, 0.5}) == std::vector<double>{9.5, 20, 32.5});
    CHECK(combine(lm, r, {Variant::lm_arima_lstm}) == std::vector<double>{10, 21, 34});
    CHECK(combine(lm, r, {Variant::lm_arima_lstm, 2.0, 0.0}) == std::vector<double>{11, 22, 33});
    CHECK_THROWS_AS((void)combine(lm, ResidualForecasts{{1, 2}, {}}, {Variant::lm_arima}), AlignmentError);
    CHECK_NOTHROW((void)combine(lm, ResidualForecasts{{1, 2, 3}, {}}, {Variant::lm_arima}));
}

TEST_CASE("hybrid selection ranks by residual sum") {
    const std::vector<double> actual{10, 12, 14, 13, 11};
    const std::vector<double> scaling{9, 11, 10, 12, 13};  // naive scale 1.5
    std::vector<HybridCandidate> cands{
        {{Variant::lm}, {9, 13, 12, 14, 10}},            // |r| sum 6
        {{Variant::lm_arima}, {10, 12.5, 13, 13, 11}},   // 1.5
        {{Variant::lm_lstm}, {11, 11, 13, 12, 12}},      // 5
        {{Variant::lm_arima_lstm}, {10, 12, 14, 13.5, 11}},  // 0.5
    };
    const auto sel = select_hybrid(cands, actual, scaling);
    CHECK(sel.best.variant == Variant::lm_arima_lstm);
    REQUIRE(sel.table.size() == 4);
    CHECK(sel.table[0].name == "LM+ARIMA+LSTM");
    CHECK(sel.table[0].metrics.residual_sum_ratio == doctest::Approx(100.0 * 0.5 / 6.0));
    CHECK(sel.table[1].name == "LM+ARIMA");
    CHECK(sel.table[2].name == "LM+LSTM");
    CHECK(sel.table[2].metrics.residual_sum_ratio == doctest::Approx(100.0 * 5.0 / 6.0));
    CHECK(sel.table[3].name == "LM");
    CHECK(sel.table[3].metrics.residual_sum_ratio == doctest::Approx(100.0));
    CHECK(sel.table[1].metrics.mase == doctest::Approx(0.3 / 1.5));

    const auto j = sel.to_json();
    CHECK(j.at("best") == "LM+ARIMA+LSTM");
    CHECK(j.at("comparison").size() == 4);
    const auto csv = sel.to_csv();
    CHECK(csv.rfind("variant,rmse,mae,mase,residual_sum_pct\n", 0) == 0);
    CHECK(csv.find("LM+ARIMA,0.500,0.300,0.200,25.000") != std::string::npos);

    // without an LM candidate the worst candidate is the baseline
    const std::vector<HybridCandidate> no_lm(cands.begin() + 1, cands.end());
    const auto sel2 = select_hybrid(no_lm, actual, scaling);
    CHECK(sel2.table.back().name == "LM+LSTM");
    CHECK(sel2.table.back().metrics.residual_sum_ratio == doctest::Approx(100.0));

    CHECK_THROWS_AS((void)select_hybrid(std::span(cands).first(1), actual, scaling), std::invalid_argument);
    cands[1].forecast.pop_back();
    CHECK_THROWS_AS((void)select_hybrid(cands, actual, scaling), AlignmentError);
}

TEST_CASE("full forecast is the component sum") {
    const YearlySeries lt(2019, {1000.0});
    std::vector<double> mid(365);
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = static_cast<double>(i % 7) * 10.0;
    const DailySeries mt(make_date(2019, 1, 1), mid);
    std::vector<double> sh(8760);
    for (std::size_t i = 0; i < sh.size(); ++i) sh[i] = static_cast<double>(i % 24) - 11.5;
    const HourlySeries st(make_hour(2019, 1, 1, 0), sh);
    const auto full = assemble_full_forecast(lt, mt, st);
    REQUIRE(full.size() == 8760);
    for (std::size_t i = 0; i < full.size(); i += 97) CHECK(full[i] == doctest::Approx(1000.0 + mid[i / 24] + sh[i]));
    CHECK_THROWS_AS((void)assemble_full_forecast(YearlySeries(2020, {1.0}), mt, st), AlignmentError);
}
