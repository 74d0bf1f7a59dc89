#include <cmath>
#include <map>
#include <nlohmann/json.hpp>

#include "doctest.h"
#include "loadcast/error.hpp"
#include "loadcast/shortterm.hpp"
#include "synthetic.hpp"

using namespace loadcast;
using namespace loadcast::shortterm;

namespace {

ShorttermConfig quick_config() {
    ShorttermConfig c;
    c.max_p = 2;
    c.max_q = 1;
    c.max_lag = 24;
    return c;
}

const HourlySeries& one_year() {
    static const HourlySeries s = [] {
        testing::SyntheticOptions opt;
        opt.first_year = 2018;
        opt.years = 1;
        return testing::make_synthetic(opt).short_truth;
    }();
    return s;
}

const ProfileModelSet& fitted() {
    static const ProfileModelSet m = fit_profiles(one_year(), quick_config());
    return m;
}

}  // namespace

TEST_CASE("hour dummies and block length") {
    const auto names = hour_dummy_names();
    REQUIRE(names.size() == 23);
    CHECK(names.front() == "ToH_00");
    CHECK(names.back() == "ToH_22");
    CHECK(tile_block_length(3, 2) == 24);
    CHECK(tile_block_length(27, 26) == 24);
    CHECK(tile_block_length(48, 5) == 48);
    CHECK(tile_block_length(0, 0) == 24);
}

TEST_CASE("profile cells are the per-hour means of their days") {
    const auto& s = one_year();
    const auto& m = fitted();
    // oracle: average of each (month, weekday, hour) group
    std::map<std::tuple<unsigned, unsigned, unsigned>, std::pair<double, int>> acc;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Hour h = s.time_at(i);
        const Date d = date_of(h);
        auto& a = acc[{month_of(d), weekday_of(d), hour_of_day(h)}];
        a.first += s[i];
        a.second += 1;
    }
    for (std::size_t i = 0; i < s.size(); i += 37) {
        const Hour h = s.time_at(i);
        const Date d = date_of(h);
        const auto& a = acc[{month_of(d), weekday_of(d), hour_of_day(h)}];
        CHECK(m.profile(h) == doctest::Approx(a.first / a.second).epsilon(1e-9));
    }
    CHECK(m.cell(1, 0).k == 24);
    CHECK_THROWS_AS((void)m.cell(13, 0), std::out_of_range);
}

TEST_CASE("monthly residual models") {
    const auto& m = fitted();
    for (unsigned month = 1; month <= 12; ++month) {
        const auto& r = m.residual_models[month - 1];
        CHECK(r.month == month);
        CHECK(r.model.spec.d == 0);
        CHECK_FALSE(r.model.spec.constant);
        CHECK(r.model.spec.p >= 1);
        CHECK(r.model.spec.p <= 4);
        CHECK(r.model.spec.q <= 3);
        CHECK(r.block.size() == 24);
        CHECK(r.block_exceeds_lag_order);
        // ar(1) noise is planted, so the residuals should look stationary
        CHECK(r.stationary);
    }
}

TEST_CASE("prediction adds the tiled residual block") {
    const auto& m = fitted();
    const Hour from = make_hour(2019, 3, 1, 0);
    const Hour to = make_hour(2019, 3, 4, 0);
    const auto p = predict_profile(m, from, to);
    REQUIRE(p.size() == 72);
    CHECK(p.start() == from);
    const auto& block = m.residual_models[2].block;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Hour h = p.time_at(i);
        CHECK(p[i] == doctest::Approx(m.profile(h) + block[i % block.size()]).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)predict_profile(m, make_hour(2019, 3, 1, 5), to), RangeError);
    CHECK(predict_profile(m, from, from).empty());
}

TEST_CASE("profile set json round trip") {
    const auto& m = fitted();
    const auto back = ProfileModelSet::from_json(nlohmann::json::parse(m.to_json().dump()));
    const Hour from = make_hour(2019, 7, 1, 0);
    const auto a = predict_profile(m, from, from + std::chrono::hours{24 * 5});
    const auto b = predict_profile(back, from, from + std::chrono::hours{24 * 5});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    CHECK_THROWS((void)ProfileModelSet::from_json(nlohmann::json::object()));
}

TEST_CASE("fixed orders and coverage errors") {
    auto cfg = quick_config();
    cfg.fixed_orders = arima::OrderBounds{1, 0};
    const auto m = fit_profiles(one_year(), cfg);
    for (const auto& r : m.residual_models) {
        CHECK(r.model.spec.p == 1);
        CHECK(r.model.spec.q == 0);
    }

    const auto& s = one_year();
    const auto short_span = s.slice(s.start(), s.start() + std::chrono::hours{24 * 200});
    try {
        (void)fit_profiles(short_span, cfg);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("coverage") != std::string::npos);
    }
    const auto ragged = s.slice(s.start() + std::chrono::hours{3}, s.end());
    CHECK_THROWS_AS((void)fit_profiles(ragged, cfg), RangeError);
}
