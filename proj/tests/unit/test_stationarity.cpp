#include <cmath>
#include <random>

#include "doctest.h"
#include "loadcast/correlogram.hpp"
#include "loadcast/error.hpp"
#include "loadcast/stationarity.hpp"

using namespace loadcast;
using namespace loadcast::arima;

namespace {

// reference series; values below come from statsmodels 0.14 (adfuller/kpss/acf/pacf)
const std::vector<double> kWalk{
    0.4278,  -0.1431, 2.5114,  0.9028,  1.5646,  1.4211,  1.0666,  2.133,   0.3151,  -0.6696, -0.7838, 0.9575,
    1.0466,  1.9422,  0.0789,  -1.16,   -0.1904, -0.8186, -0.8816, -0.1507, -2.3557, -3.5569, -3.6508, -5.1972,
    -5.9078, -5.9502, -6.6154, -6.8841, -6.8431, -5.5129, -3.9342, -4.3288, -5.1565, -4.2672, -3.7566, -3.5076,
    -4.4158, -3.7709, -2.8987, -4.6834, -3.666,  -3.7388, -4.4823, -6.0594, -6.4012, -6.4623, -6.8371, -8.0415,
    -9.2368, -8.5314, -8.4837, -8.1991, -7.57,   -6.8524, -5.1173, -5.1886, -5.448,  -6.4063, -6.1568, -5.8924,
    -6.6521, -6.6846, -6.7027, -3.0383, -3.5488, -2.3027, -1.8962, -1.9879, -1.5797, -1.2213, -1.2531, -1.5026,
    -1.877,  -2.2626, -1.9835, -2.1015, -1.1375, 0.242,   0.1865,  -0.1119, 1.2081,  1.1374,  1.3476,  0.9626,
    1.096,   2.3901,  3.2856,  2.1932,  1.3424,  0.9347,  0.6321,  1.3334,  -0.7965, 0.4929,  -0.6562, 0.3816,
    -0.878,  -1.0833, -0.218,  -0.1821, 0.9869,  3.4975,  2.9794,  2.0052,  0.837,   -0.6673, -0.94,   -2.5388,
    -5.1906, -5.8393, -4.2322, -3.969,  -5.2611, -6.1447, -5.3429, -5.1409, -5.558,  -4.4418, -4.1471, -4.5422};

const std::vector<double> kAr1{
    0.0,     0.3061,  1.4248,  -0.3752, -0.3278, -0.4608, -2.2407, -1.7984, -2.509,  -1.1531, -0.7813, -0.1136,
    0.1909,  -1.5279, -0.7915, 0.0367,  0.9371,  0.4736,  -0.3766, 0.0342,  1.3349,  0.8866,  -1.2612, -0.1502,
    -0.0475, -0.023,  -0.4428, -0.1969, -0.014,  -1.4541, 0.0587,  -0.2783, -0.2851, -0.5482, 1.1312,  1.5747,
    2.2432,  0.7983,  -0.9912, -0.8022, 0.7055,  1.5944,  -0.0757, 1.2131,  -0.8375, -0.5386, -0.1798, 1.3773,
    -1.2072, -2.1011, -3.3768, -2.7216, -3.4255, -1.3675, -1.8993, -1.6928, 1.17,    1.0124,  -0.098,  0.4366,
    0.7955,  1.5441,  -0.015,  0.2087,  0.0502,  -0.1167, -0.5343, 0.5221,  0.9652,  -1.1383, -1.3273, -0.8084,
    0.3584,  0.3793,  1.0247,  0.2835,  -0.4168, -0.0478, 1.289,   -0.0467, -0.4485, -0.974,  -0.6253, 0.6311,
    0.2853,  -0.0679, -0.4497, -1.4589, -1.0353, -3.3961, -1.4895, -1.3602, -0.1922, -0.0982, -0.1268, -0.9263,
    0.4407,  1.0797,  -0.775,  -0.297,  1.3525,  0.8324,  -0.5537, -2.1797, 0.2557,  -1.2296, -2.6418, -0.3116,
    0.3851,  0.2039,  0.4493,  0.0871,  0.5014,  0.2847,  0.3099,  0.1453,  0.5852,  -0.4226, -0.0711, -1.8106,
    -1.369,  0.4881,  0.0962,  -0.5415, -0.6676, 0.3344,  -0.6522, 1.3502,  0.7093,  0.7224,  2.501,   3.258,
    1.0964,  -0.1356, -0.4083, -0.0477, 1.1361,  -0.224,  -0.1052, -1.3409, 0.7435,  1.5916,  -1.5291, -0.5768,
    -0.5479, -0.1288, 0.1683,  0.0386,  0.4753,  0.0038};

const std::vector<double> kDrifting{
    0.7048,  -0.2968, -0.4028, -1.0617, 0.2333,  -1.1396, -1.7008, -2.3727, 1.3442,  0.0532,  1.7828, 0.1706,
    -0.6613, 0.3212,  -0.0969, -1.3042, -0.7715, 1.6982,  0.3238,  0.1181,  -0.3223, -0.6791, 1.0014, 0.1283,
    -0.8294, 0.0305,  -0.1239, 0.4802,  0.9005,  -1.5162, 1.0008,  -1.0567, 0.0878,  -0.6852, -0.0079, 0.3469,
    -0.1861, -0.1937, -0.5077, -0.7775, -1.4535, 0.394,   0.8288,  1.0123,  0.582,   2.6831,  0.4739, 0.0962,
    1.8624,  -0.7179, 1.6083,  -0.741,  0.6144,  -1.3434, 1.5506,  0.793,   0.6961,  3.4243,  2.4272, 1.4763};

}  // namespace

TEST_CASE("adf matches statsmodels with the fixed schwert lag") {
    auto r = adf_test(kWalk);
    CHECK(r.lags == 12);
    CHECK(r.nobs == 107);
    CHECK(r.statistic == doctest::Approx(-2.0703989373679095).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.2565826728786343).epsilon(1e-6));
    CHECK(r.critical_1 == doctest::Approx(-3.492995948509562).epsilon(1e-9));
    CHECK(r.critical_5 == doctest::Approx(-2.888954648057252).epsilon(1e-9));
    CHECK(r.critical_10 == doctest::Approx(-2.58139291903223).epsilon(1e-9));

    r = adf_test(kAr1);
    CHECK(r.lags == 13);
    CHECK(r.nobs == 136);
    CHECK(r.statistic == doctest::Approx(-3.6893611008716602).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.004265312916404312).epsilon(1e-6));
    CHECK(r.critical_5 == doctest::Approx(-2.8830370378332995).epsilon(1e-9));
}

TEST_CASE("adf input checks and p-value shape") {
    CHECK_THROWS_AS((void)adf_test(std::vector<double>(10, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS((void)adf_test(std::vector<double>(50, 3.0)), DegenerateInputError);
    double prev = 0.0;
    for (double s = -6.0; s < 2.0; s += 0.25) {
        const double p = adf_pvalue(s);
        CHECK(p >= prev);
        CHECK(p <= 1.0);
        prev = p;
    }
}

TEST_CASE("kpss matches statsmodels") {
    auto r = kpss_test(kDrifting);
    CHECK(r.lags == 3);
    CHECK(r.statistic == doctest::Approx(0.5976447265480654).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.022850479404721322).epsilon(1e-9));
    CHECK(r.critical_5 == 0.463);

    r = kpss_test(kWalk);
    CHECK(r.lags == 4);
    CHECK(r.statistic == doctest::Approx(0.3253498466926678).epsilon(1e-9));
    CHECK(r.p_value == 0.1);  // clamped

    r = kpss_test(kAr1);
    CHECK(r.statistic == doctest::Approx(0.13248558907766128).epsilon(1e-9));
}

TEST_CASE("difference and integrate are inverse") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    std::vector<double> x(40);
    for (auto& v : x) v = z(rng);
    for (int d = 0; d <= 3; ++d) {
        const auto dx = difference(x, d);
        REQUIRE(dx.size() == x.size() - static_cast<std::size_t>(d));
        const auto back = integrate(dx, std::span<const double>(x).first(static_cast<std::size_t>(d)));
        REQUIRE(back.size() == x.size());
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
    }
    const std::vector<double> sq{1, 4, 9, 16, 25};
    CHECK(difference(sq, 1) == std::vector<double>{3, 5, 7, 9});
    CHECK(difference(sq, 2) == std::vector<double>{2, 2, 2});
}

TEST_CASE("select_d picks the smallest passing order") {
    CHECK(select_d(kAr1) == 0);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> z;
    std::vector<double> walk(400);
    double acc = 0.0;
    for (auto& v : walk) v = acc += z(rng);
    CHECK(select_d(walk) == 1);
    std::vector<double> twice(walk.size());
    acc = 0.0;
    for (std::size_t i = 0; i < walk.size(); ++i) twice[i] = acc += walk[i];
    CHECK(select_d(twice) == 2);
    CHECK_THROWS_AS((void)select_d(twice, 1), FitError);
}

TEST_CASE("acf and pacf match statsmodels") {
    const auto a = acf(kAr1, 6);
    const std::vector<double> ref_acf{1.0, 0.49415842524122255, 0.2106379224223423, 0.1278148281663928,
                                      0.12834766667282801, 0.029343117291883002, -0.07430022970362124};
    REQUIRE(a.values.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(a.values[i] == doctest::Approx(ref_acf[i]).epsilon(1e-10));
    CHECK(a.bound == doctest::Approx(1.96 / std::sqrt(150.0)));
    CHECK_FALSE(a.significant[0]);
    CHECK(a.significant[1]);
    CHECK(a.significant[2]);
    CHECK_FALSE(a.significant[3]);

    const auto p = pacf(kAr1, 6);
    const std::vector<double> ref_pacf{1.0, 0.49415842524122255, -0.04439573436417381, 0.05441176974358146,
                                       0.06708360458199929, -0.08732519324158468, -0.08522829695608694};
    for (std::size_t i = 0; i < 7; ++i) CHECK(p.values[i] == doctest::Approx(ref_pacf[i]).epsilon(1e-9));
    CHECK(p.highest_significant_lag() == 1);

    const auto b = suggest_orders(kAr1, 6);
    CHECK(b.p_max == 1);
    CHECK(b.q_max == 2);
    CHECK_THROWS_AS((void)acf(kAr1, 75), std::invalid_argument);
}

TEST_CASE("white noise gives the minimal order bounds") {
    const auto b = suggest_orders(std::vector<double>{1, 2, 1, 3, 2, 1, 3, 1, 2, 2, 3, 1, 2, 1, 3, 3}, 3);
    CHECK(b.p_max == 1);
    CHECK(b.q_max == 1);
}
