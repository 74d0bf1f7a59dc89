#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "doctest.h"
#include "loadcast/diagnostics.hpp"
#include "loadcast/error.hpp"
#include "loadcast/regression.hpp"

using namespace loadcast;
using namespace loadcast::regression;

namespace {

// 30 x 3 regressors and response, row-major; reference values from statsmodels OLS
const std::vector<double> kX{
    -0.0068, 1.0461,  0.7416,  0.724,   1.6188,  -1.2056, -0.627,  -1.3207, -0.1078, 0.9988,
    -0.0219, 0.4959,  -1.9108, 0.1471,  -0.9069, 1.7754,  0.8868,  0.9493,  -0.0579, 0.6129,
    0.6579,  -0.3444, -0.4974, -0.1148, -0.6055, -0.5943, -0.2834, -0.7284, 0.7663,  -1.5961,
    0.8236,  -0.6256, -0.5459, -1.3508, -0.1442, -0.2477, 0.1915,  -0.5338, 0.0938,  1.8197,
    0.409,   -0.5737, 0.9531,  -0.1288, 0.5939,  0.6127,  -0.3911, -1.9303, -0.3477, 0.5515,
    -0.3801, 0.439,   0.9795,  -0.5441, 1.2314,  1.6218,  1.079,   1.1655,  1.0968,  2.2545,
    0.1859,  0.0021,  0.6031,  -0.9082, -1.5532, -0.882,  0.3726,  0.4731,  -1.5364, -1.8835,
    -0.3161, -0.1881, -0.0492, 0.6714,  1.2288,  0.2309,  0.6127,  -1.0952, -1.1763, 0.2362,
    0.6647,  0.7262,  0.5927,  0.7842,  0.8098,  -1.7522, -0.7342, 0.4552,  0.5967,  -1.5121};
const std::vector<double> kY{1.5538, 3.5725, 0.2052,  3.2874,  -1.312, 3.6697, 1.4186,  0.9302,
                             0.102,  1.0228, 2.4364,  -1.352,  1.9083, 5.1865, 2.8265,  4.0032,
                             1.0949, 3.2692, 3.1951,  2.1229,  1.719,  1.3393, 3.1493,  -1.8789,
                             -0.2472, 3.4012, -0.9882, 3.0699, 3.604,  2.9475};

DesignMatrix reference_design() {
    Eigen::MatrixXd x(30, 3);
    for (int r = 0; r < 30; ++r)
        for (int c = 0; c < 3; ++c) x(r, c) = kX[static_cast<std::size_t>(r * 3 + c)];
    Eigen::VectorXd y(30);
    for (int r = 0; r < 30; ++r) y[r] = kY[static_cast<std::size_t>(r)];
    return DesignMatrix({"a", "b", "c"}, x, y);
}

// textbook normal equations, used as an independent solver
Eigen::VectorXd normal_equations(const DesignMatrix& d) {
    const Eigen::MatrixXd& x = d.matrix();
    return (x.transpose() * x).ldlt().solve(x.transpose() * d.response());
}

DesignMatrix random_design(std::mt19937_64& rng, int n, int k) {
    std::normal_distribution<double> z;
    Eigen::MatrixXd x(n, k);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) x(r, c) = z(rng);
    Eigen::VectorXd y(n);
    for (int r = 0; r < n; ++r) y[r] = 1.0 + x.row(r).sum() + z(rng);
    std::vector<std::string> names;
    for (int c = 0; c < k; ++c) names.push_back("x" + std::to_string(c));
    return DesignMatrix(names, x, y);
}

}  // namespace

TEST_CASE("ols matches statsmodels on a fixed sample") {
    const auto m = ols_fit(reference_design());
    REQUIRE(m.k == 4);
    CHECK(m.columns.front() == kIntercept);
    CHECK(m.coefficient(kIntercept) == doctest::Approx(1.529450167824936).epsilon(1e-10));
    CHECK(m.coefficient("a") == doctest::Approx(1.8248588109995154).epsilon(1e-10));
    CHECK(m.coefficient("b") == doctest::Approx(0.026368538252717233).epsilon(1e-9));
    CHECK(m.coefficient("c") == doctest::Approx(-0.6652963488517335).epsilon(1e-10));
    CHECK(m.rss == doctest::Approx(5.631914250508347).epsilon(1e-10));
    CHECK(m.log_likelihood == doctest::Approx(-17.476936171201874).epsilon(1e-10));
    CHECK(m.sigma2 == doctest::Approx(5.631914250508347 / 26.0));
    // K = 4 coefficients + variance
    const double aic = 2.0 * 17.476936171201874 + 2.0 * 5.0;
    CHECK(m.aic == doctest::Approx(aic).epsilon(1e-10));
    CHECK(m.aicc == doctest::Approx(aic + 2.0 * 5.0 * 6.0 / 24.0).epsilon(1e-10));
}

TEST_CASE("ols agrees with the normal equations on random designs") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 15 + rep * 3;
        const int k = 1 + rep % 6;
        const auto d = random_design(rng, n, k);
        const auto m = ols_fit(d);
        const Eigen::VectorXd ref = normal_equations(d);
        CHECK((m.coefficients - ref).cwiseAbs().maxCoeff() < 1e-9);
        // residuals orthogonal to every column and summing to zero
        CHECK((d.matrix().transpose() * m.residuals).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(m.residuals.sum()) < 1e-8);
        CHECK((m.fitted + m.residuals - d.response()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((m.predict(d) - m.fitted).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("ols rejects singular and undersized designs") {
    Eigen::MatrixXd x(6, 3);
    x << 1, 2, 3, 2, 1, 3, 3, 5, 8, 4, 4, 8, 5, 1, 6, 6, 0, 6;  // c = a + b
    Eigen::VectorXd y(6);
    y << 1, 2, 3, 4, 5, 7;
    try {
        (void)ols_fit(DesignMatrix({"a", "b", "c"}, x, y));
        FAIL("expected SingularDesignError");
    } catch (const SingularDesignError& e) {
        REQUIRE(e.collinear_columns().size() == 1);
        CHECK(e.collinear_columns()[0] == "c");
    }
    CHECK_THROWS_AS((void)ols_fit(DesignMatrix({"a", "b", "c"}, x.topRows(3), y.head(3))),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)ols_fit(DesignMatrix({"a", "b", "c"}, x)), std::invalid_argument);
}

TEST_CASE("design selection and row blocks") {
    const auto d = reference_design();
    const std::vector<std::string> pick{"c", "a"};
    const auto s = d.select(pick);
    REQUIRE(s.cols() == 3);
    CHECK(s.columns() == std::vector<std::string>{kIntercept, "c", "a"});
    CHECK(s.matrix()(4, 1) == d.matrix()(4, 3));
    CHECK_THROWS_AS((void)d.column_index("zzz"), std::out_of_range);

    const auto blk = d.row_block(10, 5);
    CHECK(blk.rows() == 5);
    CHECK(blk.response()[0] == d.response()[10]);
    const auto rest = d.without_rows(10, 5);
    CHECK(rest.rows() == 25);
    CHECK(rest.response()[10] == d.response()[15]);
    CHECK(rest.response()[9] == d.response()[9]);
}

TEST_CASE("kfold partition and cross-validation") {
    const auto folds = kfold_partition(23, 5);
    REQUIRE(folds.size() == 5);
    Eigen::Index next = 0;
    for (std::size_t i = 0; i < folds.size(); ++i) {
        CHECK(folds[i].begin == next);
        CHECK(folds[i].size == (i < 3 ? 5 : 4));
        next += folds[i].size;
    }
    CHECK(next == 23);

    const auto d = reference_design();
    const auto cv = kfold_cv(d, 5);
    double rmse = 0.0;
    double mae = 0.0;
    for (const auto& f : kfold_partition(d.rows(), 5)) {
        const auto train = d.without_rows(f.begin, f.size);
        const auto test = d.row_block(f.begin, f.size);
        const Eigen::VectorXd beta = normal_equations(train);
        const Eigen::VectorXd err = test.response() - test.matrix() * beta;
        rmse += std::sqrt(err.squaredNorm() / static_cast<double>(f.size));
        mae += err.cwiseAbs().mean();
    }
    CHECK(cv.rmse == doctest::Approx(rmse / 5.0).epsilon(1e-10));
    CHECK(cv.mae == doctest::Approx(mae / 5.0).epsilon(1e-10));
    CHECK_THROWS((void)kfold_cv(d.row_block(0, 9), 5));
}

TEST_CASE("variance inflation factors match statsmodels") {
    const auto v = vif(reference_design());
    REQUIRE(v.size() == 3);
    CHECK(v[0] == doctest::Approx(1.1343708413165692).epsilon(1e-9));
    CHECK(v[1] == doctest::Approx(1.1516286357451466).epsilon(1e-9));
    CHECK(v[2] == doctest::Approx(1.0887044191380613).epsilon(1e-9));
}

TEST_CASE("information criteria") {
    const auto ic = gaussian_information(12.5, 40, 3);
    const double ll = -0.5 * 40.0 * (std::log(2.0 * M_PI * 12.5 / 40.0) + 1.0);
    CHECK(ic.log_likelihood == doctest::Approx(ll));
    CHECK(ic.aic == doctest::Approx(-2.0 * ll + 8.0));
    CHECK(ic.aicc == doctest::Approx(-2.0 * ll + 8.0 + 2.0 * 4.0 * 5.0 / 35.0));
}

TEST_CASE("linear model json round trip") {
    const auto m = ols_fit(reference_design());
    const auto back = linear_model_from_json(nlohmann::json::parse(to_json(m).dump()));
    CHECK(back.columns == m.columns);
    CHECK((back.coefficients - m.coefficients).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(back.aicc == m.aicc);
    CHECK(back.n == m.n);
    CHECK(back.k == m.k);
    CHECK((back.predict(reference_design()) - m.fitted).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS((void)linear_model_from_json(nlohmann::json{{"columns", 3}}), std::invalid_argument);
}

TEST_CASE("shapiro-wilk matches scipy") {
    const std::vector<double> skewed{3.0923, 0.7792, 2.3163, 7.8248, 1.0732, 0.3088, 4.8184, 0.9982, 2.534,
                                     2.0202, 2.0931, 0.9331, 0.1558, 1.3043, 0.5702, 3.4346, 1.9737, 2.2452,
                                     1.4186, 0.5872, 1.2131, 0.6722, 2.1078, 0.4101, 2.154};
    auto sw = shapiro_wilk(skewed);
    CHECK(sw.w == doctest::Approx(0.7939603923830213).epsilon(1e-6));
    CHECK(sw.p_value == doctest::Approx(0.0001805813112160215).epsilon(1e-3));

    const std::vector<double> normal{0.6725,  0.8316,  1.0971,  0.8239,  -0.8152, 0.058,   -0.7131, -2.3815,
                                     -1.6809, 2.0889,  -1.1173, -2.2421, -0.5848, 1.5203,  -0.045,  0.4081,
                                     -0.2703, -0.0832, 1.2666,  0.796,   -0.0863, 0.8916,  1.0745,  -0.2192,
                                     0.27,    0.2541,  -0.6683, 1.1509,  -0.1671, -0.6195, -1.6758, -1.2654,
                                     1.5254,  -1.1401, 0.4296,  -0.3671, 0.5113,  0.6023,  -0.7763, -0.2919};
    sw = shapiro_wilk(normal);
    CHECK(sw.w == doctest::Approx(0.9847668958183587).epsilon(1e-6));
    CHECK(sw.p_value == doctest::Approx(0.857136237124065).epsilon(1e-3));

    CHECK_THROWS_AS((void)shapiro_wilk(std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)shapiro_wilk(std::vector<double>{2.0, 2.0, 2.0, 2.0}), DegenerateInputError);
}

namespace {
const std::vector<double> kG1{0.0994, 0.1145, -0.0285, -0.3133, 0.6294, 1.3171,
                              0.5405, -0.7401, 0.3959, 0.0611, 0.4616, 1.8448};
const std::vector<double> kG2{-0.4279, -0.023, -1.7733, -0.5779, -1.1383, 3.1997, 0.6079, -1.1438,
                              3.8589,  -2.6563, 1.7225, 2.0325, 1.1479,  -0.5223, -0.2588};
const std::vector<double> kG3{0.6565, 1.7861, -1.3289, 0.4888, 1.1519, 0.4188, -0.8176, 0.7572, 0.2448, 1.8003};
}  // namespace

TEST_CASE("levene (median centred) matches scipy") {
    const auto lv = levene_test({kG1, kG2, kG3});
    CHECK(lv.statistic == doctest::Approx(3.49037086459117).epsilon(1e-10));
    CHECK(lv.p_value == doctest::Approx(0.041810440292894914).epsilon(1e-8));
    CHECK(lv.df1 == 2.0);
    CHECK(lv.df2 == 34.0);
    CHECK_THROWS_AS((void)levene_test({kG1}), std::invalid_argument);
    CHECK_THROWS_AS((void)levene_test({kG1, {1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("two-sample kolmogorov-smirnov") {
    std::vector<double> pooled(kG1);
    pooled.insert(pooled.end(), kG2.begin(), kG2.end());
    pooled.insert(pooled.end(), kG3.begin(), kG3.end());
    const auto ks = ks_uniformity_test(kG2, pooled);
    CHECK(ks.statistic == doctest::Approx(0.22162162162162158).epsilon(1e-12));
    // scipy.special.kolmogorov at the Stephens-corrected argument
    CHECK(ks.p_value == doctest::Approx(0.6135699518499929).epsilon(1e-9));
    // plain asymptotic value reported by scipy's ks_2samp is close
    CHECK(std::abs(ks.p_value - 0.5784148867366523) < 0.05);

    CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-10));
    CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-10));
    CHECK(kolmogorov_survival(1.36) == doctest::Approx(0.049485876755377876).epsilon(1e-10));
    CHECK(kolmogorov_survival(0.0) == 1.0);

    const auto same = ks_uniformity_test(pooled, pooled);
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
}

TEST_CASE("ks p-value is monotone in the statistic") {
    double prev = 1.0;
    for (double l = 0.0; l < 3.0; l += 0.05) {
        const double q = kolmogorov_survival(l);
        CHECK(q <= prev + 1e-12);
        CHECK(q >= 0.0);
        prev = q;
    }
}
