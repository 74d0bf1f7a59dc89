#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

namespace loadcast::regression {

inline constexpr const char* kIntercept = "(Intercept)";

/// Regressor matrix with an intercept column in front and an optional
/// response. A design without response can only be used for prediction.
class DesignMatrix {
public:
    DesignMatrix() = default;
    /// `regressors` excludes the intercept; it is prepended here.
    DesignMatrix(std::vector<std::string> regressor_names, const Eigen::MatrixXd& regressors,
                 Eigen::VectorXd response = {});

    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return x_; }
    [[nodiscard]] const Eigen::VectorXd& response() const noexcept { return y_; }
    [[nodiscard]] bool has_response() const noexcept { return y_.size() == x_.rows() && x_.rows() > 0; }
    /// Column names, intercept first.
    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return names_; }
    /// Column names without the intercept.
    [[nodiscard]] std::vector<std::string> regressor_names() const;
    [[nodiscard]] Eigen::Index rows() const noexcept { return x_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return x_.cols(); }
    /// Index in columns(); throws std::out_of_range for unknown names.
    [[nodiscard]] Eigen::Index column_index(const std::string& name) const;
    [[nodiscard]] bool has_column(const std::string& name) const;

    /// Intercept plus the named regressors, in the given order.
    [[nodiscard]] DesignMatrix select(std::span<const std::string> regressors) const;
    /// Rows [begin, begin + count).
    [[nodiscard]] DesignMatrix row_block(Eigen::Index begin, Eigen::Index count) const;
    /// All rows except [begin, begin + count).
    [[nodiscard]] DesignMatrix without_rows(Eigen::Index begin, Eigen::Index count) const;

private:
    std::vector<std::string> names_;
    Eigen::MatrixXd x_;
    Eigen::VectorXd y_;
};

/// Gaussian log-likelihood and information criteria for a least-squares fit
/// with `coefficients` mean parameters. The parameter count K used by AIC and
/// AICc is coefficients + 1 (the noise variance).
struct InformationCriteria {
    double log_likelihood = 0.0;
    double aic = 0.0;
    double aicc = 0.0;
};
[[nodiscard]] InformationCriteria gaussian_information(double rss, std::size_t n, std::size_t coefficients);

struct LinearModel {
    std::vector<std::string> columns;  ///< intercept first
    Eigen::VectorXd coefficients;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd unscaled_covariance;  ///< (X'X)^-1
    double rss = 0.0;
    double sigma2 = 0.0;  ///< rss / (n - k)
    double log_likelihood = 0.0;
    double aic = 0.0;
    double aicc = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;  ///< number of coefficients, intercept included

    [[nodiscard]] double coefficient(const std::string& name) const;
    /// Matches columns by name; `x` may carry extra columns.
    [[nodiscard]] Eigen::VectorXd predict(const DesignMatrix& x) const;
};

/// Least squares via column-pivoted QR on norm-equilibrated columns. Throws
/// SingularDesignError naming the columns that are linear combinations of
/// preceding ones, std::invalid_argument when there is no response or fewer
/// rows than columns.
[[nodiscard]] LinearModel ols_fit(const DesignMatrix& x);

struct Fold {
    Eigen::Index begin = 0;
    Eigen::Index size = 0;
};

/// Contiguous time-ordered folds; the first n % k folds get one extra row.
[[nodiscard]] std::vector<Fold> kfold_partition(Eigen::Index n, std::size_t k);

struct CrossValidation {
    double rmse = 0.0;  ///< mean over folds of the fold RMSE
    double mae = 0.0;   ///< mean over folds of the fold MAE
};

/// K-fold cross-validation with contiguous blocks. Requires n >= 2k.
[[nodiscard]] CrossValidation kfold_cv(const DesignMatrix& x, std::size_t k);

/// Variance inflation factor of each regressor (intercept excluded), in
/// regressor order: 1 / (1 - R^2) of the column regressed on all others.
[[nodiscard]] std::vector<double> vif(const DesignMatrix& x);

/// Coefficients, information criteria and sizes; fitted values and residuals
/// are not stored.
[[nodiscard]] nlohmann::json to_json(const LinearModel& m);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
[[nodiscard]] LinearModel linear_model_from_json(const nlohmann::json& j);

}  // namespace loadcast::regression
