#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

#include "loadcast/error.hpp"
#include "loadcast/regression.hpp"

namespace loadcast::regression {

DesignMatrix::DesignMatrix(std::vector<std::string> regressor_names, const Eigen::MatrixXd& regressors,
                           Eigen::VectorXd response)
    : y_(std::move(response)) {
    if (static_cast<Eigen::Index>(regressor_names.size()) != regressors.cols()) {
        throw std::invalid_argument("DesignMatrix: name count does not match column count");
    }
    names_.reserve(regressor_names.size() + 1);
    names_.emplace_back(kIntercept);
    for (auto& n : regressor_names) {
        if (n == kIntercept) throw std::invalid_argument("DesignMatrix: reserved column name " + n);
        for (const auto& existing : names_) {
            if (existing == n) throw std::invalid_argument("DesignMatrix: duplicate column " + n);
        }
        names_.push_back(std::move(n));
    }
    x_.resize(regressors.rows(), regressors.cols() + 1);
    x_.col(0).setOnes();
    x_.rightCols(regressors.cols()) = regressors;
    if (!x_.allFinite()) throw std::invalid_argument("DesignMatrix: non-finite regressor value");
    if (y_.size() != 0) {
        if (y_.size() != x_.rows()) throw std::invalid_argument("DesignMatrix: response length mismatch");
        if (!y_.allFinite()) throw std::invalid_argument("DesignMatrix: non-finite response value");
    }
}

std::vector<std::string> DesignMatrix::regressor_names() const {
    return {names_.begin() + 1, names_.end()};
}

Eigen::Index DesignMatrix::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < names_.size(); ++j) {
        if (names_[j] == name) return static_cast<Eigen::Index>(j);
    }
    throw std::out_of_range("DesignMatrix: unknown column '" + name + "'");
}

bool DesignMatrix::has_column(const std::string& name) const {
    for (const auto& n : names_) {
        if (n == name) return true;
    }
    return false;
}

DesignMatrix DesignMatrix::select(std::span<const std::string> regressors) const {
    Eigen::MatrixXd sub(x_.rows(), static_cast<Eigen::Index>(regressors.size()));
    for (std::size_t j = 0; j < regressors.size(); ++j) {
        sub.col(static_cast<Eigen::Index>(j)) = x_.col(column_index(regressors[j]));
    }
    return DesignMatrix({regressors.begin(), regressors.end()}, sub, y_);
}

DesignMatrix DesignMatrix::row_block(Eigen::Index begin, Eigen::Index count) const {
    DesignMatrix out;
    out.names_ = names_;
    out.x_ = x_.middleRows(begin, count);
    if (y_.size() != 0) out.y_ = y_.segment(begin, count);
    return out;
}

DesignMatrix DesignMatrix::without_rows(Eigen::Index begin, Eigen::Index count) const {
    const Eigen::Index n = x_.rows();
    DesignMatrix out;
    out.names_ = names_;
    out.x_.resize(n - count, x_.cols());
    out.x_.topRows(begin) = x_.topRows(begin);
    out.x_.bottomRows(n - begin - count) = x_.bottomRows(n - begin - count);
    if (y_.size() != 0) {
        out.y_.resize(n - count);
        out.y_.head(begin) = y_.head(begin);
        out.y_.tail(n - begin - count) = y_.tail(n - begin - count);
    }
    return out;
}

InformationCriteria gaussian_information(double rss, std::size_t n, std::size_t coefficients) {
    const double nn = static_cast<double>(n);
    const double big_k = static_cast<double>(coefficients + 1);
    InformationCriteria ic;
    ic.log_likelihood = -0.5 * nn * (std::log(2.0 * std::numbers::pi * rss / nn) + 1.0);
    ic.aic = -2.0 * ic.log_likelihood + 2.0 * big_k;
    const double denom = nn - big_k - 1.0;
    ic.aicc = denom > 0.0 ? ic.aic + 2.0 * big_k * (big_k + 1.0) / denom
                          : std::numeric_limits<double>::infinity();
    return ic;
}

double LinearModel::coefficient(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] == name) return coefficients[static_cast<Eigen::Index>(j)];
    }
    throw std::out_of_range("LinearModel: unknown coefficient '" + name + "'");
}

Eigen::VectorXd LinearModel::predict(const DesignMatrix& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.rows());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        out += coefficients[static_cast<Eigen::Index>(j)] * x.matrix().col(x.column_index(columns[j]));
    }
    return out;
}

namespace {

constexpr double kRankTolerance = 1e-10;

// Columns that do not raise the rank when appended left to right.
std::vector<std::string> collinear_columns(const DesignMatrix& x, const Eigen::MatrixXd& scaled) {
    std::vector<std::string> out;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
        Eigen::MatrixXd trial(scaled.rows(), static_cast<Eigen::Index>(kept.size()) + 1);
        for (std::size_t c = 0; c < kept.size(); ++c) trial.col(static_cast<Eigen::Index>(c)) = scaled.col(kept[c]);
        trial.col(trial.cols() - 1) = scaled.col(j);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
        qr.setThreshold(kRankTolerance);
        if (qr.rank() == trial.cols()) {
            kept.push_back(j);
        } else {
            out.push_back(x.columns()[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

}  // namespace

LinearModel ols_fit(const DesignMatrix& x) {
    if (!x.has_response()) throw std::invalid_argument("ols_fit: design has no response");
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (n < k) {
        throw std::invalid_argument("ols_fit: " + std::to_string(n) + " rows for " + std::to_string(k) +
                                    " columns");
    }
    const Eigen::VectorXd norms = x.matrix().colwise().norm();
    Eigen::MatrixXd scaled = x.matrix();
    for (Eigen::Index j = 0; j < k; ++j) {
        if (norms[j] == 0.0) {
            throw SingularDesignError("ols_fit: column '" + x.columns()[static_cast<std::size_t>(j)] +
                                          "' is identically zero",
                                      {x.columns()[static_cast<std::size_t>(j)]});
        }
        scaled.col(j) /= norms[j];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < k) {
        auto cols = collinear_columns(x, scaled);
        std::string list;
        for (const auto& c : cols) list += (list.empty() ? "" : ", ") + c;
        throw SingularDesignError("ols_fit: singular design, collinear columns: " + list, std::move(cols));
    }

    LinearModel m;
    m.columns = x.columns();
    m.coefficients = qr.solve(x.response()).cwiseQuotient(norms);
    m.fitted = x.matrix() * m.coefficients;
    m.residuals = x.response() - m.fitted;
    m.rss = m.residuals.squaredNorm();
    m.n = static_cast<std::size_t>(n);
    m.k = static_cast<std::size_t>(k);
    m.sigma2 = n > k ? m.rss / static_cast<double>(n - k) : 0.0;

    // (X'X)^-1 = D^-1 (S'S)^-1 D^-1 with S = X D^-1 and S'S = P R'R P'.
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm_cov = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    Eigen::MatrixXd cov = perm * perm_cov * perm.transpose();
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) cov(i, j) /= norms[i] * norms[j];
    }
    m.unscaled_covariance = std::move(cov);

    const auto ic = gaussian_information(m.rss, m.n, m.k);
    m.log_likelihood = ic.log_likelihood;
    m.aic = ic.aic;
    m.aicc = ic.aicc;
    return m;
}

std::vector<Fold> kfold_partition(Eigen::Index n, std::size_t k) {
    if (k < 2) throw std::invalid_argument("kfold_partition: need at least 2 folds");
    if (n < static_cast<Eigen::Index>(2 * k)) {
        throw std::invalid_argument("kfold_cv: " + std::to_string(n) + " rows is fewer than 2k = " +
                                    std::to_string(2 * k));
    }
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::Index base = n / kk;
    const Eigen::Index extra = n % kk;
    std::vector<Fold> folds;
    Eigen::Index begin = 0;
    for (Eigen::Index f = 0; f < kk; ++f) {
        const Eigen::Index size = base + (f < extra ? 1 : 0);
        folds.push_back({begin, size});
        begin += size;
    }
    return folds;
}

CrossValidation kfold_cv(const DesignMatrix& x, std::size_t k) {
    if (!x.has_response()) throw std::invalid_argument("kfold_cv: design has no response");
    const auto folds = kfold_partition(x.rows(), k);
    CrossValidation cv;
    for (const auto& fold : folds) {
        const LinearModel m = ols_fit(x.without_rows(fold.begin, fold.size));
        const DesignMatrix held = x.row_block(fold.begin, fold.size);
        const Eigen::VectorXd err = held.response() - m.predict(held);
        cv.rmse += std::sqrt(err.squaredNorm() / static_cast<double>(fold.size));
        cv.mae += err.cwiseAbs().mean();
    }
    cv.rmse /= static_cast<double>(folds.size());
    cv.mae /= static_cast<double>(folds.size());
    return cv;
}

std::vector<double> vif(const DesignMatrix& x) {
    const auto names = x.regressor_names();
    // Full-rank check on the whole design first so the error names columns.
    {
        DesignMatrix probe(names, x.matrix().rightCols(x.cols() - 1), Eigen::VectorXd::Zero(x.rows()));
        (void)ols_fit(probe);
    }
    std::vector<double> out;
    for (std::size_t j = 0; j < names.size(); ++j) {
        std::vector<std::string> others;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i != j) others.push_back(names[i]);
        }
        const Eigen::VectorXd target = x.matrix().col(static_cast<Eigen::Index>(j) + 1);
        const double tss = (target.array() - target.mean()).matrix().squaredNorm();
        if (tss == 0.0) {
            throw SingularDesignError("vif: column '" + names[j] + "' is constant", {names[j]});
        }
        Eigen::MatrixXd rest(x.rows(), static_cast<Eigen::Index>(others.size()));
        for (std::size_t i = 0; i < others.size(); ++i) {
            rest.col(static_cast<Eigen::Index>(i)) = x.matrix().col(x.column_index(others[i]));
        }
        const LinearModel m = ols_fit(DesignMatrix(others, rest, target));
        const double r2 = 1.0 - m.rss / tss;
        out.push_back(r2 >= 1.0 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - r2));
    }
    return out;
}

nlohmann::json to_json(const LinearModel& m) {
    nlohmann::json j;
    j["columns"] = m.columns;
    j["coefficients"] = std::vector<double>(m.coefficients.data(), m.coefficients.data() + m.coefficients.size());
    j["rss"] = m.rss;
    j["sigma2"] = m.sigma2;
    j["log_likelihood"] = m.log_likelihood;
    j["aic"] = m.aic;
    j["aicc"] = std::isfinite(m.aicc) ? nlohmann::json(m.aicc) : nlohmann::json();
    j["n"] = m.n;
    return j;
}

LinearModel linear_model_from_json(const nlohmann::json& j) {
    try {
        LinearModel m;
        m.columns = j.at("columns").get<std::vector<std::string>>();
        const auto c = j.at("coefficients").get<std::vector<double>>();
        if (c.size() != m.columns.size() || c.empty()) throw std::invalid_argument("coefficient count mismatch");
        m.coefficients = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
        m.rss = j.at("rss").get<double>();
        m.sigma2 = j.at("sigma2").get<double>();
        m.log_likelihood = j.at("log_likelihood").get<double>();
        m.aic = j.at("aic").get<double>();
        m.aicc = j.at("aicc").is_null() ? std::numeric_limits<double>::infinity() : j.at("aicc").get<double>();
        m.n = j.at("n").get<std::size_t>();
        m.k = c.size();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("linear_model_from_json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("linear_model_from_json: ") + e.what());
    }
}

}  // namespace loadcast::regression
