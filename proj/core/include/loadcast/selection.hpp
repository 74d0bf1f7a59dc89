#pragma once

#include <cstdint>
#include <limits>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loadcast/regression.hpp"

namespace loadcast::regression {

struct SubsetSearchConfig {
    std::size_t keep_n = 1000;         ///< models kept after AICc ranking
    std::size_t cv_folds = 5;
    double cull_factor = 1.5;          ///< CV metric threshold relative to the stage minimum
    std::vector<std::string> forced;   ///< regressors present in every candidate
    std::optional<DesignMatrix> test;  ///< held-out rows ranked by max absolute error
    bool check_diagnostics = true;     ///< require residual normality and low VIF
    double normality_alpha = 0.05;
    double max_vif = 10.0;
    std::size_t max_exhaustive = 26;   ///< cap on enumerated (non-forced) regressors
    unsigned jobs = 1;
};

struct CandidateRecord {
    static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::string> regressors;  ///< without intercept
    std::uint64_t mask = 0;               ///< bit i = i-th enumerated regressor
    double aicc = kNaN;
    double cv_rmse = kNaN;
    double cv_mae = kNaN;
    bool culled = false;
    double test_max_abs_error = kNaN;
    bool diagnostics_checked = false;
    bool diagnostics_pass = false;
    double shapiro_p = kNaN;
    double max_vif = kNaN;
};

struct SelectionReport {
    std::uint64_t subsets_enumerated = 0;
    std::uint64_t subsets_pruned = 0;    ///< skipped by the AICc lower bound
    std::uint64_t subsets_singular = 0;
    std::vector<CandidateRecord> candidates;  ///< stage-1 order (ascending AICc)
    double cv_rmse_baseline = CandidateRecord::kNaN;
    double cv_mae_baseline = CandidateRecord::kNaN;
    std::string final_criterion;              ///< "test_max_abs_error" or "cv_rmse"
    std::vector<std::size_t> final_ranking;   ///< survivors, indices into candidates
    std::optional<std::size_t> winner;        ///< index into candidates

    [[nodiscard]] const CandidateRecord& winning() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Thrown when no candidate survives every stage; carries the full report.
class SelectionError : public std::runtime_error {
public:
    SelectionError(const std::string& what, SelectionReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    [[nodiscard]] const SelectionReport& report() const noexcept { return report_; }

private:
    SelectionReport report_;
};

struct AiccRanking {
    std::vector<CandidateRecord> best;  ///< ascending AICc, ties by mask
    std::uint64_t enumerated = 0;
    std::uint64_t pruned = 0;
    std::uint64_t singular = 0;
};

/// Streams over all 2^|free| subsets of `free` (each combined with `forced`),
/// keeping the `keep_n` lowest-AICc models. Uses centred Gram-matrix Cholesky
/// fits for the sweep and refits the survivors with ols_fit. Results do not
/// depend on `jobs`.
[[nodiscard]] AiccRanking rank_subsets_by_aicc(const DesignMatrix& x, std::span<const std::string> free,
                                               std::span<const std::string> forced, std::size_t keep_n,
                                               unsigned jobs = 1);

/// Staged best-subset search:
///   1. rank every subset by AICc, keep the best keep_n;
///   2. k-fold CV; drop models whose CV-RMSE or CV-MAE exceeds cull_factor
///      times the stage minimum;
///   3. order survivors by maximum absolute error on `test` (CV-RMSE when no
///      test rows are given) and pick the first one whose residuals pass
///      Shapiro-Wilk (p > alpha) with every VIF below max_vif.
/// Throws SelectionError when nothing survives, std::invalid_argument when the
/// enumeration would exceed max_exhaustive regressors.
[[nodiscard]] SelectionReport subset_search(const DesignMatrix& candidates, const SubsetSearchConfig& config);

struct StepwiseResult {
    std::vector<std::string> regressors;  ///< base followed by the added columns
    std::vector<std::string> added;       ///< in order of addition
    double aicc = 0.0;
};

/// Forward stepwise extension of `base`: repeatedly adds the column of `pool`
/// that lowers AICc the most, until no addition lowers it.
[[nodiscard]] StepwiseResult stepwise_extend(const DesignMatrix& x, std::vector<std::string> base,
                                             std::span<const std::string> pool);

}  // namespace loadcast::regression
