#include "loadcast/selection.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <queue>
#include <thread>

#include "loadcast/diagnostics.hpp"
#include "loadcast/error.hpp"

namespace loadcast::regression {

namespace {

// Centred, unit-norm Gram system shared by every subset fit.
struct GramSystem {
    Eigen::MatrixXd gram;  // over all regressor columns (intercept excluded)
    Eigen::VectorXd cross;
    double tss = 0.0;
    std::vector<bool> constant;
    std::size_t n = 0;
};

GramSystem make_gram(const DesignMatrix& x, std::span<const Eigen::Index> cols) {
    const Eigen::Index n = x.rows();
    const auto k = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd z(n, k);
    GramSystem g;
    g.constant.assign(cols.size(), false);
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd c = x.matrix().col(cols[static_cast<std::size_t>(j)]);
        c.array() -= c.mean();
        const double norm = c.norm();
        if (norm <= 1e-12 * std::max(1.0, x.matrix().col(cols[static_cast<std::size_t>(j)]).cwiseAbs().maxCoeff())) {
            g.constant[static_cast<std::size_t>(j)] = true;
            c.setZero();
        } else {
            c /= norm;
        }
        z.col(j) = c;
    }
    Eigen::VectorXd y = x.response();
    y.array() -= y.mean();
    g.gram = z.transpose() * z;
    g.cross = z.transpose() * y;
    g.tss = y.squaredNorm();
    g.n = static_cast<std::size_t>(n);
    return g;
}

// RSS of the subset `idx` (indices into the Gram system); nullopt if singular.
std::optional<double> subset_rss(const GramSystem& g, std::span<const int> idx, std::vector<double>& work) {
    const std::size_t k = idx.size();
    if (k == 0) return g.tss;
    work.assign(k * k + k, 0.0);
    double* l = work.data();
    double* z = work.data() + k * k;
    constexpr double kPivotTol = 1e-10;
    for (std::size_t i = 0; i < k; ++i) {
        if (g.constant[static_cast<std::size_t>(idx[i])]) return std::nullopt;
        for (std::size_t j = 0; j <= i; ++j) {
            double s = g.gram(idx[i], idx[j]);
            for (std::size_t p = 0; p < j; ++p) s -= l[i * k + p] * l[j * k + p];
            if (i == j) {
                if (s <= kPivotTol) return std::nullopt;
                l[i * k + i] = std::sqrt(s);
            } else {
                l[i * k + j] = s / l[j * k + j];
            }
        }
    }
    // Forward solve L z = b; explained sum of squares = |z|^2.
    double explained = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double s = g.cross[idx[i]];
        for (std::size_t p = 0; p < i; ++p) s -= l[i * k + p] * z[p];
        z[i] = s / l[i * k + i];
        explained += z[i] * z[i];
    }
    return std::max(g.tss - explained, 0.0);
}

double aicc_from_rss(double rss, std::size_t n, std::size_t coefficients) {
    rss = std::max(rss, std::numeric_limits<double>::min());
    return gaussian_information(rss, n, coefficients).aicc;
}

struct Entry {
    double aicc;
    std::uint64_t mask;
    bool operator<(const Entry& o) const { return aicc < o.aicc || (aicc == o.aicc && mask < o.mask); }
};

struct SweepResult {
    std::vector<Entry> kept;
    std::uint64_t enumerated = 0;
    std::uint64_t pruned = 0;
    std::uint64_t singular = 0;
};

SweepResult sweep(const GramSystem& g, std::size_t n_forced, std::size_t n_free, std::uint64_t begin,
                  std::uint64_t end, std::size_t keep_n, double rss_floor) {
    SweepResult r;
    std::priority_queue<Entry> heap;  // max-heap: worst kept on top
    std::vector<int> idx;
    std::vector<double> work;
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        ++r.enumerated;
        idx.clear();
        for (std::size_t i = 0; i < n_forced; ++i) idx.push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < n_free; ++i) {
            if (mask >> i & 1U) idx.push_back(static_cast<int>(n_forced + i));
        }
        const std::size_t coefs = idx.size() + 1;
        if (heap.size() == keep_n && rss_floor > 0.0) {
            const double bound = aicc_from_rss(rss_floor, g.n, coefs);
            if (heap.top() < Entry{bound, mask}) {
                ++r.pruned;
                continue;
            }
        }
        const auto rss = subset_rss(g, idx, work);
        if (!rss) {
            ++r.singular;
            continue;
        }
        const Entry e{aicc_from_rss(*rss, g.n, coefs), mask};
        if (!std::isfinite(e.aicc)) {
            ++r.singular;
            continue;
        }
        if (heap.size() < keep_n) {
            heap.push(e);
        } else if (e < heap.top()) {
            heap.pop();
            heap.push(e);
        }
    }
    while (!heap.empty()) {
        r.kept.push_back(heap.top());
        heap.pop();
    }
    return r;
}

std::vector<std::string> mask_columns(std::span<const std::string> forced, std::span<const std::string> free,
                                      std::uint64_t mask) {
    std::vector<std::string> cols(forced.begin(), forced.end());
    for (std::size_t i = 0; i < free.size(); ++i) {
        if (mask >> i & 1U) cols.push_back(free[i]);
    }
    return cols;
}

bool by_aicc(const CandidateRecord& a, const CandidateRecord& b) {
    return a.aicc < b.aicc || (a.aicc == b.aicc && a.mask < b.mask);
}

}  // namespace

AiccRanking rank_subsets_by_aicc(const DesignMatrix& x, std::span<const std::string> free,
                                 std::span<const std::string> forced, std::size_t keep_n, unsigned jobs) {
    if (!x.has_response()) throw std::invalid_argument("rank_subsets_by_aicc: design has no response");
    if (keep_n == 0) throw std::invalid_argument("rank_subsets_by_aicc: keep_n must be positive");
    if (free.size() > 62) throw std::invalid_argument("rank_subsets_by_aicc: too many free regressors");
    std::vector<Eigen::Index> cols;
    for (const auto& f : forced) cols.push_back(x.column_index(f));
    for (const auto& f : free) cols.push_back(x.column_index(f));
    const GramSystem g = make_gram(x, cols);

    // RSS of the largest model bounds every subset's RSS from below.
    std::vector<int> all(cols.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<double> work;
    const double rss_floor = subset_rss(g, all, work).value_or(0.0);

    const std::uint64_t total = std::uint64_t{1} << free.size();
    const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
    std::vector<SweepResult> parts(workers);
    if (workers == 1) {
        parts[0] = sweep(g, forced.size(), free.size(), 0, total, keep_n, rss_floor);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t b = std::min(total, w * chunk);
            const std::uint64_t e = std::min(total, b + chunk);
            threads.emplace_back([&, w, b, e] {
                parts[w] = sweep(g, forced.size(), free.size(), b, e, keep_n, rss_floor);
            });
        }
        for (auto& t : threads) t.join();
    }

    std::vector<Entry> merged;
    AiccRanking out;
    for (auto& p : parts) {
        merged.insert(merged.end(), p.kept.begin(), p.kept.end());
        out.enumerated += p.enumerated;
        out.pruned += p.pruned;
        out.singular += p.singular;
    }
    std::sort(merged.begin(), merged.end());
    if (merged.size() > keep_n) merged.resize(keep_n);

    for (const auto& e : merged) {
        CandidateRecord rec;
        rec.mask = e.mask;
        rec.regressors = mask_columns(forced, free, e.mask);
        try {
            rec.aicc = ols_fit(x.select(rec.regressors)).aicc;
        } catch (const SingularDesignError&) {
            ++out.singular;
            continue;
        }
        out.best.push_back(std::move(rec));
    }
    std::stable_sort(out.best.begin(), out.best.end(), by_aicc);
    return out;
}

const CandidateRecord& SelectionReport::winning() const {
    if (!winner) throw std::logic_error("SelectionReport: no winner");
    return candidates.at(*winner);
}

nlohmann::json SelectionReport::to_json() const {
    auto num = [](double v) -> nlohmann::json { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
    nlohmann::json j;
    j["subsets_enumerated"] = subsets_enumerated;
    j["subsets_pruned"] = subsets_pruned;
    j["subsets_singular"] = subsets_singular;
    j["cv_rmse_baseline"] = num(cv_rmse_baseline);
    j["cv_mae_baseline"] = num(cv_mae_baseline);
    j["final_criterion"] = final_criterion;
    j["final_ranking"] = final_ranking;
    j["winner"] = winner ? nlohmann::json(*winner) : nlohmann::json();
    auto& arr = j["candidates"] = nlohmann::json::array();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        arr.push_back({{"rank", i},
                       {"regressors", c.regressors},
                       {"aicc", num(c.aicc)},
                       {"cv_rmse", num(c.cv_rmse)},
                       {"cv_mae", num(c.cv_mae)},
                       {"culled", c.culled},
                       {"test_max_abs_error", num(c.test_max_abs_error)},
                       {"diagnostics_checked", c.diagnostics_checked},
                       {"diagnostics_pass", c.diagnostics_pass},
                       {"shapiro_p", num(c.shapiro_p)},
                       {"max_vif", num(c.max_vif)}});
    }
    return j;
}

SelectionReport subset_search(const DesignMatrix& candidates, const SubsetSearchConfig& config) {
    if (!candidates.has_response()) throw std::invalid_argument("subset_search: design has no response");
    std::vector<std::string> free;
    for (const auto& name : candidates.regressor_names()) {
        if (std::find(config.forced.begin(), config.forced.end(), name) == config.forced.end()) {
            free.push_back(name);
        }
    }
    for (const auto& f : config.forced) (void)candidates.column_index(f);
    if (free.size() > config.max_exhaustive) {
        throw std::invalid_argument("subset_search: " + std::to_string(free.size()) +
                                    " enumerated regressors exceed the exhaustive cap of " +
                                    std::to_string(config.max_exhaustive) +
                                    "; force some columns or add them stepwise");
    }

    SelectionReport report;
    auto ranking = rank_subsets_by_aicc(candidates, free, config.forced, config.keep_n, config.jobs);
    report.subsets_enumerated = ranking.enumerated;
    report.subsets_pruned = ranking.pruned;
    report.subsets_singular = ranking.singular;
    report.candidates = std::move(ranking.best);
    if (report.candidates.empty()) throw SelectionError("subset_search: every subset is singular", report);

    // Stage 2: cross-validation and cull.
    double min_rmse = std::numeric_limits<double>::infinity();
    double min_mae = std::numeric_limits<double>::infinity();
    for (auto& c : report.candidates) {
        const auto cv = kfold_cv(candidates.select(c.regressors), config.cv_folds);
        c.cv_rmse = cv.rmse;
        c.cv_mae = cv.mae;
        min_rmse = std::min(min_rmse, cv.rmse);
        min_mae = std::min(min_mae, cv.mae);
    }
    report.cv_rmse_baseline = min_rmse;
    report.cv_mae_baseline = min_mae;
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        auto& c = report.candidates[i];
        c.culled = c.cv_rmse > config.cull_factor * min_rmse || c.cv_mae > config.cull_factor * min_mae;
        if (!c.culled) survivors.push_back(i);
    }

    // Stage 3: held-out max distance (or CV RMSE) ranking.
    const bool have_test = config.test && config.test->has_response();
    report.final_criterion = have_test ? "test_max_abs_error" : "cv_rmse";
    for (std::size_t i : survivors) {
        auto& c = report.candidates[i];
        if (have_test) {
            const LinearModel m = ols_fit(candidates.select(c.regressors));
            const DesignMatrix t = config.test->select(c.regressors);
            c.test_max_abs_error = (t.response() - m.predict(t)).cwiseAbs().maxCoeff();
        }
    }
    std::stable_sort(survivors.begin(), survivors.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = report.candidates[a];
        const auto& cb = report.candidates[b];
        const double ka = have_test ? ca.test_max_abs_error : ca.cv_rmse;
        const double kb = have_test ? cb.test_max_abs_error : cb.cv_rmse;
        if (ka != kb) return ka < kb;
        return by_aicc(ca, cb);
    });
    report.final_ranking = survivors;

    for (std::size_t i : survivors) {
        auto& c = report.candidates[i];
        if (!config.check_diagnostics) {
            report.winner = i;
            break;
        }
        const DesignMatrix sub = candidates.select(c.regressors);
        const LinearModel m = ols_fit(sub);
        c.diagnostics_checked = true;
        try {
            const std::size_t len = std::min<std::size_t>(m.residuals.size(), 5000);
            c.shapiro_p = shapiro_wilk({m.residuals.data(), len}).p_value;
        } catch (const std::invalid_argument&) {
            c.shapiro_p = CandidateRecord::kNaN;
        }
        if (c.regressors.size() >= 2) {
            const auto v = vif(sub);
            c.max_vif = *std::max_element(v.begin(), v.end());
        } else {
            c.max_vif = 1.0;
        }
        c.diagnostics_pass = c.shapiro_p > config.normality_alpha && c.max_vif < config.max_vif;
        if (c.diagnostics_pass) {
            report.winner = i;
            break;
        }
    }
    if (!report.winner) {
        throw SelectionError("subset_search: no candidate survived culling and diagnostics", report);
    }
    return report;
}

StepwiseResult stepwise_extend(const DesignMatrix& x, std::vector<std::string> base,
                               std::span<const std::string> pool) {
    StepwiseResult out;
    out.regressors = std::move(base);
    out.aicc = ols_fit(x.select(out.regressors)).aicc;
    std::vector<std::string> remaining(pool.begin(), pool.end());
    while (!remaining.empty()) {
        double best = out.aicc;
        std::size_t best_i = remaining.size();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            auto trial = out.regressors;
            trial.push_back(remaining[i]);
            try {
                const double a = ols_fit(x.select(trial)).aicc;
                if (a < best) {
                    best = a;
                    best_i = i;
                }
            } catch (const SingularDesignError&) {
            }
        }
        if (best_i == remaining.size()) break;
        out.regressors.push_back(remaining[best_i]);
        out.added.push_back(remaining[best_i]);
        out.aicc = best;
        remaining.erase(remaining.begin() + static_cast<long>(best_i));
    }
    return out;
}

}  // namespace loadcast::regression
