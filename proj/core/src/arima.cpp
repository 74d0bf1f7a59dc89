#include "loadcast/arima.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>
#include <stdexcept>

#include "loadcast/stationarity.hpp"
#include "optimizer.hpp"

namespace loadcast::arima {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kMaxUnconstrained = 7.0;  // |pacf| <= tanh(7)

Eigen::MatrixXd difference_rows(const Eigen::MatrixXd& x, int d) {
    Eigen::MatrixXd v = x;
    for (int k = 0; k < d; ++k) {
        const Eigen::Index n = v.rows();
        if (n < 1) break;
        Eigen::MatrixXd next = v.bottomRows(n - 1) - v.topRows(n - 1);
        v = std::move(next);
    }
    return v;
}

// Stationary covariance of the state, P = T P T' + R R', by doubling.
Eigen::MatrixXd stationary_covariance(const std::vector<double>& phi, const std::vector<double>& rv) {
    const auto r = static_cast<Eigen::Index>(phi.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        t(i, 0) = phi[static_cast<std::size_t>(i)];
        if (i + 1 < r) t(i, i + 1) = 1.0;
    }
    const Eigen::Map<const Eigen::VectorXd> rvec(rv.data(), r);
    Eigen::MatrixXd s = rvec * rvec.transpose();
    Eigen::MatrixXd a = t;
    for (int it = 0; it < 100; ++it) {
        const Eigen::MatrixXd inc = a * s * a.transpose();
        s += inc;
        a = a * a;
        const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
        if (inc.cwiseAbs().maxCoeff() <= 1e-15 * scale && a.cwiseAbs().maxCoeff() <= 1e-8) break;
        if (!s.allFinite()) break;
    }
    return s;
}

struct FilterResult {
    double ssq = 0.0;        // sum v^2 / F
    double sum_log_f = 0.0;  // sum log F
    std::vector<double> innovations;
    std::vector<double> state;
    bool ok = true;
};

// Kalman filter for u_t = Z alpha_t, alpha_{t+1} = T alpha_t + R e_t with
// Var(e) = 1. Freezes the covariance recursion once it reaches steady state.
FilterResult kalman(std::span<const double> u, std::span<const double> ar, std::span<const double> ma,
                    bool keep_innovations) {
    const std::size_t p = ar.size();
    const std::size_t q = ma.size();
    const std::size_t rs = std::max(p, q + 1);
    const auto r = static_cast<Eigen::Index>(rs);
    std::vector<double> phi(rs, 0.0);
    std::vector<double> rv(rs, 0.0);
    std::copy(ar.begin(), ar.end(), phi.begin());
    rv[0] = 1.0;
    std::copy(ma.begin(), ma.end(), rv.begin() + 1);

    FilterResult out;
    Eigen::MatrixXd pm = stationary_covariance(phi, rv);
    if (!pm.allFinite()) {
        out.ok = false;
        return out;
    }
    Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
    Eigen::VectorXd gain;
    Eigen::MatrixXd m(r, r);
    Eigen::MatrixXd next(r, r);
    bool frozen = false;
    double f_frozen = 1.0;
    if (keep_innovations) out.innovations.reserve(u.size());

    auto advance = [&](Eigen::VectorXd& v) {
        const double head = v(0);
        for (Eigen::Index i = 0; i + 1 < r; ++i) v(i) = phi[static_cast<std::size_t>(i)] * head + v(i + 1);
        v(r - 1) = phi[rs - 1] * head;
    };

    for (double obs : u) {
        const double f = frozen ? f_frozen : pm(0, 0);
        if (!(f > kTiny) || !std::isfinite(f)) {
            out.ok = false;
            return out;
        }
        const double v = obs - a(0);
        out.ssq += v * v / f;
        out.sum_log_f += std::log(f);
        if (keep_innovations) out.innovations.push_back(v);
        if (frozen) {
            a += gain * v;
            advance(a);
            continue;
        }
        const Eigen::VectorXd pc = pm.col(0);
        a += pc * (v / f);
        pm.noalias() -= pc * pc.transpose() / f;
        advance(a);
        // next = T pm T' + R R'
        for (Eigen::Index i = 0; i < r; ++i) {
            const double ph = phi[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < r; ++j) m(i, j) = ph * pm(0, j) + (i + 1 < r ? pm(i + 1, j) : 0.0);
        }
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < r; ++j) {
                next(i, j) = m(i, 0) * phi[static_cast<std::size_t>(j)] + (j + 1 < r ? m(i, j + 1) : 0.0) +
                             rv[static_cast<std::size_t>(i)] * rv[static_cast<std::size_t>(j)];
            }
        }
        const double drift = std::abs(next(0, 0) - f);
        pm.swap(next);
        if (drift < 1e-13 * f) {
            frozen = true;
            f_frozen = pm(0, 0);
            gain = pm.col(0) / f_frozen;
        }
    }
    out.state.assign(a.data(), a.data() + r);
    return out;
}

struct Problem {
    std::vector<double> w;
    Eigen::MatrixXd xd;  // differenced exogenous columns
    int p = 0;
    int q = 0;
    bool constant = false;
    Eigen::VectorXd reg0;   // [c?, beta...] start
    Eigen::VectorXd scale;  // per regression coefficient

    [[nodiscard]] Eigen::Index nreg() const { return reg0.size(); }
    [[nodiscard]] Eigen::Index nparams() const { return p + q + nreg(); }
};

struct Params {
    std::vector<double> ar;
    std::vector<double> ma;
    double c = 0.0;
    std::vector<double> beta;
};

Params unpack(const Problem& pb, const Eigen::VectorXd& x) {
    Params pr;
    std::vector<double> head(x.data(), x.data() + pb.p);
    pr.ar = pacf_to_coefficients(head);
    std::vector<double> mid(x.data() + pb.p, x.data() + pb.p + pb.q);
    pr.ma = pacf_to_coefficients(mid);
    for (double& v : pr.ma) v = -v;
    Eigen::Index k = 0;
    const Eigen::Index off = pb.p + pb.q;
    if (pb.constant) {
        pr.c = pb.reg0(0) + pb.scale(0) * x(off);
        k = 1;
    }
    for (; k < pb.nreg(); ++k) pr.beta.push_back(pb.reg0(k) + pb.scale(k) * x(off + k));
    return pr;
}

std::vector<double> arma_errors(const Problem& pb, const Params& pr) {
    std::vector<double> u = pb.w;
    if (!pr.beta.empty()) {
        const Eigen::Map<const Eigen::VectorXd> b(pr.beta.data(), static_cast<Eigen::Index>(pr.beta.size()));
        const Eigen::VectorXd xb = pb.xd * b;
        for (std::size_t t = 0; t < u.size(); ++t) u[t] -= xb(static_cast<Eigen::Index>(t));
    }
    if (pb.constant) {
        for (double& v : u) v -= pr.c;
    }
    return u;
}

double css_objective(const Problem& pb, const Eigen::VectorXd& x) {
    const Params pr = unpack(pb, x);
    const std::vector<double> u = arma_errors(pb, pr);
    const std::size_t m = u.size();
    const auto p = static_cast<std::size_t>(pb.p);
    const auto q = static_cast<std::size_t>(pb.q);
    std::vector<double> eps(m, 0.0);
    double ss = 0.0;
    for (std::size_t t = p; t < m; ++t) {
        double e = u[t];
        for (std::size_t i = 1; i <= p; ++i) e -= pr.ar[i - 1] * u[t - i];
        for (std::size_t j = 1; j <= q && j <= t; ++j) e -= pr.ma[j - 1] * eps[t - j];
        eps[t] = e;
        ss += e * e;
    }
    const auto n_eff = static_cast<double>(m - p);
    return 0.5 * n_eff * std::log(std::max(ss / n_eff, kTiny));
}

double ml_objective(const Problem& pb, const Eigen::VectorXd& x) {
    const Params pr = unpack(pb, x);
    const std::vector<double> u = arma_errors(pb, pr);
    const FilterResult f = kalman(u, pr.ar, pr.ma, false);
    if (!f.ok) return std::numeric_limits<double>::infinity();
    const auto m = static_cast<double>(u.size());
    return 0.5 * (m * std::log(std::max(f.ssq / m, kTiny)) + f.sum_log_f);
}

bool near_unit_root(const std::vector<double>& ma) {
    if (ma.empty()) return false;
    const auto q = static_cast<Eigen::Index>(ma.size());
    // Eigenvalues of the companion matrix are the inverse roots of theta(z).
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(q, q);
    for (Eigen::Index j = 0; j < q; ++j) c(0, j) = -ma[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < q; ++i) c(i, i - 1) = 1.0;
    const Eigen::VectorXcd ev = c.eigenvalues();
    return ev.cwiseAbs().maxCoeff() > 1.0 / 1.01;
}

Problem make_problem(std::span<const double> y, const ArimaSpec& spec, const Exogenous* xreg) {
    Problem pb;
    pb.p = spec.p;
    pb.q = spec.q;
    pb.constant = spec.constant;
    pb.w = difference(y, spec.d);
    const auto m = static_cast<Eigen::Index>(pb.w.size());
    const auto k = static_cast<Eigen::Index>(spec.xreg.size());
    if (k > 0) {
        if (xreg == nullptr) throw std::invalid_argument("fit_arima: spec names exogenous columns but none given");
        if (xreg->rows() != y.size()) throw std::invalid_argument("fit_arima: exogenous rows do not match series");
        pb.xd = difference_rows(xreg->select(spec.xreg).values, spec.d);
    } else {
        pb.xd = Eigen::MatrixXd(m, 0);
    }
    const Eigen::Index nreg = k + (spec.constant ? 1 : 0);
    pb.reg0 = Eigen::VectorXd::Zero(nreg);
    pb.scale = Eigen::VectorXd::Ones(nreg);
    if (nreg > 0) {
        Eigen::MatrixXd z(m, nreg);
        if (spec.constant) z.col(0).setOnes();
        if (k > 0) z.rightCols(k) = pb.xd;
        const Eigen::Map<const Eigen::VectorXd> w(pb.w.data(), m);
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z);
        if (qr.rank() < nreg) throw std::invalid_argument("fit_arima: exogenous regressors are collinear");
        pb.reg0 = qr.solve(w);
        const Eigen::VectorXd res = w - z * pb.reg0;
        const double s2 = res.squaredNorm() / static_cast<double>(std::max<Eigen::Index>(1, m - nreg));
        const Eigen::VectorXd diag = (z.transpose() * z).inverse().diagonal();
        for (Eigen::Index i = 0; i < nreg; ++i) {
            const double se = std::sqrt(std::max(0.0, s2 * diag(i)));
            pb.scale(i) = std::max(se, 1e-8 * std::max(1.0, std::abs(pb.reg0(i))));
        }
    }
    return pb;
}

ArimaModel finish(const Problem& pb, const ArimaSpec& spec, const Eigen::VectorXd& x, std::span<const double> y,
                  const Exogenous* xreg) {
    const Params pr = unpack(pb, x);
    ArimaModel mdl;
    mdl.spec = spec;
    mdl.ar = pr.ar;
    mdl.ma = pr.ma;
    mdl.beta = pr.beta;
    mdl.constant = pr.c;
    const std::vector<double> u = arma_errors(pb, pr);
    const FilterResult f = kalman(u, pr.ar, pr.ma, true);
    if (!f.ok) throw FitError("fit_arima: filter failed at the final estimate");
    const auto m = static_cast<double>(u.size());
    mdl.nobs = u.size();
    mdl.sigma2 = std::max(f.ssq / m, kTiny);
    mdl.log_likelihood = -0.5 * (m * (std::log(2.0 * std::numbers::pi * mdl.sigma2) + 1.0) + f.sum_log_f);
    const auto kp = static_cast<double>(mdl.parameter_count());
    mdl.aic = -2.0 * mdl.log_likelihood + 2.0 * kp;
    mdl.aicc = m - kp - 1.0 > 0.0 ? mdl.aic + 2.0 * kp * (kp + 1.0) / (m - kp - 1.0)
                                   : std::numeric_limits<double>::infinity();
    mdl.residuals = f.innovations;
    mdl.state = f.state;
    mdl.near_unit_root_ma = near_unit_root(mdl.ma);
    const auto d = static_cast<std::size_t>(spec.d);
    mdl.tail_levels.assign(y.end() - static_cast<long>(d), y.end());
    if (!spec.xreg.empty()) {
        mdl.tail_xreg = xreg->select(spec.xreg).values.bottomRows(static_cast<Eigen::Index>(d));
    }
    return mdl;
}

}  // namespace

Exogenous Exogenous::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > rows()) throw std::out_of_range("Exogenous::slice: rows out of range");
    return {names, values.middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(count))};
}

Exogenous Exogenous::select(std::span<const std::string> wanted) const {
    Exogenous out;
    out.values.resize(values.rows(), static_cast<Eigen::Index>(wanted.size()));
    for (std::size_t j = 0; j < wanted.size(); ++j) {
        const auto it = std::find(names.begin(), names.end(), wanted[j]);
        if (it == names.end()) throw std::invalid_argument("exogenous column missing: " + wanted[j]);
        out.values.col(static_cast<Eigen::Index>(j)) = values.col(it - names.begin());
        out.names.push_back(wanted[j]);
    }
    return out;
}

void ArimaSpec::validate() const {
    if (p < 0 || d < 0 || q < 0) throw std::invalid_argument("ArimaSpec: negative order");
    if (d > 2) throw std::invalid_argument("ArimaSpec: d must be at most 2");
    if (p + q == 0 && xreg.empty() && !constant) throw std::invalid_argument("ArimaSpec: empty model");
    if (constant && d > 1) throw std::invalid_argument("ArimaSpec: constant term requires d <= 1");
}

std::string ArimaSpec::label() const {
    return "ARIMA(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
}

std::size_t ArimaModel::parameter_count() const {
    return ar.size() + ma.size() + beta.size() + (spec.constant ? 1 : 0) + 1;
}

std::vector<double> pacf_to_coefficients(std::span<const double> unconstrained) {
    std::vector<double> a;
    a.reserve(unconstrained.size());
    for (double u : unconstrained) {
        const double r = std::tanh(std::clamp(u, -kMaxUnconstrained, kMaxUnconstrained));
        std::vector<double> next(a.size() + 1);
        const std::size_t k = a.size();
        for (std::size_t j = 0; j < k; ++j) next[j] = a[j] - r * a[k - 1 - j];
        next[k] = r;
        a = std::move(next);
    }
    return a;
}

ArmaLikelihood arma_likelihood(std::span<const double> u, std::span<const double> ar, std::span<const double> ma) {
    const FilterResult f = kalman(u, ar, ma, false);
    if (!f.ok) throw FitError("arma_likelihood: non-stationary or degenerate parameters");
    const auto m = static_cast<double>(u.size());
    ArmaLikelihood out;
    out.sigma2 = std::max(f.ssq / m, kTiny);
    out.log_likelihood = -0.5 * (m * (std::log(2.0 * std::numbers::pi * out.sigma2) + 1.0) + f.sum_log_f);
    return out;
}

ArimaModel fit_arima(std::span<const double> y, const ArimaSpec& spec, const Exogenous* xreg,
                     const FitOptions& options) {
    spec.validate();
    const std::size_t need = static_cast<std::size_t>(spec.p + spec.q + spec.d) + spec.xreg.size() + 10;
    if (y.size() <= need) {
        throw std::invalid_argument("fit_arima: " + std::to_string(y.size()) + " observations are too few for " +
                                    spec.label());
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw std::invalid_argument("fit_arima: non-finite observation");
    }
    const Problem pb = make_problem(y, spec, xreg);

    detail::MinimizeOptions mo;
    mo.max_iterations = options.max_iterations;
    mo.rel_tolerance = options.rel_tolerance;
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(pb.nparams());
    const auto css = detail::minimize_bfgs([&](const Eigen::VectorXd& x) { return css_objective(pb, x); }, x0, mo);
    ArimaModel css_model = finish(pb, spec, css.x, y, xreg);
    css_model.method = "CSS";
    css_model.converged = css.converged;
    css_model.iterations = css.iterations;
    if (options.css_only) {
        if (!css.converged) {
            throw ArimaFitError("fit_arima: CSS did not converge within " + std::to_string(options.max_iterations) +
                                    " iterations",
                                css_model);
        }
        return css_model;
    }
    const auto ml = detail::minimize_bfgs([&](const Eigen::VectorXd& x) { return ml_objective(pb, x); }, css.x, mo);
    if (!std::isfinite(ml.value)) throw ArimaFitError("fit_arima: likelihood is not finite", css_model);
    if (!ml.converged) {
        throw ArimaFitError("fit_arima: maximum likelihood did not converge within " +
                                std::to_string(options.max_iterations) + " iterations",
                            css_model);
    }
    ArimaModel out = finish(pb, spec, ml.x, y, xreg);
    out.method = "CSS-ML";
    out.converged = true;
    out.iterations = css.iterations + ml.iterations;
    return out;
}

ArimaModel condition_on(const ArimaModel& model, std::span<const double> y, const Exogenous* xreg) {
    const ArimaSpec& spec = model.spec;
    if (y.size() <= static_cast<std::size_t>(spec.d)) throw std::invalid_argument("condition_on: series too short");
    Problem pb;
    pb.p = spec.p;
    pb.q = spec.q;
    pb.constant = spec.constant;
    pb.w = difference(y, spec.d);
    Params pr{model.ar, model.ma, model.constant, model.beta};
    if (!spec.xreg.empty()) {
        if (xreg == nullptr || xreg->rows() != y.size()) {
            throw std::invalid_argument("condition_on: exogenous rows do not match series");
        }
        pb.xd = difference_rows(xreg->select(spec.xreg).values, spec.d);
    }
    const std::vector<double> u = arma_errors(pb, pr);
    const FilterResult f = kalman(u, model.ar, model.ma, true);
    if (!f.ok) throw FitError("condition_on: filter failed");
    ArimaModel out = model;
    out.residuals = f.innovations;
    out.state = f.state;
    const auto d = static_cast<long>(spec.d);
    out.tail_levels.assign(y.end() - d, y.end());
    if (!spec.xreg.empty()) out.tail_xreg = xreg->select(spec.xreg).values.bottomRows(d);
    return out;
}

std::vector<double> psi_weights(const ArimaModel& model, std::size_t count) {
    // phi*(B) = phi(B) (1 - B)^d as 1 - sum phi*_i B^i.
    std::vector<double> poly(model.ar.size() + 1);
    poly[0] = 1.0;
    for (std::size_t i = 0; i < model.ar.size(); ++i) poly[i + 1] = -model.ar[i];
    for (int k = 0; k < model.spec.d; ++k) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i];
        }
        poly = std::move(next);
    }
    std::vector<double> psi(count, 0.0);
    if (count == 0) return psi;
    psi[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j) {
        double v = j <= model.ma.size() ? model.ma[j - 1] : 0.0;
        for (std::size_t i = 1; i < poly.size() && i <= j; ++i) v += -poly[i] * psi[j - i];
        psi[j] = v;
    }
    return psi;
}

IntervalForecast forecast(const ArimaModel& model, std::size_t h, std::span<const double> levels,
                          const Exogenous* future_xreg) {
    if (h == 0) throw std::invalid_argument("forecast: horizon must be at least 1");
    IntervalForecast out;
    if (levels.empty()) {
        out.levels = {0.80, 0.95};
    } else {
        out.levels.assign(levels.begin(), levels.end());
    }
    for (double l : out.levels) {
        if (!(l > 0.0 && l < 1.0)) throw std::invalid_argument("forecast: levels must lie in (0, 1)");
    }
    const ArimaSpec& spec = model.spec;
    const auto hi = static_cast<Eigen::Index>(h);

    Eigen::VectorXd xb = Eigen::VectorXd::Zero(hi);
    if (!spec.xreg.empty()) {
        if (future_xreg == nullptr || future_xreg->rows() < h) {
            throw std::invalid_argument("forecast: model has exogenous regressors; " + std::to_string(h) +
                                        " future rows are required");
        }
        const Exogenous fut = future_xreg->select(spec.xreg);
        Eigen::MatrixXd stacked(model.tail_xreg.rows() + hi, fut.values.cols());
        stacked.topRows(model.tail_xreg.rows()) = model.tail_xreg;
        stacked.bottomRows(hi) = fut.values.topRows(hi);
        const Eigen::MatrixXd xd = difference_rows(stacked, spec.d);
        const Eigen::Map<const Eigen::VectorXd> b(model.beta.data(), static_cast<Eigen::Index>(model.beta.size()));
        xb = xd * b;
    }

    const std::size_t r = model.state.size();
    std::vector<double> phi(r, 0.0);
    std::copy(model.ar.begin(), model.ar.end(), phi.begin());
    std::vector<double> a = model.state;
    std::vector<double> w(h);
    for (std::size_t s = 0; s < h; ++s) {
        w[s] = a[0] + xb(static_cast<Eigen::Index>(s)) + (spec.constant ? model.constant : 0.0);
        const double head = a[0];
        for (std::size_t i = 0; i + 1 < r; ++i) a[i] = phi[i] * head + a[i + 1];
        a[r - 1] = phi[r - 1] * head;
    }
    std::vector<double> lv = integrate(w, model.tail_levels);
    out.point.assign(lv.begin() + static_cast<long>(model.tail_levels.size()), lv.end());

    const std::vector<double> psi = psi_weights(model, h);
    out.se.resize(h);
    double acc = 0.0;
    for (std::size_t s = 0; s < h; ++s) {
        acc += psi[s] * psi[s];
        out.se[s] = std::sqrt(model.sigma2 * acc);
    }
    const boost::math::normal norm;
    for (double l : out.levels) {
        const double z = boost::math::quantile(norm, 0.5 + l / 2.0);
        std::vector<double> lo(h);
        std::vector<double> up(h);
        for (std::size_t s = 0; s < h; ++s) {
            lo[s] = out.point[s] - z * out.se[s];
            up[s] = out.point[s] + z * out.se[s];
        }
        out.lower.push_back(std::move(lo));
        out.upper.push_back(std::move(up));
    }
    return out;
}

nlohmann::json ArimaModel::to_json() const {
    nlohmann::json j;
    j["spec"] = {{"p", spec.p}, {"d", spec.d}, {"q", spec.q}, {"xreg", spec.xreg}, {"constant", spec.constant}};
    j["ar"] = ar;
    j["ma"] = ma;
    j["beta"] = beta;
    j["constant"] = constant;
    j["sigma2"] = sigma2;
    j["log_likelihood"] = log_likelihood;
    j["aic"] = aic;
    j["aicc"] = std::isfinite(aicc) ? nlohmann::json(aicc) : nlohmann::json();
    j["nobs"] = nobs;
    j["method"] = method;
    j["converged"] = converged;
    j["near_unit_root_ma"] = near_unit_root_ma;
    j["iterations"] = iterations;
    j["state"] = state;
    j["tail_levels"] = tail_levels;
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < tail_xreg.rows(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(tail_xreg.cols()));
        for (Eigen::Index c = 0; c < tail_xreg.cols(); ++c) row[static_cast<std::size_t>(c)] = tail_xreg(i, c);
        rows.push_back(row);
    }
    j["tail_xreg"] = rows;
    j["residuals"] = residuals;
    return j;
}

ArimaModel ArimaModel::from_json(const nlohmann::json& j) {
    try {
        ArimaModel m;
        const auto& s = j.at("spec");
        m.spec.p = s.at("p").get<int>();
        m.spec.d = s.at("d").get<int>();
        m.spec.q = s.at("q").get<int>();
        m.spec.xreg = s.at("xreg").get<std::vector<std::string>>();
        m.spec.constant = s.at("constant").get<bool>();
        m.spec.validate();
        m.ar = j.at("ar").get<std::vector<double>>();
        m.ma = j.at("ma").get<std::vector<double>>();
        m.beta = j.at("beta").get<std::vector<double>>();
        m.constant = j.at("constant").get<double>();
        m.sigma2 = j.at("sigma2").get<double>();
        m.log_likelihood = j.at("log_likelihood").get<double>();
        m.aic = j.at("aic").get<double>();
        m.aicc = j.at("aicc").is_null() ? std::numeric_limits<double>::infinity() : j.at("aicc").get<double>();
        m.nobs = j.at("nobs").get<std::size_t>();
        m.method = j.at("method").get<std::string>();
        m.converged = j.at("converged").get<bool>();
        m.near_unit_root_ma = j.at("near_unit_root_ma").get<bool>();
        m.iterations = j.at("iterations").get<int>();
        m.state = j.at("state").get<std::vector<double>>();
        m.tail_levels = j.at("tail_levels").get<std::vector<double>>();
        m.residuals = j.value("residuals", std::vector<double>{});
        const auto rows = j.at("tail_xreg").get<std::vector<std::vector<double>>>();
        m.tail_xreg.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.spec.xreg.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.spec.xreg.size()) throw std::invalid_argument("tail_xreg width");
            for (std::size_t c = 0; c < rows[i].size(); ++c) {
                m.tail_xreg(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
            }
        }
        const std::size_t r = std::max<std::size_t>(static_cast<std::size_t>(m.spec.p),
                                                     static_cast<std::size_t>(m.spec.q) + 1);
        if (m.ar.size() != static_cast<std::size_t>(m.spec.p) || m.ma.size() != static_cast<std::size_t>(m.spec.q) ||
            m.beta.size() != m.spec.xreg.size() || m.state.size() != r ||
            m.tail_levels.size() != static_cast<std::size_t>(m.spec.d) ||
            rows.size() != static_cast<std::size_t>(m.spec.d) * (m.spec.xreg.empty() ? 0U : 1U)) {
            throw std::invalid_argument("inconsistent dimensions");
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("ArimaModel::from_json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("ArimaModel::from_json: ") + e.what());
    }
}

}  // namespace loadcast::arima
