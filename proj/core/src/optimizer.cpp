#include "optimizer.hpp"

#include <cmath>
#include <limits>

namespace loadcast::detail {

namespace {

double safe(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

MinimizeResult minimize_bfgs(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                             const MinimizeOptions& options) {
    const Eigen::Index n = x0.size();
    MinimizeResult res;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++res.evaluations;
        return safe(f(x));
    };
    auto gradient = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd g(n);
        Eigen::VectorXd xp = x;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double h = options.step * std::max(1.0, std::abs(x(i)));
            xp(i) = x(i) + h;
            const double fp = eval(xp);
            xp(i) = x(i) - h;
            const double fm = eval(xp);
            xp(i) = x(i);
            g(i) = std::isfinite(fp) && std::isfinite(fm) ? (fp - fm) / (2.0 * h) : 0.0;
        }
        return g;
    };

    res.x = std::move(x0);
    res.value = eval(res.x);
    if (n == 0 || !std::isfinite(res.value)) {
        res.converged = n == 0;
        return res;
    }
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = gradient(res.x);

    for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
        Eigen::VectorXd dir = -h_inv * g;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            h_inv.setIdentity();
            dir = -g;
            slope = -g.squaredNorm();
        }
        if (!(slope < 0.0)) {
            res.converged = true;
            break;
        }
        // keep tanh-mapped coefficients out of saturation on the first steps
        const double longest = dir.lpNorm<Eigen::Infinity>();
        if (longest > options.max_step) {
            dir *= options.max_step / longest;
            slope *= options.max_step / longest;
        }
        double step = 1.0;
        Eigen::VectorXd x_new;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        for (int k = 0; k < 40; ++k) {
            x_new = res.x + step * dir;
            f_new = eval(x_new);
            if (f_new <= res.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Line search stalled; the gradient estimate is at noise level.
            res.converged = true;
            break;
        }
        const double f_old = res.value;
        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd g_new = gradient(x_new);
        const Eigen::VectorXd y = g_new - g;
        res.x = x_new;
        res.value = f_new;
        g = g_new;
        if (std::abs(f_old - f_new) <= options.rel_tolerance * (std::abs(f_old) + options.rel_tolerance)) {
            res.converged = true;
            ++res.iterations;
            break;
        }
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const Eigen::VectorXd hy = h_inv * y;
            const double rho = 1.0 / sy;
            h_inv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }
    }
    return res;
}

}  // namespace loadcast::detail
