#pragma once

#include <Eigen/Dense>
#include <functional>

namespace loadcast::detail {

struct MinimizeOptions {
    int max_iterations = 500;
    double rel_tolerance = 1e-8;
    double step = 1e-5;  ///< central-difference step, relative to max(1, |x_i|)
    double max_step = 1.0;  ///< cap on the largest coordinate move per iteration
};

struct MinimizeResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

/// BFGS with central-difference gradients and Armijo backtracking.
/// Non-finite objective values are treated as +inf by the line search.
MinimizeResult minimize_bfgs(const std::function<double(const Eigen::VectorXd&)>& f, Eigen::VectorXd x0,
                             const MinimizeOptions& options = {});

}  // namespace loadcast::detail
