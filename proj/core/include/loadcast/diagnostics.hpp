#pragma once

#include <span>
#include <vector>

namespace loadcast::regression {

struct ShapiroWilk {
    double w = 0.0;
    double p_value = 0.0;
};

/// Shapiro-Wilk normality test using Royston's (1995) approximation of the
/// coefficients and of the W distribution. Valid for 3 <= n <= 5000; throws
/// std::invalid_argument outside that range and DegenerateInputError for a
/// sample with zero range.
[[nodiscard]] ShapiroWilk shapiro_wilk(std::span<const double> sample);

struct KolmogorovSmirnov {
    double statistic = 0.0;  ///< sup |F_group - F_pooled|
    double p_value = 0.0;
};

/// Two-sample Kolmogorov-Smirnov test of a residual group against the pooled
/// residuals (asymptotic distribution with Stephens' small-sample correction).
/// Both samples need at least 3 values.
[[nodiscard]] KolmogorovSmirnov ks_uniformity_test(std::span<const double> group,
                                                   std::span<const double> pooled);

/// Kolmogorov limiting survival function Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2).
[[nodiscard]] double kolmogorov_survival(double lambda);

struct Levene {
    double statistic = 0.0;  ///< Brown-Forsythe W
    double p_value = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
};

/// Brown-Forsythe variant of Levene's test (deviations from group medians),
/// referred to F(k-1, N-k). Every group needs at least 3 values.
[[nodiscard]] Levene levene_test(const std::vector<std::vector<double>>& groups);

}  // namespace loadcast::regression
