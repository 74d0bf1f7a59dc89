#include "loadcast/diagnostics.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "loadcast/error.hpp"

namespace loadcast::regression {

namespace {

// c[0] + c[1] x + c[2] x^2 + ...
double poly(std::span<const double> c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

double median(std::vector<double> v) {
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + static_cast<long>(n / 2), v.end());
    const double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(n / 2));
    return 0.5 * (lo + hi);
}

}  // namespace

ShapiroWilk shapiro_wilk(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 3 || n > 5000) {
        throw std::invalid_argument("shapiro_wilk: sample size " + std::to_string(n) + " outside [3, 5000]");
    }
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double range = x.back() - x.front();
    if (!(range > 1e-19 * std::max(1.0, std::abs(x.front())))) {
        throw DegenerateInputError("shapiro_wilk: sample has zero range");
    }

    static constexpr double g[] = {-2.273, 0.459};
    static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

    const std::size_t half = n / 2;
    const double an = static_cast<double>(n);
    std::vector<double> a(half);  // weights for the upper half, a[0] largest
    if (n == 3) {
        a[0] = std::sqrt(0.5);
    } else {
        const boost::math::normal std_normal;
        std::vector<double> m(half);
        double summ2 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            m[i] = boost::math::quantile(std_normal, (static_cast<double>(i + 1) - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, rsn) - m[0] / ssumm2;
        std::size_t first_plain = 1;
        double fac = 0.0;
        if (n > 5) {
            first_plain = 2;
            const double a2 = -m[1] / ssumm2 + poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                            (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[1] = a2;
        } else {
            fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
        }
        a[0] = a1;
        for (std::size_t i = first_plain; i < half; ++i) a[i] = -m[i] / fac;
    }

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / an;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    double num = 0.0;
    for (std::size_t i = 0; i < half; ++i) num += a[i] * (x[n - 1 - i] - x[i]);
    const double w = std::min(1.0, num * num / ss);
    const double w1 = 1.0 - w;

    ShapiroWilk out;
    out.w = w;
    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6 / pi
        constexpr double stqr = 1.04719755119660;  // pi / 3
        out.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
        return out;
    }
    if (w1 <= 0.0) {
        out.p_value = 1.0;
        return out;
    }
    double y = std::log(w1);
    double mu = 0.0;
    double sigma = 0.0;
    if (n <= 11) {
        const double gamma = poly(g, an);
        if (y >= gamma) {
            out.p_value = 1e-99;
            return out;
        }
        y = -std::log(gamma - y);
        mu = poly(c3, an);
        sigma = std::exp(poly(c4, an));
    } else {
        const double xx = std::log(an);
        mu = poly(c5, xx);
        sigma = std::exp(poly(c6, xx));
    }
    out.p_value = boost::math::cdf(boost::math::complement(boost::math::normal(mu, sigma), y));
    return out;
}

double kolmogorov_survival(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KolmogorovSmirnov ks_uniformity_test(std::span<const double> group, std::span<const double> pooled) {
    if (group.size() < 3 || pooled.size() < 3) {
        throw std::invalid_argument("ks_uniformity_test: each sample needs at least 3 values");
    }
    std::vector<double> a(group.begin(), group.end());
    std::vector<double> b(pooled.begin(), pooled.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    KolmogorovSmirnov out;
    out.statistic = d;
    out.p_value = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
    return out;
}

Levene levene_test(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw std::invalid_argument("levene_test: need at least two groups");
    std::vector<std::vector<double>> z(groups.size());
    double total = 0.0;
    std::size_t big_n = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() < 3) {
            throw std::invalid_argument("levene_test: group " + std::to_string(g) + " has fewer than 3 values");
        }
        const double med = median(groups[g]);
        for (double v : groups[g]) {
            z[g].push_back(std::abs(v - med));
            total += z[g].back();
        }
        big_n += groups[g].size();
    }
    const double k = static_cast<double>(groups.size());
    const double nn = static_cast<double>(big_n);
    const double grand = total / nn;
    double between = 0.0;
    double within = 0.0;
    for (const auto& zg : z) {
        const double mean = std::accumulate(zg.begin(), zg.end(), 0.0) / static_cast<double>(zg.size());
        between += static_cast<double>(zg.size()) * (mean - grand) * (mean - grand);
        for (double v : zg) within += (v - mean) * (v - mean);
    }
    Levene out;
    out.df1 = k - 1.0;
    out.df2 = nn - k;
    if (within == 0.0) {
        if (between == 0.0) throw DegenerateInputError("levene_test: all deviations are zero");
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        return out;
    }
    out.statistic = (out.df2 / out.df1) * between / within;
    const boost::math::fisher_f dist(out.df1, out.df2);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
    return out;
}

}  // namespace loadcast::regression
