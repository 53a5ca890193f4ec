#pragma once

// Statistical kernels: Pearson correlation and its exact two-tailed
// significance test under Student-t with n - 2 degrees of freedom.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "consim/errors.hpp"

namespace consim {

/// Pearson correlation of one (x, y) pairing over a batch, with the
/// t statistic t = r * sqrt((n - 2) / (1 - r^2)) and its two-tailed
/// p-value.
struct CorrelationReport {
    double r = 0.0;
    std::size_t n = 0;
    double t_stat = 0.0;
    double p_value = 1.0;
    std::string x_label;
    std::string y_label;
};

/// Sample Pearson correlation, mean-centered sums, clamped to [-1, 1]
/// against floating-point overshoot on near-collinear data.
inline double pearson_r(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("pearson_r: input lengths differ");
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw std::invalid_argument("pearson_r: need at least 3 samples");
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::domain_error("pearson_r: zero variance in an input");
    }
    const double r = sxy / std::sqrt(sxx * syy);
    return std::min(1.0, std::max(-1.0, r));
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cont_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw NumericError("incomplete beta: continued fraction did not converge");
}

/// Regularized incomplete beta I_x(a, b).
inline double reg_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cont_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Two-tailed p-value of a Pearson correlation r over n samples:
/// p = 2 * P(T_{n-2} > |t|) = I_{df/(df+t^2)}(df/2, 1/2). |r| is clamped
/// to 1 before the t transform (|r| = 1 returns exactly 0, r = 0 exactly 1).
inline double p_value_two_tailed(double r, std::size_t n) {
    if (n < 3) {
        throw std::invalid_argument("p_value_two_tailed: need n >= 3");
    }
    const double abs_r = std::min(std::fabs(r), 1.0);
    if (abs_r >= 1.0) return 0.0;
    const auto df = static_cast<double>(n - 2);
    const double t_sq = abs_r * abs_r * df / (1.0 - abs_r * abs_r);
    return detail::reg_incomplete_beta(0.5 * df, 0.5, df / (df + t_sq));
}

/// Full report for two extracted columns (throws like pearson_r /
/// p_value_two_tailed on degenerate inputs).
inline CorrelationReport make_correlation_report(std::span<const double> xs,
                                                 std::span<const double> ys,
                                                 std::string x_label, std::string y_label) {
    CorrelationReport report;
    report.r = pearson_r(xs, ys);
    report.n = xs.size();
    const auto df = static_cast<double>(report.n - 2);
    report.t_stat = report.r >= 1.0   ? std::numeric_limits<double>::infinity()
                    : report.r <= -1.0 ? -std::numeric_limits<double>::infinity()
                                       : report.r * std::sqrt(df / (1.0 - report.r * report.r));
    report.p_value = p_value_two_tailed(report.r, report.n);
    report.x_label = std::move(x_label);
    report.y_label = std::move(y_label);
    return report;
}

/// Correlates two fields over the converged records of a batch;
/// non-converged records are skipped. Fewer than 3 usable records is a
/// domain error.
template <typename Record, typename FieldX, typename FieldY>
    requires requires(const Record& rec, FieldX fx, FieldY fy) {
        { rec.converged } -> std::convertible_to<bool>;
        { fx(rec) } -> std::convertible_to<double>;
        { fy(rec) } -> std::convertible_to<double>;
    }
CorrelationReport correlate(const std::vector<Record>& records, FieldX&& x_field,
                            FieldY&& y_field, std::string x_label, std::string y_label) {
    std::vector<double> xs, ys;
    xs.reserve(records.size());
    ys.reserve(records.size());
    for (const Record& rec : records) {
        if (!rec.converged) continue;
        xs.push_back(static_cast<double>(x_field(rec)));
        ys.push_back(static_cast<double>(y_field(rec)));
    }
    if (xs.size() < 3) {
        throw std::domain_error("correlate: fewer than 3 converged records (" +
                                std::to_string(xs.size()) + ")");
    }
    return make_correlation_report(xs, ys, std::move(x_label), std::move(y_label));
}

/// One-line rendering used by the CLI and batch output:
/// `x=<label> y=<label> n=<n> r=<r:.4> t=<t:.4> p=<p:.3e>`.
inline std::string format_report_line(const CorrelationReport& report) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), "x=%s y=%s n=%zu r=%.4f t=%.4f p=%.3e",
                  report.x_label.c_str(), report.y_label.c_str(), report.n, report.r,
                  report.t_stat, report.p_value);
    return buffer;
}

}  // namespace consim
