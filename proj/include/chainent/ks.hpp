#pragma once

#include <span>

namespace chainent {

struct KsResult {
    double distance = 0.0;
    /// Asymptotic two-sample p-value.
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_q(double x);

}  // namespace chainent
