#ifndef OSC_HARNESS_STATS_HPP
#define OSC_HARNESS_STATS_HPP

#include <vector>

namespace osc::harness {

/// Linear-interpolation quantile (position q (n - 1) in the sorted sample). NaN for an empty sample.
double quantile(std::vector<double> values, double q);

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double mean(const std::vector<double>& values);

/// Least-squares line y = intercept + slope x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

/// Throws std::invalid_argument with fewer than two points or a constant x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of log y against log x: y = exp(intercept) x^slope. Inputs must be positive.
LineFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// Closed intervals [a_lo, a_hi] and [b_lo, b_hi] intersect.
inline bool overlaps(double a_lo, double a_hi, double b_lo, double b_hi) { return a_lo <= b_hi && b_lo <= a_hi; }

}  // namespace osc::harness

#endif  // OSC_HARNESS_STATS_HPP
