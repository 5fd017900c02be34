#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace swarm {

inline double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Population variance (divisor n).
inline double variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

inline double stddev(std::span<const double> xs) { return std::sqrt(variance(xs)); }

inline double min_of(std::span<const double> xs) {
    return xs.empty() ? 0.0 : *std::min_element(xs.begin(), xs.end());
}

inline double max_of(std::span<const double> xs) {
    return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

// Angle of the mean resultant vector of a set of angles.
inline double circular_mean(std::span<const double> angles) {
    double c = 0.0, s = 0.0;
    for (double a : angles) { c += std::cos(a); s += std::sin(a); }
    if (c == 0.0 && s == 0.0) return 0.0;
    return std::atan2(s, c);
}

// 1 - mean resultant length, in [0, 1].
inline double circular_variance(std::span<const double> angles) {
    if (angles.empty()) return 0.0;
    double c = 0.0, s = 0.0;
    for (double a : angles) { c += std::cos(a); s += std::sin(a); }
    const double r = std::sqrt(c * c + s * s) / static_cast<double>(angles.size());
    return 1.0 - r;
}

// Wrap an angle difference into (-pi, pi].
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

// Pearson correlation; 0 when either series has zero variance.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

struct SummaryStats {
    double max = 0.0;
    double min = 0.0;
    double range = 0.0;
    double mean = 0.0;
    double std = 0.0;
};

inline SummaryStats summary_stats(std::span<const double> xs) {
    SummaryStats s;
    if (xs.empty()) return s;
    s.max = max_of(xs);
    s.min = min_of(xs);
    s.range = s.max - s.min;
    s.mean = mean(xs);
    s.std = stddev(xs);
    return s;
}

}  // namespace swarm
