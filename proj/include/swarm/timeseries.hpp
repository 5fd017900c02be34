#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "swarm/stats.hpp"

namespace swarm {

// Dynamic time warping distance with the symmetric step pattern and absolute
// difference as local cost.
inline double dtw_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(m + 1, inf), curr(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = inf;
        for (std::size_t j = 1; j <= m; ++j) {
            const double cost = std::abs(a[i - 1] - b[j - 1]);
            curr[j] = cost + std::min({prev[j - 1], prev[j], curr[j - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

// Largest-Lyapunov estimate by nearest-neighbour divergence tracking: for
// each reference point, pair it with its nearest neighbour (at least
// `theiler` steps away in time), follow both forward, and fit the slope of
// log-divergence per step. Returns per-reference slopes; the estimate is
// their mean. Degenerate series yield no slopes.
inline std::vector<double> lyapunov_divergence_slopes(std::span<const double> xs,
                                                      int follow_steps = 5) {
    const int n = static_cast<int>(xs.size());
    std::vector<double> slopes;
    if (n < 8) return slopes;
    const int theiler = std::max(1, n / 20);
    const int last_ref = n - 1 - follow_steps;
    for (int i = 0; i <= last_ref; ++i) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= last_ref; ++j) {
            if (std::abs(i - j) < theiler) continue;
            const double d = std::abs(xs[i] - xs[j]);
            if (d < best_d) { best_d = d; best = j; }
        }
        if (best < 0 || best_d <= 0.0) continue;
        // Least-squares slope of log divergence against step count.
        double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
        int count = 0;
        for (int s = 0; s <= follow_steps; ++s) {
            const double d = std::abs(xs[i + s] - xs[best + s]);
            if (d <= 0.0) continue;
            const double y = std::log(d);
            sum_t += s; sum_y += y; sum_tt += static_cast<double>(s) * s; sum_ty += s * y;
            ++count;
        }
        if (count < 2) continue;
        const double denom = count * sum_tt - sum_t * sum_t;
        if (denom <= 0.0) continue;
        slopes.push_back((count * sum_ty - sum_t * sum_y) / denom);
    }
    return slopes;
}

inline double lyapunov_estimate(std::span<const double> xs, int follow_steps = 5) {
    const std::vector<double> slopes = lyapunov_divergence_slopes(xs, follow_steps);
    return slopes.empty() ? 0.0 : mean(slopes);
}

// Per-sample noise-to-signal: squared residual of a centred width-3 moving
// average, normalized by the series variance. Constant series yield zeros.
inline std::vector<double> noise_to_signal_series(std::span<const double> xs) {
    std::vector<double> out;
    if (xs.size() < 3) return out;
    const double var = variance(xs);
    out.reserve(xs.size() - 2);
    for (std::size_t t = 1; t + 1 < xs.size(); ++t) {
        if (var <= 0.0) {
            out.push_back(0.0);
            continue;
        }
        const double smooth = (xs[t - 1] + xs[t] + xs[t + 1]) / 3.0;
        const double r = xs[t] - smooth;
        out.push_back(r * r / var);
    }
    return out;
}

// Shannon entropy (bits) of the normalized periodogram over positive
// frequencies, after mean removal. All-zero spectra give 0.
inline double spectral_entropy(std::span<const double> xs) {
    const int n = static_cast<int>(xs.size());
    if (n < 2) return 0.0;
    const double m = mean(xs);
    const int n_freq = n / 2;
    std::vector<double> power(n_freq, 0.0);
    double total = 0.0;
    for (int f = 1; f <= n_freq; ++f) {
        double re = 0.0, im = 0.0;
        for (int t = 0; t < n; ++t) {
            const double phase = -2.0 * std::numbers::pi * f * t / n;
            const double v = xs[t] - m;
            re += v * std::cos(phase);
            im += v * std::sin(phase);
        }
        power[f - 1] = re * re + im * im;
        total += power[f - 1];
    }
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double p : power) {
        if (p <= 0.0) continue;
        const double q = p / total;
        h -= q * std::log2(q);
    }
    return h;
}

// Effort-to-compress by non-sequential recursive pair substitution: count the
// passes replacing the most frequent adjacent pair (ties by lexicographic
// pair order) until the sequence is constant or a single symbol.
inline int effort_to_compress(std::span<const int> symbols) {
    std::vector<int> seq(symbols.begin(), symbols.end());
    int next_symbol = 0;
    for (int s : seq) next_symbol = std::max(next_symbol, s + 1);

    int passes = 0;
    while (seq.size() > 1) {
        const bool constant = std::all_of(seq.begin(), seq.end(),
                                          [&](int s) { return s == seq.front(); });
        if (constant) break;

        // Non-overlapping pair counts in one scan: unequal pairs cannot
        // overlap themselves, and a run of r equal symbols holds floor(r/2)
        // disjoint copies of its pair.
        std::map<std::pair<int, int>, int> counts;
        for (std::size_t i = 0; i + 1 < seq.size();) {
            if (seq[i] == seq[i + 1]) {
                std::size_t run_end = i;
                while (run_end + 1 < seq.size() && seq[run_end + 1] == seq[i]) ++run_end;
                counts[{seq[i], seq[i]}] += static_cast<int>((run_end - i + 1) / 2);
                i = run_end;
            } else {
                ++counts[{seq[i], seq[i + 1]}];
                ++i;
            }
        }

        std::pair<int, int> best_pair{0, 0};
        int best_count = 0;
        for (const auto& [p, count] : counts) {
            if (count > best_count) {  // map order gives the lexicographic tie-break
                best_count = count;
                best_pair = p;
            }
        }

        std::vector<int> replaced;
        replaced.reserve(seq.size());
        for (std::size_t j = 0; j < seq.size();) {
            if (j + 1 < seq.size() && seq[j] == best_pair.first && seq[j + 1] == best_pair.second) {
                replaced.push_back(next_symbol);
                j += 2;
            } else {
                replaced.push_back(seq[j]);
                ++j;
            }
        }
        seq = std::move(replaced);
        ++next_symbol;
        ++passes;
    }
    return passes;
}

}  // namespace swarm
