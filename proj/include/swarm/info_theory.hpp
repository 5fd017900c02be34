#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace swarm {

struct EstimatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline int alphabet_size(std::span<const int> xs) {
    int m = 0;
    for (int x : xs) m = std::max(m, x + 1);
    return std::max(m, 1);
}

inline double log2_ratio(double num, double den) {
    // 0·log0 convention: callers only invoke this with positive numerators.
    return std::log2(num / den);
}

}  // namespace detail

// Plug-in (histogram) transfer entropy source -> target in bits, first-order:
// average over n of log2 p(x_n | x_{n-1}, y_{n-1}) / p(x_n | x_{n-1}).
// Empty histogram cells contribute zero.
inline double transfer_entropy(std::span<const int> target, std::span<const int> source) {
    const std::size_t len = std::min(target.size(), source.size());
    if (len < 2) throw EstimatorError("transfer_entropy: need at least 2 symbols");
    const int ax = detail::alphabet_size(target.subspan(0, len));
    const int ay = detail::alphabet_size(source.subspan(0, len));

    std::vector<double> c_abc(static_cast<std::size_t>(ax) * ax * ay, 0.0);
    std::vector<double> c_ab(static_cast<std::size_t>(ax) * ax, 0.0);
    std::vector<double> c_bc(static_cast<std::size_t>(ax) * ay, 0.0);
    std::vector<double> c_b(ax, 0.0);
    const double total = static_cast<double>(len - 1);
    for (std::size_t n = 1; n < len; ++n) {
        const int a = target[n], b = target[n - 1], c = source[n - 1];
        c_abc[(static_cast<std::size_t>(a) * ax + b) * ay + c] += 1.0;
        c_ab[static_cast<std::size_t>(a) * ax + b] += 1.0;
        c_bc[static_cast<std::size_t>(b) * ay + c] += 1.0;
        c_b[b] += 1.0;
    }

    double te = 0.0;
    for (int a = 0; a < ax; ++a) {
        for (int b = 0; b < ax; ++b) {
            for (int c = 0; c < ay; ++c) {
                const double n_abc = c_abc[(static_cast<std::size_t>(a) * ax + b) * ay + c];
                if (n_abc <= 0.0) continue;
                const double num = n_abc * c_b[b];
                const double den = c_bc[static_cast<std::size_t>(b) * ay + c] *
                                   c_ab[static_cast<std::size_t>(a) * ax + b];
                te += (n_abc / total) * detail::log2_ratio(num, den);
            }
        }
    }
    return te;
}

// Plug-in mutual information I(X_n ; X_{n-1}) in bits (active information
// storage under the same first-order assumption as the TE estimator).
inline double active_information_storage(std::span<const int> xs) {
    if (xs.size() < 2) throw EstimatorError("active_information_storage: need at least 2 symbols");
    const int ax = detail::alphabet_size(xs);
    std::vector<double> c_ab(static_cast<std::size_t>(ax) * ax, 0.0);
    std::vector<double> c_a(ax, 0.0), c_b(ax, 0.0);
    const double total = static_cast<double>(xs.size() - 1);
    for (std::size_t n = 1; n < xs.size(); ++n) {
        c_ab[static_cast<std::size_t>(xs[n]) * ax + xs[n - 1]] += 1.0;
        c_a[xs[n]] += 1.0;
        c_b[xs[n - 1]] += 1.0;
    }
    double mi = 0.0;
    for (int a = 0; a < ax; ++a) {
        for (int b = 0; b < ax; ++b) {
            const double n_ab = c_ab[static_cast<std::size_t>(a) * ax + b];
            if (n_ab <= 0.0) continue;
            mi += (n_ab / total) * detail::log2_ratio(n_ab * total, c_a[a] * c_b[b]);
        }
    }
    return mi;
}

// Shannon entropy of the symbol distribution, in bits.
inline double shannon_entropy(std::span<const int> xs) {
    if (xs.empty()) return 0.0;
    const int ax = detail::alphabet_size(xs);
    std::vector<double> counts(ax, 0.0);
    for (int x : xs) counts[x] += 1.0;
    double h = 0.0;
    const double total = static_cast<double>(xs.size());
    for (double c : counts) {
        if (c <= 0.0) continue;
        const double p = c / total;
        h -= p * std::log2(p);
    }
    return h;
}

struct PairwiseTE {
    double te_fwd = 0.0;  // source J -> target I
    double te_rev = 0.0;  // target I -> source J
    double net = 0.0;     // te_fwd - te_rev
    double tot = 0.0;     // te_fwd + te_rev
    double sync = 0.0;    // sgn(net) * |tot|
};

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Signed coupling intensity: zero net transfer means no detected coupling.
inline double synchronicity(const PairwiseTE& pair) {
    return sgn(pair.net) * std::abs(pair.tot);
}

inline PairwiseTE pairwise_te(std::span<const int> target, std::span<const int> source) {
    PairwiseTE out;
    out.te_fwd = transfer_entropy(target, source);
    out.te_rev = transfer_entropy(source, target);
    out.net = out.te_fwd - out.te_rev;
    out.tot = out.te_fwd + out.te_rev;
    out.sync = synchronicity(out);
    return out;
}

// te[src][dst] for every ordered pair of symbol series.
inline std::vector<std::vector<double>> te_matrix(
    const std::vector<std::vector<int>>& symbol_series) {
    const std::size_t n = symbol_series.size();
    std::vector<std::vector<double>> te(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t d = 0; d < n; ++d)
            if (s != d) te[s][d] = transfer_entropy(symbol_series[d], symbol_series[s]);
    return te;
}

}  // namespace swarm
