#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace swarm {

// Equal-width binning over the window's own min/max into {0..n_bins-1}.
// A constant series maps to all-zero symbols.
inline std::vector<int> symbolize(std::span<const double> series, int n_bins) {
    std::vector<int> out(series.size(), 0);
    if (series.empty() || n_bins < 2) return out;
    const auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi <= lo) return out;
    const double width = (hi - lo) / n_bins;
    for (std::size_t i = 0; i < series.size(); ++i) {
        int b = static_cast<int>((series[i] - lo) / width);
        out[i] = std::clamp(b, 0, n_bins - 1);
    }
    return out;
}

}  // namespace swarm
