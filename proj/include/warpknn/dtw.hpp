#ifndef WARPKNN_DTW_HPP
#define WARPKNN_DTW_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "warpknn/derivative.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

enum class Measure { dtw, ddtw };

inline std::string to_string(Measure m) { return m == Measure::dtw ? "dtw" : "ddtw"; }

inline Measure measure_from_string(const std::string& name) {
    if (name == "dtw") return Measure::dtw;
    if (name == "ddtw") return Measure::ddtw;
    throw Error("unknown measure: " + name + " (expected dtw or ddtw)");
}

// window is the Sakoe-Chiba band half-width in samples (nullopt = unbounded).
// The effective band widens to |m - n| when the lengths differ by more, so
// the corner cell (m, n) stays reachable for every length pair.
struct WarpConfig {
    std::optional<std::size_t> window = 100;
    Measure measure = Measure::dtw;
    bool normalize_by_path = false;
};

// Index pairs (1-based into S and T) of an optimal alignment, plus the raw
// cumulative cost. total is the unnormalized sum of point distances even when
// the producing config had normalize_by_path set.
struct WarpPath {
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    double total = 0.0;
};

// Euclidean distance between two p-vectors.
inline double point_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw DimensionMismatch("point_distance: vectors have lengths " + std::to_string(u.size()) +
                                " and " + std::to_string(v.size()));
    double sum = 0.0;
    for (std::size_t l = 0; l < u.size(); ++l) {
        const double diff = u[l] - v[l];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double min3(double a, double b, double c) { return std::min(a, std::min(b, c)); }

inline void check_same_channels(const TimeSeries& s, const TimeSeries& t) {
    if (s.channels() != t.channels())
        throw DimensionMismatch("series have " + std::to_string(s.channels()) + " and " +
                                std::to_string(t.channels()) + " channels");
}

// nullopt = unbounded. Bounded bands are widened to |m - n| for feasibility.
inline std::optional<std::size_t> effective_band(const std::optional<std::size_t>& window,
                                                 std::size_t m, std::size_t n) {
    if (!window) return std::nullopt;
    if (*window == 0) throw Error("warping window must be >= 1 when bounded");
    const std::size_t gap = m > n ? m - n : n - m;
    return std::max(*window, gap);
}

// Column range [lo, hi] of band cells in row i (1-based); empty means none.
inline std::pair<std::size_t, std::size_t> band_columns(std::size_t i, std::size_t n,
                                                        const std::optional<std::size_t>& band) {
    if (!band) return {1, n};
    const std::size_t lo = i > *band ? i - *band : 1;
    const std::size_t hi = std::min(n, i + *band);
    return {lo, hi};
}

// Cumulative-cost table, (m+1) x (n+1) with row/column 0 as the +inf border
// and cell (0,0) = 0. Cells outside the band stay +inf.
inline std::vector<double> full_table(const TimeSeries& s, const TimeSeries& t,
                                      const std::optional<std::size_t>& band) {
    const std::size_t m = s.rows(), n = t.rows();
    const std::size_t stride = n + 1;
    std::vector<double> table((m + 1) * stride, kInf);
    table[0] = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const auto [lo, hi] = band_columns(i, n, band);
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = point_distance(s.row(i - 1), t.row(j - 1));
            const double best = min3(table[(i - 1) * stride + (j - 1)],
                                     table[(i - 1) * stride + j],
                                     table[i * stride + (j - 1)]);
            table[i * stride + j] = d + best;
        }
    }
    return table;
}

inline WarpPath backtrack(const std::vector<double>& table, std::size_t m, std::size_t n) {
    const std::size_t stride = n + 1;
    WarpPath path;
    path.total = table[m * stride + n];
    std::size_t i = m, j = n;
    path.steps.emplace_back(i, j);
    while (i > 1 || j > 1) {
        const double diag = table[(i - 1) * stride + (j - 1)];
        const double up = table[(i - 1) * stride + j];
        const double left = table[i * stride + (j - 1)];
        // Tie preference: diagonal, then (i-1, j), then (i, j-1).
        if (diag <= up && diag <= left) {
            --i;
            --j;
        } else if (up <= left) {
            --i;
        } else {
            --j;
        }
        path.steps.emplace_back(i, j);
    }
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

inline WarpPath dtw_path_raw(const TimeSeries& s, const TimeSeries& t,
                             const std::optional<std::size_t>& window) {
    check_same_channels(s, t);
    const std::size_t m = s.rows(), n = t.rows();
    const auto band = effective_band(window, m, n);
    const auto table = full_table(s, t, band);
    return backtrack(table, m, n);
}

} // namespace detail

// Optimal warp path for the raw cumulative-cost recurrence
//   DTW(i,j) = d(s_i, t_j) + min{DTW(i,j-1), DTW(i-1,j), DTW(i-1,j-1)}
// restricted to |i - j| <= band. Ties in the min are broken diagonal-first so
// the recovered path is deterministic; distances are unaffected by the rule.
inline WarpPath dtw_path(const TimeSeries& s, const TimeSeries& t, const WarpConfig& cfg = {}) {
    return detail::dtw_path_raw(s, t, cfg.window);
}

// Cumulative DTW distance. Uses a two-row rolling buffer unless the config
// asks for path normalization, in which case the full table is built to count
// the optimal path's steps; both produce identical cell values.
inline double dtw_distance(const TimeSeries& s, const TimeSeries& t, const WarpConfig& cfg = {}) {
    detail::check_same_channels(s, t);
    const std::size_t m = s.rows(), n = t.rows();
    const auto band = detail::effective_band(cfg.window, m, n);

    if (cfg.normalize_by_path) {
        const auto path = detail::dtw_path_raw(s, t, cfg.window);
        return path.total / static_cast<double>(path.steps.size());
    }

    std::vector<double> prev(n + 1, detail::kInf);
    std::vector<double> curr(n + 1, detail::kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        std::fill(curr.begin(), curr.end(), detail::kInf);
        const auto [lo, hi] = detail::band_columns(i, n, band);
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = point_distance(s.row(i - 1), t.row(j - 1));
            const double best = detail::min3(prev[j - 1], prev[j], curr[j - 1]);
            curr[j] = d + best;
        }
        std::swap(prev, curr);
    }
    return prev[n];
}

// DTW over the derivative-transformed series: compares local shape rather
// than raw amplitude. Exactly dtw_distance(derivative_transform(S),
// derivative_transform(T), cfg).
inline double ddtw_distance(const TimeSeries& s, const TimeSeries& t, const WarpConfig& cfg = {}) {
    detail::check_same_channels(s, t);
    return dtw_distance(derivative_transform(s), derivative_transform(t), cfg);
}

// Distance under the config's selected measure.
inline double measure_distance(const TimeSeries& s, const TimeSeries& t, const WarpConfig& cfg) {
    return cfg.measure == Measure::ddtw ? ddtw_distance(s, t, cfg) : dtw_distance(s, t, cfg);
}

// Warp path under the config's selected measure; for ddtw this is the path
// between the two derivative series.
inline WarpPath measure_path(const TimeSeries& s, const TimeSeries& t, const WarpConfig& cfg) {
    if (cfg.measure == Measure::ddtw)
        return dtw_path(derivative_transform(s), derivative_transform(t), cfg);
    return dtw_path(s, t, cfg);
}

} // namespace warpknn

#endif // WARPKNN_DTW_HPP
