#ifndef WARPKNN_NORMALIZE_HPP
#define WARPKNN_NORMALIZE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

enum class NormalizationPolicy { none, zscore, minmax };

inline std::string to_string(NormalizationPolicy p) {
    switch (p) {
        case NormalizationPolicy::none: return "none";
        case NormalizationPolicy::zscore: return "zscore";
        case NormalizationPolicy::minmax: return "minmax";
    }
    return "none";
}

inline NormalizationPolicy normalization_policy_from_string(const std::string& name) {
    if (name == "none") return NormalizationPolicy::none;
    if (name == "zscore") return NormalizationPolicy::zscore;
    if (name == "minmax") return NormalizationPolicy::minmax;
    throw ManifestError("unknown normalization policy: " + name);
}

// Per-channel z-normalization: each channel is shifted to sample mean 0 and
// scaled to standard deviation 1. The sd convention is population sd (divide
// by m, not m-1). A zero-variance channel is shifted to 0 and left unscaled.
inline TimeSeries znormalize(const TimeSeries& series) {
    const std::size_t m = series.rows();
    const std::size_t p = series.channels();
    if (m < 2) throw SeriesTooShort("znormalize needs at least 2 samples, got " + std::to_string(m));

    std::vector<double> out(m * p);
    for (std::size_t c = 0; c < p; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) mean += series(i, c);
        mean /= static_cast<double>(m);
        double var = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double dev = series(i, c) - mean;
            var += dev * dev;
        }
        var /= static_cast<double>(m);
        const double sd = std::sqrt(var);
        if (sd == 0.0) {
            for (std::size_t i = 0; i < m; ++i) out[i * p + c] = 0.0;
        } else {
            for (std::size_t i = 0; i < m; ++i) out[i * p + c] = (series(i, c) - mean) / sd;
        }
    }
    return TimeSeries::from_flat(std::move(out), m, p, series.dim_names());
}

// Per-channel min-max scaling to [0, 1]; a constant channel maps to 0.
inline TimeSeries minmax_normalize(const TimeSeries& series) {
    const std::size_t m = series.rows();
    const std::size_t p = series.channels();
    if (m < 2) throw SeriesTooShort("minmax needs at least 2 samples, got " + std::to_string(m));

    std::vector<double> out(m * p);
    for (std::size_t c = 0; c < p; ++c) {
        double lo = series(0, c), hi = series(0, c);
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, series(i, c));
            hi = std::max(hi, series(i, c));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < m; ++i)
            out[i * p + c] = range == 0.0 ? 0.0 : (series(i, c) - lo) / range;
    }
    return TimeSeries::from_flat(std::move(out), m, p, series.dim_names());
}

inline TimeSeries apply_normalization(const TimeSeries& series, NormalizationPolicy policy) {
    switch (policy) {
        case NormalizationPolicy::none: return series;
        case NormalizationPolicy::zscore: return znormalize(series);
        case NormalizationPolicy::minmax: return minmax_normalize(series);
    }
    return series;
}

} // namespace warpknn

#endif // WARPKNN_NORMALIZE_HPP
