#ifndef WARPKNN_DERIVATIVE_HPP
#define WARPKNN_DERIVATIVE_HPP

#include <string>
#include <vector>

#include "warpknn/errors.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

// First-derivative estimate per channel (Keogh & Pazzani): at each interior
// point, the average of the one-step backward slope and the two-step centered
// slope,
//
//   D[i] = ((s[i] - s[i-1]) + (s[i+1] - s[i-1]) / 2) / 2 .
//
// The two boundary points, where the estimate is undefined, copy the nearest
// interior value so the output keeps shape m x p and warping grids line up
// with the raw series.
inline TimeSeries derivative_transform(const TimeSeries& series) {
    const std::size_t m = series.rows();
    const std::size_t p = series.channels();
    if (m < 3)
        throw SeriesTooShort("derivative_transform needs at least 3 samples, got " + std::to_string(m));

    std::vector<double> out(m * p);
    for (std::size_t c = 0; c < p; ++c) {
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double back = series(i, c) - series(i - 1, c);
            const double centered = (series(i + 1, c) - series(i - 1, c)) / 2.0;
            out[i * p + c] = (back + centered) / 2.0;
        }
        out[c] = out[p + c];
        out[(m - 1) * p + c] = out[(m - 2) * p + c];
    }
    return TimeSeries::from_flat(std::move(out), m, p, series.dim_names());
}

} // namespace warpknn

#endif // WARPKNN_DERIVATIVE_HPP
