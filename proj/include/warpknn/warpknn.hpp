#ifndef WARPKNN_WARPKNN_HPP
#define WARPKNN_WARPKNN_HPP

// Umbrella header: DTW/DDTW trajectory similarity, distance-weighted kNN
// classification, cross-validation and reporting.

#include "warpknn/confusion.hpp"
#include "warpknn/cross_validation.hpp"
#include "warpknn/derivative.hpp"
#include "warpknn/distance_matrix.hpp"
#include "warpknn/dtw.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/folds.hpp"
#include "warpknn/kinematics_io.hpp"
#include "warpknn/manifest.hpp"
#include "warpknn/metrics.hpp"
#include "warpknn/normalize.hpp"
#include "warpknn/prng.hpp"
#include "warpknn/report_io.hpp"
#include "warpknn/synth.hpp"
#include "warpknn/time_series.hpp"
#include "warpknn/tune.hpp"
#include "warpknn/wknn.hpp"

#endif // WARPKNN_WARPKNN_HPP
