#ifndef WARPKNN_TUNE_HPP
#define WARPKNN_TUNE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "warpknn/cross_validation.hpp"
#include "warpknn/distance_matrix.hpp"
#include "warpknn/errors.hpp"

namespace warpknn {

struct KTuneRow {
    std::size_t k = 0;
    double mean_accuracy = 0.0;
    double sd_accuracy = 0.0;
};

// Accuracy as a function of k: for each k in [k_lo, k_hi] the full replicated
// cross-validation protocol runs and its accuracy statistics are reported.
// Deterministic given base_seed.
inline std::vector<KTuneRow> tune_k(const DistanceMatrix& matrix,
                                    std::span<const std::string> labels, std::size_t k_lo,
                                    std::size_t k_hi, const CvProtocol& protocol,
                                    std::size_t replications, std::uint64_t base_seed) {
    if (k_lo < 1 || k_lo > k_hi) throw Error("tune_k: need 1 <= k_lo <= k_hi");

    // Worst-case training size: N - ceil(N/folds) for k-fold, N - 1 for LOO.
    const std::size_t n = labels.size();
    const std::size_t max_fold =
        protocol.kind == CvProtocol::Kind::loo ? 1 : (n + protocol.n_folds - 1) / protocol.n_folds;
    if (k_hi > n - max_fold)
        throw KTooLarge("tune_k: k_hi=" + std::to_string(k_hi) +
                        " exceeds the smallest possible training partition (" +
                        std::to_string(n - max_fold) + ")");

    std::vector<KTuneRow> rows;
    rows.reserve(k_hi - k_lo + 1);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        const EvalReport report = replicate(matrix, labels, k, protocol, replications, base_seed);
        rows.push_back({k, report.accuracy.mean, report.accuracy.sd});
    }
    return rows;
}

} // namespace warpknn

#endif // WARPKNN_TUNE_HPP
