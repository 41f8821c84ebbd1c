#ifndef WARPKNN_CROSS_VALIDATION_HPP
#define WARPKNN_CROSS_VALIDATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "warpknn/confusion.hpp"
#include "warpknn/distance_matrix.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/folds.hpp"
#include "warpknn/metrics.hpp"
#include "warpknn/wknn.hpp"

namespace warpknn {

struct CvProtocol {
    enum class Kind { kfold, loo } kind = Kind::kfold;
    std::size_t n_folds = 10; // ignored for loo

    std::string name() const {
        return kind == Kind::loo ? "loo" : "kfold";
    }
};

// One cross-validation pass: every instance is classified by weighted kNN
// against the out-of-fold instances only (the mask removes the query's own
// fold, so its zero self-distance never participates), and results accumulate
// into a single confusion matrix. The globally precomputed distance matrix is
// masked per fold, which is numerically identical to per-fold recomputation
// because the distance between two fixed series does not depend on folds.
inline ConfusionMatrix run_cv(const DistanceMatrix& matrix, std::span<const std::string> labels,
                              std::size_t k, const FoldPlan& plan) {
    const std::size_t n = labels.size();
    if (matrix.size() != n)
        throw DimensionMismatch("run_cv: matrix is " + std::to_string(matrix.size()) + "x" +
                                std::to_string(matrix.size()) + " but there are " +
                                std::to_string(n) + " labels");
    if (plan.assignments.size() != n)
        throw DimensionMismatch("run_cv: fold plan covers " + std::to_string(plan.assignments.size()) +
                                " instances, expected " + std::to_string(n));

    ConfusionMatrix confusion(class_set(labels));
    for (std::size_t fold = 0; fold < plan.n_folds; ++fold) {
        std::vector<bool> eligible(n);
        std::size_t training = 0;
        for (std::size_t i = 0; i < n; ++i) {
            eligible[i] = plan.assignments[i] != fold;
            training += eligible[i];
        }
        const std::size_t fold_size = n - training;
        if (fold_size == 0) continue;
        if (k > training)
            throw KTooLarge("run_cv: k=" + std::to_string(k) + " exceeds the " +
                            std::to_string(training) + " training instances outside fold " +
                            std::to_string(fold));
        for (std::size_t q = 0; q < n; ++q) {
            if (plan.assignments[q] != fold) continue;
            const auto pred = detail::classify_masked(matrix.row(q), labels, k, eligible);
            confusion.add(labels[q], pred.label);
        }
    }
    return confusion;
}

struct MetricStats {
    double mean = 0.0;
    double sd = 0.0; // population sd over replications (divide by R)

    bool operator==(const MetricStats&) const = default;
};

// Replicated cross-validation results. confusion sums over folds and
// replications; the headline stats are mean and population sd of the
// prevalence-weighted aggregates over the R replications; per_class derives
// from the summed confusion. protocol/folds/k/measure/base_seed describe the
// run for serialization.
struct EvalReport {
    ConfusionMatrix confusion;
    MetricStats accuracy;
    MetricStats sensitivity;
    MetricStats specificity;
    std::vector<ClassMetrics> per_class;
    std::size_t replications = 0;
    std::string protocol;
    std::size_t n_folds = 0;
    std::size_t k = 0;
    std::string measure;
    std::uint64_t base_seed = 0;
};

namespace detail {

// Population mean/sd; identical values report their common value with sd
// exactly 0 rather than accumulating sum/R rounding noise.
inline MetricStats stats_over(std::span<const double> values) {
    MetricStats stats;
    if (values.empty()) return stats;
    const bool all_equal = std::all_of(values.begin(), values.end(),
                                       [&](double v) { return v == values.front(); });
    if (all_equal) {
        stats.mean = values.front();
        stats.sd = 0.0;
        return stats;
    }
    double sum = 0.0;
    for (const double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (const double v : values) {
        const double dev = v - stats.mean;
        sq += dev * dev;
    }
    stats.sd = std::sqrt(sq / static_cast<double>(values.size()));
    return stats;
}

} // namespace detail

// Runs the protocol R times with seeds base_seed .. base_seed + R - 1. LOO
// plans are seed-independent, so every LOO replication is identical and the
// reported sd is exactly 0.
inline EvalReport replicate(const DistanceMatrix& matrix, std::span<const std::string> labels,
                            std::size_t k, const CvProtocol& protocol, std::size_t replications,
                            std::uint64_t base_seed) {
    if (replications < 1) throw Error("replicate: need at least 1 replication");

    EvalReport report;
    report.replications = replications;
    report.protocol = protocol.name();
    report.n_folds = protocol.kind == CvProtocol::Kind::loo ? labels.size() : protocol.n_folds;
    report.k = k;
    report.base_seed = base_seed;
    report.confusion = ConfusionMatrix(class_set(labels));

    std::vector<double> accuracy, sensitivity, specificity;
    accuracy.reserve(replications);
    sensitivity.reserve(replications);
    specificity.reserve(replications);

    for (std::size_t r = 0; r < replications; ++r) {
        const FoldPlan plan = protocol.kind == CvProtocol::Kind::loo
                                  ? loo_folds(labels.size())
                                  : stratified_folds(labels, protocol.n_folds, base_seed + r);
        const ConfusionMatrix confusion = run_cv(matrix, labels, k, plan);
        const MetricSummary summary = metrics(confusion);
        accuracy.push_back(summary.accuracy);
        sensitivity.push_back(summary.sensitivity);
        specificity.push_back(summary.specificity);
        report.confusion.add_matrix(confusion);
    }

    report.accuracy = detail::stats_over(accuracy);
    report.sensitivity = detail::stats_over(sensitivity);
    report.specificity = detail::stats_over(specificity);
    report.per_class = per_class_metrics(report.confusion);
    return report;
}

} // namespace warpknn

#endif // WARPKNN_CROSS_VALIDATION_HPP
