#ifndef WARPKNN_METRICS_HPP
#define WARPKNN_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "warpknn/confusion.hpp"
#include "warpknn/errors.hpp"

namespace warpknn {

// One-vs-rest tallies and rates for a single class.
struct ClassMetrics {
    std::string class_id;
    std::uint64_t tp = 0, fn = 0, fp = 0, tn = 0;
    double prevalence = 0.0; // rho_i = n_i / N
    double sensitivity = 0.0;
    double specificity = 0.0;
};

// Prevalence-weighted multi-class aggregates:
//   accuracy    = sum_i rho_i (TP_i + TN_i) / (TP_i + FN_i + FP_i + TN_i)
//   sensitivity = sum_i rho_i TP_i / (TP_i + FN_i)
//   specificity = sum_i rho_i TN_i / (FP_i + TN_i)
// with rho_i = n_i / N. The per-class denominator of accuracy always equals
// N; it is computed literally so the code mirrors the formula.
struct MetricSummary {
    double accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
};

inline std::vector<ClassMetrics> per_class_metrics(const ConfusionMatrix& confusion) {
    const std::uint64_t total = confusion.total();
    if (total == 0) throw EmptyClass("metrics: confusion matrix is empty");

    std::vector<ClassMetrics> out;
    out.reserve(confusion.classes());
    for (std::size_t i = 0; i < confusion.classes(); ++i) {
        const std::uint64_t actual = confusion.row_sum(i);
        if (actual == 0)
            throw EmptyClass("metrics: class " + confusion.class_ids[i] +
                             " has no actual instances; prevalence weighting is undefined");
        ClassMetrics cm;
        cm.class_id = confusion.class_ids[i];
        cm.tp = confusion.at(i, i);
        cm.fn = actual - cm.tp;
        cm.fp = confusion.col_sum(i) - cm.tp;
        cm.tn = total - cm.tp - cm.fn - cm.fp;
        cm.prevalence = static_cast<double>(actual) / static_cast<double>(total);
        cm.sensitivity = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
        cm.specificity = static_cast<double>(cm.tn) / static_cast<double>(cm.fp + cm.tn);
        out.push_back(cm);
    }
    return out;
}

inline MetricSummary metrics(const ConfusionMatrix& confusion) {
    const auto per_class = per_class_metrics(confusion);
    MetricSummary summary;
    for (const auto& cm : per_class) {
        const double denom = static_cast<double>(cm.tp + cm.fn + cm.fp + cm.tn);
        summary.accuracy += cm.prevalence * static_cast<double>(cm.tp + cm.tn) / denom;
        summary.sensitivity += cm.prevalence * cm.sensitivity;
        summary.specificity += cm.prevalence * cm.specificity;
    }
    return summary;
}

} // namespace warpknn

#endif // WARPKNN_METRICS_HPP
