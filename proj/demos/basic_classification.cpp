// Minimal end-to-end use of the library: generate a synthetic corpus,
// z-normalize, build the DTW distance matrix, tune k, and run leave-one-out
// cross-validation.

#include <iostream>

#include "warpknn/warpknn.hpp"

int main() {
    using namespace warpknn;

    SynthSpec spec;
    spec.classes = 3;
    spec.per_class = 10;
    spec.min_length = 60;
    spec.max_length = 90;
    spec.noise_sd = 0.05;
    spec.seed = 7;

    auto instances = synth_dataset(spec);
    for (auto& inst : instances) inst.series = znormalize(inst.series);
    const auto labels = labels_of(instances);

    WarpConfig cfg;
    cfg.window = 100;
    const auto matrix = pairwise_matrix(instances, cfg);

    std::cout << "accuracy as a function of k (LOO):\n";
    const auto rows = tune_k(matrix, labels, 1, 5, {CvProtocol::Kind::loo}, 1, 0);
    write_tune_table(rows, std::cout);

    const auto report = replicate(matrix, labels, 3, {CvProtocol::Kind::loo}, 1, 0);
    std::cout << '\n';
    write_report_table(report, std::cout);
    return 0;
}
