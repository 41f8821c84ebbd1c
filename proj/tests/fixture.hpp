// Shared test fixtures: the frozen seed-42 synthetic corpus and small
// hand-built distance matrices.

#ifndef WARPKNN_TESTS_FIXTURE_HPP
#define WARPKNN_TESTS_FIXTURE_HPP

#include <string>
#include <vector>

#include "warpknn/distance_matrix.hpp"
#include "warpknn/normalize.hpp"
#include "warpknn/synth.hpp"

namespace fixture {

struct Corpus {
    std::vector<warpknn::LabeledInstance> instances;
    std::vector<std::string> labels;
    warpknn::DistanceMatrix dtw;
    std::vector<std::vector<double>> dtw_rows; // plain copy for the oracle
};

// The frozen benchmark corpus: seed 42, 3 classes x 20, lengths 80-120,
// noise sd 0.05, z-normalized, DTW with window 100. Computed once per binary.
inline const Corpus& seed42() {
    static const Corpus corpus = [] {
        Corpus c;
        warpknn::SynthSpec spec; // defaults are exactly the frozen corpus
        c.instances = warpknn::synth_dataset(spec);
        for (auto& inst : c.instances) inst.series = warpknn::znormalize(inst.series);
        for (const auto& inst : c.instances) c.labels.push_back(inst.label);
        warpknn::WarpConfig cfg;
        cfg.window = 100;
        c.dtw = warpknn::pairwise_matrix(c.instances, cfg);
        for (std::size_t i = 0; i < c.dtw.size(); ++i)
            c.dtw_rows.emplace_back(c.dtw.row(i).begin(), c.dtw.row(i).end());
        return c;
    }();
    return corpus;
}

// N instances on a line at class_index * separation + member_index, with
// |position difference| as the distance. Classes are "c0", "c1", ...
inline warpknn::DistanceMatrix line_clusters(std::size_t classes, std::size_t per_class,
                                             std::vector<std::string>& labels,
                                             double separation = 100.0) {
    const std::size_t n = classes * per_class;
    std::vector<double> position(n);
    labels.clear();
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            position[c * per_class + i] =
                separation * static_cast<double>(c) + static_cast<double>(i);
            labels.push_back("c" + std::to_string(c));
        }
    }
    warpknn::DistanceMatrix matrix;
    matrix.entries.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        matrix.instance_ids.push_back("i" + std::to_string(a));
        for (std::size_t b = 0; b < n; ++b)
            matrix.entries[a * n + b] = std::abs(position[a] - position[b]);
    }
    return matrix;
}

} // namespace fixture

#endif // WARPKNN_TESTS_FIXTURE_HPP
