#ifndef WARPKNN_WKNN_HPP
#define WARPKNN_WKNN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"

namespace warpknn {

// The k nearest training instances of one query, ascending by distance, with
// their Dudani weights. The k-th neighbor's weight is 0 by construction
// whenever d_k != d_1; it is kept here for transparency but cannot affect the
// vote.
struct NeighborSet {
    struct Neighbor {
        std::size_t index; // into the training list
        std::string label;
        double distance;
    };
    std::vector<Neighbor> neighbors;
    std::vector<double> weights;
};

struct Prediction {
    std::string label;
    std::map<std::string, double> class_scores; // every class among the k neighbors
    NeighborSet neighbors;
};

// Dudani weights for k sorted neighbor distances:
//   w_i = (d_k - d_i) / (d_k - d_1)        when d_k != d_1,
//   w_i = 1 for all i                      when d_k == d_1 (including k = 1),
// the degenerate case reducing to an unweighted majority vote.
inline std::vector<double> neighbor_weights(std::span<const double> distances) {
    if (distances.empty()) throw EmptyTrainingSet("neighbor_weights: no distances");
    for (std::size_t i = 1; i < distances.size(); ++i) {
        if (distances[i] < distances[i - 1])
            throw UnsortedDistances("neighbor_weights: distances must be nondecreasing (position " +
                                    std::to_string(i) + ")");
    }
    const double d1 = distances.front();
    const double dk = distances.back();
    std::vector<double> weights(distances.size(), 1.0);
    if (dk != d1) {
        for (std::size_t i = 0; i < distances.size(); ++i)
            weights[i] = (dk - distances[i]) / (dk - d1);
    }
    return weights;
}

namespace detail {

// Core of classify: the eligibility mask carries fold exclusions. Neighbor
// selection takes the k smallest eligible distances with ties at the k-th
// distance broken by lowest instance index; class-score ties break by smaller
// summed neighbor distance, then lexicographic class id.
inline Prediction classify_masked(std::span<const double> query_distances,
                                  std::span<const std::string> labels, std::size_t k,
                                  const std::vector<bool>& eligible) {
    if (query_distances.size() != labels.size())
        throw DimensionMismatch("classify: " + std::to_string(query_distances.size()) +
                                " distances vs " + std::to_string(labels.size()) + " labels");
    if (k == 0) throw KTooLarge("classify: k must be >= 1");

    std::vector<std::size_t> candidates;
    candidates.reserve(query_distances.size());
    for (std::size_t i = 0; i < query_distances.size(); ++i) {
        if (!eligible[i]) continue;
        if (!std::isfinite(query_distances[i]))
            throw Error("classify: non-finite distance at index " + std::to_string(i));
        candidates.push_back(i);
    }
    if (candidates.empty()) throw EmptyTrainingSet("classify: no eligible training instances");
    if (k > candidates.size())
        throw KTooLarge("classify: k=" + std::to_string(k) + " exceeds the " +
                        std::to_string(candidates.size()) + " eligible training instances");

    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (query_distances[a] != query_distances[b]) return query_distances[a] < query_distances[b];
        return a < b;
    });
    candidates.resize(k);

    Prediction pred;
    pred.neighbors.neighbors.reserve(k);
    std::vector<double> distances;
    distances.reserve(k);
    for (const auto idx : candidates) {
        pred.neighbors.neighbors.push_back({idx, labels[idx], query_distances[idx]});
        distances.push_back(query_distances[idx]);
    }
    pred.neighbors.weights = neighbor_weights(distances);

    std::map<std::string, double> tie_distance; // summed neighbor distance per class
    for (std::size_t i = 0; i < k; ++i) {
        const auto& label = pred.neighbors.neighbors[i].label;
        pred.class_scores[label] += pred.neighbors.weights[i];
        tie_distance[label] += distances[i];
    }

    const std::string* best = nullptr;
    for (const auto& [label, score] : pred.class_scores) {
        if (!best) {
            best = &label;
            continue;
        }
        const double best_score = pred.class_scores.at(*best);
        if (score > best_score ||
            (score == best_score && tie_distance.at(label) < tie_distance.at(*best))) {
            best = &label;
        }
        // Equal score and equal summed distance falls through to the earlier
        // (lexicographically smaller) class: the map iterates in id order.
    }
    pred.label = *best;
    return pred;
}

} // namespace detail

// Distance-weighted kNN vote over one query's distances to every training
// instance: y = argmax_y sum_i w_i * [y == y_i] over the k nearest neighbors.
// exclude removes one training index (the query itself in leave-one-out use).
inline Prediction classify(std::span<const double> query_distances,
                           std::span<const std::string> labels, std::size_t k,
                           std::optional<std::size_t> exclude = std::nullopt) {
    std::vector<bool> eligible(query_distances.size(), true);
    if (exclude) {
        if (*exclude >= eligible.size())
            throw Error("classify: exclude index " + std::to_string(*exclude) + " out of range");
        eligible[*exclude] = false;
    }
    return detail::classify_masked(query_distances, labels, k, eligible);
}

} // namespace warpknn

#endif // WARPKNN_WKNN_HPP
