#ifndef WARPKNN_FOLDS_HPP
#define WARPKNN_FOLDS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"
#include "warpknn/prng.hpp"

namespace warpknn {

struct FoldPlan {
    std::vector<std::size_t> assignments; // instance index -> fold index in [0, n_folds)
    std::size_t n_folds = 0;
    std::uint64_t seed = 0;

    std::size_t size() const { return assignments.size(); }
    std::size_t fold_count(std::size_t fold) const {
        std::size_t count = 0;
        for (const auto f : assignments) count += (f == fold);
        return count;
    }
};

// Stratified n-fold assignment: within each class (classes visited in sorted
// label order) the instances are shuffled by the seeded splitmix64 stream and
// dealt to consecutive folds. The fold cursor continues across classes, so
// per-class fold counts differ by at most 1 and every fold is nonempty
// whenever n <= N. Same seed, same plan, on any platform.
inline FoldPlan stratified_folds(std::span<const std::string> labels, std::size_t n,
                                 std::uint64_t seed) {
    const std::size_t total = labels.size();
    if (n < 2) throw TooManyFolds("stratified_folds: need n >= 2, got " + std::to_string(n));
    if (n > total)
        throw TooManyFolds("stratified_folds: " + std::to_string(n) + " folds for " +
                           std::to_string(total) + " instances");

    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < total; ++i) by_class[labels[i]].push_back(i);

    FoldPlan plan;
    plan.assignments.resize(total);
    plan.n_folds = n;
    plan.seed = seed;

    SplitMix64 rng(seed);
    std::size_t cursor = 0;
    for (auto& [label, members] : by_class) {
        shuffle_indices(members, rng);
        for (const auto idx : members) {
            plan.assignments[idx] = cursor % n;
            ++cursor;
        }
    }
    return plan;
}

// Leave-one-out: N singleton folds, instance i in fold i, seed-independent.
inline FoldPlan loo_folds(std::size_t total) {
    if (total < 2) throw TooManyFolds("loo_folds: need at least 2 instances");
    FoldPlan plan;
    plan.assignments.resize(total);
    for (std::size_t i = 0; i < total; ++i) plan.assignments[i] = i;
    plan.n_folds = total;
    plan.seed = 0;
    return plan;
}

} // namespace warpknn

#endif // WARPKNN_FOLDS_HPP
