#ifndef WARPKNN_CONFUSION_HPP
#define WARPKNN_CONFUSION_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"

namespace warpknn {

// C x C counts, rows = actual class, columns = predicted class, over an
// ordered class-id list.
struct ConfusionMatrix {
    std::vector<std::string> class_ids;
    std::vector<std::uint64_t> counts; // row-major C x C

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<std::string> ids)
        : class_ids(std::move(ids)), counts(class_ids.size() * class_ids.size(), 0) {}

    std::size_t classes() const { return class_ids.size(); }

    std::size_t class_index(const std::string& label) const {
        const auto it = std::find(class_ids.begin(), class_ids.end(), label);
        if (it == class_ids.end()) throw Error("unknown class label: " + label);
        return static_cast<std::size_t>(it - class_ids.begin());
    }

    std::uint64_t at(std::size_t actual, std::size_t predicted) const {
        return counts[actual * classes() + predicted];
    }

    void add(const std::string& actual, const std::string& predicted, std::uint64_t count = 1) {
        counts[class_index(actual) * classes() + class_index(predicted)] += count;
    }

    void add_matrix(const ConfusionMatrix& other) {
        if (other.class_ids != class_ids) throw Error("confusion matrices have different class sets");
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    }

    std::uint64_t row_sum(std::size_t actual) const {
        std::uint64_t sum = 0;
        for (std::size_t j = 0; j < classes(); ++j) sum += at(actual, j);
        return sum;
    }

    std::uint64_t col_sum(std::size_t predicted) const {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < classes(); ++i) sum += at(i, predicted);
        return sum;
    }

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (const auto c : counts) sum += c;
        return sum;
    }

    std::uint64_t trace() const {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < classes(); ++i) sum += at(i, i);
        return sum;
    }

    bool operator==(const ConfusionMatrix& other) const {
        return class_ids == other.class_ids && counts == other.counts;
    }
};

// Sorted unique labels; the canonical class ordering used everywhere.
inline std::vector<std::string> class_set(std::span<const std::string> labels) {
    std::vector<std::string> ids(labels.begin(), labels.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

// CSV with a class-id header: first cell names the axes, then one row per
// actual class.
inline void write_confusion_csv(const ConfusionMatrix& matrix, std::ostream& out) {
    out << "actual\\predicted";
    for (const auto& id : matrix.class_ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < matrix.classes(); ++i) {
        out << matrix.class_ids[i];
        for (std::size_t j = 0; j < matrix.classes(); ++j) out << ',' << matrix.at(i, j);
        out << '\n';
    }
}

inline void write_confusion_csv(const ConfusionMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_confusion_csv(matrix, out);
}

} // namespace warpknn

#endif // WARPKNN_CONFUSION_HPP
