#ifndef WARPKNN_DISTANCE_MATRIX_HPP
#define WARPKNN_DISTANCE_MATRIX_HPP

#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "warpknn/dtw.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

// Symmetric N x N pairwise distances with a zero diagonal, tagged with the
// measure and window that produced the entries.
struct DistanceMatrix {
    std::vector<double> entries; // row-major N x N
    std::vector<std::string> instance_ids;
    WarpConfig config;

    std::size_t size() const { return instance_ids.size(); }
    double at(std::size_t a, std::size_t b) const { return entries[a * size() + b]; }
    std::span<const double> row(std::size_t a) const { return {entries.data() + a * size(), size()}; }
};

// 17-significant-digit rendering; parsing the result reproduces the exact
// double. All numeric file formats here use it.
inline std::string format_full(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

// Computes the selected measure between every unordered pair, mirrored into a
// full matrix. Distinct pairs are evaluated concurrently (workers = 0 picks
// the hardware count); scheduling cannot change the result because each pair
// writes a disjoint cell. Per-instance and per-pair failures carry the
// offending instance ids.
inline DistanceMatrix pairwise_matrix(std::span<const LabeledInstance> instances,
                                      const WarpConfig& cfg, unsigned workers = 0) {
    const std::size_t n = instances.size();
    if (n < 2) throw PairwiseError("pairwise_matrix needs at least 2 instances, got " + std::to_string(n));

    DistanceMatrix matrix;
    matrix.config = cfg;
    matrix.instance_ids.reserve(n);
    for (const auto& inst : instances) matrix.instance_ids.push_back(instance_id(inst));

    const std::size_t channels = instances[0].series.channels();
    for (std::size_t i = 1; i < n; ++i) {
        if (instances[i].series.channels() != channels)
            throw PairwiseError("instance " + matrix.instance_ids[i] + " has " +
                                std::to_string(instances[i].series.channels()) +
                                " channels, expected " + std::to_string(channels));
    }

    // For ddtw the derivative is taken once per instance; DTW over these
    // series is bit-identical to per-pair ddtw_distance calls.
    std::vector<TimeSeries> prepared;
    if (cfg.measure == Measure::ddtw) {
        prepared.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            try {
                prepared.push_back(derivative_transform(instances[i].series));
            } catch (const Error& e) {
                throw PairwiseError("instance " + matrix.instance_ids[i] + ": " + e.what());
            }
        }
    }
    const auto series_at = [&](std::size_t i) -> const TimeSeries& {
        return cfg.measure == Measure::ddtw ? prepared[i] : instances[i].series;
    };
    WarpConfig pair_cfg = cfg;
    pair_cfg.measure = Measure::dtw;

    matrix.entries.assign(n * n, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

    unsigned thread_count = workers != 0 ? workers : std::thread::hardware_concurrency();
    if (thread_count == 0) thread_count = 1;
    thread_count = static_cast<unsigned>(std::min<std::size_t>(thread_count, pairs.size()));

    std::atomic<std::size_t> cursor{0};
    std::atomic<std::size_t> first_failed{pairs.size()};
    std::vector<std::string> errors(pairs.size());

    const auto work = [&] {
        for (std::size_t idx = cursor.fetch_add(1); idx < pairs.size(); idx = cursor.fetch_add(1)) {
            const auto [a, b] = pairs[idx];
            try {
                const double d = dtw_distance(series_at(a), series_at(b), pair_cfg);
                matrix.entries[a * n + b] = d;
                matrix.entries[b * n + a] = d;
            } catch (const std::exception& e) {
                errors[idx] = e.what();
                std::size_t expected = first_failed.load();
                while (idx < expected && !first_failed.compare_exchange_weak(expected, idx)) {
                }
            }
        }
    };

    if (thread_count <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(thread_count);
        for (unsigned t = 0; t < thread_count; ++t) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }

    if (const std::size_t failed = first_failed.load(); failed < pairs.size()) {
        const auto [a, b] = pairs[failed];
        throw PairwiseError("pair (" + matrix.instance_ids[a] + ", " + matrix.instance_ids[b] +
                            "): " + errors[failed]);
    }
    return matrix;
}

// CSV layout: a header row of instance ids, then N rows of N values printed
// with 17 significant digits so the file round-trips losslessly.
inline void write_matrix_csv(const DistanceMatrix& matrix, std::ostream& out) {
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out << ',';
        out << matrix.instance_ids[i];
    }
    out << '\n';
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (b) out << ',';
            out << format_full(matrix.at(a, b));
        }
        out << '\n';
    }
}

inline void write_matrix_csv(const DistanceMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    write_matrix_csv(matrix, out);
}

namespace detail {

inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace detail

// Parses a matrix CSV and checks the DistanceMatrix invariants (symmetry,
// zero diagonal, finite nonnegative entries). The CSV does not carry the
// producing config; the caller supplies the tag.
inline DistanceMatrix read_matrix_csv(std::istream& in, const WarpConfig& cfg = {}) {
    DistanceMatrix matrix;
    matrix.config = cfg;

    std::string line;
    if (!std::getline(in, line)) throw IoError("matrix CSV is empty");
    detail::strip_cr(line);
    {
        std::stringstream header(line);
        std::string id;
        while (std::getline(header, id, ',')) matrix.instance_ids.push_back(id);
    }
    const std::size_t n = matrix.instance_ids.size();
    if (n < 2) throw IoError("matrix CSV header has fewer than 2 instance ids");

    matrix.entries.reserve(n * n);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        detail::strip_cr(line);
        if (line.empty() && matrix.entries.size() == n * n) continue; // trailing blank
        ++row;
        std::stringstream fields(line);
        std::string field;
        std::size_t col = 0;
        while (std::getline(fields, field, ',')) {
            double value = 0.0;
            const char* begin = field.data();
            const char* end = begin + field.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end)
                throw IoError("matrix CSV row " + std::to_string(row) + ": bad value '" + field + "'");
            matrix.entries.push_back(value);
            ++col;
        }
        if (col != n)
            throw IoError("matrix CSV row " + std::to_string(row) + " has " + std::to_string(col) +
                          " values, expected " + std::to_string(n));
    }
    if (matrix.entries.size() != n * n)
        throw IoError("matrix CSV has " + std::to_string(row) + " data rows, expected " + std::to_string(n));

    for (std::size_t a = 0; a < n; ++a) {
        if (matrix.at(a, a) != 0.0)
            throw IoError("matrix CSV: nonzero diagonal at " + matrix.instance_ids[a]);
        for (std::size_t b = 0; b < n; ++b) {
            const double v = matrix.at(a, b);
            if (!std::isfinite(v) || v < 0.0)
                throw IoError("matrix CSV: invalid entry at (" + matrix.instance_ids[a] + ", " +
                              matrix.instance_ids[b] + ")");
            if (v != matrix.at(b, a))
                throw IoError("matrix CSV: asymmetric at (" + matrix.instance_ids[a] + ", " +
                              matrix.instance_ids[b] + ")");
        }
    }
    return matrix;
}

inline DistanceMatrix read_matrix_csv(const std::filesystem::path& path, const WarpConfig& cfg = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return read_matrix_csv(in, cfg);
}

} // namespace warpknn

#endif // WARPKNN_DISTANCE_MATRIX_HPP
