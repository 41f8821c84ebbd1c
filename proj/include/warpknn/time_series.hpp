#ifndef WARPKNN_TIME_SERIES_HPP
#define WARPKNN_TIME_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "warpknn/errors.hpp"

namespace warpknn {

// One validation failure on raw sample data. row/col are 0-based and only
// meaningful for the kinds that name a coordinate.
struct Violation {
    enum class Kind { empty_series, empty_row, ragged_row, non_finite } kind;
    std::size_t row = 0;
    std::size_t col = 0;
    std::string message;
};

// Checks raw row data against the TimeSeries invariants (m >= 1, p >= 1,
// rectangular, all entries finite) and enumerates every violation found.
inline std::vector<Violation> validate_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<Violation> out;
    if (rows.empty()) {
        out.push_back({Violation::Kind::empty_series, 0, 0, "series has no rows"});
        return out;
    }
    const std::size_t p = rows.front().size();
    if (p == 0) {
        out.push_back({Violation::Kind::empty_row, 0, 0, "row 0 has no channels"});
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != p) {
            std::ostringstream msg;
            msg << "row " << i << " has " << rows[i].size() << " entries, expected " << p;
            out.push_back({Violation::Kind::ragged_row, i, rows[i].size(), msg.str()});
            continue;
        }
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            if (!std::isfinite(rows[i][c])) {
                std::ostringstream msg;
                msg << "non-finite entry at (" << i << ", " << c << ")";
                out.push_back({Violation::Kind::non_finite, i, c, msg.str()});
            }
        }
    }
    return out;
}

// An m x p matrix of finite samples: rows are time steps, columns are
// channels. Storage is row-major and immutable after construction, so values
// are safe to share across threads.
class TimeSeries {
public:
    TimeSeries() = default;

    // Validating constructor from raw rows; throws InvalidSeries listing the
    // first violation when the invariants fail.
    static TimeSeries from_rows(const std::vector<std::vector<double>>& rows,
                                std::vector<std::string> dim_names = {}) {
        const auto violations = validate_rows(rows);
        if (!violations.empty()) {
            std::ostringstream msg;
            msg << "invalid series: " << violations.front().message;
            if (violations.size() > 1) msg << " (+" << violations.size() - 1 << " more)";
            throw InvalidSeries(msg.str());
        }
        TimeSeries ts;
        ts.rows_ = rows.size();
        ts.channels_ = rows.front().size();
        ts.data_.reserve(ts.rows_ * ts.channels_);
        for (const auto& r : rows) ts.data_.insert(ts.data_.end(), r.begin(), r.end());
        ts.dim_names_ = std::move(dim_names);
        return ts;
    }

    // Construct from already-validated flat row-major data.
    static TimeSeries from_flat(std::vector<double> data, std::size_t rows, std::size_t channels,
                                std::vector<std::string> dim_names = {}) {
        if (rows == 0 || channels == 0 || data.size() != rows * channels)
            throw InvalidSeries("flat data does not match the stated shape");
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (!std::isfinite(data[i])) {
                std::ostringstream msg;
                msg << "non-finite entry at (" << i / channels << ", " << i % channels << ")";
                throw InvalidSeries(msg.str());
            }
        }
        TimeSeries ts;
        ts.data_ = std::move(data);
        ts.rows_ = rows;
        ts.channels_ = channels;
        ts.dim_names_ = std::move(dim_names);
        return ts;
    }

    std::size_t rows() const { return rows_; }
    std::size_t channels() const { return channels_; }
    bool empty() const { return rows_ == 0; }

    double operator()(std::size_t row, std::size_t channel) const {
        return data_[row * channels_ + channel];
    }

    // One time step as a p-vector.
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * channels_, channels_};
    }

    std::span<const double> flat() const { return {data_.data(), data_.size()}; }
    const std::vector<std::string>& dim_names() const { return dim_names_; }

    bool operator==(const TimeSeries& other) const {
        return rows_ == other.rows_ && channels_ == other.channels_ && data_ == other.data_;
    }

private:
    std::vector<double> data_;
    std::size_t rows_ = 0;
    std::size_t channels_ = 0;
    std::vector<std::string> dim_names_;
};

// Re-checks an already constructed series. Construction enforces the
// invariants, so this exists as the fuzzable entry point for raw data that
// bypassed from_rows.
inline std::vector<Violation> validate(const TimeSeries& series) {
    std::vector<Violation> out;
    if (series.rows() == 0 || series.channels() == 0) {
        out.push_back({Violation::Kind::empty_series, 0, 0, "series has no samples"});
        return out;
    }
    const auto data = series.flat();
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            const std::size_t r = i / series.channels();
            const std::size_t c = i % series.channels();
            std::ostringstream msg;
            msg << "non-finite entry at (" << r << ", " << c << ")";
            out.push_back({Violation::Kind::non_finite, r, c, msg.str()});
        }
    }
    return out;
}

// A series plus its class label and provenance.
struct LabeledInstance {
    TimeSeries series;
    std::string label;
    std::string subject;
    std::string trial;
};

// "<label>-<subject>-<trial>"; build_dataset enforces uniqueness.
inline std::string instance_id(const LabeledInstance& inst) {
    return inst.label + "-" + inst.subject + "-" + inst.trial;
}

} // namespace warpknn

#endif // WARPKNN_TIME_SERIES_HPP
