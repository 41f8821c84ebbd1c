#ifndef WARPKNN_KINEMATICS_IO_HPP
#define WARPKNN_KINEMATICS_IO_HPP

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

enum class HandSelection { left, right, both };

inline std::string to_string(HandSelection h) {
    switch (h) {
        case HandSelection::left: return "left";
        case HandSelection::right: return "right";
        case HandSelection::both: return "both";
    }
    return "both";
}

inline HandSelection hand_selection_from_string(const std::string& name) {
    if (name == "left") return HandSelection::left;
    if (name == "right") return HandSelection::right;
    if (name == "both") return HandSelection::both;
    throw ManifestError("unknown hand selection: " + name + " (expected left, right or both)");
}

// Which file columns become series channels. Indices are 1-based file
// columns; every row of the file must have exactly expected_width fields.
struct ColumnMap {
    std::vector<std::pair<std::size_t, std::string>> channels; // (column, name) in output order
    std::size_t expected_width = 0;
};

// PSM tool-tip Cartesian positions under the assumed 76-column layout:
// four manipulator blocks (MTM-left, MTM-right, PSM-left, PSM-right), each 19
// variables ordered (position 3, rotation 9, linear velocity 3, angular
// velocity 3, gripper 1). PSM-left x,y,z land on columns 39-41 and PSM-right
// on 58-60. The layout is an assumption about the capture format, not a
// property of the data; manifests can override the map entirely.
inline ColumnMap default_column_map(HandSelection hand) {
    constexpr std::size_t kBlock = 19;
    constexpr std::size_t kWidth = 4 * kBlock;      // 76
    constexpr std::size_t kPsmLeft = 2 * kBlock + 1; // 39
    constexpr std::size_t kPsmRight = 3 * kBlock + 1; // 58

    ColumnMap map;
    map.expected_width = kWidth;
    const auto add_hand = [&map](std::size_t base, const std::string& prefix) {
        map.channels.emplace_back(base + 0, prefix + "_x");
        map.channels.emplace_back(base + 1, prefix + "_y");
        map.channels.emplace_back(base + 2, prefix + "_z");
    };
    if (hand == HandSelection::left || hand == HandSelection::both) add_hand(kPsmLeft, "psm_left");
    if (hand == HandSelection::right || hand == HandSelection::both) add_hand(kPsmRight, "psm_right");
    return map;
}

namespace detail {

inline bool is_blank(const std::string& line) {
    for (const char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    return true;
}

inline std::vector<std::string_view> split_fields(const std::string& line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) fields.emplace_back(line.data() + start, i - start);
    }
    return fields;
}

} // namespace detail

// Reads one plain-text kinematics record file: one sample per line,
// whitespace-separated decimal fields (standard decimal or scientific
// notation), fixed width per file. Trailing whitespace and blank trailing
// lines are tolerated; anything else is a MalformedRow. Non-finite fields are
// rejected with their (row, column) coordinates. Returns the m x p series of
// the mapped columns, in map order.
inline TimeSeries load_kinematics(const std::filesystem::path& path, const ColumnMap& map) {
    if (map.channels.empty()) throw ManifestError("column map selects no channels");
    for (const auto& [col, name] : map.channels) {
        if (col < 1 || col > map.expected_width)
            throw ManifestError("column " + std::to_string(col) + " out of range [1, " +
                                std::to_string(map.expected_width) + "]");
    }

    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());

    const std::size_t p = map.channels.size();
    std::vector<double> data;
    std::string line;
    std::size_t line_number = 0;
    std::size_t rows = 0;
    std::size_t first_blank = 0; // 1-based; 0 = none pending

    while (std::getline(in, line)) {
        ++line_number;
        if (detail::is_blank(line)) {
            if (first_blank == 0) first_blank = line_number;
            continue;
        }
        if (first_blank != 0)
            throw MalformedRow(path.string() + ": blank row " + std::to_string(first_blank) +
                                   " before the end of the data",
                               first_blank, 0);

        const auto fields = detail::split_fields(line);
        if (fields.size() != map.expected_width)
            throw MalformedRow(path.string() + ": row " + std::to_string(line_number) + " has " +
                                   std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(map.expected_width),
                               line_number, fields.size());

        std::vector<double> parsed(map.expected_width);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = 0.0;
            const char* begin = fields[c].data();
            const char* end = begin + fields[c].size();
            if (begin != end && *begin == '+') ++begin; // from_chars rejects a leading '+'
            const auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end)
                throw MalformedRow(path.string() + ": row " + std::to_string(line_number) +
                                       ", column " + std::to_string(c + 1) + ": '" +
                                       std::string(fields[c]) + "' is not a decimal number",
                                   line_number, fields.size());
            if (!std::isfinite(value))
                throw NonFiniteValue(path.string() + ": non-finite value at row " +
                                         std::to_string(line_number) + ", column " +
                                         std::to_string(c + 1),
                                     line_number, c + 1);
            parsed[c] = value;
        }
        for (const auto& [col, name] : map.channels) data.push_back(parsed[col - 1]);
        ++rows;
    }

    if (rows == 0) throw EmptyFile(path.string() + ": no data rows");

    std::vector<std::string> names;
    names.reserve(p);
    for (const auto& [col, name] : map.channels) names.push_back(name);
    return TimeSeries::from_flat(std::move(data), rows, p, std::move(names));
}

} // namespace warpknn

#endif // WARPKNN_KINEMATICS_IO_HPP
