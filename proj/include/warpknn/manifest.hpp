#ifndef WARPKNN_MANIFEST_HPP
#define WARPKNN_MANIFEST_HPP

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "warpknn/errors.hpp"
#include "warpknn/kinematics_io.hpp"
#include "warpknn/normalize.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

struct ManifestEntry {
    std::filesystem::path path;
    std::string label;
    std::string subject;
    std::string trial;
};

// Dataset description parsed from a manifest file. Line-oriented text format
// ('#' starts a comment, tokens are whitespace-separated):
//
//   hand both                     # left | right | both (default both)
//   normalization zscore          # none | zscore | minmax (default zscore)
//   window 100                    # warping window in samples
//   width 76                      # columns per record (with explicit columns)
//   columns 39,40,41,58,59,60     # 1-based column override; replaces hand
//   labels KT NP SU               # declared label set (default: from entries)
//   entry rel/path.txt KT S01 T01 # path label subject trial
//
// Paths are resolved relative to the manifest's directory and must not
// contain whitespace.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    HandSelection hand = HandSelection::both;
    std::optional<ColumnMap> columns; // overrides hand when present
    NormalizationPolicy normalization = NormalizationPolicy::zscore;
    std::size_t window = 100;
    std::vector<std::string> label_set;

    ColumnMap column_map() const { return columns ? *columns : default_column_map(hand); }
};

inline DatasetManifest parse_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot read manifest " + path.string());
    const auto base_dir = path.parent_path();

    DatasetManifest manifest;
    std::optional<std::size_t> width;
    std::optional<std::vector<std::size_t>> column_indices;
    bool label_set_declared = false;

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string key;
        if (!(tokens >> key)) continue;

        const auto fail = [&](const std::string& why) {
            throw ManifestError(path.string() + ":" + std::to_string(line_number) + ": " + why);
        };
        const auto no_trailing = [&] {
            std::string extra;
            if (tokens >> extra) fail("unexpected trailing token '" + extra + "'");
        };
        const auto parse_index = [&](const std::string& text) -> std::size_t {
            std::size_t value = 0;
            const char* begin = text.data();
            const char* end = begin + text.size();
            const auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc() || ptr != end || value < 1)
                fail("'" + text + "' is not a positive integer");
            return value;
        };

        if (key == "hand") {
            std::string value;
            if (!(tokens >> value)) fail("hand needs a value");
            manifest.hand = hand_selection_from_string(value);
            no_trailing();
        } else if (key == "normalization") {
            std::string value;
            if (!(tokens >> value)) fail("normalization needs a value");
            manifest.normalization = normalization_policy_from_string(value);
            no_trailing();
        } else if (key == "window") {
            std::string value;
            if (!(tokens >> value)) fail("window needs a value");
            manifest.window = parse_index(value);
            no_trailing();
        } else if (key == "width") {
            std::string value;
            if (!(tokens >> value)) fail("width needs a value");
            width = parse_index(value);
            no_trailing();
        } else if (key == "columns") {
            std::string value;
            if (!(tokens >> value)) fail("columns needs a comma-separated list");
            no_trailing();
            std::vector<std::size_t> indices;
            std::stringstream parts(value);
            std::string part;
            while (std::getline(parts, part, ',')) indices.push_back(parse_index(part));
            if (indices.empty()) fail("columns list is empty");
            std::set<std::size_t> unique(indices.begin(), indices.end());
            if (unique.size() != indices.size()) fail("column indices must be distinct");
            column_indices = std::move(indices);
        } else if (key == "labels") {
            std::string label;
            while (tokens >> label) manifest.label_set.push_back(label);
            if (manifest.label_set.empty()) fail("labels needs at least one class id");
            label_set_declared = true;
        } else if (key == "entry") {
            ManifestEntry entry;
            std::string rel;
            if (!(tokens >> rel >> entry.label >> entry.subject >> entry.trial))
                fail("entry needs: path label subject trial");
            std::string extra;
            if (tokens >> extra) fail("entry has trailing tokens after trial");
            entry.path = base_dir / rel;
            manifest.entries.push_back(std::move(entry));
        } else {
            fail("unknown manifest key '" + key + "'");
        }
    }

    if (manifest.entries.empty()) throw ManifestError(path.string() + ": manifest has no entries");

    if (column_indices) {
        ColumnMap map;
        map.expected_width = width.value_or(*std::max_element(column_indices->begin(), column_indices->end()));
        for (const auto col : *column_indices) {
            if (col > map.expected_width)
                throw ManifestError(path.string() + ": column " + std::to_string(col) +
                                    " exceeds width " + std::to_string(map.expected_width));
            map.channels.emplace_back(col, "c" + std::to_string(col));
        }
        manifest.columns = std::move(map);
    } else if (width && *width != default_column_map(manifest.hand).expected_width) {
        throw ManifestError(path.string() + ": width without columns must be 76 (the default layout)");
    }

    std::set<std::string> seen_paths;
    for (const auto& entry : manifest.entries) {
        if (!seen_paths.insert(entry.path.string()).second)
            throw ManifestError(path.string() + ": duplicate entry path " + entry.path.string());
    }

    if (!label_set_declared) {
        std::set<std::string> labels;
        for (const auto& entry : manifest.entries) labels.insert(entry.label);
        manifest.label_set.assign(labels.begin(), labels.end());
    } else {
        const std::set<std::string> declared(manifest.label_set.begin(), manifest.label_set.end());
        for (const auto& entry : manifest.entries) {
            if (!declared.count(entry.label))
                throw ManifestError(path.string() + ": entry label '" + entry.label +
                                    "' is not in the declared label set");
        }
    }
    return manifest;
}

// Loads, channel-selects and normalizes every entry, in manifest order.
// Selection happens at load time and normalization operates on the selected
// channels; this order is the contract. The first failing entry aborts with
// its path and cause.
inline std::vector<LabeledInstance> build_dataset(const DatasetManifest& manifest) {
    const ColumnMap map = manifest.column_map();
    std::vector<LabeledInstance> instances;
    instances.reserve(manifest.entries.size());
    std::set<std::string> ids;
    for (const auto& entry : manifest.entries) {
        LabeledInstance inst;
        inst.label = entry.label;
        inst.subject = entry.subject;
        inst.trial = entry.trial;
        try {
            inst.series = apply_normalization(load_kinematics(entry.path, map), manifest.normalization);
        } catch (const Error& e) {
            throw ManifestError("entry " + entry.path.string() + ": " + e.what());
        }
        if (!ids.insert(instance_id(inst)).second)
            throw ManifestError("duplicate instance id " + instance_id(inst) +
                                " (label-subject-trial must be unique)");
        instances.push_back(std::move(inst));
    }
    return instances;
}

inline std::vector<std::string> labels_of(std::span<const LabeledInstance> instances) {
    std::vector<std::string> labels;
    labels.reserve(instances.size());
    for (const auto& inst : instances) labels.push_back(inst.label);
    return labels;
}

} // namespace warpknn

#endif // WARPKNN_MANIFEST_HPP
