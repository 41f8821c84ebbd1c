#ifndef WARPKNN_SYNTH_HPP
#define WARPKNN_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "warpknn/distance_matrix.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/prng.hpp"
#include "warpknn/time_series.hpp"

namespace warpknn {

// Synthetic 3-D trajectory corpus standing in for unshippable kinematic
// recordings. Each class is a distinct parametric curve family; instances of
// a class differ by sampled length, a random monotone time-reparameterization
// (to exercise warping) and additive Gaussian noise. Deterministic given
// seed.
struct SynthSpec {
    std::size_t classes = 3;
    std::size_t per_class = 20;
    std::size_t min_length = 80;
    std::size_t max_length = 120;
    double noise_sd = 0.05;
    std::uint64_t seed = 42;
    bool reparameterize = true;
};

namespace detail {

// Piecewise-linear wave in [-1, 1] with unit period.
inline double triangle(double u) {
    return 2.0 / std::numbers::pi * std::asin(std::sin(2.0 * std::numbers::pi * u));
}

struct CurveFamily {
    std::string name;
    std::size_t kind; // 0 helix, 1 figure-eight, 2 zigzag
    double freq;

    // Coordinate `axis` of the family's curve at phase t in [0, 1].
    double eval(double t, int axis) const {
        const double two_pi = 2.0 * std::numbers::pi;
        switch (kind) {
            case 0: // helix: freq turns around the z axis while rising
                if (axis == 0) return std::cos(two_pi * freq * t);
                if (axis == 1) return std::sin(two_pi * freq * t);
                return 2.0 * t - 1.0;
            case 1: // lissajous figure-eight with a slow vertical sway
                if (axis == 0) return std::sin(two_pi * freq * t);
                if (axis == 1) return 0.8 * std::sin(2.0 * two_pi * freq * t);
                return 0.4 * std::cos(two_pi * freq * t);
            default: // zigzag: triangle waves against a linear drift
                if (axis == 0) return triangle(freq * t);
                if (axis == 1) return 2.0 * t - 1.0;
                return 0.5 * triangle(2.0 * freq * t + 0.25);
        }
    }
};

// Classes 0..2 are the base families; further classes reuse them with the
// frequency stepped up so every class stays geometrically distinct.
inline CurveFamily curve_family(std::size_t class_index) {
    const std::size_t kind = class_index % 3;
    const auto round_ = class_index / 3;
    CurveFamily family;
    family.kind = kind;
    switch (kind) {
        case 0:
            family.name = "helix";
            family.freq = 2.0 + 1.5 * static_cast<double>(round_);
            break;
        case 1:
            family.name = "figure8";
            family.freq = 1.0 + 1.0 * static_cast<double>(round_);
            break;
        default:
            family.name = "zigzag";
            family.freq = 3.0 + 2.0 * static_cast<double>(round_);
            break;
    }
    if (round_ > 0) family.name += std::to_string(round_ + 1);
    return family;
}

inline std::string zero_pad(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    while (s.size() < width) s.insert(s.begin(), '0');
    return s;
}

} // namespace detail

inline void validate_spec(const SynthSpec& spec) {
    if (spec.classes < 2) throw Error("synth: need at least 2 classes");
    if (spec.per_class < 1) throw Error("synth: need at least 1 instance per class");
    if (spec.min_length < 3) throw Error("synth: min length must be >= 3");
    if (spec.max_length < spec.min_length) throw Error("synth: max length < min length");
    if (spec.noise_sd < 0.0) throw Error("synth: noise sd must be >= 0");
}

// Draw order per instance (fixed; part of the determinism contract):
// length (only when the range is nontrivial), then L-1 warp increments (only
// when reparameterizing), then 3L noise deviates (only when noise_sd > 0).
inline std::vector<LabeledInstance> synth_dataset(const SynthSpec& spec) {
    validate_spec(spec);

    const std::size_t digits = std::max<std::size_t>(2, std::to_string(spec.per_class - 1).size());
    SplitMix64 rng(spec.seed);
    std::vector<LabeledInstance> instances;
    instances.reserve(spec.classes * spec.per_class);

    for (std::size_t c = 0; c < spec.classes; ++c) {
        const auto family = detail::curve_family(c);
        for (std::size_t i = 0; i < spec.per_class; ++i) {
            std::size_t length = spec.min_length;
            if (spec.max_length > spec.min_length)
                length += static_cast<std::size_t>(rng.bounded(spec.max_length - spec.min_length + 1));

            // Monotone reparameterization: cumulative log-normal increments
            // rescaled to [0, 1].
            std::vector<double> phase(length);
            if (spec.reparameterize) {
                double sum = 0.0;
                for (std::size_t j = 1; j < length; ++j) {
                    sum += std::exp(0.6 * rng.gaussian());
                    phase[j] = sum;
                }
                for (std::size_t j = 1; j < length; ++j) phase[j] /= sum;
            } else {
                for (std::size_t j = 0; j < length; ++j)
                    phase[j] = static_cast<double>(j) / static_cast<double>(length - 1);
            }

            std::vector<double> data(length * 3);
            for (std::size_t j = 0; j < length; ++j)
                for (int axis = 0; axis < 3; ++axis)
                    data[j * 3 + axis] = family.eval(phase[j], axis);
            if (spec.noise_sd > 0.0) {
                for (auto& v : data) v += spec.noise_sd * rng.gaussian();
            }

            LabeledInstance inst;
            inst.series = TimeSeries::from_flat(std::move(data), length, 3, {"x", "y", "z"});
            inst.label = family.name;
            inst.subject = "synth";
            inst.trial = detail::zero_pad(i, digits);
            instances.push_back(std::move(inst));
        }
    }
    return instances;
}

// Writes the corpus as plain-text kinematics files (3 columns, 17
// significant digits, so reloading reproduces the exact doubles) plus a
// manifest. Re-running with the same spec rewrites identical bytes.
inline std::filesystem::path write_synth_corpus(const SynthSpec& spec,
                                                const std::filesystem::path& dir) {
    const auto instances = synth_dataset(spec);

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string());

    std::vector<std::string> file_names;
    file_names.reserve(instances.size());
    for (const auto& inst : instances) {
        const std::string file_name = inst.label + "_" + inst.trial + ".txt";
        const auto path = dir / file_name;
        std::ofstream out(path);
        if (!out) throw IoError("cannot write " + path.string());
        const auto& series = inst.series;
        for (std::size_t i = 0; i < series.rows(); ++i) {
            for (std::size_t c = 0; c < series.channels(); ++c) {
                if (c) out << ' ';
                out << format_full(series(i, c));
            }
            out << '\n';
        }
        file_names.push_back(file_name);
    }

    const auto manifest_path = dir / "manifest.txt";
    std::ofstream out(manifest_path);
    if (!out) throw IoError("cannot write " + manifest_path.string());
    out << "# synthetic trajectory corpus (seed " << spec.seed << ")\n";
    out << "normalization zscore\n";
    out << "window 100\n";
    out << "width 3\n";
    out << "columns 1,2,3\n";
    for (std::size_t i = 0; i < instances.size(); ++i) {
        out << "entry " << file_names[i] << ' ' << instances[i].label << ' '
            << instances[i].subject << ' ' << instances[i].trial << '\n';
    }
    return manifest_path;
}

} // namespace warpknn

#endif // WARPKNN_SYNTH_HPP
