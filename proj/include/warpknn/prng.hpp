#ifndef WARPKNN_PRNG_HPP
#define WARPKNN_PRNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace warpknn {

// Seeded generator with a fixed, documented algorithm so fold plans and
// synthetic corpora reproduce across platforms and runs. The integer stream
// is splitmix64 (Steele, Lea, Flood; the constants below are the reference
// ones), bounded draws use Lemire's multiply-shift rejection method, and
// gaussians come from Box-Muller on two 53-bit uniforms. Integer outputs are
// bit-reproducible everywhere; gaussian() additionally depends on libm
// rounding of log/sqrt/cos/sin.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, n), exactly uniform via rejection.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard normal deviate (Box-Muller; the second value of each pair is
    // cached so consecutive calls consume uniforms in a fixed pattern).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Fisher-Yates on index vectors; the draw order (descending i, swap with
// bounded(i+1)) is part of the fold-plan reproducibility contract.
inline void shuffle_indices(std::vector<std::size_t>& indices, SplitMix64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(indices[i - 1], indices[j]);
    }
}

} // namespace warpknn

#endif // WARPKNN_PRNG_HPP
