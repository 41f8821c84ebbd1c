#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <random>

#include "warpknn/dtw.hpp"

#include "oracles.hpp"

using warpknn::TimeSeries;
using warpknn::WarpConfig;

namespace {

WarpConfig unbounded() {
    WarpConfig cfg;
    cfg.window = std::nullopt;
    return cfg;
}

WarpConfig windowed(std::size_t w) {
    WarpConfig cfg;
    cfg.window = w;
    return cfg;
}

bool path_is_legal(const warpknn::WarpPath& path, std::size_t m, std::size_t n,
                   std::optional<std::size_t> window) {
    if (path.steps.empty()) return false;
    if (path.steps.front() != std::pair<std::size_t, std::size_t>{1, 1}) return false;
    if (path.steps.back() != std::pair<std::size_t, std::size_t>{m, n}) return false;
    std::optional<std::size_t> band;
    if (window) {
        const std::size_t gap = m > n ? m - n : n - m;
        band = std::max(*window, gap);
    }
    for (std::size_t s = 0; s < path.steps.size(); ++s) {
        const auto [i, j] = path.steps[s];
        if (band) {
            const std::size_t diff = i > j ? i - j : j - i;
            if (diff > *band) return false;
        }
        if (s == 0) continue;
        const auto [pi, pj] = path.steps[s - 1];
        const std::size_t di = i - pi, dj = j - pj;
        if (di > 1 || dj > 1 || (di == 0 && dj == 0)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("point distance basics") {
    const std::vector<double> u = {1.0, 2.0, 3.0};
    const std::vector<double> v = {1.0, 2.0, 3.0};
    CHECK(warpknn::point_distance(u, v) == 0.0);

    const std::vector<double> a = {0.0, 0.0};
    const std::vector<double> b = {3.0, 4.0};
    CHECK(warpknn::point_distance(a, b) == 5.0);

    const std::vector<double> w = {1.0};
    CHECK_THROWS_AS(warpknn::point_distance(u, w), warpknn::DimensionMismatch);
}

TEST_CASE("point distance matches term-by-term summation on random vectors") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> u(6), v(6);
        for (std::size_t l = 0; l < 6; ++l) {
            u[l] = value(rng);
            v[l] = value(rng);
        }
        double sum = 0.0;
        for (std::size_t l = 0; l < 6; ++l) sum += (u[l] - v[l]) * (u[l] - v[l]);
        CHECK(std::abs(warpknn::point_distance(u, v) - std::sqrt(sum)) < 1e-12);
    }
}

TEST_CASE("dtw of a series with itself is zero") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ts = oracles::random_series(rng, 2 + rng() % 20, 1 + rng() % 3);
        CHECK(warpknn::dtw_distance(ts, ts, unbounded()) == 0.0);
        CHECK(warpknn::dtw_distance(ts, ts, windowed(1)) == 0.0);
    }
}

TEST_CASE("two zeros against one one costs two") {
    const auto s = TimeSeries::from_rows({{0.0}, {0.0}});
    const auto t = TimeSeries::from_rows({{1.0}});
    CHECK(warpknn::dtw_distance(s, t, unbounded()) == 2.0);
}

TEST_CASE("channel mismatch is rejected") {
    const auto s = TimeSeries::from_rows({{0.0, 1.0}});
    const auto t = TimeSeries::from_rows({{1.0}});
    CHECK_THROWS_AS(warpknn::dtw_distance(s, t, unbounded()), warpknn::DimensionMismatch);
    CHECK_THROWS_AS(warpknn::dtw_path(s, t, unbounded()), warpknn::DimensionMismatch);
}

TEST_CASE("a zero window is rejected") {
    const auto s = TimeSeries::from_rows({{0.0}, {1.0}});
    CHECK_THROWS_AS(warpknn::dtw_distance(s, s, windowed(0)), warpknn::Error);
}

TEST_CASE("dp distance equals the exhaustive path minimum") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> len(1, 6);
    std::uniform_int_distribution<std::size_t> chans(1, 2);
    std::uniform_int_distribution<int> wsel(0, 4);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t p = chans(rng);
        const auto s = oracles::random_series(rng, len(rng), p);
        const auto t = oracles::random_series(rng, len(rng), p);
        std::optional<std::size_t> window;
        if (const int w = wsel(rng); w > 0) window = static_cast<std::size_t>(w);

        WarpConfig cfg;
        cfg.window = window;
        const double dp = warpknn::dtw_distance(s, t, cfg);
        const double brute = oracles::brute_force_dtw(s, t, window);
        CHECK(std::abs(dp - brute) <= 1e-12);

        const auto path = warpknn::dtw_path(s, t, cfg);
        CHECK(path_is_legal(path, s.rows(), t.rows(), window));
        CHECK(std::abs(path.total - dp) <= 1e-9);
        double walked = 0.0;
        for (const auto& [i, j] : path.steps)
            walked += warpknn::point_distance(s.row(i - 1), t.row(j - 1));
        CHECK(std::abs(walked - dp) <= 1e-9);
    }
}

TEST_CASE("identical series warp along the diagonal") {
    std::mt19937_64 rng(23);
    const auto ts = oracles::random_series(rng, 7, 2);
    const auto path = warpknn::dtw_path(ts, ts, unbounded());
    REQUIRE(path.steps.size() == 7);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(path.steps[i] == std::pair<std::size_t, std::size_t>{i + 1, i + 1});
    CHECK(path.total == 0.0);
}

TEST_CASE("a single-sample series admits exactly one path") {
    const auto s = TimeSeries::from_rows({{1.0, 1.0}});
    const auto t = TimeSeries::from_rows({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}});
    const auto path = warpknn::dtw_path(s, t, unbounded());
    REQUIRE(path.steps.size() == 4);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(path.steps[j] == std::pair<std::size_t, std::size_t>{1, j + 1});
}

TEST_CASE("dtw is symmetric") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t p = 1 + rng() % 3;
        const auto s = oracles::random_series(rng, 2 + rng() % 15, p);
        const auto t = oracles::random_series(rng, 2 + rng() % 15, p);
        for (const auto& cfg : {unbounded(), windowed(3), windowed(100)}) {
            CHECK(std::abs(warpknn::dtw_distance(s, t, cfg) - warpknn::dtw_distance(t, s, cfg)) <=
                  1e-9);
        }
    }
}

TEST_CASE("distances are nonnegative and widening the window never increases them") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = oracles::random_series(rng, 2 + rng() % 12, 2);
        const auto t = oracles::random_series(rng, 2 + rng() % 12, 2);
        double previous = std::numeric_limits<double>::infinity();
        for (const std::size_t w : {1, 2, 3, 5, 8, 13}) {
            const double d = warpknn::dtw_distance(s, t, windowed(w));
            CHECK(d >= 0.0);
            CHECK(d <= previous);
            previous = d;
        }
        CHECK(warpknn::dtw_distance(s, t, unbounded()) <= previous);
    }
}

TEST_CASE("unbounded dtw is dominated by the lock-step sum on equal lengths") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng() % 20;
        const auto s = oracles::random_series(rng, m, 2);
        const auto t = oracles::random_series(rng, m, 2);
        double lockstep = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            lockstep += warpknn::point_distance(s.row(i), t.row(i));
        CHECK(warpknn::dtw_distance(s, t, unbounded()) <= lockstep);
    }
}

TEST_CASE("rolling-buffer and full-table evaluations agree bit for bit") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t p = 1 + rng() % 3;
        const auto s = oracles::random_series(rng, 2 + rng() % 40, p);
        const auto t = oracles::random_series(rng, 2 + rng() % 40, p);
        for (const auto& cfg : {unbounded(), windowed(5), windowed(100)}) {
            CHECK(warpknn::dtw_path(s, t, cfg).total == warpknn::dtw_distance(s, t, cfg));
        }
    }
}

TEST_CASE("path normalization divides by the optimal path length") {
    std::mt19937_64 rng(43);
    const auto s = oracles::random_series(rng, 9, 2);
    const auto t = oracles::random_series(rng, 6, 2);

    WarpConfig raw = windowed(100);
    WarpConfig normalized = raw;
    normalized.normalize_by_path = true;

    const auto path = warpknn::dtw_path(s, t, raw);
    const double expected = path.total / static_cast<double>(path.steps.size());
    CHECK(warpknn::dtw_distance(s, t, normalized) == expected);
}

TEST_CASE("ddtw equals dtw on the derivative-transformed series bit for bit") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t p = 1 + rng() % 3;
        const auto s = oracles::random_series(rng, 3 + rng() % 15, p);
        const auto t = oracles::random_series(rng, 3 + rng() % 15, p);
        const auto cfg = trial % 2 == 0 ? unbounded() : windowed(4);
        const double composed = warpknn::dtw_distance(warpknn::derivative_transform(s),
                                                      warpknn::derivative_transform(t), cfg);
        CHECK(warpknn::ddtw_distance(s, t, cfg) == composed);
    }
}

TEST_CASE("ddtw is invariant under constant offsets") {
    std::mt19937_64 rng(53);

    // On a dyadic grid the offset cancels exactly in the derivative's differences.
    std::vector<double> grid(12 * 3), shifted(12 * 3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = static_cast<double>(static_cast<int>(rng() % 1025) - 512) / 64.0;
        shifted[i] = grid[i] + 7.25;
    }
    const auto s = TimeSeries::from_flat(std::move(grid), 12, 3);
    const auto t = TimeSeries::from_flat(std::move(shifted), 12, 3);
    CHECK(warpknn::ddtw_distance(s, s, unbounded()) == 0.0);
    CHECK(warpknn::ddtw_distance(s, t, unbounded()) == 0.0);

    // Arbitrary reals cancel to rounding noise.
    const auto u = oracles::random_series(rng, 15, 2);
    std::vector<double> offset(u.flat().begin(), u.flat().end());
    for (auto& v : offset) v += 3.7;
    const auto w = TimeSeries::from_flat(std::move(offset), u.rows(), u.channels());
    CHECK(warpknn::ddtw_distance(u, w, unbounded()) < 1e-12);
}

TEST_CASE("ddtw needs at least 3 samples") {
    const auto s = TimeSeries::from_rows({{0.0}, {1.0}});
    const auto t = TimeSeries::from_rows({{0.0}, {1.0}, {2.0}});
    CHECK_THROWS_AS(warpknn::ddtw_distance(s, t, unbounded()), warpknn::SeriesTooShort);
    CHECK_THROWS_AS(warpknn::ddtw_distance(t, s, unbounded()), warpknn::SeriesTooShort);
}
