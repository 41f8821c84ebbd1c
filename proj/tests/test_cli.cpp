// End-to-end tests of the command-line binary. ctest points WARPKNN_CLI at
// the built executable.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "warpknn/warpknn.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* path = std::getenv("WARPKNN_CLI");
    REQUIRE(path != nullptr);
    return path;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("warpknn_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path operator/(const std::string& name) const { return path / name; }
};

struct RunResult {
    int exit_code;
    std::string output; // stdout only
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
    const auto out_file = dir.path / "stdout.txt";
    const std::string command =
        cli_path() + " " + args + " > " + out_file.string() + " 2> /dev/null";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Small, quick corpus shared by most commands.
const std::string kSynthFlags = "--classes 3 --per-class 4 --min-length 15 --max-length 22";

std::string synth_corpus(const TempDir& dir, const std::string& name, std::uint64_t seed = 42) {
    const auto corpus_dir = dir.path / name;
    const auto result = run_cli("synth --out-dir " + corpus_dir.string() + " " + kSynthFlags +
                                    " --seed " + std::to_string(seed),
                                dir);
    REQUIRE(result.exit_code == 0);
    return (corpus_dir / "manifest.txt").string();
}

} // namespace

TEST_CASE("synth writes classes x per_class files plus a loadable manifest") {
    TempDir dir;
    const auto manifest_path = synth_corpus(dir, "corpus");
    const auto manifest = warpknn::parse_manifest(manifest_path);
    CHECK(manifest.entries.size() == 12);
    const auto instances = warpknn::build_dataset(manifest);
    CHECK(instances.size() == 12);

    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir.path / "corpus"))
        files += entry.path().extension() == ".txt" && entry.path().filename() != "manifest.txt";
    CHECK(files == 12);
}

TEST_CASE("synth is byte-identical per seed") {
    TempDir dir;
    synth_corpus(dir, "one", 7);
    synth_corpus(dir, "two", 7);
    for (const auto& entry : fs::directory_iterator(dir.path / "one")) {
        const auto other = dir.path / "two" / entry.path().filename();
        CHECK(read_file(entry.path()) == read_file(other));
    }
}

TEST_CASE("distance of an instance to itself is zero and ids are validated") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto self = run_cli("distance --manifest " + manifest + " --a helix-synth-00 --b helix-synth-00",
                              dir);
    CHECK(self.exit_code == 0);
    CHECK(std::stod(self.output) == 0.0);

    const auto unknown =
        run_cli("distance --manifest " + manifest + " --a nope --b helix-synth-00", dir);
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("distance agrees with the library and exports a legal warp path") {
    TempDir dir;
    const auto manifest_path = synth_corpus(dir, "corpus");
    const auto path_file = dir / "path.csv";
    const auto result = run_cli("distance --manifest " + manifest_path +
                                    " --a helix-synth-00 --b helix-synth-01 --window 50 --path-out " +
                                    path_file.string(),
                                dir);
    REQUIRE(result.exit_code == 0);

    const auto manifest = warpknn::parse_manifest(manifest_path);
    const auto instances = warpknn::build_dataset(manifest);
    warpknn::WarpConfig cfg;
    cfg.window = 50;
    const double expected =
        warpknn::dtw_distance(instances[0].series, instances[1].series, cfg);
    CHECK(std::stod(result.output) == expected);

    // Path CSV: boundary, monotone steps, per-step point distances sum to the total.
    std::ifstream in(path_file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "i,j,point_distance");
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    double total = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t i = 0, j = 0;
        double d = 0.0;
        REQUIRE(std::sscanf(line.c_str(), "%zu,%zu,%lf", &i, &j, &d) == 3);
        steps.emplace_back(i, j);
        total += d;
    }
    REQUIRE(!steps.empty());
    CHECK(steps.front() == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(steps.back() ==
          std::pair<std::size_t, std::size_t>{instances[0].series.rows(), instances[1].series.rows()});
    for (std::size_t s = 1; s < steps.size(); ++s) {
        const auto di = steps[s].first - steps[s - 1].first;
        const auto dj = steps[s].second - steps[s - 1].second;
        CHECK(di <= 1);
        CHECK(dj <= 1);
        CHECK(di + dj >= 1);
    }
    CHECK(std::abs(total - expected) < 1e-9);
}

TEST_CASE("matrix runs are idempotent, symmetric and consistent with distance") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto out_a = dir / "a.csv";
    const auto out_b = dir / "b.csv";
    REQUIRE(run_cli("matrix --manifest " + manifest + " --out " + out_a.string(), dir).exit_code == 0);
    REQUIRE(run_cli("matrix --manifest " + manifest + " --out " + out_b.string() + " --workers 3",
                    dir)
                .exit_code == 0);
    CHECK(read_file(out_a) == read_file(out_b));

    const auto matrix = warpknn::read_matrix_csv(out_a); // validates symmetry + diagonal
    REQUIRE(matrix.size() == 12);

    const auto spot = run_cli("distance --manifest " + manifest + " --a " +
                                  matrix.instance_ids[2] + " --b " + matrix.instance_ids[9],
                              dir);
    REQUIRE(spot.exit_code == 0);
    CHECK(std::stod(spot.output) == matrix.at(2, 9));
}

TEST_CASE("evaluate reports a perfect corpus at 100% with LOO sd exactly 0") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto out_dir = dir / "eval";
    const auto result = run_cli("evaluate --manifest " + manifest +
                                    " --protocol loo --k 3 --replications 5 --out-dir " +
                                    out_dir.string(),
                                dir);
    REQUIRE(result.exit_code == 0);

    const auto report = warpknn::parse_report_csv(out_dir / "report.csv");
    CHECK(report.protocol == "loo");
    CHECK(report.accuracy.mean == 1.0);
    CHECK(report.accuracy.sd == 0.0);
    CHECK(report.sensitivity.sd == 0.0);
    CHECK(report.specificity.sd == 0.0);

    CHECK(fs::exists(out_dir / "report.txt"));
    CHECK(fs::exists(out_dir / "confusion.csv"));
    CHECK(fs::exists(out_dir / "report_plotdata.csv"));
    CHECK(read_file(out_dir / "report.txt").find("100.00%") != std::string::npos);
}

TEST_CASE("evaluate on a precomputed matrix equals the in-process run") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto matrix_file = dir / "matrix.csv";
    REQUIRE(run_cli("matrix --manifest " + manifest + " --out " + matrix_file.string(), dir)
                .exit_code == 0);

    const auto direct_dir = dir / "direct";
    const auto cached_dir = dir / "cached";
    const std::string eval_flags =
        " --protocol kfold --folds 4 --k 2 --replications 6 --seed 3 --out-dir ";
    REQUIRE(run_cli("evaluate --manifest " + manifest + eval_flags + direct_dir.string(), dir)
                .exit_code == 0);
    REQUIRE(run_cli("evaluate --manifest " + manifest + " --matrix " + matrix_file.string() +
                        eval_flags + cached_dir.string(),
                    dir)
                .exit_code == 0);
    CHECK(read_file(direct_dir / "report.csv") == read_file(cached_dir / "report.csv"));
    CHECK(read_file(direct_dir / "confusion.csv") == read_file(cached_dir / "confusion.csv"));
}

TEST_CASE("tune-k emits one row per k") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto out_dir = dir / "tune";
    const auto result = run_cli("tune-k --manifest " + manifest +
                                    " --k-min 1 --k-max 5 --protocol loo --replications 1 "
                                    "--out-dir " +
                                    out_dir.string(),
                                dir);
    REQUIRE(result.exit_code == 0);

    std::ifstream in(out_dir / "tune_k.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,accuracy_mean,accuracy_sd");
    std::size_t rows = 0;
    double first_accuracy = -1.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        if (first_accuracy < 0.0)
            first_accuracy = std::stod(line.substr(line.find(',') + 1));
    }
    CHECK(rows == 5);
    CHECK(first_accuracy == 1.0); // separable corpus
    CHECK(fs::exists(out_dir / "tune_k_plotdata.csv"));
}

TEST_CASE("usage errors exit 1, data errors exit 2") {
    TempDir dir;
    CHECK(run_cli("evaluate", dir).exit_code == 1);             // no data source
    CHECK(run_cli("nonsense", dir).exit_code == 1);             // unknown subcommand
    CHECK(run_cli("evaluate --manifest missing.txt --k 1", dir).exit_code == 2);
    CHECK(run_cli("synth --out-dir x --classes 1", dir).exit_code == 1); // range check
    const auto manifest = synth_corpus(dir, "corpus");
    CHECK(run_cli("evaluate --manifest " + manifest + " --protocol loo --k 50", dir).exit_code ==
          2); // KTooLarge
}

TEST_CASE("flags can come from a config file, with command line taking precedence") {
    TempDir dir;
    const auto manifest = synth_corpus(dir, "corpus");
    const auto config = dir / "run.ini";
    {
        std::ofstream out(config);
        out << "[evaluate]\n";
        out << "manifest = \"" << manifest << "\"\n";
        out << "protocol = \"loo\"\n";
        out << "k = 3\n";
        out << "replications = 2\n";
        out << "out-dir = \"" << (dir / "from_config").string() << "\"\n";
    }
    const auto result = run_cli("--config " + config.string() + " evaluate", dir);
    REQUIRE(result.exit_code == 0);
    const auto report = warpknn::parse_report_csv(dir / "from_config" / "report.csv");
    CHECK(report.k == 3);
    CHECK(report.protocol == "loo");

    // Command line overrides the file.
    const auto override_run = run_cli("--config " + config.string() + " evaluate --k 2 --out-dir " +
                                          (dir / "override").string(),
                                      dir);
    REQUIRE(override_run.exit_code == 0);
    CHECK(warpknn::parse_report_csv(dir / "override" / "report.csv").k == 2);
}
