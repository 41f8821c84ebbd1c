// Command-line surface for trajectory classification experiments: synthetic
// corpus generation, pairwise distance matrices, k tuning, and replicated
// cross-validation reports.
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "warpknn/warpknn.hpp"

namespace fs = std::filesystem;

namespace {

struct DataOptions {
    std::string manifest_path;
    bool use_synth = false;
    warpknn::SynthSpec synth;

    std::string measure = "dtw";
    std::size_t window = 100;
    bool window_given = false;
    bool unbounded_window = false;
    bool normalize_by_path = false;
    std::string normalization; // empty: manifest policy (or zscore for synth)
    unsigned workers = 0;
};

struct Dataset {
    std::vector<warpknn::LabeledInstance> instances;
    std::vector<std::string> labels;
    std::size_t manifest_window = 100;
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
    auto* manifest = cmd->add_option("--manifest", opts.manifest_path, "Dataset manifest file");
    auto* synth = cmd->add_flag("--synth", opts.use_synth, "Use an in-memory synthetic corpus");
    manifest->excludes(synth);
    synth->excludes(manifest);

    cmd->add_option("--classes", opts.synth.classes, "Synthetic: number of classes")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    cmd->add_option("--per-class", opts.synth.per_class, "Synthetic: instances per class")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-length", opts.synth.min_length, "Synthetic: minimum series length");
    cmd->add_option("--max-length", opts.synth.max_length, "Synthetic: maximum series length");
    cmd->add_option("--noise-sd", opts.synth.noise_sd, "Synthetic: additive Gaussian noise sd");
    cmd->add_option("--synth-seed", opts.synth.seed, "Synthetic: generator seed");

    cmd->add_option("--measure", opts.measure, "Similarity measure: dtw or ddtw")
        ->check(CLI::IsMember({"dtw", "ddtw"}));
    cmd->add_option("--window", opts.window, "Warping window half-width in samples (>= 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--unbounded-window", opts.unbounded_window, "Disable the warping window");
    cmd->add_flag("--normalize-by-path", opts.normalize_by_path,
                  "Divide distances by the optimal warp-path length");
    cmd->add_option("--normalization", opts.normalization,
                    "Per-channel normalization: none, zscore or minmax")
        ->check(CLI::IsMember({"none", "zscore", "minmax"}));
    cmd->add_option("--workers", opts.workers,
                    "Worker threads for the pairwise stage (0 = hardware)");
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
    return cmd->count(name) > 0;
}

// Loads the configured data source; hand overrides the manifest's hand
// selection (used by the per-scenario evaluate loop).
Dataset load_dataset(const DataOptions& opts,
                     std::optional<warpknn::HandSelection> hand = std::nullopt) {
    Dataset dataset;
    if (opts.use_synth) {
        if (hand) throw CLI::ValidationError("--hands", "hand scenarios need a manifest-based dataset");
        auto policy = warpknn::NormalizationPolicy::zscore;
        if (!opts.normalization.empty())
            policy = warpknn::normalization_policy_from_string(opts.normalization);
        dataset.instances = warpknn::synth_dataset(opts.synth);
        for (auto& inst : dataset.instances)
            inst.series = warpknn::apply_normalization(inst.series, policy);
    } else if (!opts.manifest_path.empty()) {
        auto manifest = warpknn::parse_manifest(opts.manifest_path);
        if (hand) {
            if (manifest.columns)
                throw warpknn::Error(
                    "hand scenarios need the default column layout, but the manifest "
                    "declares explicit columns");
            manifest.hand = *hand;
        }
        if (!opts.normalization.empty())
            manifest.normalization = warpknn::normalization_policy_from_string(opts.normalization);
        dataset.manifest_window = manifest.window;
        dataset.instances = warpknn::build_dataset(manifest);
    } else {
        throw CLI::ValidationError("data source", "one of --manifest or --synth is required");
    }
    dataset.labels = warpknn::labels_of(dataset.instances);
    return dataset;
}

warpknn::WarpConfig make_config(const DataOptions& opts, const Dataset& dataset) {
    warpknn::WarpConfig cfg;
    cfg.measure = warpknn::measure_from_string(opts.measure);
    cfg.normalize_by_path = opts.normalize_by_path;
    if (opts.unbounded_window)
        cfg.window = std::nullopt;
    else
        cfg.window = opts.window_given ? opts.window : dataset.manifest_window;
    return cfg;
}

std::size_t find_instance(const Dataset& dataset, const std::string& id) {
    for (std::size_t i = 0; i < dataset.instances.size(); ++i)
        if (warpknn::instance_id(dataset.instances[i]) == id) return i;
    throw warpknn::UnknownInstanceId("unknown instance id '" + id +
                                     "' (ids are <label>-<subject>-<trial>)");
}

warpknn::CvProtocol make_protocol(const std::string& name, std::size_t folds) {
    warpknn::CvProtocol protocol;
    if (name == "loo") {
        protocol.kind = warpknn::CvProtocol::Kind::loo;
    } else {
        protocol.kind = warpknn::CvProtocol::Kind::kfold;
        protocol.n_folds = folds;
    }
    return protocol;
}

std::vector<warpknn::ExportFormat> parse_formats(const std::vector<std::string>& names) {
    std::vector<warpknn::ExportFormat> formats;
    for (const auto& name : names) formats.push_back(warpknn::export_format_from_string(name));
    return formats;
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw warpknn::IoError("cannot create output directory " + dir.string());
}

// ---- subcommand bodies ----------------------------------------------------

int run_distance(const DataOptions& opts, const std::string& id_a, const std::string& id_b,
                 const std::string& path_out) {
    const auto dataset = load_dataset(opts);
    const auto cfg = make_config(opts, dataset);
    const std::size_t a = find_instance(dataset, id_a);
    const std::size_t b = find_instance(dataset, id_b);

    const double d = warpknn::measure_distance(dataset.instances[a].series,
                                               dataset.instances[b].series, cfg);
    std::cout << warpknn::format_full(d) << '\n';

    if (!path_out.empty()) {
        const auto path = warpknn::measure_path(dataset.instances[a].series,
                                                dataset.instances[b].series, cfg);
        std::ofstream out(path_out);
        if (!out) throw warpknn::IoError("cannot write " + path_out);
        out << "i,j,point_distance\n";
        // The exported per-step distances are between the series the measure
        // actually aligned (the derivatives, for ddtw).
        const bool ddtw = cfg.measure == warpknn::Measure::ddtw;
        const warpknn::TimeSeries sa =
            ddtw ? warpknn::derivative_transform(dataset.instances[a].series)
                 : dataset.instances[a].series;
        const warpknn::TimeSeries sb =
            ddtw ? warpknn::derivative_transform(dataset.instances[b].series)
                 : dataset.instances[b].series;
        for (const auto& [i, j] : path.steps)
            out << i << ',' << j << ','
                << warpknn::format_full(warpknn::point_distance(sa.row(i - 1), sb.row(j - 1)))
                << '\n';
    }
    return 0;
}

int run_matrix(const DataOptions& opts, const std::string& out_file) {
    const auto dataset = load_dataset(opts);
    const auto cfg = make_config(opts, dataset);
    const auto matrix = warpknn::pairwise_matrix(dataset.instances, cfg, opts.workers);
    warpknn::write_matrix_csv(matrix, fs::path(out_file));
    std::cout << "wrote " << matrix.size() << "x" << matrix.size() << " matrix to " << out_file
              << '\n';
    return 0;
}

int run_tune_k(const DataOptions& opts, std::size_t k_min, std::size_t k_max,
               const std::string& protocol_name, std::size_t folds, std::size_t replications,
               std::uint64_t seed, const std::string& out_dir,
               const std::vector<std::string>& format_names) {
    const auto dataset = load_dataset(opts);
    const auto cfg = make_config(opts, dataset);
    const auto matrix = warpknn::pairwise_matrix(dataset.instances, cfg, opts.workers);
    const auto protocol = make_protocol(protocol_name, folds);
    const auto rows = warpknn::tune_k(matrix, dataset.labels, k_min, k_max, protocol, replications, seed);

    ensure_out_dir(out_dir);
    const fs::path dir(out_dir);
    for (const auto format : parse_formats(format_names)) {
        if (format == warpknn::ExportFormat::table) {
            std::ofstream out(dir / "tune_k.txt");
            warpknn::write_tune_table(rows, out);
        } else if (format == warpknn::ExportFormat::csv) {
            std::ofstream out(dir / "tune_k.csv");
            warpknn::write_tune_csv(rows, out);
        } else {
            std::ofstream out(dir / "tune_k_plotdata.csv");
            warpknn::write_tune_plotdata(rows, opts.measure + "-" + protocol.name(), out);
        }
    }
    warpknn::write_tune_table(rows, std::cout);
    return 0;
}

struct EvaluateOptions {
    std::size_t k = 6;
    std::string protocol_name = "kfold";
    std::size_t folds = 10;
    std::size_t replications = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"table", "csv", "plotdata"};
    std::string matrix_file;
    std::vector<std::string> hands;
};

warpknn::EvalReport evaluate_once(const DataOptions& opts, const EvaluateOptions& eval,
                                  std::optional<warpknn::HandSelection> hand) {
    const auto dataset = load_dataset(opts, hand);
    const auto cfg = make_config(opts, dataset);

    warpknn::DistanceMatrix matrix;
    if (!eval.matrix_file.empty()) {
        matrix = warpknn::read_matrix_csv(fs::path(eval.matrix_file), cfg);
        std::vector<std::string> expected;
        expected.reserve(dataset.instances.size());
        for (const auto& inst : dataset.instances) expected.push_back(warpknn::instance_id(inst));
        if (matrix.instance_ids != expected)
            throw warpknn::Error("matrix file " + eval.matrix_file +
                                 " does not cover this dataset's instance ids in order");
    } else {
        matrix = warpknn::pairwise_matrix(dataset.instances, cfg, opts.workers);
    }

    const auto protocol = make_protocol(eval.protocol_name, eval.folds);
    auto report = warpknn::replicate(matrix, dataset.labels, eval.k, protocol, eval.replications,
                                     eval.seed);
    report.measure = opts.measure;
    return report;
}

void export_report(const warpknn::EvalReport& report, const fs::path& dir,
                   const std::string& prefix, const std::vector<warpknn::ExportFormat>& formats) {
    for (const auto format : formats) {
        if (format == warpknn::ExportFormat::table) {
            warpknn::export_results(report, format, dir / (prefix + "report.txt"));
        } else if (format == warpknn::ExportFormat::csv) {
            warpknn::export_results(report, format, dir / (prefix + "report.csv"));
            warpknn::write_confusion_csv(report.confusion, dir / (prefix + "confusion.csv"));
        } else {
            warpknn::export_results(report, format, dir / (prefix + "report_plotdata.csv"));
        }
    }
}

int run_evaluate(const DataOptions& opts, const EvaluateOptions& eval) {
    ensure_out_dir(eval.out_dir);
    const fs::path dir(eval.out_dir);
    const auto formats = parse_formats(eval.formats);

    if (eval.hands.size() > 1 && !eval.matrix_file.empty())
        throw CLI::ValidationError("--matrix", "a precomputed matrix covers a single hand scenario");

    if (eval.hands.size() <= 1) {
        std::optional<warpknn::HandSelection> hand;
        if (eval.hands.size() == 1) hand = warpknn::hand_selection_from_string(eval.hands[0]);
        const auto report = evaluate_once(opts, eval, hand);
        export_report(report, dir, "", formats);
        warpknn::write_report_table(report, std::cout);
        return 0;
    }

    std::vector<std::pair<std::string, warpknn::EvalReport>> scenarios;
    for (const auto& hand_name : eval.hands) {
        const auto hand = warpknn::hand_selection_from_string(hand_name);
        auto report = evaluate_once(opts, eval, hand);
        export_report(report, dir, hand_name + "_", formats);
        scenarios.emplace_back(hand_name, std::move(report));
    }
    {
        std::ofstream out(dir / "scenarios.csv");
        if (!out) throw warpknn::IoError("cannot write " + (dir / "scenarios.csv").string());
        warpknn::write_scenario_csv(scenarios, out);
    }
    {
        std::ofstream out(dir / "scenarios.txt");
        if (!out) throw warpknn::IoError("cannot write " + (dir / "scenarios.txt").string());
        warpknn::write_scenario_table(scenarios, out);
    }
    warpknn::write_scenario_table(scenarios, std::cout);
    return 0;
}

int run_synth(const warpknn::SynthSpec& spec, const std::string& out_dir) {
    const auto manifest = warpknn::write_synth_corpus(spec, out_dir);
    std::cout << "wrote " << spec.classes * spec.per_class << " instances and manifest "
              << manifest.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory classification with DTW/DDTW similarity and weighted kNN"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file (flags take precedence)");
    app.get_config_ptr()->configurable(true);

    DataOptions data;

    auto* distance = app.add_subcommand("distance", "Distance between two instances");
    add_data_options(distance, data);
    std::string id_a, id_b, path_out;
    distance->add_option("--a", id_a, "First instance id")->required();
    distance->add_option("--b", id_b, "Second instance id")->required();
    distance->add_option("--path-out", path_out, "Write the warp path as CSV");

    auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix to CSV");
    add_data_options(matrix, data);
    std::string matrix_out;
    matrix->add_option("--out", matrix_out, "Output CSV file")->required();

    auto* tune = app.add_subcommand("tune-k", "Accuracy as a function of k");
    add_data_options(tune, data);
    std::size_t k_min = 1, k_max = 10;
    std::string tune_protocol = "kfold";
    std::size_t tune_folds = 10, tune_replications = 100;
    std::uint64_t tune_seed = 0;
    std::string tune_out = ".";
    std::vector<std::string> tune_formats = {"table", "csv", "plotdata"};
    tune->add_option("--k-min", k_min, "Smallest k")->check(CLI::PositiveNumber);
    tune->add_option("--k-max", k_max, "Largest k")->check(CLI::PositiveNumber);
    tune->add_option("--protocol", tune_protocol, "kfold or loo")
        ->check(CLI::IsMember({"kfold", "loo"}));
    tune->add_option("--folds", tune_folds, "Folds for kfold")->check(CLI::Range(2, 1000000));
    tune->add_option("--replications", tune_replications, "Replication count")
        ->check(CLI::PositiveNumber);
    tune->add_option("--seed", tune_seed, "Base seed for fold plans");
    tune->add_option("--out-dir", tune_out, "Output directory");
    tune->add_option("--formats", tune_formats, "Outputs: table, csv, plotdata")
        ->delimiter(',');

    auto* evaluate = app.add_subcommand("evaluate", "Replicated cross-validation report");
    add_data_options(evaluate, data);
    EvaluateOptions eval;
    evaluate->add_option("--k", eval.k, "Neighbor count")->check(CLI::PositiveNumber);
    evaluate->add_option("--protocol", eval.protocol_name, "kfold or loo")
        ->check(CLI::IsMember({"kfold", "loo"}));
    evaluate->add_option("--folds", eval.folds, "Folds for kfold")->check(CLI::Range(2, 1000000));
    evaluate->add_option("--replications", eval.replications, "Replication count")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--seed", eval.seed, "Base seed for fold plans");
    evaluate->add_option("--out-dir", eval.out_dir, "Output directory");
    evaluate->add_option("--formats", eval.formats, "Outputs: table, csv, plotdata")
        ->delimiter(',');
    evaluate->add_option("--matrix", eval.matrix_file, "Precomputed distance-matrix CSV");
    evaluate->add_option("--hands", eval.hands,
                         "Hand scenarios (right,left,both); more than one emits a comparison table")
        ->delimiter(',');

    auto* synth = app.add_subcommand("synth", "Write a synthetic corpus and manifest");
    warpknn::SynthSpec synth_spec;
    std::string synth_out;
    synth->add_option("--out-dir", synth_out, "Corpus directory")->required();
    synth->add_option("--classes", synth_spec.classes, "Number of classes")
        ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    synth->add_option("--per-class", synth_spec.per_class, "Instances per class")
        ->check(CLI::PositiveNumber);
    synth->add_option("--min-length", synth_spec.min_length, "Minimum series length");
    synth->add_option("--max-length", synth_spec.max_length, "Maximum series length");
    synth->add_option("--noise-sd", synth_spec.noise_sd, "Additive Gaussian noise sd");
    synth->add_option("--seed", synth_spec.seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        for (auto* cmd : {distance, matrix, tune, evaluate})
            if (cmd->parsed()) data.window_given = flag_given(cmd, "--window");

        if (distance->parsed()) return run_distance(data, id_a, id_b, path_out);
        if (matrix->parsed()) return run_matrix(data, matrix_out);
        if (tune->parsed())
            return run_tune_k(data, k_min, k_max, tune_protocol, tune_folds, tune_replications,
                              tune_seed, tune_out, tune_formats);
        if (evaluate->parsed()) return run_evaluate(data, eval);
        if (synth->parsed()) return run_synth(synth_spec, synth_out);
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const warpknn::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
