#ifndef WARPKNN_REPORT_IO_HPP
#define WARPKNN_REPORT_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "warpknn/cross_validation.hpp"
#include "warpknn/distance_matrix.hpp"
#include "warpknn/errors.hpp"
#include "warpknn/tune.hpp"

namespace warpknn {

enum class ExportFormat { table, csv, plotdata };

inline ExportFormat export_format_from_string(const std::string& name) {
    if (name == "table") return ExportFormat::table;
    if (name == "csv") return ExportFormat::csv;
    if (name == "plotdata") return ExportFormat::plotdata;
    throw Error("unknown export format: " + name + " (expected table, csv or plotdata)");
}

namespace detail {

inline std::string percent(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << value * 100.0 << '%';
    return out.str();
}

inline double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) throw IoError("bad " + what + " value '" + text + "'");
    return value;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, sep)) parts.push_back(part);
    return parts;
}

} // namespace detail

// ---- machine-readable key,value CSV ----------------------------------
//
// Schema (one key,value pair per line; order fixed):
//   protocol, folds, k, measure, replications, base_seed
//   accuracy_mean/sd, sensitivity_mean/sd, specificity_mean/sd  (17 sig. digits)
//   classes                 semicolon-separated ordered class ids
//   confusion_<class>       semicolon-separated predicted counts for that actual class
//   class_<class>           tp=..;fn=..;fp=..;tn=..;sensitivity=..;specificity=..;prevalence=..
inline void write_report_csv(const EvalReport& report, std::ostream& out) {
    out << "key,value\n";
    out << "protocol," << report.protocol << '\n';
    out << "folds," << report.n_folds << '\n';
    out << "k," << report.k << '\n';
    out << "measure," << report.measure << '\n';
    out << "replications," << report.replications << '\n';
    out << "base_seed," << report.base_seed << '\n';
    out << "accuracy_mean," << format_full(report.accuracy.mean) << '\n';
    out << "accuracy_sd," << format_full(report.accuracy.sd) << '\n';
    out << "sensitivity_mean," << format_full(report.sensitivity.mean) << '\n';
    out << "sensitivity_sd," << format_full(report.sensitivity.sd) << '\n';
    out << "specificity_mean," << format_full(report.specificity.mean) << '\n';
    out << "specificity_sd," << format_full(report.specificity.sd) << '\n';

    out << "classes,";
    for (std::size_t i = 0; i < report.confusion.class_ids.size(); ++i) {
        if (i) out << ';';
        out << report.confusion.class_ids[i];
    }
    out << '\n';
    for (std::size_t i = 0; i < report.confusion.classes(); ++i) {
        out << "confusion_" << report.confusion.class_ids[i] << ',';
        for (std::size_t j = 0; j < report.confusion.classes(); ++j) {
            if (j) out << ';';
            out << report.confusion.at(i, j);
        }
        out << '\n';
    }
    for (const auto& cm : report.per_class) {
        out << "class_" << cm.class_id << ",tp=" << cm.tp << ";fn=" << cm.fn << ";fp=" << cm.fp
            << ";tn=" << cm.tn << ";sensitivity=" << format_full(cm.sensitivity)
            << ";specificity=" << format_full(cm.specificity)
            << ";prevalence=" << format_full(cm.prevalence) << '\n';
    }
}

inline EvalReport parse_report_csv(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::vector<std::pair<std::string, std::string>> ordered;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        detail::strip_cr(line);
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "key,value") continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("report CSV: missing comma in '" + line + "'");
        kv[line.substr(0, comma)] = line.substr(comma + 1);
        ordered.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    const auto need = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw IoError("report CSV: missing key '" + key + "'");
        return it->second;
    };

    EvalReport report;
    report.protocol = need("protocol");
    report.n_folds = std::stoull(need("folds"));
    report.k = std::stoull(need("k"));
    report.measure = need("measure");
    report.replications = std::stoull(need("replications"));
    report.base_seed = std::stoull(need("base_seed"));
    report.accuracy = {detail::parse_double(need("accuracy_mean"), "accuracy_mean"),
                       detail::parse_double(need("accuracy_sd"), "accuracy_sd")};
    report.sensitivity = {detail::parse_double(need("sensitivity_mean"), "sensitivity_mean"),
                          detail::parse_double(need("sensitivity_sd"), "sensitivity_sd")};
    report.specificity = {detail::parse_double(need("specificity_mean"), "specificity_mean"),
                          detail::parse_double(need("specificity_sd"), "specificity_sd")};

    report.confusion = ConfusionMatrix(detail::split(need("classes"), ';'));
    for (std::size_t i = 0; i < report.confusion.classes(); ++i) {
        const auto& id = report.confusion.class_ids[i];
        const auto counts = detail::split(need("confusion_" + id), ';');
        if (counts.size() != report.confusion.classes())
            throw IoError("report CSV: confusion row " + id + " has wrong width");
        for (std::size_t j = 0; j < counts.size(); ++j)
            report.confusion.counts[i * report.confusion.classes() + j] = std::stoull(counts[j]);
    }
    for (const auto& id : report.confusion.class_ids) {
        ClassMetrics cm;
        cm.class_id = id;
        for (const auto& field : detail::split(need("class_" + id), ';')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) throw IoError("report CSV: bad per-class field '" + field + "'");
            const auto key = field.substr(0, eq);
            const auto value = field.substr(eq + 1);
            if (key == "tp") cm.tp = std::stoull(value);
            else if (key == "fn") cm.fn = std::stoull(value);
            else if (key == "fp") cm.fp = std::stoull(value);
            else if (key == "tn") cm.tn = std::stoull(value);
            else if (key == "sensitivity") cm.sensitivity = detail::parse_double(value, key);
            else if (key == "specificity") cm.specificity = detail::parse_double(value, key);
            else if (key == "prevalence") cm.prevalence = detail::parse_double(value, key);
            else throw IoError("report CSV: unknown per-class field '" + key + "'");
        }
        report.per_class.push_back(cm);
    }
    return report;
}

inline EvalReport parse_report_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    return parse_report_csv(in);
}

inline bool reports_equal(const EvalReport& a, const EvalReport& b) {
    const auto class_equal = [](const ClassMetrics& x, const ClassMetrics& y) {
        return x.class_id == y.class_id && x.tp == y.tp && x.fn == y.fn && x.fp == y.fp &&
               x.tn == y.tn && x.prevalence == y.prevalence && x.sensitivity == y.sensitivity &&
               x.specificity == y.specificity;
    };
    if (!(a.confusion == b.confusion)) return false;
    if (a.per_class.size() != b.per_class.size()) return false;
    for (std::size_t i = 0; i < a.per_class.size(); ++i)
        if (!class_equal(a.per_class[i], b.per_class[i])) return false;
    return a.accuracy == b.accuracy && a.sensitivity == b.sensitivity &&
           a.specificity == b.specificity && a.replications == b.replications &&
           a.protocol == b.protocol && a.n_folds == b.n_folds && a.k == b.k &&
           a.measure == b.measure && a.base_seed == b.base_seed;
}

// ---- human-readable table ---------------------------------------------

inline void write_report_table(const EvalReport& report, std::ostream& out) {
    out << "evaluation report\n";
    out << "-----------------\n";
    out << std::left << std::setw(14) << "protocol" << report.protocol;
    if (report.protocol != "loo") out << " (" << report.n_folds << " folds)";
    out << '\n';
    out << std::setw(14) << "replications" << report.replications << " (base seed "
        << report.base_seed << ")\n";
    if (!report.measure.empty()) out << std::setw(14) << "measure" << report.measure << '\n';
    out << std::setw(14) << "k" << report.k << '\n';
    out << std::setw(14) << "queries" << report.confusion.total() << " over "
        << report.confusion.classes() << " classes\n\n";

    out << std::left << std::setw(14) << "metric" << std::right << std::setw(10) << "mean"
        << std::setw(10) << "sd" << '\n';
    const auto metric_row = [&](const char* name, const MetricStats& stats) {
        out << std::left << std::setw(14) << name << std::right << std::setw(10)
            << detail::percent(stats.mean) << std::setw(10) << detail::percent(stats.sd) << '\n';
    };
    metric_row("accuracy", report.accuracy);
    metric_row("sensitivity", report.sensitivity);
    metric_row("specificity", report.specificity);

    out << "\nconfusion matrix (rows = actual, columns = predicted)\n";
    std::size_t width = 8;
    for (const auto& id : report.confusion.class_ids) width = std::max(width, id.size() + 2);
    out << std::setw(static_cast<int>(width)) << ' ';
    for (const auto& id : report.confusion.class_ids)
        out << std::setw(static_cast<int>(width)) << id;
    out << '\n';
    for (std::size_t i = 0; i < report.confusion.classes(); ++i) {
        out << std::setw(static_cast<int>(width)) << report.confusion.class_ids[i];
        for (std::size_t j = 0; j < report.confusion.classes(); ++j)
            out << std::setw(static_cast<int>(width)) << report.confusion.at(i, j);
        out << '\n';
    }

    out << "\nper-class (one-vs-rest)\n";
    out << std::left << std::setw(static_cast<int>(width)) << "class" << std::right << std::setw(13)
        << "sensitivity" << std::setw(13) << "specificity" << std::setw(10) << "tp" << std::setw(8)
        << "fn" << std::setw(8) << "fp" << std::setw(10) << "tn" << '\n';
    for (const auto& cm : report.per_class) {
        out << std::left << std::setw(static_cast<int>(width)) << cm.class_id << std::right
            << std::setw(13) << detail::percent(cm.sensitivity) << std::setw(13)
            << detail::percent(cm.specificity) << std::setw(10) << cm.tp << std::setw(8) << cm.fn
            << std::setw(8) << cm.fp << std::setw(10) << cm.tn << '\n';
    }
}

// ---- plot data ----------------------------------------------------------
//
// 3-column CSV of (x, y, series-label) triples for external plotting.

inline void write_report_plotdata(const EvalReport& report, std::ostream& out) {
    out << "x,y,series\n";
    const std::uint64_t total = report.confusion.total();
    for (const auto& cm : report.per_class) {
        const double acc = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
        out << cm.class_id << ',' << format_full(acc) << ",accuracy\n";
    }
    for (const auto& cm : report.per_class)
        out << cm.class_id << ',' << format_full(cm.sensitivity) << ",sensitivity\n";
    for (const auto& cm : report.per_class)
        out << cm.class_id << ',' << format_full(cm.specificity) << ",specificity\n";
}

inline void export_results(const EvalReport& report, ExportFormat format,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    switch (format) {
        case ExportFormat::table: write_report_table(report, out); break;
        case ExportFormat::csv: write_report_csv(report, out); break;
        case ExportFormat::plotdata: write_report_plotdata(report, out); break;
    }
}

// ---- accuracy-vs-k exports ----------------------------------------------

inline void write_tune_csv(const std::vector<KTuneRow>& rows, std::ostream& out) {
    out << "k,accuracy_mean,accuracy_sd\n";
    for (const auto& row : rows)
        out << row.k << ',' << format_full(row.mean_accuracy) << ','
            << format_full(row.sd_accuracy) << '\n';
}

inline void write_tune_table(const std::vector<KTuneRow>& rows, std::ostream& out) {
    out << std::left << std::setw(6) << "k" << std::right << std::setw(12) << "accuracy"
        << std::setw(10) << "sd" << '\n';
    for (const auto& row : rows) {
        out << std::left << std::setw(6) << row.k << std::right << std::setw(12)
            << detail::percent(row.mean_accuracy) << std::setw(10) << detail::percent(row.sd_accuracy)
            << '\n';
    }
}

inline void write_tune_plotdata(const std::vector<KTuneRow>& rows, const std::string& series,
                                std::ostream& out, bool header = true) {
    if (header) out << "x,y,series\n";
    for (const auto& row : rows)
        out << row.k << ',' << format_full(row.mean_accuracy) << ',' << series << '\n';
}

// ---- multi-scenario summary (hand-selection comparisons) -----------------

inline void write_scenario_csv(const std::vector<std::pair<std::string, EvalReport>>& scenarios,
                               std::ostream& out) {
    out << "scenario,measure,protocol,folds,replications,k,accuracy_mean,accuracy_sd,"
           "sensitivity_mean,sensitivity_sd,specificity_mean,specificity_sd\n";
    for (const auto& [name, report] : scenarios) {
        out << name << ',' << report.measure << ',' << report.protocol << ',' << report.n_folds
            << ',' << report.replications << ',' << report.k << ','
            << format_full(report.accuracy.mean) << ','
            << format_full(report.accuracy.sd) << ','
            << format_full(report.sensitivity.mean) << ','
            << format_full(report.sensitivity.sd) << ','
            << format_full(report.specificity.mean) << ','
            << format_full(report.specificity.sd) << '\n';
    }
}

inline void write_scenario_table(const std::vector<std::pair<std::string, EvalReport>>& scenarios,
                                 std::ostream& out) {
    out << std::left << std::setw(12) << "scenario" << std::setw(9) << "measure" << std::setw(9)
        << "protocol" << std::right << std::setw(4) << "k" << std::setw(12) << "accuracy"
        << std::setw(10) << "sd" << '\n';
    for (const auto& [name, report] : scenarios) {
        out << std::left << std::setw(12) << name << std::setw(9) << report.measure << std::setw(9)
            << report.protocol << std::right << std::setw(4) << report.k << std::setw(12)
            << detail::percent(report.accuracy.mean) << std::setw(10)
            << detail::percent(report.accuracy.sd) << '\n';
    }
}

} // namespace warpknn

#endif // WARPKNN_REPORT_IO_HPP
