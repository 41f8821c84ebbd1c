#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "warpknn/report_io.hpp"

#include "fixture.hpp"

using warpknn::CvProtocol;
using warpknn::EvalReport;

namespace {

EvalReport sample_report() {
    const auto& corpus = fixture::seed42();
    auto report = warpknn::replicate(corpus.dtw, corpus.labels, 3,
                                     {CvProtocol::Kind::kfold, 10}, 4, 21);
    report.measure = "dtw";
    return report;
}

EvalReport perfect_report() {
    std::vector<std::string> labels;
    const auto matrix = fixture::line_clusters(3, 5, labels);
    auto report = warpknn::replicate(matrix, labels, 1, {CvProtocol::Kind::loo}, 1, 0);
    report.measure = "dtw";
    return report;
}

} // namespace

TEST_CASE("report CSV round-trips to an equal report") {
    const auto report = sample_report();
    std::stringstream buffer;
    warpknn::write_report_csv(report, buffer);
    const auto parsed = warpknn::parse_report_csv(buffer);
    CHECK(warpknn::reports_equal(report, parsed));
}

TEST_CASE("a perfect classifier renders 100.00% in all three metric rows") {
    const auto report = perfect_report();
    std::stringstream table;
    warpknn::write_report_table(report, table);
    const auto text = table.str();
    std::size_t occurrences = 0;
    for (std::size_t pos = text.find("100.00%"); pos != std::string::npos;
         pos = text.find("100.00%", pos + 1))
        ++occurrences;
    CHECK(occurrences >= 3);
    CHECK(text.find("accuracy") != std::string::npos);
    CHECK(text.find("confusion matrix") != std::string::npos);
}

TEST_CASE("plotdata emits one row per class per metric") {
    const auto report = sample_report();
    std::stringstream out;
    warpknn::write_report_plotdata(report, out);
    std::string line;
    std::getline(out, line);
    CHECK(line == "x,y,series");
    std::size_t rows = 0;
    while (std::getline(out, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3 * report.confusion.classes());
}

TEST_CASE("tune exports have the expected cardinality") {
    std::vector<std::string> labels;
    const auto matrix = fixture::line_clusters(3, 6, labels);
    const auto rows = warpknn::tune_k(matrix, labels, 1, 10, {CvProtocol::Kind::loo}, 1, 0);

    std::stringstream csv;
    warpknn::write_tune_csv(rows, csv);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "k,accuracy_mean,accuracy_sd");
    std::size_t count = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++count;
    CHECK(count == 10);

    std::stringstream plot;
    warpknn::write_tune_plotdata(rows, "dtw-loo", plot);
    std::getline(plot, line);
    CHECK(line == "x,y,series");
    count = 0;
    while (std::getline(plot, line))
        if (!line.empty()) {
            ++count;
            CHECK(line.find("dtw-loo") != std::string::npos);
        }
    CHECK(count == 10);
}

TEST_CASE("scenario summary lists one row per scenario") {
    const auto report = sample_report();
    std::vector<std::pair<std::string, EvalReport>> scenarios = {
        {"right", report}, {"left", report}, {"both", report}};
    std::stringstream out;
    warpknn::write_scenario_csv(scenarios, out);
    std::string line;
    std::getline(out, line);
    CHECK(line.find("scenario,measure,protocol") == 0);
    std::vector<std::string> names;
    while (std::getline(out, line))
        if (!line.empty()) names.push_back(line.substr(0, line.find(',')));
    CHECK(names == std::vector<std::string>{"right", "left", "both"});
}

TEST_CASE("parse_report_csv rejects missing keys") {
    std::stringstream broken("key,value\nprotocol,loo\n");
    CHECK_THROWS_AS(warpknn::parse_report_csv(broken), warpknn::IoError);
}

TEST_CASE("export_results writes the chosen format") {
    const auto report = perfect_report();
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "warpknn_report_export.csv";
    warpknn::export_results(report, warpknn::ExportFormat::csv, path);
    const auto parsed = warpknn::parse_report_csv(path);
    CHECK(warpknn::reports_equal(report, parsed));
    std::filesystem::remove(path);
}
