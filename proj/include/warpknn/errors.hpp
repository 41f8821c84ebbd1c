#ifndef WARPKNN_ERRORS_HPP
#define WARPKNN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace warpknn {

// Base for all library errors. CLI maps these to exit code 2 (data error).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidSeries : Error {
    using Error::Error;
};

struct SeriesTooShort : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct UnsortedDistances : Error {
    using Error::Error;
};

struct KTooLarge : Error {
    using Error::Error;
};

struct EmptyTrainingSet : Error {
    using Error::Error;
};

struct TooManyFolds : Error {
    using Error::Error;
};

struct EmptyClass : Error {
    using Error::Error;
};

struct PairwiseError : Error {
    using Error::Error;
};

// data-io errors
struct EmptyFile : Error {
    using Error::Error;
};

struct MalformedRow : Error {
    MalformedRow(const std::string& msg, std::size_t row, std::size_t found_width)
        : Error(msg), row(row), found_width(found_width) {}
    std::size_t row;         // 1-based row in the file
    std::size_t found_width; // fields actually present
};

struct NonFiniteValue : Error {
    NonFiniteValue(const std::string& msg, std::size_t row, std::size_t column)
        : Error(msg), row(row), column(column) {}
    std::size_t row;    // 1-based
    std::size_t column; // 1-based file column
};

struct ManifestError : Error {
    using Error::Error;
};

struct UnknownInstanceId : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace warpknn

#endif // WARPKNN_ERRORS_HPP
