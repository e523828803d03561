#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbb {

// Error taxonomy. The CLI maps these onto process exit codes:
// ConfigError -> 2, DataError -> 3, NetworkError -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct NetworkError : Error {
    using Error::Error;
};

struct ParseError : DataError {
    int line;
    int column;
    ParseError(std::string msg, int line_, int column_)
        : DataError("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
                    ": " + std::move(msg)),
          line(line_),
          column(column_) {}
};

struct GenerationExhausted : DataError {
    using DataError::DataError;
};

struct DomainViolation : DataError {
    using DataError::DataError;
};

struct ArithmeticFault : DataError {
    using DataError::DataError;
};

struct CompositionUnsafe : DataError {
    using DataError::DataError;
};

struct InvalidCipherSpec : ConfigError {
    using ConfigError::ConfigError;
};

struct IoFailure : DataError {
    using DataError::DataError;
};

struct SchemaError : DataError {
    std::size_t record_index;
    SchemaError(std::string msg, std::size_t index)
        : DataError("schema error at record " + std::to_string(index) + ": " + std::move(msg)),
          record_index(index) {}
};

struct ExecutorFault : DataError {
    using DataError::DataError;
};

struct InsufficientPrograms : DataError {
    using DataError::DataError;
};

struct DomainTooSmall : ConfigError {
    using ConfigError::ConfigError;
};

struct TemplatePoolExhausted : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidPlan : ConfigError {
    using ConfigError::ConfigError;
};

struct MissingMixinSource : ConfigError {
    using ConfigError::ConfigError;
};

struct PlaintextExhausted : DataError {
    using DataError::DataError;
};

struct TraceMismatch : DataError {
    using DataError::DataError;
};

struct RaggedGenerations : DataError {
    using DataError::DataError;
};

struct IdMismatch : DataError {
    using DataError::DataError;
};

} // namespace pbb
