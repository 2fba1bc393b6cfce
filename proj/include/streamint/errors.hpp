#pragma once

#include <stdexcept>
#include <string>

namespace streamint {

// Bad parameter or rejected input (nonpositive measure, out-of-range epsilon, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation asked of an object whose state does not define it (e.g. total weight zero).
struct StateError : std::logic_error {
    explicit StateError(const std::string& what) : std::logic_error(what) {}
};

// Decreasing timestamp under the strict ordering policy.
struct OrderingError : DomainError {
    explicit OrderingError(const std::string& what) : DomainError(what) {}
};

// Tuple value outside the declared dimension.
struct SchemaError : DomainError {
    explicit SchemaError(const std::string& what) : DomainError(what) {}
};

// 0/0 correlation: both inputs empty. Distinct from a correlation of zero.
struct UndefinedCorrelationError : DomainError {
    explicit UndefinedCorrelationError(const std::string& what) : DomainError(what) {}
};

// File-system failure, always carries the offending path in the message.
struct IoError : std::runtime_error {
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(what + ": " + path), path(path) {}
    std::string path;
};

} // namespace streamint
