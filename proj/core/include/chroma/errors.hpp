#pragma once

#include <stdexcept>
#include <string>

namespace chroma {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition or argument-domain violation (invalid vertex id,
/// parameter outside its documented range, improper colouring, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A configurable resource guard (node budget, colouring budget, retry
/// cap) was exceeded. Never a silent truncation.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Malformed input text (edge lists, JSON payloads, configs).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace chroma
