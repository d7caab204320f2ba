#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ahgeo {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax / symbol / arity problems while parsing an expression.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Arithmetic failures during evaluation (division by zero, singular metric).
class EvalError : public Error {
public:
    using Error::Error;
};

// Function argument outside its domain (log of non-positive, sqrt of negative).
class DomainError : public EvalError {
public:
    using EvalError::EvalError;
};

// Bad run configuration: malformed JSON, unknown model, inconsistent sizes.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ahgeo
