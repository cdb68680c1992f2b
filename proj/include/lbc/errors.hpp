#pragma once

#include <stdexcept>
#include <string>

namespace lbc {

/// Payload or codeword does not line up with the codec's block structure.
class FramingError : public std::runtime_error {
public:
    explicit FramingError(const std::string& what) : std::runtime_error(what) {}
};

/// Codeword stream is syntactically framed but not decodable.
class CorruptionError : public std::runtime_error {
public:
    explicit CorruptionError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative eigenvalue computation did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lbc
