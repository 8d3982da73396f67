/**
 * @file errors.hpp
 * @brief Exception types shared by the helixqm library and CLI.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helixqm {

/// Evaluation outside a curve's validity window or a degenerate parametrization.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver failed to converge; carries the offending state index.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::size_t index)
        : std::runtime_error(what + " (state " + std::to_string(index) + ")"), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace helixqm
