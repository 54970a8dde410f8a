#pragma once

#include <stdexcept>
#include <string>

namespace unruh {

/// Argument outside the domain of a physical formula (d <= 0, lambda = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A state or coefficient set broke one of its structural invariants.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative procedure failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The population generator has a null space of dimension > 1.
class DegenerateKernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed sweep configuration or CLI input.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace unruh
