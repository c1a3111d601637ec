#ifndef CHDG_ERRORS_HPP
#define CHDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chdg {

// Invalid user-supplied parameters (mesh spec, quadrature order, B too small, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation outside the mathematical domain of a function or cell.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Operator assembly failed (e.g. nonpositive weight at a quadrature node).
struct AssemblyError : std::runtime_error {
  explicit AssemblyError(const std::string& what) : std::runtime_error(what) {}
};

// Linear solver breakdown or residual above tolerance.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse (e.g. BDF2 step without history).
struct UsageError : std::logic_error {
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace chdg

#endif
