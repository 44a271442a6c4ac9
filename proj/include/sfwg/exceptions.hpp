// Error types thrown by the library.
#pragma once

#include <stdexcept>
#include <string>

namespace sfwg {

/// Malformed mesh file; carries the 1-based line number where parsing failed.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Mesh content violates an invariant (orientation, convexity, coverage, ...).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Degenerate geometry (nonpositive area, zero-length edge).
class GeometryError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A local mass (Gram) matrix could not be factored.
class ConditioningError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The reduced global matrix is not symmetric positive definite.
class NotSpdError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative solver stopped without reaching the requested tolerance.
class IterativeFailure : public std::runtime_error {
public:
  IterativeFailure(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Invalid run configuration (bad degrees, missing solution data, ...).
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace sfwg
