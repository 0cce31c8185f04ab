#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rsdfo {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what) : Error("contract_violation", what) {}
};

class EmptyBasisError : public Error {
 public:
  explicit EmptyBasisError(const std::string& what) : Error("empty_basis", what) {}
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : Error("singular_system", what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& what) : Error("degenerate_geometry", what) {}
};

/// Interpolation model could not be built. `offending_points()` lists the
/// indices (into the constraint set handed to the builder) that caused it.
class ModelConstructionError : public Error {
 public:
  ModelConstructionError(const std::string& what, std::vector<std::size_t> offending,
                         double condition_estimate)
      : Error("model_construction", what),
        offending_(std::move(offending)),
        condition_estimate_(condition_estimate) {}
  const std::vector<std::size_t>& offending_points() const noexcept { return offending_; }
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  std::vector<std::size_t> offending_;
  double condition_estimate_;
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& what) : Error("catalog", what) {}
};

class UnsupportedDiagnostic : public Error {
 public:
  explicit UnsupportedDiagnostic(const std::string& what) : Error("unsupported_diagnostic", what) {}
};

class EmptyInputError : public Error {
 public:
  explicit EmptyInputError(const std::string& what) : Error("empty_input", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

}  // namespace rsdfo
