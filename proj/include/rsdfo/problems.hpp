#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rsdfo/types.hpp"

namespace rsdfo {

/// Objective with an evaluation counter and optional derivative oracles used
/// for diagnostics only. Solvers never touch the oracles.
class Problem {
 public:
  using Objective = std::function<double(const Vector&)>;
  using Gradient = std::function<Vector(const Vector&)>;
  using Hessian = std::function<Matrix(const Vector&)>;

  Problem(std::string name, Objective objective, Vector x0, double f_min, Gradient gradient = {},
          Hessian hessian = {});

  const std::string& name() const noexcept { return name_; }
  Index dim() const noexcept { return x0_.size(); }
  const Vector& x0() const noexcept { return x0_; }
  double f_min() const noexcept { return f_min_; }
  void set_x0(Vector x0);

  /// Counted objective call.
  double operator()(const Vector& x) const;
  std::uint64_t evaluations() const noexcept { return counter_->load(std::memory_order_relaxed); }
  void reset_evaluations() noexcept { counter_->store(0, std::memory_order_relaxed); }

  bool has_gradient() const noexcept { return static_cast<bool>(gradient_); }
  bool has_hessian() const noexcept { return static_cast<bool>(hessian_); }
  /// Uncounted oracles. Throw UnsupportedDiagnostic when absent.
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;
  /// Uncounted objective, for diagnostics.
  double value(const Vector& x) const { return objective_(x); }

 private:
  std::string name_;
  Objective objective_;
  Gradient gradient_;
  Hessian hessian_;
  Vector x0_;
  double f_min_;
  std::unique_ptr<std::atomic<std::uint64_t>> counter_;
};

/// Catalog names: sphere, chained_rosenbrock, low_rank_quadratic or
/// low_rank_quadratic(r), saddle_quartic, sum_of_powers, trigonometric.
Problem make_problem(std::string_view name, Index n);

struct CatalogEntry {
  std::string name;
  Index n_min;
  std::string f_min;
  std::string x0;
  std::string description;
};
std::vector<CatalogEntry> problem_catalog();

struct CriticalityReport {
  double sigma;
  double grad_norm;
  double tau;
};

/// sigma = max(||grad f||, max(-lambda_min(hess f), 0)) from the oracles.
CriticalityReport true_criticality(const Problem& problem, const Vector& x);

}  // namespace rsdfo
