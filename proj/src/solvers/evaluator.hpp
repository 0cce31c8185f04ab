#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rsdfo/solvers.hpp"

namespace rsdfo::detail {

/// Thrown from inside an iteration when the budget or time cap is hit; the
/// driver catches it and closes the record.
struct StopRun {
  Termination reason;
};

/// Counting objective wrapper shared by all drivers. Keeps the best point and
/// the improvement-only trace. Non-finite values are reported as +inf.
class Evaluator {
 public:
  Evaluator(const Problem& problem, std::uint64_t max_evals, double max_time);

  double operator()(const Vector& x);

  std::uint64_t count() const noexcept { return count_; }
  double best_f() const noexcept { return best_f_; }
  const Vector& best_x() const noexcept { return best_x_; }
  const std::vector<TracePoint>& trace() const noexcept { return trace_; }
  double elapsed() const;
  /// Throws StopRun(time) when the wall-clock cap has passed.
  void check_time() const;

 private:
  const Problem& problem_;
  std::uint64_t max_evals_;
  double max_time_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t count_ = 0;
  double best_f_ = std::numeric_limits<double>::infinity();
  Vector best_x_;
  std::vector<TracePoint> trace_;
};

/// Fills the common record fields from the evaluator state.
void finish_record(RunRecord& record, const Evaluator& eval, Termination termination);

}  // namespace rsdfo::detail
