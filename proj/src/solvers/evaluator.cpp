#include "solvers/evaluator.hpp"

#include <cmath>

namespace rsdfo::detail {

Evaluator::Evaluator(const Problem& problem, std::uint64_t max_evals, double max_time)
    : problem_(problem), max_evals_(max_evals), max_time_(max_time), start_(std::chrono::steady_clock::now()) {}

double Evaluator::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Evaluator::check_time() const {
  if (max_time_ > 0.0 && elapsed() > max_time_) throw StopRun{Termination::time};
}

double Evaluator::operator()(const Vector& x) {
  if (count_ >= max_evals_) throw StopRun{Termination::budget};
  check_time();
  double f = problem_(x);
  ++count_;
  if (!std::isfinite(f)) f = std::numeric_limits<double>::infinity();
  if (f < best_f_ || trace_.empty()) {
    if (f < best_f_) {
      best_f_ = f;
      best_x_ = x;
    }
    trace_.push_back({count_, best_f_});
  }
  return f;
}

void finish_record(RunRecord& record, const Evaluator& eval, Termination termination) {
  record.termination = termination;
  record.trace = eval.trace();
  record.evaluations = eval.count();
  record.f_best = eval.best_f();
  record.x_best = eval.best_x();
  record.wall_time = eval.elapsed();
}

}  // namespace rsdfo::detail
