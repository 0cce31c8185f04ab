#pragma once

#include <string_view>

#include "rsdfo/interp.hpp"

namespace rsdfo {

enum class StepKind { cauchy, eigen, refined };
enum class TrsMode { first_order, second_order };

std::string_view to_string(StepKind kind);

struct TrsResult {
  Vector step;
  double predicted_decrease = 0.0;  // m(0) - m(step), never negative
  StepKind kind = StepKind::cauchy;
  bool certified_first_order = false;
  bool certified_second_order = false;
  /// Producer had nothing to work with (g = 0 for Cauchy, no negative
  /// curvature for the eigen step, model-critical for solve_trs).
  bool zero_step = false;
};

/// Lower bound (1/2) ||g|| min(delta, ||g|| / max(||H||, 1)).
double cauchy_decrease_bound(const QuadraticModel& model, double delta);
/// Lower bound (1/2) tau delta^2 with tau = max(-lambda_min(H), 0).
double curvature_decrease_bound(const QuadraticModel& model, double delta);

/// Minimizer of the model along -g inside the ball.
TrsResult cauchy_step(const QuadraticModel& model, double delta);
/// +-delta v for the leftmost eigenvector v, sign chosen so g^T step <= 0.
TrsResult eigen_step(const QuadraticModel& model, double delta);
/// Certified step (Cauchy, plus eigen step in second-order mode) refined by an
/// exact eigen-based subproblem solve when p <= 50 and by truncated CG
/// otherwise; keeps whichever candidate decreases the model most.
TrsResult solve_trs(const QuadraticModel& model, double delta, TrsMode mode);

/// Global minimizer of the model over ||s|| <= delta via the secular equation
/// in the eigenbasis of H (handles the hard case).
TrsResult exact_trs(const QuadraticModel& model, double delta);
/// Steihaug-Toint truncated conjugate gradient.
TrsResult truncated_cg(const QuadraticModel& model, double delta);

/// (f_current - f_trial) / predicted_decrease. Throws ContractViolation when
/// predicted_decrease <= 0.
double decrease_ratio(double f_current, double f_trial, double predicted_decrease);

}  // namespace rsdfo
