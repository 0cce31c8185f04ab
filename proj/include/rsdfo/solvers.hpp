#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsdfo/interp.hpp"
#include "rsdfo/problems.hpp"
#include "rsdfo/random.hpp"
#include "rsdfo/sketch.hpp"

namespace rsdfo {

/// Zero for p, q, delta0 and max_evals means "derive from the problem":
/// p = n, q = 2p + 1, delta0 = 0.1 max(||x0||_inf, 1), max_evals = 100 (n + 1).
struct SolverConfig {
  Index p = 0;
  Index q = 0;
  double delta0 = 0.0;
  double delta_max = 1e10;
  double gamma_dec = 0.5;
  double gamma_inc = 2.0;
  double gamma_inc_bar = 4.0;
  double gamma_s = 0.5;
  double alpha1 = 0.1;
  double alpha2 = 0.5;
  double eta = 0.1;
  double eta1 = 0.1;
  double eta2 = 0.7;
  double mu = 1.0;
  int n_rho = 5;  // minimum iterations between rho reductions
  double rho_end = 1e-8;
  std::uint64_t max_evals = 0;
  double max_time = 600.0;  // seconds; <= 0 disables the cap
  std::uint64_t seed = 0;
  SketchKind sketch_kind = SketchKind::gaussian;
};

/// Fills derived defaults for a problem of dimension n starting at x0.
SolverConfig resolve_config(const SolverConfig& config, const Vector& x0);
/// Throws ParameterError on any broken parameter invariant. Expects a
/// resolved config. `needs_q` enables the interpolation-count bounds.
void validate_config(const SolverConfig& config, Index n, bool needs_q);

/// JSON object with the SolverConfig field names; unknown keys and wrong
/// types raise ConfigError. Missing keys keep `base` values.
SolverConfig config_from_json(std::string_view text, const SolverConfig& base = {});
std::string config_to_json(const SolverConfig& config);

enum class Termination { budget, time, rho_floor, critical, error };
std::string_view to_string(Termination t);
Termination parse_termination(std::string_view name);

enum class IterationClass { successful, unsuccessful, safety, rho_reduced };
std::string_view to_string(IterationClass c);

struct IterationLog {
  std::uint64_t k = 0;
  IterationClass classification = IterationClass::unsuccessful;
  std::optional<double> ratio;  // absent when the trial point was not evaluated
  double delta = 0.0;           // radius used in iteration k
  std::optional<double> rho;    // RSDFO-Q only
  double sigma_m = 0.0;
  std::uint64_t evals_used = 0;
  // RSDFO-Q set sizes at the top of the iteration.
  std::size_t primary_points = 0;
  std::size_t secondary_points = 0;
};

/// One JSON object per line: {k, class, R, delta, rho, sigma_m, evals}.
std::string iteration_to_json(const IterationLog& log);

struct TracePoint {
  std::uint64_t eval = 0;  // 1-based evaluation index
  double best_f = 0.0;
};

struct RunRecord {
  std::string problem;
  Index n = 0;
  std::string solver;
  std::uint64_t seed = 0;
  std::vector<TracePoint> trace;  // one entry per strict improvement
  double wall_time = 0.0;
  Termination termination = Termination::error;
  double f0 = 0.0;
  double f_min = 0.0;  // known minimum of the problem
  double f_best = 0.0;
  std::uint64_t evaluations = 0;
  std::string message;
  Vector x_best;
  std::vector<IterationLog> iterations;
};

using IterationObserver = std::function<void(const IterationLog&, const Vector& x, double elapsed_seconds)>;

RunRecord run_rsdfo(const Problem& problem, const SolverConfig& config,
                    const IterationObserver& observer = {});
RunRecord run_rsdfo2(const Problem& problem, const SolverConfig& config,
                     const IterationObserver& observer = {});
RunRecord run_rsdfoq(const Problem& problem, const SolverConfig& config,
                     const IterationObserver& observer = {});

/// Dispatch by algorithm name: rsdfo, rsdfo2 or rsdfoq.
RunRecord run_solver(std::string_view algorithm, const Problem& problem, const SolverConfig& config,
                     const IterationObserver& observer = {});

struct RemovalOutcome {
  Vector point;
  double theta = 0.0;
  bool distance_only = false;  // Lagrange set was degenerate
};

/// Moves the primary point maximizing |l_t(x_k + step)| max(||y_t - x_k||^4 / delta^4, 1)
/// to the secondary set. The base point is never a candidate. `exclude`
/// names a primary point left out of both the Lagrange set and the
/// candidates (the not-yet-counted trial point in the full-space branch).
/// Ties go to the point farthest from x_k, then the lowest index.
RemovalOutcome remove_single_point(InterpolationSet& set, const Basis& basis,
                                   const Vector& tentative_step, double delta, const Vector& x_k,
                                   std::optional<std::size_t> exclude = std::nullopt);

/// Repeats the single-point rule `count` times at x_next (the base) with a
/// zero step, recomputing the Lagrange polynomials after each removal.
std::vector<RemovalOutcome> remove_multiple_points(InterpolationSet& set, const Basis& basis,
                                                   std::size_t count, double delta,
                                                   const Vector& x_next);

/// ceil(p/10) when ratio < 0, else 1; clamped to [2, p] when p < n and [1, p]
/// when p = n.
std::size_t pdrop_heuristic(std::optional<double> ratio, Index p, bool full_space);

/// Adds `count` points base + delta d_j with d_j orthonormal and orthogonal to
/// the current primary directions. Returns the new primary indices.
std::vector<std::size_t> add_orthogonal_points(InterpolationSet& set, double delta, std::size_t count,
                                               Rng& rng, const std::function<double(const Vector&)>& f);

}  // namespace rsdfo
