#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsdfo/numerics.hpp"
#include "rsdfo/types.hpp"

namespace rsdfo {

/// m(s) = c + g^T s + 1/2 s^T H s on R^p. H is symmetric (checked on
/// construction to 1e-12) and every coefficient is finite.
class QuadraticModel {
 public:
  QuadraticModel() = default;
  QuadraticModel(double constant, Vector gradient, Matrix hessian);

  static QuadraticModel zero(Index p);

  double constant() const noexcept { return c_; }
  const Vector& gradient() const noexcept { return g_; }
  const Matrix& hessian() const noexcept { return h_; }
  Index dim() const noexcept { return g_.size(); }

  double evaluate(const Vector& s) const;
  /// grad m(s) = g + H s
  Vector gradient_at(const Vector& s) const;

 private:
  double c_ = 0.0;
  Vector g_;
  Matrix h_;
};

/// A model anchored at `base` over the columns of `map` (orthonormal basis for
/// the practical solver, the raw sketch P for the theoretical ones).
struct SubspaceModel {
  Vector base;
  Matrix map;
  QuadraticModel model;
};

/// Debug serialization: {"base": [...], "basis": [[col]...], "c": .., "g": [...], "H": [[row]...]}.
std::string model_to_json(const SubspaceModel& model);

double evaluate_model(const QuadraticModel& model, const Vector& s_hat);

struct ModelCriticality {
  double sigma_m;
  double tau_m;
};
/// tau = max(-lambda_min(H), 0); sigma = max(||g||, tau).
ModelCriticality model_criticality(const QuadraticModel& model);

/// Primary set Y1 (p+1 points including the base x_k) and a bounded FIFO
/// secondary set Y2 (at most q - p - 1 points). Every point carries its
/// objective value.
class InterpolationSet {
 public:
  struct Point {
    Vector x;
    double f = 0.0;
    std::uint64_t age = 0;  // insertion stamp; smaller is older
  };

  InterpolationSet(Index p, Index q);

  Index p() const noexcept { return p_; }
  Index q() const noexcept { return q_; }
  std::size_t secondary_capacity() const noexcept { return static_cast<std::size_t>(q_ - p_ - 1); }

  const std::vector<Point>& primary() const noexcept { return primary_; }
  const std::deque<Point>& secondary() const noexcept { return secondary_; }

  std::size_t base_index() const;
  const Vector& base() const { return primary_.at(base_index()).x; }
  double base_value() const { return primary_.at(base_index()).f; }

  /// Appends to Y1 and returns its index. The first primary point becomes the
  /// base.
  std::size_t add_primary(Vector x, double f);
  void set_base(std::size_t index);
  /// Moves Y1[index] to the back of Y2, discarding the oldest secondary point
  /// when Y2 exceeds its capacity. The base cannot be moved.
  void move_to_secondary(std::size_t index);
  /// Index of the primary point with smallest value (first on ties).
  std::size_t best_primary() const;

 private:
  Index p_;
  Index q_;
  std::vector<Point> primary_;
  std::deque<Point> secondary_;
  std::size_t base_ = 0;
  std::uint64_t clock_ = 0;
};

struct ProjectedPoint {
  Vector coords;          // Q^T (y - x_k)
  double f = 0.0;         // cached f(y), reused without re-evaluation
  double residual = 0.0;  // ||(I - Q Q^T)(y - x_k)||
};

/// Subspace coordinates of every secondary point relative to set.base().
std::vector<ProjectedPoint> project_secondary(const InterpolationSet& set, const Basis& basis);
/// Same for the primary set (base first is not guaranteed; order matches primary()).
std::vector<ProjectedPoint> project_primary(const InterpolationSet& set, const Basis& basis);

struct MfnFit {
  QuadraticModel model;
  double kkt_residual = 0.0;
  double max_interpolation_error = 0.0;  // max_j |m(s_j) - f_j| / max(1, |f_j|)
};

/// Minimum Frobenius norm interpolation in coordinates: among all quadratics
/// with symmetric Hessian matching values[j] at coords[j], picks the one whose
/// Hessian is closest to `h_ref` in Frobenius norm. Needs at least p+1 points
/// whose linear part is poised; throws ModelConstructionError otherwise.
MfnFit fit_mfn(std::span<const Vector> coords, std::span<const double> values, const Matrix& h_ref);

struct MfnDiagnostics {
  std::vector<std::size_t> excluded_secondary;  // indices into set.secondary()
  std::vector<double> projection_residuals;     // one per secondary point
  double kkt_residual = 0.0;
  std::size_t constraints = 0;
};

/// Builds the subspace model from Y1 and the projected Y2. The reference
/// Hessian is prev's Hessian carried into the current basis,
/// Q^T Q_prev H_prev Q_prev^T Q (zero without prev). A secondary point is left
/// out of this build when its projected coordinate lies closer to an already
/// accepted coordinate than max(1e-10 * scale, projection residual).
SubspaceModel build_mfn_model(const InterpolationSet& set, const Basis& basis,
                              const SubspaceModel* prev, MfnDiagnostics* diagnostics = nullptr);

/// {0} u {+-delta e_i} u {delta (e_i + e_j), i < j}: (p+1)(p+2)/2 points.
std::vector<Vector> full_quadratic_stencil(Index p, double delta);

/// Unique quadratic through exactly (p+1)(p+2)/2 poised points. Throws
/// ModelConstructionError (with a condition estimate) for non-poised input.
QuadraticModel build_full_quadratic_model(std::span<const Vector> coords,
                                          std::span<const double> values);

/// Linear Lagrange polynomials l_t(s) = a_t + b_t^T s in subspace
/// coordinates. With exactly p+1 points they satisfy l_t(s_u) = delta_tu;
/// with more points they are the least-squares (regression) generalization.
class LagrangeSet {
 public:
  LagrangeSet() = default;
  explicit LagrangeSet(Matrix coefficients) : coef_(std::move(coefficients)) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(coef_.cols()); }
  double value(std::size_t t, const Vector& s) const;
  Vector values(const Vector& s) const;
  /// Column t = (a_t, b_t).
  const Matrix& coefficients() const noexcept { return coef_; }

 private:
  Matrix coef_;
};

/// Throws DegenerateGeometryError when the points are not affinely independent.
LagrangeSet linear_lagrange(std::span<const Vector> coords);
/// Primary set in the given basis, ordered as set.primary().
LagrangeSet linear_lagrange(const InterpolationSet& set, const Basis& basis);

using ObjectiveOracle = std::function<double(const Vector&)>;
using GradientOracle = std::function<Vector(const Vector&)>;
using HessianOracle = std::function<Matrix(const Vector&)>;

struct ErrorCertificate {
  double delta = 0.0;
  double kappa_ef_est = 0.0;
  double kappa_eg_est = 0.0;
  std::optional<double> kappa_eh_est;
  std::size_t samples = 0;
};

/// Empirical fully-linear constants of `model` around `base` along `map`:
/// max |f(x+P s) - m(s)| / delta^2 and max ||P^T grad f(x+P s) - grad m(s)|| / delta
/// over s in {0, +-delta e_i} plus `samples` uniform points of the ball.
ErrorCertificate certify_fully_linear(const QuadraticModel& model, const Vector& base,
                                      const Matrix& map, const ObjectiveOracle& f,
                                      const GradientOracle& grad, double delta,
                                      std::size_t samples, std::uint64_t seed);

/// As certify_fully_linear with powers delta^3, delta^2 and a Hessian term
/// ||P^T hess f(x+P s) P - H|| / delta.
ErrorCertificate certify_fully_quadratic(const QuadraticModel& model, const Vector& base,
                                         const Matrix& map, const ObjectiveOracle& f,
                                         const GradientOracle& grad, const HessianOracle& hess,
                                         double delta, std::size_t samples, std::uint64_t seed);

}  // namespace rsdfo
