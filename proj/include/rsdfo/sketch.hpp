#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rsdfo/types.hpp"

namespace rsdfo {

enum class SketchKind { gaussian, scaled_orthonormal, identity };

std::string_view to_string(SketchKind kind);
/// Accepts "gaussian", "scaled_orthonormal" (alias "orthonormal") and "identity".
SketchKind parse_sketch_kind(std::string_view name);

/// A random subspace map P (n x p).
struct SketchMatrix {
  Matrix map;
  SketchKind kind = SketchKind::gaussian;
  std::uint64_t seed = 0;

  Index n() const { return map.rows(); }
  Index p() const { return map.cols(); }
  /// Operator 2-norm ||P||.
  double norm() const;
};

/// Entries i.i.d. N(0, 1/p). Pure function of (n, p, seed).
SketchMatrix gaussian_sketch(Index n, Index p, std::uint64_t seed);
/// First p columns of a Haar-random orthogonal n x n matrix, scaled by sqrt(n/p).
SketchMatrix scaled_orthonormal_sketch(Index n, Index p, std::uint64_t seed);
SketchMatrix identity_sketch(Index n);
/// Dispatches on kind; identity requires p == n.
SketchMatrix make_sketch(SketchKind kind, Index n, Index p, std::uint64_t seed);

/// Default norm cap used by diagnostics: 2 sqrt(n/p).
double default_p_max(Index n, Index p);

/// Eigen-structure of a Hessian oracle restricted to its numerical rank
/// (|lambda| > 1e-10 ||H||), sorted by descending eigenvalue.
struct HessianSpectrum {
  Vector values;   // descending, length r
  Matrix vectors;  // n x r
  Index rank() const { return values.size(); }
};
HessianSpectrum hessian_spectrum(const Matrix& hess);

/// Outcome of the four well-alignedness conditions:
///   (a) ||P|| <= p_max
///   (b) ||P^T g|| >= (1 - alpha) ||g||
///   (c) ||P^T v_r|| >= 1 - alpha
///   (d) (v_i^T P P^T v_r)^2 <= 4 alpha^2 for i < r
struct AlignmentReport {
  bool norm_bound_ok = false;
  bool gradient_ok = false;
  bool eigvec_ok = false;
  bool cross_terms_ok = false;
  double alpha = 0.0;
  double p_max = 0.0;
  double worst_cross_term = 0.0;  // max_i (v_i^T P P^T v_r)^2
  Index hessian_rank = 0;
  bool hessian_vacuous = false;  // rank 0: (c) and (d) hold vacuously

  bool all() const { return norm_bound_ok && gradient_ok && eigvec_ok && cross_terms_ok; }
};

AlignmentReport is_well_aligned(const SketchMatrix& p, const Vector& grad, const Matrix& hess,
                                double alpha, double p_max);
AlignmentReport is_well_aligned(const SketchMatrix& p, const Vector& grad,
                                const HessianSpectrum& spectrum, double alpha, double p_max);

struct ThetaMargin {
  double alpha;
  double hessian_bound_m;
  Index rank_r;
  double epsilon;
  double theta;
  bool positive() const { return theta > 0.0; }
};

/// theta = (1-alpha)^2 - 4 M (r-1) alpha^2 / (epsilon (1-alpha)^2).
/// Accepts alpha in [0, 1) so the alpha -> 0 limit can be evaluated.
ThetaMargin theta_margin(double alpha, double m, Index r, double epsilon);

/// Fraction of `trials` independent sketches (trial t uses
/// derive_seed(seed, t)) that pass all four conditions.
double estimate_alignment_probability(SketchKind kind, Index n, Index p, const Vector& grad,
                                      const Matrix& hess, double alpha, double p_max,
                                      std::size_t trials, std::uint64_t seed);

/// Checks the norm-preservation conditions
///   (1-a)||w|| <= ||P^T w|| <= (1+a)||w||   for w in {v_i, v_r, v_i+v_r, v_i-v_r}
/// and returns whether all hold. When they do, the inner product bound
/// |v_i^T P P^T v_r| <= 2 alpha must follow; a violation throws
/// ContractViolation. Inputs must be orthonormal to 1e-10.
bool verify_polarization_bound(const SketchMatrix& p, const Vector& v_i, const Vector& v_r,
                               double alpha);

}  // namespace rsdfo
