#pragma once

#include <span>
#include <vector>

#include "rsdfo/types.hpp"

namespace rsdfo {

/// n x r matrix with orthonormal columns.
class Basis {
 public:
  Basis() = default;

  /// Wraps columns that are already orthonormal; throws ContractViolation if
  /// max |Q^T Q - I| exceeds 1e-12.
  static Basis from_orthonormal(Matrix columns);

  const Matrix& columns() const noexcept { return q_; }
  Index rank() const noexcept { return q_.cols(); }
  Index dim() const noexcept { return q_.rows(); }

  /// Q^T v (subspace coordinates of a full-space vector).
  Vector coordinates(const Vector& v) const;
  /// Q c (full-space image of subspace coordinates).
  Vector expand(const Vector& c) const;

 private:
  explicit Basis(Matrix q) : q_(std::move(q)) {}
  friend struct BasisBuilder;
  Matrix q_;
};

struct OrthonormalizeResult {
  Basis basis;
  std::vector<std::size_t> kept;     // input indices that contributed a column
  std::vector<std::size_t> dropped;  // numerically dependent inputs
};

/// Gram-Schmidt with reorthogonalization. An input is dropped when its residual
/// after projection is below tol * ||input||. Throws EmptyBasisError if every
/// input is dropped.
OrthonormalizeResult orthonormalize(std::span<const Vector> vectors, double tol = 1e-10);

inline Basis orthonormal_basis(std::span<const Vector> vectors, double tol = 1e-10) {
  return orthonormalize(vectors, tol).basis;
}

struct EigenPair {
  double value;
  Vector vector;  // unit norm, first nonzero entry positive
};

/// Smallest eigenpair of a symmetric matrix. Throws ContractViolation when
/// max |H - H^T| > 1e-12 * max(1, max |H_ij|).
EigenPair min_eigenpair(const Matrix& h);

/// Full ascending eigendecomposition of a symmetric matrix (same symmetry
/// contract as min_eigenpair).
struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns match `values`
};
SymmetricEigen symmetric_eigen(const Matrix& h);

/// Operator 2-norm of a symmetric matrix.
double symmetric_norm(const Matrix& h);

/// Solves [A B^T; B 0] [x; y] = rhs where A is k x k symmetric and B is m x k.
/// B may have zero rows. Falls back to a ridge of 1e-12 * max|diag| on the A
/// block when the factorization is near singular; throws SingularSystemError
/// if the KKT residual still exceeds 1e-9 * max(1, ||rhs||).
Vector solve_saddle_system(const Matrix& a, const Matrix& b, const Vector& rhs);

}  // namespace rsdfo
