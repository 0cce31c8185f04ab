#include "rsdfo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsdfo/error.hpp"
#include "rsdfo/simd/kernels.hpp"

namespace rsdfo {

struct BasisBuilder {
  static Basis make(Matrix q) { return Basis(std::move(q)); }
};

namespace {

void check_symmetric(const Matrix& h, const char* who) {
  if (h.rows() != h.cols()) throw ContractViolation(std::string(who) + ": matrix is not square");
  if (!h.allFinite()) throw ContractViolation(std::string(who) + ": non-finite entries");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << who << ": matrix not symmetric (max asymmetry " << asym << ")";
    throw ContractViolation(os.str());
  }
}

// Deterministic sign: first entry with |v_i| > 1e-14 is made positive.
void canonical_sign(Eigen::Ref<Vector> v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-14) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace

Basis Basis::from_orthonormal(Matrix columns) {
  const Index r = columns.cols();
  const Matrix gram = columns.transpose() * columns;
  const double err = (gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (r > 0 && err > 1e-12) {
    throw ContractViolation("Basis::from_orthonormal: columns not orthonormal");
  }
  return Basis(std::move(columns));
}

Vector Basis::coordinates(const Vector& v) const {
  if (v.size() != q_.rows()) throw ContractViolation("Basis::coordinates: dimension mismatch");
  Vector out(q_.cols());
  simd::gemv_t(q_.data(), q_.rows(), q_.cols(), q_.rows(), v.data(), out.data());
  return out;
}

Vector Basis::expand(const Vector& c) const {
  if (c.size() != q_.cols()) throw ContractViolation("Basis::expand: dimension mismatch");
  Vector out = Vector::Zero(q_.rows());
  simd::gemv_n(q_.data(), q_.rows(), q_.cols(), q_.rows(), c.data(), out.data());
  return out;
}

OrthonormalizeResult orthonormalize(std::span<const Vector> vectors, double tol) {
  if (vectors.empty()) throw EmptyBasisError("orthonormalize: no input vectors");
  const Index n = vectors.front().size();
  Matrix q(n, static_cast<Index>(vectors.size()));
  OrthonormalizeResult result;
  Index rank = 0;
  Vector coeff(vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    const Vector& v = vectors[k];
    if (v.size() != n) throw ContractViolation("orthonormalize: inconsistent vector lengths");
    if (!v.allFinite()) throw ContractViolation("orthonormalize: non-finite input");
    const double norm = std::sqrt(simd::squared_norm(v.data(), n));
    Vector w = v;
    // Two classical Gram-Schmidt passes.
    for (int pass = 0; pass < 2 && rank > 0; ++pass) {
      simd::gemv_t(q.data(), n, rank, n, w.data(), coeff.data());
      for (Index j = 0; j < rank; ++j) coeff[j] = -coeff[j];
      simd::gemv_n(q.data(), n, rank, n, coeff.data(), w.data());
    }
    const double resid = std::sqrt(simd::squared_norm(w.data(), n));
    if (norm == 0.0 || resid <= tol * norm) {
      result.dropped.push_back(k);
      continue;
    }
    q.col(rank) = w / resid;
    ++rank;
    result.kept.push_back(k);
  }
  if (rank == 0) throw EmptyBasisError("orthonormalize: all input vectors are numerically zero");
  result.basis = BasisBuilder::make(q.leftCols(rank));
  return result;
}

SymmetricEigen symmetric_eigen(const Matrix& h) {
  check_symmetric(h, "symmetric_eigen");
  const Matrix sym = 0.5 * (h + h.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw SingularSystemError("symmetric_eigen: no convergence", 0.0);
  SymmetricEigen out{es.eigenvalues(), es.eigenvectors()};
  for (Index j = 0; j < out.vectors.cols(); ++j) canonical_sign(out.vectors.col(j));
  return out;
}

EigenPair min_eigenpair(const Matrix& h) {
  if (h.rows() == 0) throw ContractViolation("min_eigenpair: empty matrix");
  SymmetricEigen es = symmetric_eigen(h);
  return {es.values[0], es.vectors.col(0)};
}

double symmetric_norm(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  const SymmetricEigen es = symmetric_eigen(h);
  return std::max(std::abs(es.values[0]), std::abs(es.values[es.values.size() - 1]));
}

Vector solve_saddle_system(const Matrix& a, const Matrix& b, const Vector& rhs) {
  const Index k = a.rows();
  const Index m = b.rows();
  if (a.cols() != k || (m > 0 && b.cols() != k) || rhs.size() != k + m) {
    throw ContractViolation("solve_saddle_system: inconsistent dimensions");
  }
  Matrix kkt = Matrix::Zero(k + m, k + m);
  kkt.topLeftCorner(k, k) = a;
  if (m > 0) {
    kkt.bottomLeftCorner(m, k) = b;
    kkt.topRightCorner(k, m) = b.transpose();
  }
  const double rhs_scale = std::max(1.0, rhs.norm());
  const double tol = 1e-9 * rhs_scale;

  auto attempt = [&](const Matrix& system, double& rcond) -> Vector {
    Eigen::PartialPivLU<Matrix> lu(system);
    rcond = lu.rcond();
    if (!(rcond > 1e-15)) return Vector();
    Vector x = lu.solve(rhs);
    if (!x.allFinite()) return Vector();
    return x;
  };

  double rcond = 0.0;
  Vector x = attempt(kkt, rcond);
  if (x.size() > 0 && (kkt * x - rhs).norm() <= tol) return x;

  const double diag = k > 0 ? a.diagonal().cwiseAbs().maxCoeff() : 0.0;
  const double ridge = 1e-12 * diag;
  if (ridge > 0.0) {
    Matrix reg = kkt;
    reg.topLeftCorner(k, k).diagonal().array() += ridge;
    double rcond_reg = 0.0;
    Vector xr = attempt(reg, rcond_reg);
    if (xr.size() > 0 && (kkt * xr - rhs).norm() <= tol) return xr;
    rcond = std::max(rcond, rcond_reg);
  }
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  std::ostringstream os;
  os << "solve_saddle_system: singular KKT system (condition estimate " << cond << ")";
  throw SingularSystemError(os.str(), cond);
}

}  // namespace rsdfo
