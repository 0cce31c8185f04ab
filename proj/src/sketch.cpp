#include "rsdfo/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rsdfo/error.hpp"
#include "rsdfo/numerics.hpp"
#include "rsdfo/random.hpp"

namespace rsdfo {

namespace {

void check_dims(Index n, Index p) {
  if (n < 1 || p < 1 || p > n) {
    throw ParameterError("sketch: require 1 <= p <= n (got n=" + std::to_string(n) +
                         ", p=" + std::to_string(p) + ")");
  }
}

}  // namespace

std::string_view to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::gaussian:
      return "gaussian";
    case SketchKind::scaled_orthonormal:
      return "scaled_orthonormal";
    case SketchKind::identity:
      return "identity";
  }
  return "unknown";
}

SketchKind parse_sketch_kind(std::string_view name) {
  if (name == "gaussian") return SketchKind::gaussian;
  if (name == "scaled_orthonormal" || name == "orthonormal") return SketchKind::scaled_orthonormal;
  if (name == "identity") return SketchKind::identity;
  throw ParameterError("unknown sketch kind '" + std::string(name) + "'");
}

double SketchMatrix::norm() const {
  if (map.size() == 0) return 0.0;
  const Matrix gram = map.transpose() * map;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

SketchMatrix gaussian_sketch(Index n, Index p, std::uint64_t seed) {
  check_dims(n, p);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(p)));
  Matrix m(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = normal(rng);
  return {std::move(m), SketchKind::gaussian, seed};
}

SketchMatrix scaled_orthonormal_sketch(Index n, Index p, std::uint64_t seed) {
  check_dims(n, p);
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, p);
  for (Index j = 0; j < p; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, p);
  // Sign fix on R's diagonal makes the frame Haar distributed.
  const Matrix r = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
  for (Index j = 0; j < p; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  q *= std::sqrt(static_cast<double>(n) / static_cast<double>(p));
  return {std::move(q), SketchKind::scaled_orthonormal, seed};
}

SketchMatrix identity_sketch(Index n) {
  check_dims(n, n);
  return {Matrix::Identity(n, n), SketchKind::identity, 0};
}

SketchMatrix make_sketch(SketchKind kind, Index n, Index p, std::uint64_t seed) {
  switch (kind) {
    case SketchKind::gaussian:
      return gaussian_sketch(n, p, seed);
    case SketchKind::scaled_orthonormal:
      return scaled_orthonormal_sketch(n, p, seed);
    case SketchKind::identity:
      if (p != n) throw ParameterError("identity sketch requires p == n");
      return identity_sketch(n);
  }
  throw ParameterError("unknown sketch kind");
}

double default_p_max(Index n, Index p) {
  check_dims(n, p);
  return 2.0 * std::sqrt(static_cast<double>(n) / static_cast<double>(p));
}

HessianSpectrum hessian_spectrum(const Matrix& hess) {
  const SymmetricEigen es = symmetric_eigen(hess);
  const Index n = es.values.size();
  double norm = 0.0;
  for (Index i = 0; i < n; ++i) norm = std::max(norm, std::abs(es.values[i]));
  std::vector<Index> keep;
  // Walk descending.
  for (Index i = n - 1; i >= 0; --i) {
    if (std::abs(es.values[i]) > 1e-10 * norm) keep.push_back(i);
  }
  HessianSpectrum out;
  out.values.resize(static_cast<Index>(keep.size()));
  out.vectors.resize(hess.rows(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.values[static_cast<Index>(k)] = es.values[keep[k]];
    out.vectors.col(static_cast<Index>(k)) = es.vectors.col(keep[k]);
  }
  return out;
}

AlignmentReport is_well_aligned(const SketchMatrix& p, const Vector& grad,
                                const HessianSpectrum& spectrum, double alpha, double p_max) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("is_well_aligned: alpha must be in (0,1)");
  if (!grad.allFinite() || grad.size() != p.n()) {
    throw ContractViolation("is_well_aligned: gradient must be finite with length n");
  }
  AlignmentReport rep;
  rep.alpha = alpha;
  rep.p_max = p_max;
  rep.norm_bound_ok = p.norm() <= p_max;
  rep.gradient_ok = (p.map.transpose() * grad).norm() >= (1.0 - alpha) * grad.norm();
  rep.hessian_rank = spectrum.rank();
  if (spectrum.rank() == 0) {
    rep.hessian_vacuous = true;
    rep.eigvec_ok = true;
    rep.cross_terms_ok = true;
    return rep;
  }
  const Matrix vhat = p.map.transpose() * spectrum.vectors;  // p x r
  const Index r = spectrum.rank();
  const auto vr = vhat.col(r - 1);
  rep.eigvec_ok = vr.norm() >= 1.0 - alpha;
  double worst = 0.0;
  for (Index i = 0; i + 1 < r; ++i) {
    const double c = vhat.col(i).dot(vr);
    worst = std::max(worst, c * c);
  }
  rep.worst_cross_term = worst;
  rep.cross_terms_ok = worst <= 4.0 * alpha * alpha;
  return rep;
}

AlignmentReport is_well_aligned(const SketchMatrix& p, const Vector& grad, const Matrix& hess,
                                double alpha, double p_max) {
  if (hess.rows() != p.n()) throw ContractViolation("is_well_aligned: Hessian must be n x n");
  return is_well_aligned(p, grad, hessian_spectrum(hess), alpha, p_max);
}

ThetaMargin theta_margin(double alpha, double m, Index r, double epsilon) {
  if (!(alpha >= 0.0 && alpha < 1.0) || !(epsilon > 0.0) || !(m >= 0.0) || r < 1) {
    throw ContractViolation("theta_margin: require alpha in [0,1), epsilon > 0, M >= 0, r >= 1");
  }
  const double one_minus = (1.0 - alpha) * (1.0 - alpha);
  const double theta =
      one_minus - 4.0 * m * static_cast<double>(r - 1) * alpha * alpha / (epsilon * one_minus);
  return {alpha, m, r, epsilon, theta};
}

double estimate_alignment_probability(SketchKind kind, Index n, Index p, const Vector& grad,
                                      const Matrix& hess, double alpha, double p_max,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("estimate_alignment_probability: trials must be >= 1");
  const HessianSpectrum spectrum = hessian_spectrum(hess);
  std::size_t passed = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SketchMatrix sk = make_sketch(kind, n, p, derive_seed(seed, t));
    if (is_well_aligned(sk, grad, spectrum, alpha, p_max).all()) ++passed;
  }
  return static_cast<double>(passed) / static_cast<double>(trials);
}

bool verify_polarization_bound(const SketchMatrix& p, const Vector& v_i, const Vector& v_r,
                               double alpha) {
  if (v_i.size() != p.n() || v_r.size() != p.n()) {
    throw ContractViolation("verify_polarization_bound: vectors must have length n");
  }
  if (std::abs(v_i.norm() - 1.0) > 1e-10 || std::abs(v_r.norm() - 1.0) > 1e-10 ||
      std::abs(v_i.dot(v_r)) > 1e-10) {
    throw ContractViolation("verify_polarization_bound: inputs must be orthonormal");
  }
  const Vector hi = p.map.transpose() * v_i;
  const Vector hr = p.map.transpose() * v_r;
  auto preserved = [&](const Vector& w, const Vector& hw) {
    const double nw = w.norm();
    const double nh = hw.norm();
    return (1.0 - alpha) * nw <= nh && nh <= (1.0 + alpha) * nw;
  };
  const bool holds = preserved(v_i, hi) && preserved(v_r, hr) && preserved(v_i + v_r, hi + hr) &&
                     preserved(v_i - v_r, hi - hr);
  if (holds && std::abs(hi.dot(hr)) > 2.0 * alpha + 1e-12) {
    throw ContractViolation("verify_polarization_bound: inner-product bound falsified");
  }
  return holds;
}

}  // namespace rsdfo
