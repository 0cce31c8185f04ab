#include <algorithm>
#include <cmath>
#include <sstream>

#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"

namespace rsdfo {

namespace {

double max_norm(std::span<const Vector> coords) {
  double s = 0.0;
  for (const auto& c : coords) s = std::max(s, c.norm());
  return s;
}

// Pairs of points closer than 1e-10 * scale.
std::vector<std::size_t> near_duplicates(std::span<const Vector> coords, double scale) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      if ((coords[i] - coords[j]).norm() <= 1e-10 * scale) {
        out.push_back(i);
        out.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> all_indices(std::size_t m) {
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  return v;
}

}  // namespace

MfnFit fit_mfn(std::span<const Vector> coords, std::span<const double> values, const Matrix& h_ref) {
  const std::size_t m = coords.size();
  if (m == 0 || values.size() != m) throw ContractViolation("fit_mfn: need one value per point");
  const Index p = coords.front().size();
  if (h_ref.rows() != p || h_ref.cols() != p) throw ContractViolation("fit_mfn: reference Hessian must be p x p");
  if (m < static_cast<std::size_t>(p) + 1) {
    throw ModelConstructionError("fit_mfn: fewer than p+1 interpolation points", all_indices(m), 0.0);
  }
  const double scale = max_norm(coords);
  if (!(scale > 0.0)) {
    throw ModelConstructionError("fit_mfn: all points coincide", all_indices(m), 0.0);
  }

  // Work in coordinates u = s / scale; D_u = scale^2 D and g_u = scale g.
  Matrix u(p, static_cast<Index>(m));
  Vector r(static_cast<Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    if (coords[j].size() != p) throw ContractViolation("fit_mfn: inconsistent coordinate dimensions");
    u.col(static_cast<Index>(j)) = coords[j] / scale;
    r[static_cast<Index>(j)] = values[j] - 0.5 * coords[j].dot(h_ref * coords[j]);
  }
  const Matrix gram = u.transpose() * u;
  const Matrix a = 0.5 * gram.array().square().matrix();
  Matrix b(p + 1, static_cast<Index>(m));
  b.row(0).setOnes();
  b.bottomRows(p) = u;
  Vector rhs = Vector::Zero(static_cast<Index>(m) + p + 1);
  rhs.head(static_cast<Index>(m)) = r;

  Vector sol;
  try {
    sol = solve_saddle_system(a, b, rhs);
  } catch (const SingularSystemError& e) {
    std::vector<std::size_t> bad = near_duplicates(coords, scale);
    if (bad.empty()) bad = all_indices(m);
    throw ModelConstructionError(std::string("fit_mfn: degenerate interpolation set: ") + e.what(),
                                 std::move(bad), e.condition_estimate());
  }

  const Vector lambda = sol.head(static_cast<Index>(m));
  const double c = sol[static_cast<Index>(m)];
  const Vector g_u = sol.tail(p);
  Matrix d_u = u * lambda.asDiagonal() * u.transpose();
  Matrix h = h_ref + d_u / (scale * scale);
  h = 0.5 * (h + h.transpose());

  MfnFit fit{QuadraticModel(c, g_u / scale, h), 0.0, 0.0};
  Matrix kkt = Matrix::Zero(a.rows() + b.rows(), a.rows() + b.rows());
  kkt.topLeftCorner(a.rows(), a.cols()) = a;
  kkt.bottomLeftCorner(b.rows(), b.cols()) = b;
  kkt.topRightCorner(b.cols(), b.rows()) = b.transpose();
  fit.kkt_residual = (kkt * sol - rhs).norm() / std::max(1.0, rhs.norm());

  std::vector<std::size_t> violators;
  for (std::size_t j = 0; j < m; ++j) {
    const double err = std::abs(fit.model.evaluate(coords[j]) - values[j]) / std::max(1.0, std::abs(values[j]));
    fit.max_interpolation_error = std::max(fit.max_interpolation_error, err);
    if (err > 1e-9) violators.push_back(j);
  }
  if (!violators.empty()) {
    std::ostringstream os;
    os << "fit_mfn: interpolation conditions violated (max relative error " << fit.max_interpolation_error << ")";
    throw ModelConstructionError(os.str(), std::move(violators), 0.0);
  }
  return fit;
}

SubspaceModel build_mfn_model(const InterpolationSet& set, const Basis& basis,
                              const SubspaceModel* prev, MfnDiagnostics* diagnostics) {
  const Index p = basis.rank();
  const Vector& base = set.base();
  if (base.size() != basis.dim()) throw ContractViolation("build_mfn_model: basis/base dimension mismatch");

  std::vector<Vector> coords;
  std::vector<double> values;
  for (const auto& pp : project_primary(set, basis)) {
    coords.push_back(pp.coords);
    values.push_back(pp.f);
  }
  const double scale = max_norm(coords);
  MfnDiagnostics diag;
  const auto secondary = project_secondary(set, basis);
  for (std::size_t i = 0; i < secondary.size(); ++i) {
    diag.projection_residuals.push_back(secondary[i].residual);
    // The cached value is off by roughly |grad f| * residual; a point whose
    // projection moved it farther than its separation from the existing
    // data would force the Hessian to absorb that error.
    const double min_gap = std::max(1e-10 * scale, secondary[i].residual);
    bool duplicate = false;
    for (const auto& c : coords) {
      if ((c - secondary[i].coords).norm() < min_gap) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      diag.excluded_secondary.push_back(i);
      continue;
    }
    coords.push_back(secondary[i].coords);
    values.push_back(secondary[i].f);
  }

  Matrix h_ref = Matrix::Zero(p, p);
  if (prev != nullptr && prev->model.dim() > 0) {
    if (prev->map.rows() != basis.dim()) throw ContractViolation("build_mfn_model: previous basis dimension mismatch");
    const Matrix cross = basis.columns().transpose() * prev->map;  // p x p_prev
    h_ref = cross * prev->model.hessian() * cross.transpose();
    h_ref = 0.5 * (h_ref + h_ref.transpose());
  }

  MfnFit fit = fit_mfn(coords, values, h_ref);
  diag.kkt_residual = fit.kkt_residual;
  diag.constraints = coords.size();
  if (diagnostics != nullptr) *diagnostics = std::move(diag);
  return SubspaceModel{base, basis.columns(), std::move(fit.model)};
}

std::vector<Vector> full_quadratic_stencil(Index p, double delta) {
  if (p < 1 || !(delta > 0.0)) throw ParameterError("full_quadratic_stencil: need p >= 1 and delta > 0");
  std::vector<Vector> pts;
  pts.push_back(Vector::Zero(p));
  for (Index i = 0; i < p; ++i) {
    pts.push_back(delta * Vector::Unit(p, i));
    pts.push_back(-delta * Vector::Unit(p, i));
  }
  for (Index i = 0; i < p; ++i) {
    for (Index j = i + 1; j < p; ++j) pts.push_back(delta * (Vector::Unit(p, i) + Vector::Unit(p, j)));
  }
  return pts;
}

QuadraticModel build_full_quadratic_model(std::span<const Vector> coords, std::span<const double> values) {
  if (coords.empty() || values.size() != coords.size()) {
    throw ContractViolation("build_full_quadratic_model: need one value per point");
  }
  const Index p = coords.front().size();
  const std::size_t need = static_cast<std::size_t>((p + 1) * (p + 2) / 2);
  if (coords.size() != need) {
    throw ContractViolation("build_full_quadratic_model: need exactly (p+1)(p+2)/2 points");
  }
  const double scale = max_norm(coords);
  if (!(scale > 0.0)) throw ModelConstructionError("build_full_quadratic_model: points coincide", all_indices(need), 0.0);

  // Columns: 1, u_i, then u_i u_j / (1 + [i == j]) for i <= j.
  const Index nq = static_cast<Index>(need);
  Matrix phi(nq, nq);
  Vector rhs(nq);
  for (Index r = 0; r < nq; ++r) {
    const Vector u = coords[static_cast<std::size_t>(r)] / scale;
    if (u.size() != p) throw ContractViolation("build_full_quadratic_model: inconsistent dimensions");
    Index col = 0;
    phi(r, col++) = 1.0;
    for (Index i = 0; i < p; ++i) phi(r, col++) = u[i];
    for (Index i = 0; i < p; ++i) {
      for (Index j = i; j < p; ++j) phi(r, col++) = (i == j ? 0.5 : 1.0) * u[i] * u[j];
    }
    rhs[r] = values[static_cast<std::size_t>(r)];
  }
  Eigen::JacobiSVD<Matrix> svd(phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  const double cond = sv[nq - 1] > 0.0 ? sv[0] / sv[nq - 1] : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    std::vector<std::size_t> bad = near_duplicates(coords, scale);
    if (bad.empty()) bad = all_indices(need);
    std::ostringstream os;
    os << "build_full_quadratic_model: sample set not poised (condition estimate " << cond << ")";
    throw ModelConstructionError(os.str(), std::move(bad), cond);
  }
  const Vector coef = svd.solve(rhs);
  Vector g(p);
  Matrix h(p, p);
  Index col = 1;
  for (Index i = 0; i < p; ++i) g[i] = coef[col++] / scale;
  for (Index i = 0; i < p; ++i) {
    for (Index j = i; j < p; ++j) {
      const double v = coef[col++] / (scale * scale);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return QuadraticModel(coef[0], std::move(g), std::move(h));
}

}  // namespace rsdfo
