#include <cmath>

#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"

namespace rsdfo {

double LagrangeSet::value(std::size_t t, const Vector& s) const {
  const auto col = coef_.col(static_cast<Index>(t));
  return col[0] + col.tail(col.size() - 1).dot(s);
}

Vector LagrangeSet::values(const Vector& s) const {
  Vector ext(s.size() + 1);
  ext[0] = 1.0;
  ext.tail(s.size()) = s;
  return coef_.transpose() * ext;
}

LagrangeSet linear_lagrange(std::span<const Vector> coords) {
  const std::size_t m = coords.size();
  if (m == 0) throw DegenerateGeometryError("linear_lagrange: empty point set");
  const Index p = coords.front().size();
  if (m < static_cast<std::size_t>(p) + 1) {
    throw DegenerateGeometryError("linear_lagrange: need at least p+1 points");
  }
  double scale = 0.0;
  for (const auto& c : coords) scale = std::max(scale, c.norm());
  if (!(scale > 0.0)) throw DegenerateGeometryError("linear_lagrange: all points coincide");

  // Rows (1, s_u / scale); the Lagrange coefficients are the (pseudo)inverse.
  Matrix design(static_cast<Index>(m), p + 1);
  for (std::size_t u = 0; u < m; ++u) {
    if (coords[u].size() != p) throw ContractViolation("linear_lagrange: inconsistent dimensions");
    design(static_cast<Index>(u), 0) = 1.0;
    design.row(static_cast<Index>(u)).tail(p) = coords[u].transpose() / scale;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < p + 1) {
    throw DegenerateGeometryError("linear_lagrange: points are not affinely independent");
  }
  Matrix coef = qr.solve(Matrix::Identity(static_cast<Index>(m), static_cast<Index>(m)));
  coef.bottomRows(p) /= scale;
  return LagrangeSet(std::move(coef));
}

LagrangeSet linear_lagrange(const InterpolationSet& set, const Basis& basis) {
  std::vector<Vector> coords;
  for (const auto& pp : project_primary(set, basis)) coords.push_back(pp.coords);
  return linear_lagrange(coords);
}

}  // namespace rsdfo
