#include <algorithm>
#include <cmath>

#include "rsdfo/error.hpp"
#include "rsdfo/simd/kernels.hpp"
#include "rsdfo/solvers.hpp"

namespace rsdfo {

namespace {

// Shared selection rule. Lagrange polynomials are built over the primary
// points (minus `exclude`) in coordinates relative to the base, evaluated at
// `eval_point`; distances are measured from `center`.
RemovalOutcome remove_by_score(InterpolationSet& set, const Basis& basis, const Vector& eval_point,
                               const Vector& center, double delta, std::optional<std::size_t> exclude) {
  if (!(delta > 0.0)) throw ContractViolation("point removal: delta must be positive");
  const auto& pts = set.primary();
  const std::size_t base = set.base_index();
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!exclude || i != *exclude) members.push_back(i);
  }
  if (members.size() < 2) throw ContractViolation("point removal: need at least two primary points");

  const Vector& origin = pts[base].x;
  std::vector<Vector> coords;
  coords.reserve(members.size());
  for (std::size_t i : members) coords.push_back(basis.coordinates(pts[i].x - origin));

  Vector ell;
  bool distance_only = false;
  try {
    const LagrangeSet lag = linear_lagrange(coords);
    ell = lag.values(basis.coordinates(eval_point - origin));
  } catch (const DegenerateGeometryError&) {
    distance_only = true;
  }

  const double d4 = delta * delta * delta * delta;
  std::vector<double> theta(members.size(), -1.0);
  std::vector<double> dist(members.size(), 0.0);
  double theta_max = 0.0;
  for (std::size_t u = 0; u < members.size(); ++u) {
    const std::size_t i = members[u];
    if (i == base) continue;
    dist[u] = (pts[i].x - center).norm();
    const double ratio = dist[u] * dist[u] * dist[u] * dist[u] / d4;
    theta[u] = distance_only ? ratio : std::abs(ell[static_cast<Index>(u)]) * std::max(ratio, 1.0);
    theta_max = std::max(theta_max, theta[u]);
  }
  const double tie = 1e-12 * std::max(1.0, theta_max);
  std::optional<std::size_t> pick;
  for (std::size_t u = 0; u < members.size(); ++u) {
    if (members[u] == base || theta[u] < theta_max - tie) continue;
    if (!pick || dist[u] > dist[*pick]) pick = u;
  }
  if (!pick) throw ContractViolation("point removal: no removable point");

  const std::size_t index = members[*pick];
  RemovalOutcome out{pts[index].x, theta[*pick], distance_only};
  set.move_to_secondary(index);
  return out;
}

void project_out(const Vector& unit, Vector& d) {
  const auto n = static_cast<std::size_t>(d.size());
  simd::axpy(-simd::dot(unit.data(), d.data(), n), unit.data(), d.data(), n);
}

}  // namespace

RemovalOutcome remove_single_point(InterpolationSet& set, const Basis& basis, const Vector& tentative_step,
                                   double delta, const Vector& x_k, std::optional<std::size_t> exclude) {
  const Vector center = x_k;
  return remove_by_score(set, basis, center + tentative_step, center, delta, exclude);
}

std::vector<RemovalOutcome> remove_multiple_points(InterpolationSet& set, const Basis& basis,
                                                   std::size_t count, double delta, const Vector& x_next) {
  if (count >= set.primary().size()) {
    throw ContractViolation("remove_multiple_points: count must be below the primary set size");
  }
  const Vector center = x_next;  // may alias a primary point that moves
  std::vector<RemovalOutcome> out;
  for (std::size_t c = 0; c < count; ++c) {
    out.push_back(remove_by_score(set, basis, center, center, delta, std::nullopt));
  }
  return out;
}

std::size_t pdrop_heuristic(std::optional<double> ratio, Index p, bool full_space) {
  if (p < 1) throw ContractViolation("pdrop_heuristic: p must be positive");
  std::size_t drop = 1;
  if (ratio && *ratio < 0.0) drop = static_cast<std::size_t>((p + 9) / 10);
  const std::size_t lower = full_space ? 1 : 2;
  return std::min(std::max(drop, lower), static_cast<std::size_t>(p));
}

std::vector<std::size_t> add_orthogonal_points(InterpolationSet& set, double delta, std::size_t count,
                                               Rng& rng, const std::function<double(const Vector&)>& f) {
  if (count == 0) return {};
  const Vector base = set.base();
  const Index n = base.size();

  std::vector<Vector> frame;
  {
    std::vector<Vector> dirs;
    for (std::size_t i = 0; i < set.primary().size(); ++i) {
      if (i != set.base_index()) dirs.push_back(set.primary()[i].x - base);
    }
    if (!dirs.empty()) {
      try {
        const Basis b = orthonormalize(dirs).basis;
        for (Index j = 0; j < b.rank(); ++j) frame.push_back(b.columns().col(j));
      } catch (const EmptyBasisError&) {
      }
    }
  }
  if (frame.size() + count > static_cast<std::size_t>(n)) {
    throw ContractViolation("add_orthogonal_points: not enough room for new directions");
  }

  std::vector<Vector> fresh;
  while (fresh.size() < count) {
    Vector d = standard_normal_vector(n, rng);
    const double start = d.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : frame) project_out(v, d);
      for (const auto& v : fresh) project_out(v, d);
    }
    const double len = d.norm();
    if (len <= 1e-8 * start) continue;
    d /= len;
    fresh.push_back(d);
  }

  std::vector<std::size_t> added;
  for (const auto& d : fresh) {
    Vector y = base + delta * d;
    const double fy = f(y);
    added.push_back(set.add_primary(std::move(y), fy));
  }
  return added;
}

}  // namespace rsdfo
