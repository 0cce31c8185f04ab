#include <algorithm>
#include <cmath>

#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"

namespace rsdfo {

InterpolationSet::InterpolationSet(Index p, Index q) : p_(p), q_(q) {
  if (p < 1) throw ParameterError("InterpolationSet: p must be >= 1");
  if (q < p + 1) throw ParameterError("InterpolationSet: q must be >= p + 1");
}

std::size_t InterpolationSet::base_index() const {
  if (primary_.empty()) throw ContractViolation("InterpolationSet: primary set is empty");
  return base_;
}

std::size_t InterpolationSet::add_primary(Vector x, double f) {
  primary_.push_back({std::move(x), f, clock_++});
  return primary_.size() - 1;
}

void InterpolationSet::set_base(std::size_t index) {
  if (index >= primary_.size()) throw ContractViolation("InterpolationSet::set_base: bad index");
  base_ = index;
}

void InterpolationSet::move_to_secondary(std::size_t index) {
  if (index >= primary_.size()) throw ContractViolation("InterpolationSet::move_to_secondary: bad index");
  if (index == base_) throw ContractViolation("InterpolationSet::move_to_secondary: cannot move the base");
  Point pt = std::move(primary_[index]);
  primary_.erase(primary_.begin() + static_cast<std::ptrdiff_t>(index));
  if (index < base_) --base_;
  pt.age = clock_++;
  secondary_.push_back(std::move(pt));
  while (secondary_.size() > secondary_capacity()) secondary_.pop_front();
}

std::size_t InterpolationSet::best_primary() const {
  if (primary_.empty()) throw ContractViolation("InterpolationSet: primary set is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < primary_.size(); ++i) {
    if (primary_[i].f < primary_[best].f) best = i;
  }
  return best;
}

namespace {

ProjectedPoint project(const InterpolationSet::Point& pt, const Vector& base, const Basis& basis) {
  const Vector d = pt.x - base;
  ProjectedPoint out;
  out.coords = basis.coordinates(d);
  out.f = pt.f;
  out.residual = (d - basis.expand(out.coords)).norm();
  return out;
}

}  // namespace

std::vector<ProjectedPoint> project_secondary(const InterpolationSet& set, const Basis& basis) {
  std::vector<ProjectedPoint> out;
  out.reserve(set.secondary().size());
  const Vector& base = set.base();
  for (const auto& pt : set.secondary()) out.push_back(project(pt, base, basis));
  return out;
}

std::vector<ProjectedPoint> project_primary(const InterpolationSet& set, const Basis& basis) {
  std::vector<ProjectedPoint> out;
  out.reserve(set.primary().size());
  const Vector& base = set.base();
  for (const auto& pt : set.primary()) out.push_back(project(pt, base, basis));
  return out;
}

}  // namespace rsdfo
