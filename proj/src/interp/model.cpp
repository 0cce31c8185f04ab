#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"

namespace rsdfo {

QuadraticModel::QuadraticModel(double constant, Vector gradient, Matrix hessian)
    : c_(constant), g_(std::move(gradient)), h_(std::move(hessian)) {
  const Index p = g_.size();
  if (h_.rows() != p || h_.cols() != p) throw ContractViolation("QuadraticModel: Hessian must be p x p");
  if (!std::isfinite(c_) || !g_.allFinite() || !h_.allFinite()) {
    throw ContractViolation("QuadraticModel: non-finite coefficients");
  }
  if (p > 0) {
    const double scale = std::max(1.0, h_.cwiseAbs().maxCoeff());
    if ((h_ - h_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw ContractViolation("QuadraticModel: Hessian not symmetric");
    }
  }
}

QuadraticModel QuadraticModel::zero(Index p) {
  return QuadraticModel(0.0, Vector::Zero(p), Matrix::Zero(p, p));
}

double QuadraticModel::evaluate(const Vector& s) const {
  if (s.size() != g_.size()) throw ContractViolation("QuadraticModel::evaluate: dimension mismatch");
  return c_ + g_.dot(s) + 0.5 * s.dot(h_ * s);
}

Vector QuadraticModel::gradient_at(const Vector& s) const {
  if (s.size() != g_.size()) throw ContractViolation("QuadraticModel::gradient_at: dimension mismatch");
  return g_ + h_ * s;
}

double evaluate_model(const QuadraticModel& model, const Vector& s_hat) { return model.evaluate(s_hat); }

ModelCriticality model_criticality(const QuadraticModel& model) {
  const double gnorm = model.gradient().norm();
  if (model.dim() == 0) return {gnorm, 0.0};
  const double tau = std::max(-min_eigenpair(model.hessian()).value, 0.0);
  return {std::max(gnorm, tau), tau};
}

std::string model_to_json(const SubspaceModel& m) {
  using nlohmann::json;
  auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json basis = json::array();
  for (Index j = 0; j < m.map.cols(); ++j) basis.push_back(vec(m.map.col(j)));
  json hess = json::array();
  for (Index i = 0; i < m.model.hessian().rows(); ++i) {
    hess.push_back(vec(m.model.hessian().row(i).transpose()));
  }
  json out = {{"base", vec(m.base)},
              {"basis", basis},
              {"c", m.model.constant()},
              {"g", vec(m.model.gradient())},
              {"H", hess}};
  return out.dump();
}

}  // namespace rsdfo
