#include <algorithm>
#include <cmath>
#include <random>

#include "rsdfo/error.hpp"
#include "rsdfo/interp.hpp"
#include "rsdfo/random.hpp"

namespace rsdfo {

namespace {

std::vector<Vector> sample_ball(Index p, double delta, std::size_t samples, std::uint64_t seed) {
  std::vector<Vector> pts;
  pts.push_back(Vector::Zero(p));
  for (Index i = 0; i < p; ++i) {
    pts.push_back(delta * Vector::Unit(p, i));
    pts.push_back(-delta * Vector::Unit(p, i));
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t k = 0; k < samples; ++k) {
    Vector d = standard_normal_vector(p, rng);
    const double nd = d.norm();
    if (nd == 0.0) continue;
    const double radius = delta * std::pow(unif(rng), 1.0 / static_cast<double>(p));
    pts.push_back(d * (radius / nd));
  }
  return pts;
}

void check_inputs(const QuadraticModel& model, const Vector& base, const Matrix& map, double delta) {
  if (!(delta > 0.0)) throw ContractViolation("certify: delta must be positive");
  if (map.rows() != base.size() || map.cols() != model.dim()) {
    throw ContractViolation("certify: map must be n x p");
  }
}

}  // namespace

ErrorCertificate certify_fully_linear(const QuadraticModel& model, const Vector& base,
                                      const Matrix& map, const ObjectiveOracle& f,
                                      const GradientOracle& grad, double delta,
                                      std::size_t samples, std::uint64_t seed) {
  check_inputs(model, base, map, delta);
  ErrorCertificate cert;
  cert.delta = delta;
  for (const Vector& s : sample_ball(model.dim(), delta, samples, seed)) {
    const Vector x = base + map * s;
    const double ef = std::abs(f(x) - model.evaluate(s)) / (delta * delta);
    const double eg = (map.transpose() * grad(x) - model.gradient_at(s)).norm() / delta;
    cert.kappa_ef_est = std::max(cert.kappa_ef_est, ef);
    cert.kappa_eg_est = std::max(cert.kappa_eg_est, eg);
    ++cert.samples;
  }
  return cert;
}

ErrorCertificate certify_fully_quadratic(const QuadraticModel& model, const Vector& base,
                                         const Matrix& map, const ObjectiveOracle& f,
                                         const GradientOracle& grad, const HessianOracle& hess,
                                         double delta, std::size_t samples, std::uint64_t seed) {
  check_inputs(model, base, map, delta);
  ErrorCertificate cert;
  cert.delta = delta;
  double eh_max = 0.0;
  for (const Vector& s : sample_ball(model.dim(), delta, samples, seed)) {
    const Vector x = base + map * s;
    const double ef = std::abs(f(x) - model.evaluate(s)) / (delta * delta * delta);
    const double eg = (map.transpose() * grad(x) - model.gradient_at(s)).norm() / (delta * delta);
    const Matrix herr = map.transpose() * hess(x) * map - model.hessian();
    const double eh = symmetric_norm(0.5 * (herr + herr.transpose())) / delta;
    cert.kappa_ef_est = std::max(cert.kappa_ef_est, ef);
    cert.kappa_eg_est = std::max(cert.kappa_eg_est, eg);
    eh_max = std::max(eh_max, eh);
    ++cert.samples;
  }
  cert.kappa_eh_est = eh_max;
  return cert;
}

}  // namespace rsdfo
