#include "fdnoma/surrogate.hpp"

#include <cmath>
#include <numbers>

namespace fdnoma {

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

DcSurrogate build_surrogate(const Eigen::VectorXd& p_ref, const LinkModel& model) {
  DcSurrogate s;
  s.p_ref = p_ref;
  s.coupling = model.coupling;
  s.received = model.coupling;
  s.received.diagonal() += model.signal_gain;
  s.weight = model.weight;
  s.noise_w = model.noise_w;

  const Eigen::VectorXd denom = (model.noise_w + (model.coupling * p_ref).array()).matrix();
  s.linear_const = denom.array().log2().matrix();
  s.linear_coeff = (denom * kLn2).cwiseInverse().asDiagonal() * model.coupling;
  return s;
}

double DcSurrogate::concave_part(const Eigen::VectorXd& p) const {
  const Eigen::ArrayXd total = noise_w + (received * p).array();
  return weight.dot(total.log2().matrix());
}

double DcSurrogate::subtracted_part(const Eigen::VectorXd& p) const {
  const Eigen::ArrayXd total = noise_w + (coupling * p).array();
  return weight.dot(total.log2().matrix());
}

double DcSurrogate::linearized_part(const Eigen::VectorXd& p) const {
  const Eigen::VectorXd delta = p - p_ref;
  return weight.dot(linear_const + linear_coeff * delta);
}

Eigen::VectorXd DcSurrogate::linearized_gradient() const {
  return linear_coeff.transpose() * weight;
}

Eigen::VectorXd DcSurrogate::gradient(const Eigen::VectorXd& p) const {
  const Eigen::VectorXd total = (noise_w + (received * p).array()).matrix();
  const Eigen::VectorXd scale = weight.cwiseQuotient(total * kLn2);
  return received.transpose() * scale - linearized_gradient();
}

Eigen::MatrixXd DcSurrogate::hessian(const Eigen::VectorXd& p) const {
  const Eigen::VectorXd total = (noise_w + (received * p).array()).matrix();
  const Eigen::VectorXd scale = weight.cwiseQuotient(total.cwiseProduct(total) * kLn2);
  return -(received.transpose() * scale.asDiagonal() * received);
}

}  // namespace fdnoma
