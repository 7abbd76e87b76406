#pragma once

#include <Eigen/Core>

#include "fdnoma/link_model.hpp"

namespace fdnoma {

/// Concave minorant of the sum-rate objective written as a difference of
/// concave functions,
///
///   f(p) = sum_d w_d log2(N0 + S_d(p) + I_d(p)) - sum_d w_d log2(N0 + I_d(p)),
///
/// with the subtracted sum replaced by its first-order expansion at p_ref.
/// Touches f at p_ref and lies below it everywhere else.
struct DcSurrogate {
  Eigen::VectorXd p_ref;
  Eigen::VectorXd linear_const;  ///< log2(N0 + I_d(p_ref)) per user
  Eigen::MatrixXd linear_coeff;  ///< row d: dI_d/dp / ((N0 + I_d(p_ref)) ln 2)
  Eigen::MatrixXd received;      ///< coupling + diag(signal_gain): S_d + I_d = received.row(d) p
  Eigen::MatrixXd coupling;
  Eigen::VectorXd weight;
  double noise_w = 0.0;

  /// sum_d w_d log2(N0 + S_d(p) + I_d(p)), the retained concave term.
  double concave_part(const Eigen::VectorXd& p) const;
  /// The true subtracted term sum_d w_d log2(N0 + I_d(p)).
  double subtracted_part(const Eigen::VectorXd& p) const;
  /// Its linearization at p_ref.
  double linearized_part(const Eigen::VectorXd& p) const;
  /// Analytic gradient of the linearized term (constant in p).
  Eigen::VectorXd linearized_gradient() const;

  double value(const Eigen::VectorXd& p) const { return concave_part(p) - linearized_part(p); }
  double true_objective(const Eigen::VectorXd& p) const {
    return concave_part(p) - subtracted_part(p);
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& p) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& p) const;
};

DcSurrogate build_surrogate(const Eigen::VectorXd& p_ref, const LinkModel& model);

}  // namespace fdnoma
