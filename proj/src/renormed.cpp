// SPDX-License-Identifier: Apache-2.0
#include "renorm/renormed.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <utility>

#include "renorm/errors.hpp"
#include "renorm/rng.hpp"

namespace renorm {

namespace {

// Smallest spectral gap for which we are willing to form T^{-1}.
constexpr double kInverseFloor = 1e-12;

void require_exact(const RenormedSpace& space, const char* what) {
  if (space.mode != SpaceMode::Exact) {
    std::ostringstream msg;
    msg << what
        << " is certified only when the ball covers a finite group; this "
           "space is windowed (use rep_norm_estimate for labeled lower "
           "bounds)";
    throw ModeError(msg.str());
  }
}

// out = L_g in: moves coordinate i to target[i], drops invalid columns.
Eigen::VectorXd apply_translation(const TranslationAction& action,
                                  const Eigen::VectorXd& in) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(in.size());
  for (int i = 0; i < action.size; ++i) {
    if (action.valid[i]) out[action.target[i]] += in[i];
  }
  return out;
}

// Largest generalized eigenvalue mu of A x = mu B x for symmetric A and
// positive definite B.
double max_generalized_eigenvalue(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, b, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) {
    throw NumericError("generalized eigensolver did not converge");
  }
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

const char* space_mode_name(SpaceMode mode) {
  return mode == SpaceMode::Exact ? "exact" : "windowed";
}

RenormedSpace build_renormed_space(Kernel kernel, double epsilon,
                                   std::optional<double> psd_tol_factor) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be a positive finite real");
  }
  const PsdReport psd = psd_check(kernel, psd_tol_factor);
  if (!psd.pass) {
    std::ostringstream msg;
    msg << "kernel fails the positive semidefinite check (min eigenvalue "
        << psd.min_eigenvalue << ", tolerance " << psd.tolerance
        << "); refusing to renorm";
    throw ParameterError(msg.str());
  }

  RenormedSpace space;
  space.epsilon = epsilon;
  space.mode = kernel.ball->covers_group() ? SpaceMode::Exact : SpaceMode::Windowed;

  // T = (K + eps I) / (1 + eps). Off-diagonal entries are K/(1+eps); the
  // diagonal is (1 + eps)/(1 + eps) = 1, which we set exactly rather than
  // trusting the two-step float arithmetic to cancel.
  const double scale = 1.0 / (1.0 + epsilon);
  space.t = kernel.values * scale;
  space.t.diagonal().setOnes();
  space.kernel = std::move(kernel);

  const bool exact = space.mode == SpaceMode::Exact;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      space.t, exact ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of T did not converge");
  }
  space.t_spectrum = solver.eigenvalues();
  space.lambda = space.t_spectrum.minCoeff();
  space.opnorm = space.t_spectrum.maxCoeff();

  if (exact) {
    if (space.lambda < kInverseFloor) {
      std::ostringstream msg;
      msg << "spectral gap " << space.lambda << " is below " << kInverseFloor
          << "; refusing to form T^{-1}";
      throw NumericError(msg.str());
    }
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const Eigen::VectorXd sqrt_vals = space.t_spectrum.cwiseSqrt();
    space.t_sqrt = v * sqrt_vals.asDiagonal() * v.transpose();
    space.t_inv_sqrt = v * sqrt_vals.cwiseInverse().asDiagonal() * v.transpose();
    space.t_inv = v * space.t_spectrum.cwiseInverse().asDiagonal() * v.transpose();
  }
  return space;
}

SpectralData spectral_data(const RenormedSpace& space) {
  SpectralData data;
  data.lambda = space.lambda;
  data.opnorm = space.opnorm;
  data.guaranteed_floor = space.epsilon / (1.0 + space.epsilon);
  if (data.lambda < data.guaranteed_floor - 1e-10) {
    std::ostringstream msg;
    msg << "smallest eigenvalue " << data.lambda
        << " violates the guaranteed floor eps/(1+eps) = "
        << data.guaranteed_floor;
    throw NumericError(msg.str());
  }
  return data;
}

double renormed_inner(const RenormedSpace& space, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) {
  if (u.size() != space.t.rows() || v.size() != space.t.rows()) {
    throw ParameterError("vector length does not match the ball size");
  }
  return u.dot(space.t * v);
}

double renormed_norm(const RenormedSpace& space, const Eigen::VectorXd& v) {
  return std::sqrt(std::max(0.0, renormed_inner(space, v, v)));
}

Eigen::MatrixXd TranslationAction::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    if (valid[i]) m(target[i], i) = 1.0;
  }
  return m;
}

TranslationAction translation_action(const RenormedSpace& space, const Element& g) {
  const Ball& ball = space.ball();
  if (space.mode == SpaceMode::Windowed && !ball.index_of(g)) {
    throw ParameterError(
        "translation element lies outside the enumerated ball (windowed mode "
        "accepts only in-ball elements)");
  }
  const GroupModel& group = ball.group;
  TranslationAction action;
  action.g = g;
  action.size = ball.size();
  action.target.assign(ball.size(), -1);
  action.valid.assign(ball.size(), 0);
  for (int i = 0; i < ball.size(); ++i) {
    const Element moved = group.multiply(g, ball.element(i));
    if (auto idx = ball.index_of(moved)) {
      action.target[i] = *idx;
      action.valid[i] = 1;
      ++action.valid_count;
    }
  }
  return action;
}

double rep_norm(const RenormedSpace& space, const Element& g) {
  require_exact(space, "rep_norm");
  const TranslationAction action = translation_action(space, g);
  const int n = action.size;
  // Rows of T^{-1/2} permuted by L_g, then multiplied by T^{1/2}: the matrix
  // of pi_g as an operator between the Euclidean coordinates of H_T.
  Eigen::MatrixXd permuted(n, n);
  for (int i = 0; i < n; ++i) {
    permuted.row(action.target[i]) = space.t_inv_sqrt.row(i);
  }
  const Eigen::MatrixXd conjugated = space.t_sqrt * permuted;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(conjugated);
  if (svd.info() != Eigen::Success) {
    throw NumericError("singular value decomposition did not converge");
  }
  return svd.singularValues()(0);
}

RepNormEstimate rep_norm_estimate(const RenormedSpace& space, const Element& g) {
  const TranslationAction action = translation_action(space, g);
  std::vector<int> live;
  live.reserve(action.size);
  for (int i = 0; i < action.size; ++i) {
    if (action.valid[i]) live.push_back(i);
  }
  RepNormEstimate estimate;
  estimate.g = g;
  estimate.lower_bound_only = space.mode == SpaceMode::Windowed;
  estimate.valid_count = static_cast<int>(live.size());
  if (live.empty()) {
    estimate.value = 0.0;
    return estimate;
  }
  const int m = static_cast<int>(live.size());
  // Rayleigh quotient of ||pi_g x||_T^2 / ||x||_T^2 over vectors supported on
  // the valid columns: numerator matrix is T pulled back along the action,
  // denominator is T restricted.
  Eigen::MatrixXd numer(m, m);
  Eigen::MatrixXd denom(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      numer(a, b) = space.t(action.target[live[a]], action.target[live[b]]);
      denom(a, b) = space.t(live[a], live[b]);
    }
  }
  estimate.value = std::sqrt(std::max(0.0, max_generalized_eigenvalue(numer, denom)));
  return estimate;
}

double rep_norm_sup(const RenormedSpace& space) {
  require_exact(space, "rep_norm_sup");
  double sup = 0.0;
  for (const Element& g : space.ball().elements) {
    sup = std::max(sup, rep_norm(space, g));
  }
  return sup;
}

double rep_norm_infimum(const RenormedSpace& space) {
  require_exact(space, "rep_norm_infimum");
  double worst = 1.0;
  for (const Element& g : space.ball().elements) {
    // Smallest c >= 1 with c^2 T - L_{g^-1} T L_g positive semidefinite.
    const double value = rep_norm_estimate(space, g).value;
    worst = std::max(worst, std::max(1.0, value));
  }
  return worst;
}

double adjoint_residual(const RenormedSpace& space, const Element& g,
                        int pair_count, std::uint64_t seed) {
  require_exact(space, "adjoint_residual");
  if (pair_count <= 0) throw ParameterError("pair_count must be positive");
  const TranslationAction forward = translation_action(space, g);
  const TranslationAction backward =
      translation_action(space, space.group().inverse(g));
  SeededRng rng(seed);
  const int n = space.size();
  double worst = 0.0;
  for (int k = 0; k < pair_count; ++k) {
    const Eigen::VectorXd u = rng.vector(n);
    const Eigen::VectorXd v = rng.vector(n);
    const double lhs = renormed_inner(space, apply_translation(forward, u), v);
    const Eigen::VectorXd w =
        space.t_inv * apply_translation(backward, space.t * v);
    const double rhs = renormed_inner(space, u, w);
    const double denom = renormed_norm(space, u) * renormed_norm(space, v);
    if (denom <= 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

}  // namespace renorm
