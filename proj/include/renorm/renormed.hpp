// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "renorm/kernels.hpp"

namespace renorm {

// How much of the group the underlying ball sees.
//
//   Exact    — the ball covers the whole (finite) group.  Left translation is
//              a genuine permutation operator and every operator-level
//              quantity (norms, adjoints, inverses) is certified.
//   Windowed — the ball is a finite truncation of an infinite group.  Left
//              translation is only a partial map, so operator norms are
//              reported as labeled lower-bound estimates and certified
//              claims are restricted to coefficient-level statements.
enum class SpaceMode { Exact, Windowed };

const char* space_mode_name(SpaceMode mode);

// The renormed Hilbert space H_T: the ambient coordinate space indexed by a
// ball, equipped with the inner product <u, v>_T = u^T T v where
//
//   T = (K + eps*I) / (1 + eps).
//
// T has unit diagonal, off-diagonal entries K(g,h)/(1+eps), and (when K is
// positive semidefinite) smallest eigenvalue at least eps/(1+eps), which
// makes ||.||_T equivalent to the Euclidean norm on the ball.
struct RenormedSpace {
  Kernel kernel;          // source kernel K (kept for provenance and checks)
  double epsilon = 0.0;   // the eps used in the construction
  SpaceMode mode = SpaceMode::Windowed;

  Eigen::MatrixXd t;            // T itself, symmetric with unit diagonal
  Eigen::VectorXd t_spectrum;   // eigenvalues of T, ascending
  double lambda = 0.0;          // smallest eigenvalue of T
  double opnorm = 0.0;          // largest eigenvalue of T

  // Spectral functions of T, available in Exact mode only (empty otherwise).
  Eigen::MatrixXd t_sqrt;
  Eigen::MatrixXd t_inv_sqrt;
  Eigen::MatrixXd t_inv;

  int size() const { return static_cast<int>(t.rows()); }
  const GroupModel& group() const { return kernel.ball->group; }
  const Ball& ball() const { return *kernel.ball; }
};

// Builds T from a kernel.  Refuses kernels that fail the positive
// semidefinite check (ParameterError) and non-positive eps (ParameterError).
// Mode is Exact iff the kernel's ball covers a finite group; in Exact mode
// the square root, inverse square root, and inverse of T are precomputed
// from one eigendecomposition.
RenormedSpace build_renormed_space(Kernel kernel, double epsilon,
                                   std::optional<double> psd_tol_factor = std::nullopt);

struct SpectralData {
  double lambda = 0.0;            // smallest eigenvalue of T
  double opnorm = 0.0;            // largest eigenvalue of T
  double guaranteed_floor = 0.0;  // eps/(1+eps)
};

// Returns (lambda, opnorm) and enforces the spectral floor
// lambda >= eps/(1+eps) - 1e-10 (NumericError on violation, which cannot
// happen for spaces built from kernels that passed the psd check except
// through numerical catastrophe).
SpectralData spectral_data(const RenormedSpace& space);

// <u, v>_T = u^T T v.  DimensionError on size mismatch is reported as
// ParameterError.
double renormed_inner(const RenormedSpace& space, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v);

// ||v||_T = sqrt(<v, v>_T).
double renormed_norm(const RenormedSpace& space, const Eigen::VectorXd& v);

// Left translation by g on the ball basis: delta_h -> delta_{g h}.
// In Exact mode every column is valid and the matrix is a permutation.
// In Windowed mode columns whose image g*h leaves the ball are masked
// invalid (target -1); the matrix has zero columns there.
struct TranslationAction {
  Element g;
  int size = 0;
  std::vector<int> target;  // target[i] = ball index of g*element(i), or -1
  std::vector<char> valid;  // valid[i] != 0 iff target[i] >= 0
  int valid_count = 0;

  Eigen::MatrixXd matrix() const;
};

// Precondition: in Windowed mode g must lie inside the ball (ParameterError
// otherwise); in Exact mode any group element is accepted.
TranslationAction translation_action(const RenormedSpace& space, const Element& g);

// Certified representation norm ||pi_g||_{B(H_T)} = largest singular value
// of T^{1/2} L_g T^{-1/2}.  Exact mode only (ModeError otherwise); use
// rep_norm_estimate for windowed lower bounds.
double rep_norm(const RenormedSpace& space, const Element& g);

// Rayleigh-quotient route to the same quantity: the largest generalized
// eigenvalue mu of  (L_g^T T L_g) x = mu T x  restricted to the valid
// columns of the translation action gives sup ||pi_g x||_T / ||x||_T over
// vectors supported there.  In Exact mode this equals rep_norm(g) (two
// independent formulas); in Windowed mode it is a labeled lower bound.
struct RepNormEstimate {
  Element g;
  double value = 0.0;
  bool lower_bound_only = false;  // true in Windowed mode
  int valid_count = 0;
};

RepNormEstimate rep_norm_estimate(const RenormedSpace& space, const Element& g);

// sup_g rep_norm(g) over the whole (finite) group.  Exact mode only.
double rep_norm_sup(const RenormedSpace& space);

// The norm-infimum formula: for each g the smallest c >= 1 such that
// c^2 T - L_{g^-1} T L_g is positive semidefinite, maximized over the
// group.  Computed via the generalized eigenproblem; agrees with
// rep_norm_sup within 1e-6 relative (cross-checked in tests).  Exact mode
// only.
double rep_norm_infimum(const RenormedSpace& space);

// Residual of the adjoint identity pi_g^* = T^{-1} pi_{g^-1} T, measured as
//   max over seeded pairs (u, v) of
//     |<L_g u, v>_T - <u, T^{-1} L_{g^-1} T v>_T| / (||u||_T ||v||_T).
// Contract: <= 1e-9 (the identity is exact in algebra; the residual is
// floating-point noise).  Exact mode only.
double adjoint_residual(const RenormedSpace& space, const Element& g,
                        int pair_count = 32, std::uint64_t seed = 0x51ab5eedULL);

}  // namespace renorm
