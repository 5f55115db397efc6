// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renorm/renormed.hpp"

namespace renorm {

// Matrix coefficients c(g,h) = <pi_g delta_e, pi_h delta_e>_T sampled on a
// window B(e, W) of the ball.  Because the ball is stored in breadth-first
// order, the window is always a prefix of the ball's element list.
//
// For a space built from kernel K with parameter eps the coefficients obey
//   c(g,g) = 1 exactly   and   c(g,h) = K(g,h)/(1+eps) for g != h,
// so the matrix equals T restricted to the window.
struct CoefficientMatrix {
  std::shared_ptr<const Ball> ball;
  int window_radius = 0;
  Eigen::MatrixXd values;  // window_size x window_size
  Eigen::MatrixXi dist;    // pairwise word distances on the window

  // Provenance, used for the bookkeeping check in verify_forward.  External
  // matrices (loaded rather than derived from a renormed space) carry
  // external = true and no source data.
  bool external = false;
  double epsilon = 0.0;                    // eps used to build T
  int source_support = kUnboundedSupport;  // declared S of the source kernel
  double source_neighbor_deviation = 0.0;  // max |1-K| at d <= 1 on the window
  bool source_psd_pass = false;

  int size() const { return static_cast<int>(values.rows()); }
  const GroupModel& group() const { return ball->group; }
};

// Samples coefficients from a renormed space.
//  - Exact mode: the window is the whole group (window_radius is recorded as
//    the group diameter; any requested radius at least the diameter is
//    accepted, smaller windows are honored as genuine sub-windows).
//  - Windowed mode: requires window_radius + S <= ball radius, so that every
//    kernel column touching the window is complete; kernels without a finite
//    support radius are refused (WindowError).
CoefficientMatrix coefficients(const RenormedSpace& space, int window_radius);

// Wraps an externally supplied coefficient matrix over the window B(e, W) of
// the given ball.  The matrix dimension must equal the number of ball
// elements within distance W (CompositionError otherwise).
CoefficientMatrix external_coefficients(std::shared_ptr<const Ball> ball,
                                        int window_radius,
                                        Eigen::MatrixXd values);

struct Witness {
  std::string g;
  std::string h;
  double value = 0.0;
};

// Verdict record for the coefficient conditions
//   (1) unit norm      c(g,g) = 1,
//   (2) neighbor       |1 - c(g,h)| <= eps when d(g,h) <= 1,
//   (3) support        c(g,h) = 0 exactly when d(g,h) >= S,
// checked over a window.  Failures are verdicts, not exceptions.
struct Certificate {
  std::string direction;  // "forward" | "converse"
  std::string group_spec;
  int window_radius = 0;
  int window_size = 0;

  double epsilon_target = 0.0;
  double epsilon_measured = 0.0;  // max |1 - c| over window pairs with d <= 1
  int s_declared = 0;
  int s_measured = 0;  // 1 + largest distance with a nonzero coefficient

  bool unit_norm_pass = false;
  bool neighbor_pass = false;
  bool support_pass = false;

  // Converse direction additionally certifies positive semidefiniteness.
  std::optional<bool> psd_pass;
  std::optional<double> psd_min_eigenvalue;

  // Forward direction: when the source kernel itself satisfied the three
  // conditions at the same eps, the measured eps' must obey
  // eps' <= eps + eps/(1+eps) (which is <= 2 eps).
  bool bookkeeping_applicable = false;
  double bookkeeping_bound = 0.0;
  bool bookkeeping_holds = false;

  std::vector<Witness> witnesses;
  bool pass = false;
};

// Forward direction: measures eps' and the support/unit-norm conditions of
// the sampled coefficients against the targets (eps, S).
Certificate verify_forward(const CoefficientMatrix& matrix, double epsilon,
                           int support_radius);

// Converse direction: treats the coefficient matrix as a kernel and checks
// the kernel conditions at (eps, S) plus positive semidefiniteness.  A
// matrix produced by coefficients() from a space whose forward certificate
// passed at (eps, S) passes the converse at (2 eps, S).
Certificate verify_converse(const CoefficientMatrix& matrix, double epsilon,
                            int support_radius);

// The almost-invariance variant of the neighbor condition:
// ||pi_g v - pi_h v||_T = sqrt(2 - 2 c(g,h)) per neighbor pair.
struct AlmostInvariance {
  double max_displacement = 0.0;
  double epsilon_target = 0.0;
  bool holds = false;  // max displacement <= eps
  Witness witness;     // the displacement-maximizing pair
  // Largest deviation of displacement^2 from 2(1 - c) over neighbor pairs
  // (an arithmetic identity; deviation is float noise).
  double identity_deviation = 0.0;
};

// NumericError if any coefficient exceeds 1 + 1e-12 (displacements would be
// imaginary); values within that tolerance are clamped to 1.
AlmostInvariance almost_invariance_check(const CoefficientMatrix& matrix,
                                         double epsilon);

}  // namespace renorm
