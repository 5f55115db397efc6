// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renorm/renormed.hpp"

namespace renorm {

// The smooth modulator m(alpha) = 1 - e^{-alpha}: zero at zero, strictly
// increasing, limit 1 at infinity.  ParameterError for negative alpha.
double modulator(double alpha);

// One sample of the interpolating family: the similarity kernel
// K_alpha(g,h) = exp(-alpha ||f(g)-f(h)||^2), renormed with eps = m(alpha)
// (equivalently K_alpha + m(alpha) I followed by normalizing the diagonal by
// 1 + m(alpha)), and its coefficients sampled on a window.
//
// As alpha -> 0 the window coefficients approach the constant-1 pattern of
// the trivial representation; as alpha -> infinity they approach the
// Kronecker-delta pattern of left translation on ell_2.
struct PathPoint {
  double alpha = 0.0;
  double modulator_value = 0.0;  // m(alpha)
  double normalizer = 0.0;       // 1 + m(alpha), the diagonal before rescaling

  Kernel kernel;        // K_alpha on the ball
  RenormedSpace space;  // the renormed space of K_alpha at eps = m(alpha)

  Eigen::MatrixXd coefficients;  // window sample, unit diagonal
  Eigen::MatrixXi dist;

  double max_neighbor_deviation = 0.0;  // max |1 - c| over pairs with d = 1
  double max_offdiagonal = 0.0;         // max |c| over pairs with d >= 1
  double lambda = 0.0;                  // spectral gap of the renormed operator
  double opnorm = 0.0;
};

// Builds one PathPoint per alpha.  Alphas must be positive (ParameterError,
// also for an empty list); they are processed in ascending order.  The
// window must fit in the ball (WindowError).  Coefficient sampling here is a
// coefficient-level report (the certificate machinery with its stricter
// window rule is not involved; similarity kernels have no finite support).
std::vector<PathPoint> path_sweep(std::shared_ptr<const Ball> ball,
                                  const EmbeddingSpec& embedding,
                                  std::vector<double> alphas, int window_radius);

// True when every off-diagonal window coefficient strictly decreases along
// the (ascending-alpha) sweep.
bool coefficients_strictly_decreasing(const std::vector<PathPoint>& sweep);

// Row-sum analysis of K_alpha as an operator on ell_2 of the group: the
// truncated sum over B(e, N), a closed-form series value where one exists
// (free groups), and a bound on the neglected tail where one is available.
struct SchurRow {
  double alpha = 0.0;
  double truncated_sum = 0.0;
  std::optional<double> series_value;  // free groups, alpha above threshold
  std::optional<double> tail_bound;    // see notes in schur_row_sums
  bool schur_bounded = true;
};

struct SchurReport {
  std::string group_spec;
  std::string embedding;
  int truncation_radius = 0;
  std::optional<double> divergence_threshold;
  std::vector<SchurRow> rows;
};

// Computes one SchurRow.  Radial embeddings (||f(g)-f(h)||^2 a function of
// d(g,h)) use exact combinatorial sphere sizes, so the truncation radius may
// exceed any enumerable ball.  Tail bounds: free groups get the exact
// geometric tail (when convergent); the one-dimensional lattice gets the
// Gaussian integral bound e^{-alpha N^2}/(alpha N); finite groups get zero
// once the truncation covers the diameter, else a count times the declared
// lower modulus at N+1; other cases report no bound.
SchurRow schur_row_sums(const GroupModel& group, const EmbeddingSpec& embedding,
                        double alpha, int truncation_radius);

SchurReport build_schur_report(const GroupModel& group,
                               const EmbeddingSpec& embedding,
                               const std::vector<double>& alphas,
                               int truncation_radius);

}  // namespace renorm
