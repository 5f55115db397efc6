// SPDX-License-Identifier: Apache-2.0
#include "renorm/path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "renorm/errors.hpp"

namespace renorm {

double modulator(double alpha) {
  if (alpha < 0.0 || !std::isfinite(alpha)) {
    throw ParameterError("modulator argument must be a non-negative real");
  }
  return -std::expm1(-alpha);  // 1 - e^{-alpha} without cancellation
}

std::vector<PathPoint> path_sweep(std::shared_ptr<const Ball> ball,
                                  const EmbeddingSpec& embedding,
                                  std::vector<double> alphas,
                                  int window_radius) {
  if (!ball) throw ParameterError("path sweep needs a ball");
  if (alphas.empty()) throw ParameterError("alpha list must not be empty");
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ParameterError("every alpha must be a positive finite real");
    }
  }
  std::sort(alphas.begin(), alphas.end());
  if (window_radius < 0 || window_radius > ball->radius) {
    std::ostringstream msg;
    msg << "window radius " << window_radius << " must lie within the ball "
        << "radius " << ball->radius;
    throw WindowError(msg.str());
  }

  int window = 0;
  while (window < ball->size() && ball->distance_of(window) <= window_radius) {
    ++window;
  }
  const GroupModel& group = ball->group;
  Eigen::MatrixXi dist(window, window);
  for (int i = 0; i < window; ++i) {
    for (int j = 0; j < window; ++j) {
      dist(i, j) = group.distance(ball->element(i), ball->element(j));
    }
  }

  std::vector<PathPoint> sweep;
  sweep.reserve(alphas.size());
  for (double alpha : alphas) {
    PathPoint point;
    point.alpha = alpha;
    point.modulator_value = modulator(alpha);
    point.normalizer = 1.0 + point.modulator_value;
    point.kernel = gaussian_kernel(ball, embedding, alpha);
    point.space = build_renormed_space(point.kernel, point.modulator_value);
    point.lambda = point.space.lambda;
    point.opnorm = point.space.opnorm;

    point.dist = dist;
    point.coefficients.resize(window, window);
    for (int i = 0; i < window; ++i) {
      for (int j = 0; j < window; ++j) {
        point.coefficients(i, j) = i == j ? 1.0 : point.space.t(i, j);
      }
    }
    for (int i = 0; i < window; ++i) {
      for (int j = i + 1; j < window; ++j) {
        const double c = point.coefficients(i, j);
        if (dist(i, j) == 1) {
          point.max_neighbor_deviation =
              std::max(point.max_neighbor_deviation, std::abs(1.0 - c));
        }
        if (dist(i, j) >= 1) {
          point.max_offdiagonal = std::max(point.max_offdiagonal, std::abs(c));
        }
      }
    }
    sweep.push_back(std::move(point));
  }
  return sweep;
}

bool coefficients_strictly_decreasing(const std::vector<PathPoint>& sweep) {
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    const PathPoint& prev = sweep[k - 1];
    const PathPoint& next = sweep[k];
    const int n = static_cast<int>(prev.coefficients.rows());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (prev.dist(i, j) < 1) continue;
        if (!(next.coefficients(i, j) < prev.coefficients(i, j))) return false;
      }
    }
  }
  return true;
}

SchurRow schur_row_sums(const GroupModel& group, const EmbeddingSpec& embedding,
                        double alpha, int truncation_radius) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be a positive finite real");
  }
  if (truncation_radius < 1) {
    throw ParameterError("truncation radius must be at least 1");
  }
  if (embedding.group.spec_string() != group.spec_string()) {
    throw CompositionError("embedding was declared for a different group");
  }

  SchurRow row;
  row.alpha = alpha;
  row.schur_bounded = !embedding.schur_divergence_threshold ||
                      alpha > *embedding.schur_divergence_threshold;

  const int radius = group.finite()
                         ? std::min(truncation_radius, group.diameter())
                         : truncation_radius;
  if (embedding.radial_profile) {
    // ||f(e)-f(h)||^2 depends only on |h|: sum sphere counts against the
    // radial profile, no enumeration needed.
    const std::vector<std::uint64_t> spheres = group.sphere_sizes(radius);
    double sum = 0.0;
    for (int r = 0; r <= radius; ++r) {
      sum += static_cast<double>(spheres[r]) *
             std::exp(-alpha * embedding.radial_profile(r));
    }
    row.truncated_sum = sum;
  } else {
    const Ball ball = ball_enumerate(group, radius);
    const Element e = group.identity();
    double sum = 0.0;
    for (const Element& h : ball.elements) {
      sum += std::exp(-alpha * embedding.squared_distance(e, h));
    }
    row.truncated_sum = sum;
  }

  if (group.family() == GroupFamily::FreeGroup) {
    const double k2 = 2.0 * group.degree();
    const double ratio = (k2 - 1.0) * std::exp(-alpha);
    if (ratio < 1.0) {
      row.series_value = 1.0 + k2 * std::exp(-alpha) / (1.0 - ratio);
      // Exact geometric tail beyond the truncation radius.
      row.tail_bound = k2 * std::pow(k2 - 1.0, truncation_radius) *
                       std::exp(-alpha * (truncation_radius + 1)) /
                       (1.0 - ratio);
    }
  } else if (group.family() == GroupFamily::IntegerLattice &&
             group.degree() == 1) {
    // 2 * integral_N^inf e^{-alpha x^2} dx <= e^{-alpha N^2}/(alpha N).
    const double n = truncation_radius;
    row.tail_bound = std::exp(-alpha * n * n) / (alpha * n);
  } else if (group.finite()) {
    if (truncation_radius >= group.diameter()) {
      row.tail_bound = 0.0;
    } else {
      const double remaining =
          static_cast<double>(group.order()) -
          static_cast<double>(group.predicted_ball_size(truncation_radius));
      const double modulus = embedding.rho_minus(truncation_radius + 1);
      row.tail_bound = remaining * std::exp(-alpha * modulus * modulus);
    }
  }
  return row;
}

SchurReport build_schur_report(const GroupModel& group,
                               const EmbeddingSpec& embedding,
                               const std::vector<double>& alphas,
                               int truncation_radius) {
  if (alphas.empty()) throw ParameterError("alpha list must not be empty");
  SchurReport report;
  report.group_spec = group.spec_string();
  report.embedding = embedding.name;
  report.truncation_radius = truncation_radius;
  report.divergence_threshold = embedding.schur_divergence_threshold;
  std::vector<double> sorted = alphas;
  std::sort(sorted.begin(), sorted.end());
  report.rows.reserve(sorted.size());
  for (double alpha : sorted) {
    report.rows.push_back(schur_row_sums(group, embedding, alpha, truncation_radius));
  }
  return report;
}

}  // namespace renorm
