// SPDX-License-Identifier: Apache-2.0
#include "renorm/certify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "renorm/errors.hpp"
#include "renorm/kernels.hpp"

namespace renorm {

namespace {

constexpr double kCoeffTol = 1e-12;

int window_count(const Ball& ball, int window_radius) {
  int count = 0;
  while (count < ball.size() && ball.distance_of(count) <= window_radius) ++count;
  return count;
}

Witness make_witness(const CoefficientMatrix& matrix, int i, int j, double value) {
  const GroupModel& group = matrix.group();
  Witness w;
  w.g = group.to_string(matrix.ball->element(i));
  w.h = group.to_string(matrix.ball->element(j));
  w.value = value;
  return w;
}

// Shared measurement pass for both directions: diagonal deviation, neighbor
// deviation (eps'), and exact-zero support scan at the declared S.
struct ConditionScan {
  double diag_deviation = 0.0;
  int diag_witness = -1;
  double neighbor_deviation = 0.0;
  int neighbor_i = -1, neighbor_j = -1;
  double support_violation = 0.0;
  int support_i = -1, support_j = -1;
  int s_measured = 0;
};

ConditionScan scan_conditions(const CoefficientMatrix& matrix, int support_radius) {
  ConditionScan scan;
  const int n = matrix.size();
  int widest_nonzero = -1;
  for (int i = 0; i < n; ++i) {
    const double dev = std::abs(1.0 - matrix.values(i, i));
    if (dev > scan.diag_deviation) {
      scan.diag_deviation = dev;
      scan.diag_witness = i;
    }
    for (int j = i; j < n; ++j) {
      const double value = matrix.values(i, j);
      const int d = matrix.dist(i, j);
      if (d <= 1) {
        const double deviation = std::abs(1.0 - value);
        if (deviation > scan.neighbor_deviation ||
            (scan.neighbor_i < 0 && d == 1)) {
          scan.neighbor_deviation = std::max(scan.neighbor_deviation, deviation);
          scan.neighbor_i = i;
          scan.neighbor_j = j;
        }
      }
      if (value != 0.0 && d > widest_nonzero) widest_nonzero = d;
      if (d >= support_radius && std::abs(value) > scan.support_violation) {
        scan.support_violation = std::abs(value);
        scan.support_i = i;
        scan.support_j = j;
      }
    }
  }
  scan.s_measured = widest_nonzero + 1;  // 0 only if the matrix is all zero
  return scan;
}

Certificate assemble(const CoefficientMatrix& matrix, const char* direction,
                     double epsilon, int support_radius) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon target must be positive");
  if (support_radius < 1) {
    throw ParameterError("support radius must be at least 1");
  }
  const ConditionScan scan = scan_conditions(matrix, support_radius);

  Certificate cert;
  cert.direction = direction;
  cert.group_spec = matrix.group().spec_string();
  cert.window_radius = matrix.window_radius;
  cert.window_size = matrix.size();
  cert.epsilon_target = epsilon;
  cert.epsilon_measured = scan.neighbor_deviation;
  cert.s_declared = support_radius;
  cert.s_measured = scan.s_measured;

  cert.unit_norm_pass = scan.diag_deviation <= kCoeffTol;
  if (!cert.unit_norm_pass) {
    cert.witnesses.push_back(make_witness(matrix, scan.diag_witness,
                                          scan.diag_witness,
                                          matrix.values(scan.diag_witness,
                                                        scan.diag_witness)));
  }
  cert.neighbor_pass = cert.epsilon_measured <= epsilon;
  if (scan.neighbor_i >= 0) {
    cert.witnesses.push_back(make_witness(matrix, scan.neighbor_i,
                                          scan.neighbor_j,
                                          cert.epsilon_measured));
  }
  cert.support_pass = scan.support_violation == 0.0;
  if (!cert.support_pass) {
    cert.witnesses.push_back(make_witness(matrix, scan.support_i, scan.support_j,
                                          matrix.values(scan.support_i,
                                                        scan.support_j)));
  }
  cert.pass = cert.unit_norm_pass && cert.neighbor_pass && cert.support_pass;
  return cert;
}

}  // namespace

CoefficientMatrix coefficients(const RenormedSpace& space, int window_radius) {
  const Ball& ball = space.ball();
  CoefficientMatrix matrix;
  matrix.ball = space.kernel.ball;
  matrix.external = false;
  matrix.epsilon = space.epsilon;
  matrix.source_support = space.kernel.support_radius;
  matrix.source_psd_pass = true;  // build_renormed_space refused otherwise

  int effective_radius = window_radius;
  if (space.mode == SpaceMode::Exact) {
    const int diameter = ball.group.diameter();
    if (window_radius < 0 || window_radius >= diameter) effective_radius = diameter;
  } else {
    if (window_radius < 0) {
      throw ParameterError("window radius must be non-negative");
    }
    if (space.kernel.support_radius == kUnboundedSupport) {
      throw WindowError(
          "kernel has no finite support radius; windowed coefficient "
          "certification requires finitely supported kernels");
    }
    const int needed = window_radius + space.kernel.support_radius;
    if (needed > ball.radius) {
      std::ostringstream msg;
      msg << "window radius " << window_radius << " plus kernel support "
          << space.kernel.support_radius << " needs ball radius >= " << needed
          << " but the ball has radius " << ball.radius;
      throw WindowError(msg.str());
    }
  }
  matrix.window_radius = effective_radius;

  const int w = window_count(ball, effective_radius);
  matrix.values.resize(w, w);
  matrix.dist.resize(w, w);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < w; ++j) {
      matrix.values(i, j) = i == j ? 1.0 : space.t(i, j);
      matrix.dist(i, j) =
          ball.group.distance(ball.element(i), ball.element(j));
    }
  }

  double source_dev = 0.0;
  for (int i = 0; i < w; ++i) {
    for (int j = i; j < w; ++j) {
      if (matrix.dist(i, j) <= 1) {
        source_dev = std::max(source_dev,
                              std::abs(1.0 - space.kernel.values(i, j)));
      }
    }
  }
  matrix.source_neighbor_deviation = source_dev;
  return matrix;
}

CoefficientMatrix external_coefficients(std::shared_ptr<const Ball> ball,
                                        int window_radius,
                                        Eigen::MatrixXd values) {
  if (!ball) throw ParameterError("external coefficients need a ball");
  if (window_radius < 0 || window_radius > ball->radius) {
    throw ParameterError("window radius must lie within the ball radius");
  }
  if (values.rows() != values.cols()) {
    throw CompositionError("coefficient matrix must be square");
  }
  const int w = window_count(*ball, window_radius);
  if (values.rows() != w) {
    std::ostringstream msg;
    msg << "coefficient matrix has " << values.rows() << " rows but the window"
        << " B(e, " << window_radius << ") holds " << w << " elements";
    throw CompositionError(msg.str());
  }
  CoefficientMatrix matrix;
  matrix.ball = std::move(ball);
  matrix.window_radius = window_radius;
  matrix.values = std::move(values);
  matrix.external = true;
  matrix.dist.resize(w, w);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < w; ++j) {
      matrix.dist(i, j) = matrix.ball->group.distance(matrix.ball->element(i),
                                                      matrix.ball->element(j));
    }
  }
  return matrix;
}

Certificate verify_forward(const CoefficientMatrix& matrix, double epsilon,
                           int support_radius) {
  Certificate cert = assemble(matrix, "forward", epsilon, support_radius);
  // Bookkeeping: if the source kernel itself met the three conditions at
  // this eps and S, the renorming inflates the neighbor deviation to at most
  // eps + eps/(1+eps).
  if (!matrix.external && matrix.source_psd_pass &&
      matrix.source_neighbor_deviation <= epsilon &&
      matrix.source_support != kUnboundedSupport &&
      matrix.source_support <= support_radius) {
    cert.bookkeeping_applicable = true;
    cert.bookkeeping_bound = epsilon + epsilon / (1.0 + epsilon);
    cert.bookkeeping_holds =
        cert.epsilon_measured <= cert.bookkeeping_bound + kCoeffTol;
  }
  return cert;
}

Certificate verify_converse(const CoefficientMatrix& matrix, double epsilon,
                            int support_radius) {
  Certificate cert = assemble(matrix, "converse", epsilon, support_radius);
  const PsdReport psd = psd_check_matrix(matrix.values);
  cert.psd_pass = psd.pass;
  cert.psd_min_eigenvalue = psd.min_eigenvalue;
  if (!psd.pass) {
    Witness w;
    w.g = "min-eigenvalue";
    w.h = "";
    w.value = psd.min_eigenvalue;
    cert.witnesses.push_back(w);
  }
  cert.pass = cert.pass && psd.pass;
  return cert;
}

AlmostInvariance almost_invariance_check(const CoefficientMatrix& matrix,
                                         double epsilon) {
  AlmostInvariance result;
  result.epsilon_target = epsilon;
  const int n = matrix.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (matrix.dist(i, j) > 1) continue;
      const double c = matrix.values(i, j);
      if (c > 1.0 + kCoeffTol) {
        std::ostringstream msg;
        msg << "coefficient " << c << " exceeds 1; displacement undefined";
        throw NumericError(msg.str());
      }
      const double squared = std::max(0.0, 2.0 - 2.0 * c);
      const double displacement = std::sqrt(squared);
      result.identity_deviation =
          std::max(result.identity_deviation,
                   std::abs(displacement * displacement - (2.0 - 2.0 * c)));
      if (displacement > result.max_displacement) {
        result.max_displacement = displacement;
        result.witness = make_witness(matrix, i, j, displacement);
      }
    }
  }
  result.holds = result.max_displacement <= epsilon;
  return result;
}

}  // namespace renorm
