// SPDX-License-Identifier: Apache-2.0
#include "renorm/cocycle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "renorm/errors.hpp"
#include "renorm/rng.hpp"

namespace renorm {

namespace {

// b_x = delta_x - delta_e as a coordinate vector on the ball.
Eigen::VectorXd displacement_vector(int size, int index) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  b[index] += 1.0;
  b[0] -= 1.0;  // ball element 0 is the identity
  return b;
}

}  // namespace

CocycleModel cocycle_build(
    const std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>>&
        summands,
    int window_radius) {
  if (summands.empty()) {
    throw ParameterError("cocycle needs at least one summand");
  }
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto& [eps, space] = summands[k];
    if (!space) throw ParameterError("cocycle summand space is null");
    if (eps != space->epsilon) {
      std::ostringstream msg;
      msg << "summand " << k << " declares epsilon " << eps
          << " but its space was built at " << space->epsilon;
      throw CompositionError(msg.str());
    }
    if (space->mode != SpaceMode::Exact) {
      throw ModeError(
          "cocycle summands must be exact-mode spaces (finite group, fully "
          "enumerated); truncated windows cannot certify the representation "
          "norm bounds the summand record promises");
    }
    if (k > 0) {
      if (!(eps < summands[k - 1].first)) {
        throw ParameterError("summand epsilons must be strictly decreasing");
      }
      if (space->group().spec_string() !=
          summands[0].second->group().spec_string()) {
        throw CompositionError("cocycle summands must share one group model");
      }
    }
  }

  const Ball& ball = summands.front().second->ball();
  const int diameter = ball.group.diameter();
  int effective_radius = window_radius;
  if (window_radius < 0 || window_radius >= diameter) effective_radius = diameter;
  int window = 0;
  while (window < ball.size() && ball.distance_of(window) <= effective_radius) {
    ++window;
  }

  CocycleModel model;
  model.group_spec = ball.group.spec_string();
  model.window_radius = effective_radius;
  model.window_size = window;

  for (const auto& [eps, space] : summands) {
    CocycleSummand summand;
    summand.epsilon = eps;
    summand.space = space;
    summand.rep_norm_sup_value = rep_norm_sup(*space);
    summand.rep_norm_infimum_value = rep_norm_infimum(*space);
    model.summands.push_back(std::move(summand));
  }
  model.uniform_bound = 1.0;
  for (const CocycleSummand& summand : model.summands) {
    model.uniform_bound =
        std::max(model.uniform_bound, summand.rep_norm_infimum_value);
  }

  model.norm_squared.assign(window, 0.0);
  for (int i = 0; i < window; ++i) {
    double total = 0.0;
    for (const CocycleSummand& summand : model.summands) {
      // Displacement law per block: ||delta_g - delta_e||_T^2 = 2 - 2 T(e,g).
      total += 2.0 - 2.0 * summand.space->t(0, i);
    }
    model.norm_squared[i] = total;
  }
  return model;
}

double cocycle_norm_squared_direct(const CocycleModel& model, int window_index) {
  if (window_index < 0 || window_index >= model.window_size) {
    throw ParameterError("window index out of range");
  }
  double total = 0.0;
  for (const CocycleSummand& summand : model.summands) {
    const Eigen::VectorXd b =
        displacement_vector(summand.space->size(), window_index);
    total += renormed_inner(*summand.space, b, b);
  }
  return total;
}

double cocycle_identity_check(const CocycleModel& model, int pair_count,
                              std::uint64_t seed) {
  if (pair_count <= 0) throw ParameterError("pair count must be positive");
  const Ball& ball = model.ball();
  const GroupModel& group = ball.group;
  const int n = ball.size();
  SeededRng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < pair_count; ++trial) {
    const int gi = static_cast<int>(rng.integer(n));
    const int hi = static_cast<int>(rng.integer(n));
    const Element& g = ball.element(gi);
    const Element& h = ball.element(hi);
    const Element gh = group.multiply(g, h);
    const int ghi = *ball.index_of(gh);

    // rho_g acts blockwise by the same permutation of the ball basis.
    const TranslationAction action =
        translation_action(*model.summands.front().space, g);

    double residual_sq = 0.0;
    for (const CocycleSummand& summand : model.summands) {
      const int size = summand.space->size();
      const Eigen::VectorXd b_h = displacement_vector(size, hi);
      Eigen::VectorXd moved = Eigen::VectorXd::Zero(size);
      for (int i = 0; i < size; ++i) moved[action.target[i]] += b_h[i];
      Eigen::VectorXd r = displacement_vector(size, ghi) - moved -
                          displacement_vector(size, gi);
      residual_sq += renormed_inner(*summand.space, r, r);
    }
    const double denom = 1.0 + std::sqrt(std::max(0.0, model.norm_squared[ghi]));
    worst = std::max(worst, std::sqrt(std::max(0.0, residual_sq)) / denom);
  }
  return worst;
}

GrowthProfile norm_growth_profile(const CocycleModel& model) {
  const Ball& ball = model.ball();
  GrowthProfile profile;
  int max_length = 0;
  for (int i = 0; i < model.window_size; ++i) {
    max_length = std::max(max_length, ball.distance_of(i));
  }
  for (int length = 0; length <= max_length; ++length) {
    GrowthRow row;
    row.length = length;
    double sum = 0.0;
    for (int i = 0; i < model.window_size; ++i) {
      if (ball.distance_of(i) != length) continue;
      const double norm = std::sqrt(std::max(0.0, model.norm_squared[i]));
      if (row.count == 0) {
        row.min = row.max = norm;
      } else {
        row.min = std::min(row.min, norm);
        row.max = std::max(row.max, norm);
      }
      sum += norm;
      ++row.count;
    }
    if (row.count > 0) {
      row.mean = sum / static_cast<double>(row.count);
      profile.rows.push_back(row);
    }
  }
  for (std::size_t k = 1; k < profile.rows.size(); ++k) {
    if (profile.rows[k].min < profile.rows[k - 1].min) {
      profile.minimum_monotone = false;
      break;
    }
  }
  return profile;
}

}  // namespace renorm
