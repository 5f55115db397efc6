// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "renorm/cocycle.hpp"
#include "renorm/errors.hpp"
#include "renorm/groups.hpp"
#include "renorm/kernels.hpp"
#include "renorm/renormed.hpp"

using namespace renorm;

namespace {

std::shared_ptr<const Ball> make_ball(const GroupModel& group, int radius) {
  return std::make_shared<const Ball>(ball_enumerate(group, radius));
}

std::shared_ptr<const RenormedSpace> identity_space(const GroupModel& group,
                                                    double eps) {
  auto ball = make_ball(group, group.diameter());
  const int n = ball->size();
  Kernel kernel{std::move(ball), Eigen::MatrixXd::Identity(n, n),
                kUnboundedSupport, KernelKind::GramRandom, {}};
  return std::make_shared<const RenormedSpace>(
      build_renormed_space(std::move(kernel), eps));
}

}  // namespace

TEST_CASE("the displacement at the identity is exactly zero") {
  const GroupModel ring = GroupModel::cyclic(12);
  auto ball = make_ball(ring, ring.diameter());
  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands;
  for (double eps : {0.5, 0.25}) {
    summands.emplace_back(
        eps, std::make_shared<const RenormedSpace>(build_renormed_space(
                 ball_overlap_kernel(ball, 2), eps)));
  }
  const CocycleModel model = cocycle_build(summands, -1);
  CHECK(model.norm_squared[0] == 0.0);
  CHECK(cocycle_norm_squared_direct(model, 0) == 0.0);
}

TEST_CASE("identity kernel: every displacement has squared norm 2 per level") {
  const GroupModel ring = GroupModel::cyclic(6);
  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands{
      {0.5, identity_space(ring, 0.5)}, {0.25, identity_space(ring, 0.25)}};
  const CocycleModel model = cocycle_build(summands, -1);
  for (int i = 1; i < model.window_size; ++i) {
    CHECK(model.norm_squared[i] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(cocycle_norm_squared_direct(model, i) ==
          doctest::Approx(4.0).epsilon(1e-14));
  }
  // Translations are unitary here, so the uniform bound is exactly 1.
  CHECK(model.uniform_bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("summed and direct norm computations agree to 1e-10") {
  const GroupModel ring = GroupModel::cyclic(24);
  auto ball = make_ball(ring, ring.diameter());
  const Kernel kernel = gram_random_kernel(ball, 2, 1);
  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands;
  for (int k = 1; k <= 5; ++k) {
    const double eps = std::ldexp(1.0, -k);
    summands.emplace_back(eps, std::make_shared<const RenormedSpace>(
                                   build_renormed_space(kernel, eps)));
  }
  const CocycleModel model = cocycle_build(summands, -1);
  REQUIRE(model.window_size == 24);
  for (int i = 0; i < model.window_size; ++i) {
    const double direct = cocycle_norm_squared_direct(model, i);
    CHECK(std::abs(model.norm_squared[i] - direct) <=
          1e-10 * std::max(1.0, direct));
  }
  // The uniform bound is the worst certified translation norm across levels.
  double worst = 1.0;
  for (const CocycleSummand& summand : model.summands) {
    CHECK(summand.rep_norm_infimum_value <= model.uniform_bound + 1e-15);
    worst = std::max(worst, summand.rep_norm_infimum_value);
  }
  CHECK(model.uniform_bound == worst);
}

TEST_CASE("the cocycle identity residual vanishes identically") {
  const GroupModel ring = GroupModel::cyclic(24);
  auto ball = make_ball(ring, ring.diameter());
  const Kernel kernel = gram_random_kernel(ball, 2, 1);
  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands;
  for (int k = 1; k <= 3; ++k) {
    const double eps = std::ldexp(1.0, -k);
    summands.emplace_back(eps, std::make_shared<const RenormedSpace>(
                                   build_renormed_space(kernel, eps)));
  }
  const CocycleModel model = cocycle_build(summands, -1);
  // b(gh) - pi_g b(h) - b(g) cancels coordinate-by-coordinate over integers,
  // so even in floating point the residual is exactly zero.
  CHECK(cocycle_identity_check(model, 100) == 0.0);
  CHECK(cocycle_identity_check(model, 100, 12345) == 0.0);
}

TEST_CASE("construction validates its ladder") {
  const GroupModel ring = GroupModel::cyclic(8);
  auto ball = make_ball(ring, ring.diameter());
  const Kernel kernel = ball_overlap_kernel(ball, 1);
  auto space_at = [&](double eps) {
    return std::make_shared<const RenormedSpace>(build_renormed_space(kernel, eps));
  };

  using Ladder = std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>>;
  CHECK_THROWS_AS(cocycle_build(Ladder{}, -1), ParameterError);
  // Epsilons must strictly decrease.
  CHECK_THROWS_AS(cocycle_build(Ladder{{0.25, space_at(0.25)},
                                       {0.25, space_at(0.25)}}, -1),
                  ParameterError);
  CHECK_THROWS_AS(cocycle_build(Ladder{{0.25, space_at(0.25)},
                                       {0.5, space_at(0.5)}}, -1),
                  ParameterError);
  // The recorded epsilon must match the space it points at.
  CHECK_THROWS_AS(cocycle_build(Ladder{{0.5, space_at(0.25)}}, -1),
                  CompositionError);
  // Truncated windows cannot certify the promised representation bounds.
  const GroupModel z = GroupModel::integer_lattice(1);
  auto window_ball = make_ball(z, 3);
  auto windowed = std::make_shared<const RenormedSpace>(
      build_renormed_space(ball_overlap_kernel(window_ball, 1), 0.5));
  CHECK_THROWS_AS(cocycle_build(Ladder{{0.5, windowed}}, -1), ModeError);
}

TEST_CASE("growth profile: per-length statistics over the window") {
  const GroupModel ring = GroupModel::cyclic(12);
  auto ball = make_ball(ring, ring.diameter());
  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands{
      {0.5, std::make_shared<const RenormedSpace>(
                build_renormed_space(ball_overlap_kernel(ball, 2), 0.5))}};
  const CocycleModel model = cocycle_build(summands, -1);
  const GrowthProfile profile = norm_growth_profile(model);

  REQUIRE(profile.rows.size() == static_cast<std::size_t>(ring.diameter()) + 1);
  CHECK(profile.rows[0].length == 0);
  CHECK(profile.rows[0].count == 1);
  CHECK(profile.rows[0].max == 0.0);
  const auto spheres = ring.sphere_sizes(ring.diameter());
  for (std::size_t r = 0; r < profile.rows.size(); ++r) {
    CHECK(profile.rows[r].count == static_cast<std::int64_t>(spheres[r]));
    CHECK(profile.rows[r].min <= profile.rows[r].mean + 1e-15);
    CHECK(profile.rows[r].mean <= profile.rows[r].max + 1e-15);
  }
  // This kernel decays with distance, so displacement norms grow with it.
  CHECK(profile.minimum_monotone);

  // A sub-window keeps only the prefix.
  const CocycleModel small = cocycle_build(summands, 2);
  CHECK(small.window_size == 5);
  CHECK(norm_growth_profile(small).rows.size() == 3);
}
