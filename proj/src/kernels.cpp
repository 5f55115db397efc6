// SPDX-License-Identifier: Apache-2.0
#include "renorm/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "renorm/rng.hpp"

namespace renorm {
namespace {

std::shared_ptr<const Ball> full_group_ball(const GroupModel& group,
                                            std::size_t cap) {
  return std::make_shared<const Ball>(
      ball_enumerate(group, group.diameter(), cap));
}

// Geodesic ray from x toward the end a^inf: strip terminal letters until the
// word is a power of the first generator, then keep appending it. The first
// n vertices (x itself included) form the ray set.
std::vector<std::vector<std::int32_t>> ray_keys(const GroupModel& group,
                                                const Element& start, int n) {
  std::vector<std::vector<std::int32_t>> keys;
  keys.reserve(n);
  Element v = start;
  auto is_power_of_a = [](const Element& w) {
    return std::all_of(w.data.begin(), w.data.end(),
                       [](std::int32_t l) { return l == 1; }) ||
           std::all_of(w.data.begin(), w.data.end(),
                       [](std::int32_t l) { return l == -1; });
  };
  const Element a{{1}};
  for (int i = 0; i < n; ++i) {
    keys.push_back(group.canonical_key(v));
    if (is_power_of_a(v)) {
      v = group.multiply(v, a);
    } else {
      v.data.pop_back();
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

int sorted_intersection_count(const std::vector<std::vector<std::int32_t>>& a,
                              const std::vector<std::vector<std::int32_t>>& b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else
      ++count, ++i, ++j;
  }
  return count;
}

double chord(int delta, int modulus, double scale) {
  return 2.0 * scale * std::sin(std::numbers::pi * delta / modulus);
}

// Position-of-value table: pos[v] = i where p(i) = v.
std::vector<std::int32_t> value_positions(const Element& p) {
  std::vector<std::int32_t> pos(p.data.size());
  for (std::size_t i = 0; i < p.data.size(); ++i) pos[p.data[i]] = static_cast<std::int32_t>(i);
  return pos;
}

Eigen::VectorXd inversion_indicator(const Element& p) {
  // Indicator over value pairs (a, b), a < b, of "p places b before a".
  // Composition here is multiply(a,b) = a o b, so two of these indicators
  // differ exactly on the inversions of g^{-1} h -- the word distance.
  const std::vector<std::int32_t> pos = value_positions(p);
  const int n = static_cast<int>(pos.size());
  Eigen::VectorXd f(n * (n - 1) / 2);
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      f[k++] = pos[a] > pos[b] ? 1.0 : 0.0;
  return f;
}

}  // namespace

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::BallOverlap:
      return "ball-overlap";
    case KernelKind::TreeRay:
      return "tree-ray";
    case KernelKind::Gaussian:
      return "gaussian";
    case KernelKind::GramRandom:
      return "gram-random";
  }
  return {};
}

Kernel ball_overlap_kernel(std::shared_ptr<const Ball> ball, int overlap_radius,
                           std::size_t cap) {
  if (overlap_radius < 1)
    throw ParameterError("overlap radius must be at least 1");
  const GroupModel& group = ball->group;
  const int needed = ball->radius + overlap_radius;
  const int big_radius =
      group.finite() ? std::min(needed, group.diameter()) : needed;

  std::shared_ptr<const Ball> big;
  try {
    big = std::make_shared<const Ball>(ball_enumerate(group, big_radius, cap));
  } catch (const BallSizeError& e) {
    throw WindowError(std::string("ball-overlap kernel needs the enclosing "
                                  "ball of radius ") +
                      std::to_string(big_radius) + ": " + e.what());
  }

  const int n = ball->size();
  const int m = big->size();

  // 0/1 membership of big-ball elements in B(g, R). Products of indicator
  // rows are integer overlap counts, exact in double arithmetic.
  Eigen::MatrixXd members = Eigen::MatrixXd::Zero(n, m);
  for (int i = 0; i < n; ++i) {
    const Element& g = ball->element(i);
    for (int x = 0; x < m; ++x)
      if (group.distance(g, big->element(x)) <= overlap_radius)
        members(i, x) = 1.0;
  }

  const Eigen::MatrixXd counts = members * members.transpose();
  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    values(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double norm = std::sqrt(counts(i, i) * counts(j, j));
      const double v = counts(i, j) / norm;
      values(i, j) = v;
      values(j, i) = v;
    }
  }

  Kernel kernel{std::move(ball), std::move(values), 2 * overlap_radius + 1,
                KernelKind::BallOverlap, {}};
  kernel.params.overlap_radius = overlap_radius;
  return kernel;
}

Kernel tree_ray_kernel(std::shared_ptr<const Ball> ball, int ray_length) {
  const GroupModel& group = ball->group;
  if (group.family() != GroupFamily::FreeGroup)
    throw ParameterError("tree-ray kernels are defined on free groups only");
  if (ray_length < 1) throw ParameterError("ray length must be at least 1");

  const int n = ball->size();
  std::vector<std::vector<std::vector<std::int32_t>>> rays(n);
  for (int i = 0; i < n; ++i)
    rays[i] = ray_keys(group, ball->element(i), ray_length);

  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    values(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double v =
          static_cast<double>(sorted_intersection_count(rays[i], rays[j])) /
          ray_length;
      values(i, j) = v;
      values(j, i) = v;
    }
  }

  Kernel kernel{std::move(ball), std::move(values), 2 * ray_length + 1,
                KernelKind::TreeRay, {}};
  kernel.params.ray_length = ray_length;
  return kernel;
}

EmbeddingSpec embedding_for(const GroupModel& group) {
  EmbeddingSpec spec{group};
  switch (group.family()) {
    case GroupFamily::IntegerLattice: {
      const int dim = group.degree();
      spec.name = "identity";
      spec.embed = [](const Element& g) {
        Eigen::VectorXd f(g.data.size());
        for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = g.data[i];
        return f;
      };
      spec.squared_distance = [](const Element& g, const Element& h) {
        double q = 0;
        for (std::size_t i = 0; i < g.data.size(); ++i) {
          const double d = static_cast<double>(g.data[i]) - h.data[i];
          q += d * d;
        }
        return q;
      };
      if (dim == 1)
        spec.radial_profile = [](int t) {
          return static_cast<double>(t) * t;
        };
      const double root = std::sqrt(static_cast<double>(dim));
      spec.rho_minus = [root](double t) { return t / root; };
      spec.rho_plus = [](double t) { return t; };
      spec.rho_minus_desc = "t/sqrt(" + std::to_string(dim) + ")";
      spec.rho_plus_desc = "t";
      spec.compression = {1.0 / root, 0.0, 1.0, 0.5, true};
      break;
    }
    case GroupFamily::FreeGroup: {
      // Indicator of the geodesic edge set from e to g. The symmetric
      // difference of two geodesic edge sets in a tree is the geodesic
      // between the endpoints, so ||f(g)-f(h)||^2 = d(g,h) exactly.
      spec.name = "geodesic-edges";
      spec.squared_distance = [group](const Element& g, const Element& h) {
        return static_cast<double>(group.distance(g, h));
      };
      spec.radial_profile = [](int t) { return static_cast<double>(t); };
      spec.rho_minus = [](double t) { return std::sqrt(t); };
      spec.rho_plus = [](double t) { return std::sqrt(t); };
      spec.rho_minus_desc = "sqrt(t)";
      spec.rho_plus_desc = "sqrt(t)";
      // Exponent exactly 1/2: no positive theta works.
      spec.compression = {1.0, 0.0, 1.0, 0.0, false};
      spec.schur_divergence_threshold =
          std::log(2.0 * group.degree() - 1.0);
      break;
    }
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      const int dim = group.degree();
      const int modulus = group.modulus();
      const double scale =
          1.0 / (2.0 * std::sin(std::numbers::pi / modulus));
      spec.name = "torus-chord";
      spec.embed = [modulus, scale](const Element& g) {
        Eigen::VectorXd f(2 * g.data.size());
        for (std::size_t i = 0; i < g.data.size(); ++i) {
          const double theta = 2.0 * std::numbers::pi * g.data[i] / modulus;
          f[2 * i] = scale * (std::cos(theta) - 1.0);
          f[2 * i + 1] = scale * std::sin(theta);
        }
        return f;
      };
      spec.squared_distance = [modulus, scale](const Element& g,
                                               const Element& h) {
        double q = 0;
        for (std::size_t i = 0; i < g.data.size(); ++i) {
          int delta = std::abs(g.data[i] - h.data[i]);
          delta = std::min(delta, modulus - delta);
          const double c = chord(delta, modulus, scale);
          q += c * c;
        }
        return q;
      };
      if (dim == 1)
        spec.radial_profile = [modulus, scale](int t) {
          const double c = chord(t, modulus, scale);
          return c * c;
        };
      const double root = std::sqrt(static_cast<double>(dim));
      const double slope = 4.0 * scale / modulus;
      spec.rho_minus = [slope, root](double t) { return slope * t / root; };
      spec.rho_plus = [](double t) { return t; };
      spec.rho_minus_desc = "(4c/m) t/sqrt(n)";
      spec.rho_plus_desc = "t";
      spec.compression = {slope / root, 0.0, 1.0, 0.5, true};
      break;
    }
    case GroupFamily::Symmetric: {
      // Indicator of the value-pair inversion set (pairs the permutation
      // lists out of order).  The symmetric difference of two such sets has
      // size inv(g^{-1} h), the word distance over adjacent swaps.
      spec.name = "inversion-set";
      spec.embed = inversion_indicator;
      spec.squared_distance = [](const Element& g, const Element& h) {
        const std::vector<std::int32_t> pg = value_positions(g);
        const std::vector<std::int32_t> ph = value_positions(h);
        const int n = static_cast<int>(pg.size());
        int diff = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if ((pg[a] > pg[b]) != (ph[a] > ph[b])) ++diff;
        return static_cast<double>(diff);
      };
      spec.radial_profile = [](int t) { return static_cast<double>(t); };
      spec.rho_minus = [](double t) { return std::sqrt(t); };
      spec.rho_plus = [](double t) { return std::sqrt(t); };
      spec.rho_minus_desc = "sqrt(t)";
      spec.rho_plus_desc = "sqrt(t)";
      spec.compression = {1.0, 0.0, 1.0, 0.0, false};
      break;
    }
  }
  return spec;
}

Kernel gaussian_kernel(std::shared_ptr<const Ball> ball,
                       const EmbeddingSpec& embedding, double alpha) {
  if (!(alpha > 0)) throw ParameterError("alpha must be positive");
  if (embedding.group.spec_string() != ball->group.spec_string())
    throw CompositionError("embedding and ball use different groups");

  const int n = ball->size();
  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    values(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double v = std::exp(
          -alpha * embedding.squared_distance(ball->element(i),
                                              ball->element(j)));
      values(i, j) = v;
      values(j, i) = v;
    }
  }

  Kernel kernel{std::move(ball), std::move(values), kUnboundedSupport,
                KernelKind::Gaussian, {}};
  kernel.params.alpha = alpha;
  kernel.params.embedding = embedding.name;
  return kernel;
}

Kernel gram_random_kernel(std::shared_ptr<const Ball> ball, int pattern_radius,
                          std::uint64_t seed) {
  const GroupModel& group = ball->group;
  if (!group.finite())
    throw ParameterError("gram-random kernels need a finite group model");
  if (pattern_radius < 1)
    throw ParameterError("pattern radius must be at least 1");

  const auto full = ball->covers_group()
                        ? ball
                        : full_group_ball(group, kDefaultBallCap);
  const int m = full->size();

  // Unit vectors with seeded positive weights on B(g, r). Weights are drawn
  // in canonical element order so the kernel depends only on the seed.
  Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(m, m);
  SeededRng rng(seed);
  for (int g = 0; g < m; ++g) {
    double norm_sq = 0;
    for (int x = 0; x < m; ++x) {
      if (group.distance(full->element(g), full->element(x)) > pattern_radius)
        continue;
      const double w = rng.uniform(0.5, 1.5);
      xi(x, g) = w;
      norm_sq += w * w;
    }
    xi.col(g) /= std::sqrt(norm_sq);
  }

  const int n = ball->size();
  std::vector<int> at(n);
  for (int i = 0; i < n; ++i) at[i] = *full->index_of(ball->element(i));

  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    values(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double v = xi.col(at[i]).dot(xi.col(at[j]));
      v = std::clamp(v, 0.0, 1.0);
      values(i, j) = v;
      values(j, i) = v;
    }
  }

  Kernel kernel{std::move(ball), std::move(values), 2 * pattern_radius + 1,
                KernelKind::GramRandom, {}};
  kernel.params.pattern_radius = pattern_radius;
  kernel.params.seed = seed;
  return kernel;
}

PsdReport psd_check_matrix(const Eigen::MatrixXd& values,
                           std::optional<double> tol_factor) {
  const double row_norm = values.cwiseAbs().rowwise().sum().maxCoeff();
  const double tol =
      tol_factor.value_or(1e-8) * std::max(1.0, row_norm);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigensolver failed during positivity check");
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig, tol, min_eig >= -tol};
}

PsdReport psd_check(const Kernel& kernel, std::optional<double> tol_factor) {
  return psd_check_matrix(kernel.values, tol_factor);
}

bool kernel_is_invariant(const Kernel& kernel) {
  const Ball& ball = *kernel.ball;
  if (!ball.covers_group())
    throw ModeError("invariance check needs the fully enumerated group");
  const GroupModel& group = ball.group;
  for (int i = 0; i < ball.size(); ++i) {
    const Element gi_inv = group.inverse(ball.element(i));
    for (int j = 0; j < ball.size(); ++j) {
      const auto k = ball.index_of(group.multiply(gi_inv, ball.element(j)));
      if (kernel.values(i, j) != kernel.values(0, *k)) return false;
    }
  }
  return true;
}

CompressionProbe compression_probe(const Ball& ball,
                                   const EmbeddingSpec& embedding) {
  std::map<int, DistanceEnvelope> by_distance;
  for (int i = 0; i < ball.size(); ++i) {
    for (int j = i; j < ball.size(); ++j) {
      const int t = ball.group.distance(ball.element(i), ball.element(j));
      const double norm = std::sqrt(
          embedding.squared_distance(ball.element(i), ball.element(j)));
      auto [it, fresh] = by_distance.try_emplace(
          t, DistanceEnvelope{t, norm, norm, 0});
      if (!fresh) {
        it->second.min_norm = std::min(it->second.min_norm, norm);
        it->second.max_norm = std::max(it->second.max_norm, norm);
      }
      ++it->second.pairs;
    }
  }

  CompressionProbe probe;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int fit_points = 0;
  for (auto& [t, env] : by_distance) {
    probe.envelopes.push_back(env);
    if (t == 0) {
      if (env.max_norm != 0.0) {
        probe.moduli_hold = false;
        probe.violations.push_back("nonzero embedded distance at t = 0");
      }
      continue;
    }
    constexpr double slack = 1e-9;
    if (env.min_norm + slack < embedding.rho_minus(t) ||
        env.max_norm > embedding.rho_plus(t) + slack) {
      probe.moduli_hold = false;
      probe.violations.push_back(
          "declared modulus violated at distance " + std::to_string(t));
    }
    if (env.min_norm > 0) {
      const double x = std::log(static_cast<double>(t));
      const double y = std::log(env.min_norm);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
      ++fit_points;
    }
  }
  if (fit_points >= 2) {
    const double denom = fit_points * sxx - sx * sx;
    probe.fitted_exponent =
        denom > 0 ? (fit_points * sxy - sx * sy) / denom : 0.0;
  }
  return probe;
}

}  // namespace renorm
