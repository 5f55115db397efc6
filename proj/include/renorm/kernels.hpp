// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renorm/groups.hpp"

namespace renorm {

/// Sentinel for kernels without a finite support radius.
inline constexpr int kUnboundedSupport = -1;

enum class KernelKind { BallOverlap, TreeRay, Gaussian, GramRandom };

std::string kernel_kind_name(KernelKind kind);

/// Construction parameters, kept so artifacts can be rebuilt bit for bit.
struct KernelParams {
  std::optional<int> overlap_radius;   // ball-overlap R
  std::optional<int> ray_length;       // tree-ray n
  std::optional<double> alpha;         // gaussian decay
  std::optional<int> pattern_radius;   // gram-random support radius r
  std::optional<std::uint64_t> seed;   // gram-random
  std::optional<std::string> embedding;
};

/// A Hermitian kernel on a metric ball: unit diagonal, values in [0,1],
/// entries exactly zero at distance >= support_radius (when finite).
struct Kernel {
  std::shared_ptr<const Ball> ball;
  Eigen::MatrixXd values;
  int support_radius = kUnboundedSupport;
  KernelKind kind = KernelKind::BallOverlap;
  KernelParams params;

  int size() const { return static_cast<int>(values.rows()); }
  const GroupModel& group() const { return ball->group; }
};

/// Gram matrix of normalized ball indicators:
/// K(g,h) = |B(g,R) ∩ B(h,R)| / sqrt(|B(g,R)| |B(h,R)|), support 2R+1.
/// Enumerates to radius N+R internally so every B(g,R) is complete.
Kernel ball_overlap_kernel(std::shared_ptr<const Ball> ball, int overlap_radius,
                           std::size_t cap = kDefaultBallCap);

/// Free groups only. K(x,y) = |ray_n(x) ∩ ray_n(y)| / n where ray_n(x) is the
/// first n vertices of the geodesic ray from x toward the fixed end a^inf.
/// Deliberately not left-invariant. Support 2n+1.
Kernel tree_ray_kernel(std::shared_ptr<const Ball> ball, int ray_length);

/// Declared distortion moduli and growth constants of an embedding.
struct CompressionDecl {
  double c = 0;      // lower envelope rho_-(t) >= c * t^(1/2 + theta) + d
  double d = 0;
  double e = 1;      // for t >= e
  double theta = 0;
  bool hypothesis_holds = false;  // true iff the declared theta is positive
};

/// A map f from group elements into Euclidean space, with declared moduli
/// rho_-(t) <= ||f(g)-f(h)|| <= rho_+(t) for d(g,h) = t. No invariance of
/// ||f(g)-f(h)|| under left translation is assumed anywhere.
struct EmbeddingSpec {
  GroupModel group;
  std::string name;
  std::function<double(const Element&, const Element&)> squared_distance;
  std::function<Eigen::VectorXd(const Element&)> embed;  // may be empty
  std::function<double(int)> radial_profile;  // set iff ||Δf||^2 = φ(d)
  std::function<double(double)> rho_minus, rho_plus;
  std::string rho_minus_desc, rho_plus_desc;
  CompressionDecl compression;
  std::optional<double> schur_divergence_threshold;  // absent: all alpha fine
};

/// The embedding used for a family: identity coordinates on Z^n, geodesic
/// edge sets on free groups, scaled chords on torus/cyclic, inversion-set
/// indicators on Sym(n).
EmbeddingSpec embedding_for(const GroupModel& group);

/// K(g,h) = exp(-alpha ||f(g)-f(h)||^2). No finite support radius.
Kernel gaussian_kernel(std::shared_ptr<const Ball> ball,
                       const EmbeddingSpec& embedding, double alpha);

/// Gram matrix of seeded random unit vectors supported on B(g,r); finite
/// groups only. Positive semidefinite by construction, support 2r+1, and for
/// generic seeds not a function of g^{-1}h.
Kernel gram_random_kernel(std::shared_ptr<const Ball> ball, int pattern_radius,
                          std::uint64_t seed);

struct PsdReport {
  double min_eigenvalue = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Smallest eigenvalue check. Default tolerance 1e-8 * max(1, row sum norm);
/// tol_factor overrides the 1e-8.
PsdReport psd_check(const Kernel& kernel,
                    std::optional<double> tol_factor = std::nullopt);
PsdReport psd_check_matrix(const Eigen::MatrixXd& values,
                           std::optional<double> tol_factor = std::nullopt);

/// True when K(g,h) equals K(e, g^{-1}h) for every pair (exhaustive check;
/// requires a fully enumerated finite group).
bool kernel_is_invariant(const Kernel& kernel);

struct DistanceEnvelope {
  int t = 0;
  double min_norm = 0;
  double max_norm = 0;
  std::int64_t pairs = 0;
};

struct CompressionProbe {
  std::vector<DistanceEnvelope> envelopes;
  double fitted_exponent = 0;  // least-squares slope of log min vs log t
  bool moduli_hold = true;
  std::vector<std::string> violations;
};

/// Measures min/max of ||f(g)-f(h)|| per word distance over all pairs in the
/// ball and checks the declared moduli.
CompressionProbe compression_probe(const Ball& ball,
                                   const EmbeddingSpec& embedding);

}  // namespace renorm
