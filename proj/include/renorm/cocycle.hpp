// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "renorm/renormed.hpp"

namespace renorm {

// One block of the direct sum: a renormed space H_k built at eps_k, its
// representation-norm accounting, and (implicitly) the vector v_k = delta_e.
struct CocycleSummand {
  double epsilon = 0.0;
  std::shared_ptr<const RenormedSpace> space;
  double rep_norm_sup_value = 0.0;      // sup_g of the singular-value route
  double rep_norm_infimum_value = 0.0;  // sup_g of the norm-infimum formula
};

// The direct-sum cocycle b_g = (+)_k ( (pi_k)_g delta_e - delta_e ) with
// linear part rho = (+)_k pi_k.  Norms add blockwise:
//   ||b_g||^2 = sum_k (2 - 2 c_k(e, g)),
// since each block obeys the displacement law.  The uniform bound field
// records C = max_k (summand norm bound), the measured counterpart of the
// hypothesis sup ||pi|| <= C.  Properness of b is NOT certifiable from
// finite data and is never claimed; see norm_growth_profile.
struct CocycleModel {
  std::string group_spec;
  int window_radius = 0;
  int window_size = 0;
  std::vector<CocycleSummand> summands;
  std::vector<double> norm_squared;  // ||b_g||^2 per window element
  double uniform_bound = 1.0;        // max over summands of rep_norm_infimum

  const Ball& ball() const { return summands.front().space->ball(); }
};

// Builds the model.  Requirements:
//   - at least one summand, epsilons strictly decreasing (ParameterError);
//   - each pair's epsilon equals its space's epsilon (CompositionError);
//   - all summands share one group model (CompositionError);
//   - every summand in Exact mode (ModeError) — the summand type promises
//     certified representation-norm bounds, which truncated windows cannot
//     provide.
// A negative window_radius (or one at least the diameter) means the whole
// group.
CocycleModel cocycle_build(
    const std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>>&
        summands,
    int window_radius);

// Independent route to ||b_g||^2 for one window element: explicit blockwise
// vector arithmetic ||(pi_k)_g delta_e - delta_e||^2_{T_k}, no displacement
// law.  Agrees with the stored table to 1e-10.
double cocycle_norm_squared_direct(const CocycleModel& model, int window_index);

// Max over seeded pairs (g, h) of
//   || b_{gh} - (rho_g b_h + b_g) || / (1 + ||b_{gh}||),
// computed blockwise in each H_k.  The identity is exact in algebra; the
// residual is floating-point noise (contract: <= 1e-9, in fact exactly 0
// here because the vectors involved have entries in {-1, 0, 1}).
double cocycle_identity_check(const CocycleModel& model, int pair_count = 100,
                              std::uint64_t seed = 0xC0C1C1E5ULL);

struct GrowthRow {
  int length = 0;
  std::int64_t count = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct GrowthProfile {
  std::vector<GrowthRow> rows;  // one per word length present in the window
  bool minimum_monotone = true; // per-length minimum never decreases
};

// Word-length statistics of ||b_g|| over the window.  A monotone per-length
// minimum is a growth trend report, not a properness certificate.
GrowthProfile norm_growth_profile(const CocycleModel& model);

}  // namespace renorm
