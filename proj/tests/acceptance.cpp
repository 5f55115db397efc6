// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: thirteen numbered end-to-end checks with pinned
// parameters and tolerances, one PASS/FAIL line each.  Exit code is the
// number of failing checks (0 = all green).  Every numeric claim is measured
// here against an independent route — nothing is asserted by construction.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "renorm/artifact_io.hpp"
#include "renorm/certify.hpp"
#include "renorm/cocycle.hpp"
#include "renorm/errors.hpp"
#include "renorm/groups.hpp"
#include "renorm/kernels.hpp"
#include "renorm/path.hpp"
#include "renorm/renormed.hpp"
#include "renorm/rng.hpp"

using namespace renorm;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& detail) {
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL")
            << " - " << detail << "\n";
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(10) << x;
  return out.str();
}

std::shared_ptr<const Ball> make_ball(const GroupModel& group, int radius) {
  return std::make_shared<const Ball>(ball_enumerate(group, radius));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// --- criterion 1: the four kernel constructions, psd, under ten seconds ----
void criterion_1() {
  bool pass = true;
  std::string detail;
  double worst_seconds = 0.0;
  double worst_eig_margin = std::numeric_limits<double>::infinity();

  auto check = [&](const char* label, auto&& build) {
    const auto start = std::chrono::steady_clock::now();
    const Kernel kernel = build();
    const double elapsed = seconds_since(start);
    worst_seconds = std::max(worst_seconds, elapsed);
    const PsdReport psd = psd_check(kernel);
    // tolerance is negative-definite slack: min eigenvalue >= -1e-8 * scale
    worst_eig_margin =
        std::min(worst_eig_margin, psd.min_eigenvalue + psd.tolerance);
    if (!psd.pass || elapsed >= 10.0) {
      pass = false;
      detail += std::string(label) + " failed (psd=" +
                (psd.pass ? "ok" : "violated") + ", " + fmt(elapsed) + "s); ";
    }
  };

  check("overlap/torus:16,2", [] {
    const GroupModel g = GroupModel::torus(16, 2);
    return ball_overlap_kernel(make_ball(g, g.diameter()), 2);
  });
  check("overlap/z:2(N=8)", [] {
    return ball_overlap_kernel(make_ball(GroupModel::integer_lattice(2), 8), 2);
  });
  check("tree-ray/free:2(N=6,n=4)", [] {
    return tree_ray_kernel(make_ball(GroupModel::free_group(2), 6), 4);
  });
  check("gaussian/free:2(N=6)", [] {
    const GroupModel g = GroupModel::free_group(2);
    return gaussian_kernel(make_ball(g, 6), embedding_for(g), 0.5);
  });
  check("gram-random/cyclic:24", [] {
    const GroupModel g = GroupModel::cyclic(24);
    return gram_random_kernel(make_ball(g, g.diameter()), 2, 1);
  });

  if (pass) {
    detail = "five kernels positive semidefinite (worst eigenvalue margin " +
             fmt(worst_eig_margin) + "), slowest build " + fmt(worst_seconds) +
             "s < 10s";
  }
  report(1, pass, detail);
}

// --- criterion 2: (1+eps) c = K off-diagonal, unit diagonal exact ----------
void criterion_2() {
  struct Case {
    const char* label;
    Kernel kernel;
    double eps;
    int window;
  };
  std::vector<Case> cases;
  {
    const GroupModel torus = GroupModel::torus(16, 2);
    cases.push_back({"torus:16,2/overlap",
                     ball_overlap_kernel(make_ball(torus, torus.diameter()), 2),
                     0.1, -1});
    const GroupModel ring = GroupModel::cyclic(24);
    cases.push_back({"cyclic:24/gram",
                     gram_random_kernel(make_ball(ring, ring.diameter()), 2, 1),
                     0.5, -1});
    cases.push_back({"cyclic:24/gaussian",
                     gaussian_kernel(make_ball(ring, ring.diameter()),
                                     embedding_for(ring), 0.7),
                     0.25, -1});
    cases.push_back(
        {"z:2/overlap windowed",
         ball_overlap_kernel(make_ball(GroupModel::integer_lattice(2), 8), 2),
         0.1, 3});
    cases.push_back(
        {"free:2/tree-ray windowed",
         tree_ray_kernel(make_ball(GroupModel::free_group(2), 6), 2), 0.9, 1});
  }

  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (Case& item : cases) {
    const Eigen::MatrixXd k_copy = item.kernel.values;
    const RenormedSpace space =
        build_renormed_space(std::move(item.kernel), item.eps);
    const CoefficientMatrix matrix = coefficients(space, item.window);
    for (int i = 0; i < matrix.size() && pass; ++i) {
      if (matrix.values(i, i) != 1.0) {
        pass = false;
        detail = std::string(item.label) + ": diagonal not exactly 1";
      }
      for (int j = 0; j < matrix.size(); ++j) {
        if (i == j) continue;
        const double gap =
            std::abs((1.0 + item.eps) * matrix.values(i, j) - k_copy(i, j));
        worst = std::max(worst, gap);
        if (gap > 1e-12) {
          pass = false;
          detail = std::string(item.label) + ": |(1+eps)c - K| = " + fmt(gap);
          break;
        }
      }
    }
  }
  if (pass)
    detail = "five spaces: diagonal exact, max |(1+eps)c - K| = " + fmt(worst) +
             " <= 1e-12";
  report(2, pass, detail);
}

// --- criterion 3: torus:32,2 overlap R=8 at eps=0.02 within 0.1, S=17 ------
void criterion_3() {
  const GroupModel group = GroupModel::torus(32, 2);
  const RenormedSpace space = build_renormed_space(
      ball_overlap_kernel(make_ball(group, group.diameter()), 8), 0.02);
  const CoefficientMatrix matrix = coefficients(space, -1);
  const Certificate cert = verify_forward(matrix, 0.1, 17);
  const bool pass = cert.unit_norm_pass && cert.support_pass &&
                    cert.epsilon_measured <= 0.1 && cert.s_measured <= 17;
  std::string detail =
      "epsilon_measured = " + fmt(cert.epsilon_measured) +
      (pass ? " <= 0.1" : " > 0.1 (neighbor overlap 128/145 leaves a 0.117 "
                          "kernel deficit no 0.02 renorm absorbs)") +
      ", s_measured = " + std::to_string(cert.s_measured);
  report(3, pass, detail);
}

// --- criterion 4: eps' <= eps + eps/(1+eps) <= 2 eps bookkeeping ------------
void criterion_4() {
  struct Case {
    const char* label;
    CoefficientMatrix matrix;
    double eps;
    int support;
  };
  std::vector<Case> cases;
  {
    const GroupModel ring = GroupModel::cyclic(32);
    const RenormedSpace a = build_renormed_space(
        ball_overlap_kernel(make_ball(ring, ring.diameter()), 8), 0.06);
    cases.push_back({"cyclic:32 R=8 eps=0.06", coefficients(a, -1), 0.06, 17});
    const GroupModel torus = GroupModel::torus(32, 2);
    const RenormedSpace b = build_renormed_space(
        ball_overlap_kernel(make_ball(torus, torus.diameter()), 12), 0.08);
    cases.push_back({"torus:32,2 R=12 eps=0.08", coefficients(b, -1), 0.08, 25});
    const RenormedSpace c = build_renormed_space(
        ball_overlap_kernel(make_ball(GroupModel::integer_lattice(1), 8), 2),
        0.2);
    cases.push_back({"z:1 R=2 eps=0.2 windowed", coefficients(c, 3), 0.2, 5});
  }

  bool pass = true;
  std::string detail;
  for (const Case& item : cases) {
    const Certificate cert = verify_forward(item.matrix, item.eps, item.support);
    const double bound = item.eps + item.eps / (1.0 + item.eps);
    const bool ok = cert.bookkeeping_applicable && cert.bookkeeping_holds &&
                    cert.epsilon_measured <= bound + 1e-12 &&
                    bound <= 2.0 * item.eps + 1e-15;
    if (!ok) {
      pass = false;
      detail += std::string(item.label) + " violated (measured " +
                fmt(cert.epsilon_measured) + ", bound " + fmt(bound) + "); ";
    } else {
      detail += std::string(item.label) + ": " + fmt(cert.epsilon_measured) +
                " <= " + fmt(bound) + " <= " + fmt(2.0 * item.eps) + "; ";
    }
  }
  report(4, pass, detail);
}

// --- criterion 5: forward at (eps, S) gives converse at (2 eps, S) ----------
void criterion_5() {
  struct Case {
    const char* label;
    CoefficientMatrix matrix;
    double eps;
    int support;
  };
  std::vector<Case> cases;
  {
    const GroupModel c32 = GroupModel::cyclic(32);
    cases.push_back({"cyclic:32 overlap R=8 eps=0.25",
                     coefficients(build_renormed_space(
                                      ball_overlap_kernel(
                                          make_ball(c32, c32.diameter()), 8),
                                      0.25),
                                  -1),
                     0.25, 17});
    const GroupModel t32 = GroupModel::torus(32, 2);
    cases.push_back({"torus:32,2 overlap R=12 eps=0.3",
                     coefficients(build_renormed_space(
                                      ball_overlap_kernel(
                                          make_ball(t32, t32.diameter()), 12),
                                      0.3),
                                  -1),
                     0.3, 25});
    cases.push_back(
        {"z:1 overlap R=2 eps=0.5 window 3",
         coefficients(build_renormed_space(
                          ball_overlap_kernel(
                              make_ball(GroupModel::integer_lattice(1), 8), 2),
                          0.5),
                      3),
         0.5, 5});
    cases.push_back(
        {"free:2 tree-ray n=2 eps=0.9 window 1",
         coefficients(build_renormed_space(
                          tree_ray_kernel(make_ball(GroupModel::free_group(2), 6),
                                          2),
                          0.9),
                      1),
         0.9, 5});
  }

  bool pass = true;
  std::string detail;
  int round_trips = 0;
  for (const Case& item : cases) {
    const Certificate forward = verify_forward(item.matrix, item.eps, item.support);
    const Certificate converse =
        verify_converse(item.matrix, 2.0 * item.eps, item.support);
    if (!forward.pass || !converse.pass) {
      pass = false;
      detail += std::string(item.label) + ": forward " +
                (forward.pass ? "pass" : "FAIL") + ", converse " +
                (converse.pass ? "pass" : "FAIL") + "; ";
    } else {
      ++round_trips;
    }
  }
  if (pass)
    detail = std::to_string(round_trips) +
             " round trips: forward pass at (eps, S) and converse pass at "
             "(2 eps, S), psd included";
  report(5, pass, detail);
}

// --- criterion 6: spectral floor and norm equivalence on 1000 vectors ------
void criterion_6() {
  const GroupModel torus = GroupModel::torus(16, 2);
  const double eps = 0.02;
  const RenormedSpace space = build_renormed_space(
      ball_overlap_kernel(make_ball(torus, torus.diameter()), 2), eps);

  bool pass = true;
  std::string detail;
  try {
    const SpectralData data = spectral_data(space);
    if (data.lambda < data.guaranteed_floor - 1e-10) {
      pass = false;
      detail = "lambda " + fmt(data.lambda) + " below floor";
    }
    SeededRng rng(0xACCE6);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Eigen::VectorXd v = rng.vector(space.size());
      const double plain = v.squaredNorm();
      const double renormed = renormed_inner(space, v, v);
      if (renormed < data.lambda * plain - 1e-9 * plain ||
          renormed > data.opnorm * plain + 1e-9 * plain) {
        ++violations;
      }
    }
    if (violations > 0) {
      pass = false;
      detail = std::to_string(violations) + " of 1000 vectors escaped the bracket";
    }
    if (pass)
      detail = "lambda = " + fmt(data.lambda) + " >= " +
               fmt(data.guaranteed_floor) +
               " - 1e-10; 1000 seeded vectors inside "
               "[lambda, opnorm] bracket";
  } catch (const Error& e) {
    pass = false;
    detail = std::string("spectral check threw: ") + e.what();
  }
  report(6, pass, detail);
}

// --- criterion 7: representation norms on cyclic:24, both routes -----------
void criterion_7() {
  const GroupModel ring = GroupModel::cyclic(24);
  const RenormedSpace space = build_renormed_space(
      gram_random_kernel(make_ball(ring, ring.diameter()), 2, 1), 0.25);

  const double sup = rep_norm_sup(space);
  const double infimum = rep_norm_infimum(space);
  const double upper = std::sqrt(space.opnorm / space.lambda);
  double adjoint = 0.0;
  const Ball& ball = space.ball();
  for (int i = 0; i < ball.size(); ++i)
    adjoint = std::max(adjoint, adjoint_residual(space, ball.element(i)));

  bool pass = true;
  std::string detail;
  if (!(sup > 1.0 + 1e-3)) {
    pass = false;
    detail += "sup " + fmt(sup) + " not above 1+1e-3; ";
  }
  if (!(sup <= upper + 1e-9)) {
    pass = false;
    detail += "sup " + fmt(sup) + " exceeds sqrt(opnorm/lambda) = " +
              fmt(upper) + "; ";
  }
  if (!(sup <= space.opnorm / space.lambda)) {
    pass = false;
    detail += "sup exceeds opnorm/lambda; ";
  }
  if (!(std::abs(sup - infimum) <= 1e-6 * sup)) {
    pass = false;
    detail += "routes disagree: " + fmt(sup) + " vs " + fmt(infimum) + "; ";
  }
  if (!(adjoint <= 1e-9)) {
    pass = false;
    detail += "adjoint residual " + fmt(adjoint) + " > 1e-9; ";
  }
  if (pass)
    detail = "sup = " + fmt(sup) + " in (1+1e-3, " + fmt(upper) +
             "]; routes agree to " + fmt(std::abs(sup - infimum)) +
             "; adjoint residual " + fmt(adjoint);
  report(7, pass, detail);
}

// --- criterion 8: invariant kernel makes every translation unitary ---------
void criterion_8() {
  const GroupModel torus = GroupModel::torus(16, 2);
  const RenormedSpace space = build_renormed_space(
      ball_overlap_kernel(make_ball(torus, torus.diameter()), 2), 0.1);
  const Ball& ball = space.ball();
  double worst = 0.0;
  for (int i = 0; i < ball.size(); ++i) {
    worst = std::max(worst, std::abs(rep_norm(space, ball.element(i)) - 1.0));
  }
  const bool pass = worst <= 1e-9;
  report(8, pass,
         "256 translation norms on torus:16,2, max |norm - 1| = " + fmt(worst) +
             (pass ? " <= 1e-9" : " > 1e-9"));
}

// --- criterion 9: tree-ray kernel obeys 1 - K <= d/n exactly ---------------
void criterion_9() {
  const int n = 4;
  const GroupModel f2 = GroupModel::free_group(2);
  const auto ball = make_ball(f2, 6);
  const Kernel kernel = tree_ray_kernel(ball, n);
  long violations = 0;
  long checked = 0;
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = i + 1; j < kernel.size(); ++j) {
      const long overlap = std::lround(kernel.values(i, j) * n);
      const int d = f2.distance(ball->element(i), ball->element(j));
      // integer form of 1 - K <= d/n with K = overlap/n
      if (n - overlap > d) ++violations;
      ++checked;
    }
  }
  const bool pass = violations == 0;
  report(9, pass,
         std::to_string(checked) + " pairs on the radius-6 ball, " +
             std::to_string(violations) +
             " violations of the integer inequality n - overlap <= d");
}

// --- criterion 10: path endpoints and strict monotonicity ------------------
void criterion_10() {
  const GroupModel f2 = GroupModel::free_group(2);
  const auto ball = make_ball(f2, 4);
  const std::vector<double> alphas{1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0};
  const std::vector<PathPoint> sweep =
      path_sweep(ball, embedding_for(f2), alphas, 4);

  bool pass = true;
  std::string detail;
  const double low_dev = sweep.front().max_neighbor_deviation;
  const double high_off = sweep.back().max_offdiagonal;
  if (!(low_dev <= 5e-4)) {
    pass = false;
    detail += "alpha=1e-4 neighbor deviation " + fmt(low_dev) + " > 5e-4; ";
  }
  if (!(high_off <= 1e-8)) {
    pass = false;
    detail += "alpha=20 off-diagonal " + fmt(high_off) + " > 1e-8; ";
  }
  if (!coefficients_strictly_decreasing(sweep)) {
    pass = false;
    detail += "coefficients not strictly decreasing pairwise; ";
  }
  if (pass)
    detail = "neighbor deviation " + fmt(low_dev) +
             " <= 5e-4 at alpha=1e-4; off-diagonal " + fmt(high_off) +
             " <= 1e-8 at alpha=20; all window coefficients strictly "
             "decreasing over 8 alphas";
  report(10, pass, detail);
}

// --- criterion 11: Schur row sums against independent series ---------------
void criterion_11() {
  const GroupModel f2 = GroupModel::free_group(2);
  const EmbeddingSpec free_embedding = embedding_for(f2);
  bool pass = true;
  std::string detail;

  for (double alpha : {1.2, 2.0, 3.0}) {
    const SchurRow row = schur_row_sums(f2, free_embedding, alpha, 30);
    double expected = 1.0;
    double sphere = 4.0;
    for (int r = 1; r <= 30; ++r) {
      expected += sphere * std::exp(-alpha * r);
      sphere *= 3.0;
    }
    if (std::abs(row.truncated_sum - expected) > 1e-9 * expected) {
      pass = false;
      detail += "alpha=" + fmt(alpha) + " sum " + fmt(row.truncated_sum) +
                " vs series " + fmt(expected) + "; ";
    }
    if (!row.schur_bounded) {
      pass = false;
      detail += "alpha=" + fmt(alpha) + " flagged divergent; ";
    }
  }
  // The flag must trip exactly on alpha <= ln 3.
  const double threshold = std::log(3.0);
  if (schur_row_sums(f2, free_embedding, 1.0, 10).schur_bounded ||
      schur_row_sums(f2, free_embedding, threshold, 10).schur_bounded ||
      !schur_row_sums(f2, free_embedding, threshold + 1e-9, 10).schur_bounded) {
    pass = false;
    detail += "divergence flag does not flip at ln 3; ";
  }

  // Integer line: the finer truncation's gain sits inside the Gaussian tail.
  const GroupModel z = GroupModel::integer_lattice(1);
  const EmbeddingSpec line_embedding = embedding_for(z);
  const SchurRow coarse = schur_row_sums(z, line_embedding, 0.005, 30);
  const SchurRow fine = schur_row_sums(z, line_embedding, 0.005, 60);
  if (!coarse.tail_bound ||
      fine.truncated_sum - coarse.truncated_sum > *coarse.tail_bound) {
    pass = false;
    detail += "lattice remainder escapes the declared tail bound; ";
  }

  if (pass)
    detail =
        "free-group sums match the independent geometric series to 1e-9 at "
        "alpha in {1.2, 2, 3}; divergence flag flips exactly at ln 3; lattice "
        "remainder " +
        fmt(fine.truncated_sum - coarse.truncated_sum) + " <= tail bound " +
        fmt(*coarse.tail_bound);
  report(11, pass, detail);
}

// --- criterion 12: the direct-sum cocycle over the epsilon ladder ----------
void criterion_12() {
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

  bool pass = true;
  std::string detail;
  const double residual = cocycle_identity_check(model, 100);
  if (!(residual <= 1e-9)) {
    pass = false;
    detail += "identity residual " + fmt(residual) + " > 1e-9; ";
  }
  if (model.norm_squared[0] != 0.0) {
    pass = false;
    detail += "||b(e)||^2 = " + fmt(model.norm_squared[0]) + " not exactly 0; ";
  }
  double worst_gap = 0.0;
  for (int i = 0; i < model.window_size; ++i) {
    const double direct = cocycle_norm_squared_direct(model, i);
    worst_gap = std::max(worst_gap, std::abs(model.norm_squared[i] - direct));
  }
  if (worst_gap > 1e-10) {
    pass = false;
    detail += "norm routes disagree by " + fmt(worst_gap) + "; ";
  }
  if (pass)
    detail = "five-level ladder eps = 2^-1..2^-5: identity residual " +
             fmt(residual) + " over 100 seeded pairs, ||b(e)|| = 0 exactly, "
             "norm routes agree to " +
             fmt(worst_gap) + ", uniform bound C = " + fmt(model.uniform_bound);
  report(12, pass, detail);
}

// --- criterion 13: CLI runs are byte-identical --------------------------------
void criterion_13() {
  const fs::path base = fs::temp_directory_path() / "renorm-acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);
  fs::create_directories(base / "a");
  fs::create_directories(base / "b");

  auto shell = [&](const std::string& args) {
    const std::string command = std::string(RENORM_CLI_PATH) + " " + args +
                                " > /dev/null 2>&1";
    return std::system(command.c_str());
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  bool pass = true;
  std::string detail;
  struct Job {
    std::string args;
    std::vector<const char*> files;
  };
  const std::vector<Job> jobs = {
      {"verify --group cyclic:32 --kernel ball-overlap:8 --epsilon 0.25",
       {"certificate_forward.json", "certificate_converse.json"}},
      {"path --group cyclic:12 --alphas 0.1:10:log:5 --truncation 12",
       {"path.csv", "schur.json"}},
      {"cocycle --group cyclic:12 --kernel gram-random:2 --seed 5 --epsilons "
       "0.5,0.25 --pairs 40",
       {"cocycle.json"}},
      {"rep --group cyclic:24 --kernel gram-random:2 --seed 1 --epsilon 0.25",
       {"rep_report.json"}},
  };
  int files_compared = 0;
  for (const Job& job : jobs) {
    const int rc_a =
        shell("--out-dir " + (base / "a").string() + " " + job.args);
    const int rc_b =
        shell("--out-dir " + (base / "b").string() + " " + job.args);
    if (rc_a != rc_b) {
      pass = false;
      detail += job.args + ": exit codes differ; ";
      continue;
    }
    for (const char* file : job.files) {
      const std::string a = slurp(base / "a" / file);
      const std::string b = slurp(base / "b" / file);
      if (a.empty() || a != b) {
        pass = false;
        detail += std::string(file) + " differs between identical runs; ";
      } else {
        ++files_compared;
      }
    }
  }
  if (pass)
    detail = "4 subcommands re-run into fresh directories; " +
             std::to_string(files_compared) +
             " artifacts byte-identical across runs";
  report(13, pass, detail);
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
  } catch (const Error& e) {
    std::cout << "acceptance run aborted: " << e.what() << "\n";
    return 99;
  }
  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) +
                                      " criterion(s) failed")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
