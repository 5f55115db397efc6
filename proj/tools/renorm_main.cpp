// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: enumerate balls, build kernels, verify coefficient
// certificates, report representation norms, sweep the interpolation path,
// and assemble the direct-sum cocycle. Every run with the same flags and
// seed writes byte-identical artifacts.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "renorm/artifact_io.hpp"
#include "renorm/certify.hpp"
#include "renorm/cocycle.hpp"
#include "renorm/errors.hpp"
#include "renorm/kernels.hpp"
#include "renorm/path.hpp"
#include "renorm/renormed.hpp"

namespace {

using namespace renorm;

namespace fs = std::filesystem;

struct KernelSpec {
  std::string type;
  int integer_param = 0;   // ball-overlap R / tree-ray n / gram-random r
  double real_param = 0.0; // gaussian alpha
};

KernelSpec parse_kernel_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw ParameterError(
        "kernel spec grammar is type:param, e.g. ball-overlap:8, tree-ray:3, "
        "gaussian:0.5, gram-random:2");
  }
  KernelSpec spec;
  spec.type = text.substr(0, colon);
  const std::string param = text.substr(colon + 1);
  try {
    if (spec.type == "gaussian") {
      std::size_t used = 0;
      spec.real_param = std::stod(param, &used);
      if (used != param.size()) throw std::invalid_argument(param);
    } else if (spec.type == "ball-overlap" || spec.type == "tree-ray" ||
               spec.type == "gram-random") {
      std::size_t used = 0;
      spec.integer_param = std::stoi(param, &used);
      if (used != param.size()) throw std::invalid_argument(param);
    } else {
      throw ParameterError("unknown kernel type: " + spec.type);
    }
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError("malformed kernel parameter: " + param);
  }
  return spec;
}

// Declared support radius of a kernel spec, before building it.
// kUnboundedSupport for gaussian kernels.
int declared_support(const KernelSpec& spec) {
  if (spec.type == "gaussian") return kUnboundedSupport;
  return 2 * spec.integer_param + 1;
}

Kernel make_kernel(const GroupModel& group, std::shared_ptr<const Ball> ball,
                   const KernelSpec& spec, const std::optional<std::uint64_t>& seed) {
  if (spec.type == "ball-overlap") {
    return ball_overlap_kernel(std::move(ball), spec.integer_param);
  }
  if (spec.type == "tree-ray") {
    return tree_ray_kernel(std::move(ball), spec.integer_param);
  }
  if (spec.type == "gaussian") {
    return gaussian_kernel(std::move(ball), embedding_for(group), spec.real_param);
  }
  if (spec.type == "gram-random") {
    if (!seed) {
      throw ParameterError("randomized constructions require --seed");
    }
    return gram_random_kernel(std::move(ball), spec.integer_param, *seed);
  }
  throw ParameterError("unknown kernel type: " + spec.type);
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> alphas;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ':')) parts.push_back(item);
    if (parts.size() != 4) {
      throw ParameterError(
          "alpha grid grammar is start:stop:log|lin:count (or a comma list)");
    }
    double start = 0.0, stop = 0.0;
    int count = 0;
    try {
      start = std::stod(parts[0]);
      stop = std::stod(parts[1]);
      count = std::stoi(parts[3]);
    } catch (const std::exception&) {
      throw ParameterError("malformed alpha grid bounds: " + text);
    }
    if (!(start > 0.0) || !(stop >= start) || count < 1) {
      throw ParameterError("alpha grid needs 0 < start <= stop and count >= 1");
    }
    if (count == 1) {
      alphas.push_back(start);
    } else if (parts[2] == "log") {
      const double factor = std::pow(stop / start, 1.0 / (count - 1));
      double value = start;
      for (int i = 0; i < count; ++i) {
        alphas.push_back(i + 1 == count ? stop : value);
        value *= factor;
      }
    } else if (parts[2] == "lin") {
      const double step = (stop - start) / (count - 1);
      for (int i = 0; i < count; ++i) {
        alphas.push_back(i + 1 == count ? stop : start + step * i);
      }
    } else {
      throw ParameterError("alpha grid mode must be log or lin, got " + parts[2]);
    }
    return alphas;
  }
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      alphas.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("malformed alpha value: " + item);
    }
  }
  if (alphas.empty()) throw ParameterError("alpha list must not be empty");
  return alphas;
}

std::vector<double> parse_epsilon_list(const std::string& text) {
  std::vector<double> epsilons;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      epsilons.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("malformed epsilon value: " + item);
    }
  }
  if (epsilons.empty()) throw ParameterError("epsilon list must not be empty");
  std::sort(epsilons.rbegin(), epsilons.rend());
  return epsilons;
}

struct GlobalOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_psd;
  int window = -1;  // -1 = whole group (finite) / unset (infinite)
};

fs::path prepare_out_dir(const GlobalOptions& global) {
  fs::path dir(global.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir)) {
    throw Error("cannot create output directory " + dir.string() + ": " +
                ec.message());
  }
  return dir;
}

// Ball radius for operator-level commands: finite groups are fully
// enumerated; infinite groups take window + declared support so that every
// kernel column meeting the window is complete.
int resolve_ball_radius(const GroupModel& group, const KernelSpec& spec,
                        const GlobalOptions& global) {
  if (group.finite()) return group.diameter();
  if (global.window < 0) {
    throw ParameterError("infinite groups require --window");
  }
  const int support = declared_support(spec);
  if (support == kUnboundedSupport) {
    throw ParameterError(
        "similarity (gaussian) kernels have no finite support radius; "
        "coefficient certification on infinite groups needs a finitely "
        "supported kernel");
  }
  return global.window + support;
}

int run_ball(const GlobalOptions& global, const std::string& group_spec,
             int radius) {
  const GroupModel group = GroupModel::parse(group_spec);
  const Ball ball = ball_enumerate(group, radius);
  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "ball.json", ball_json(ball));
  std::cout << "ball group=" << group.spec_string() << " radius=" << radius
            << " size=" << ball.size() << "\n";
  std::cout << "spheres";
  for (std::uint64_t s : group.sphere_sizes(radius)) std::cout << " " << s;
  std::cout << "\n";
  std::cout << "wrote " << (dir / "ball.json").string() << "\n";
  return 0;
}

int run_kernel(const GlobalOptions& global, const std::string& group_spec,
               const std::string& kernel_spec, int radius) {
  const GroupModel group = GroupModel::parse(group_spec);
  const KernelSpec spec = parse_kernel_spec(kernel_spec);
  int ball_radius = radius;
  if (ball_radius < 0) {
    if (!group.finite()) {
      throw ParameterError("infinite groups require --radius for the kernel ball");
    }
    ball_radius = group.diameter();
  }
  auto ball = std::make_shared<const Ball>(ball_enumerate(group, ball_radius));
  const Kernel kernel = make_kernel(group, ball, spec, global.seed);
  const PsdReport psd = psd_check(kernel, global.tol_psd);
  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "kernel.json", kernel_json(kernel));
  std::cout << "kernel " << kernel_kind_name(kernel.kind) << " on "
            << group.spec_string() << " size=" << kernel.size()
            << " support=" << kernel.support_radius << "\n";
  std::cout << "psd min_eigenvalue=" << format_double(psd.min_eigenvalue)
            << " tolerance=" << format_double(psd.tolerance) << " "
            << (psd.pass ? "PASS" : "FAIL") << "\n";
  std::cout << "wrote " << (dir / "kernel.json").string() << "\n";
  return 0;
}

int run_verify(const GlobalOptions& global, const std::string& group_spec,
               const std::string& kernel_spec, double epsilon, int support) {
  const GroupModel group = GroupModel::parse(group_spec);
  const KernelSpec spec = parse_kernel_spec(kernel_spec);
  const int ball_radius = resolve_ball_radius(group, spec, global);
  auto ball = std::make_shared<const Ball>(ball_enumerate(group, ball_radius));
  Kernel kernel = make_kernel(group, ball, spec, global.seed);

  int effective_support = support;
  if (effective_support < 0) {
    if (kernel.support_radius == kUnboundedSupport) {
      throw ParameterError(
          "this kernel declares no finite support radius; pass --support");
    }
    effective_support = kernel.support_radius;
  }

  const RenormedSpace space =
      build_renormed_space(std::move(kernel), epsilon, global.tol_psd);
  const CoefficientMatrix matrix = coefficients(space, global.window);
  const Certificate forward = verify_forward(matrix, epsilon, effective_support);
  const Certificate converse =
      verify_converse(matrix, 2.0 * epsilon, effective_support);

  RunConfig config;
  config.group = group.spec_string();
  config.kernel = kernel_spec;
  config.epsilon = epsilon;
  config.support = support;
  config.window = global.window;
  config.seed = global.seed;
  config.tol_psd = global.tol_psd;
  const std::string config_text = config.to_canonical_string();

  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "certificate_forward.json",
               certificate_json(forward, config_text));
  atomic_write(dir / "certificate_converse.json",
               certificate_json(converse, config_text));

  std::cout << "forward  epsilon_measured="
            << format_double(forward.epsilon_measured)
            << " s_measured=" << forward.s_measured << " "
            << (forward.pass ? "PASS" : "FAIL") << "\n";
  std::cout << "converse epsilon_target=" << format_double(2.0 * epsilon)
            << " epsilon_measured=" << format_double(converse.epsilon_measured)
            << " " << (converse.pass ? "PASS" : "FAIL") << "\n";
  const bool pass = forward.pass && converse.pass;
  std::cout << "verdict  " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 3;
}

int run_rep(const GlobalOptions& global, const std::string& group_spec,
            const std::string& kernel_spec, double epsilon) {
  const GroupModel group = GroupModel::parse(group_spec);
  const KernelSpec spec = parse_kernel_spec(kernel_spec);
  int ball_radius = 0;
  if (group.finite()) {
    ball_radius = group.diameter();
  } else {
    if (global.window < 0) {
      throw ParameterError("infinite groups require --window");
    }
    const int support = declared_support(spec);
    ball_radius = global.window +
                  (support == kUnboundedSupport ? 0 : support);
  }
  auto ball = std::make_shared<const Ball>(ball_enumerate(group, ball_radius));
  Kernel kernel = make_kernel(group, ball, spec, global.seed);
  const std::string kind_name = kernel_kind_name(kernel.kind);
  const RenormedSpace space =
      build_renormed_space(std::move(kernel), epsilon, global.tol_psd);

  RepReport report;
  RunConfig config;
  config.group = group.spec_string();
  config.kernel = kernel_spec;
  config.epsilon = epsilon;
  config.window = global.window;
  config.seed = global.seed;
  config.tol_psd = global.tol_psd;
  report.config = config.to_canonical_string();
  report.group_spec = group.spec_string();
  report.kernel_kind = kind_name;
  report.epsilon = epsilon;
  report.mode = space_mode_name(space.mode);
  report.lambda = space.lambda;
  report.opnorm = space.opnorm;

  const bool exact = space.mode == SpaceMode::Exact;
  for (const Element& g : group.generators()) {
    RepReportRow row;
    row.element = group.to_string(g);
    if (exact) {
      row.value = rep_norm(space, g);
      row.lower_bound = false;
    } else {
      row.value = rep_norm_estimate(space, g).value;
      row.lower_bound = true;
    }
    report.generator_norms.push_back(row);
  }
  if (exact) {
    report.sup_rep_norm = rep_norm_sup(space);
    report.infimum_norm = rep_norm_infimum(space);
    double adjoint = 0.0;
    for (const Element& g : group.generators()) {
      adjoint = std::max(adjoint, adjoint_residual(space, g));
    }
    report.adjoint_residual_max = adjoint;
  }

  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "rep_report.json", rep_report_json(report));
  std::cout << "rep mode=" << report.mode
            << " lambda=" << format_double(report.lambda)
            << " opnorm=" << format_double(report.opnorm) << "\n";
  if (report.sup_rep_norm) {
    std::cout << "sup_rep_norm=" << format_double(*report.sup_rep_norm)
              << " infimum=" << format_double(*report.infimum_norm)
              << " adjoint_residual=" << format_double(*report.adjoint_residual_max)
              << "\n";
  }
  std::cout << "wrote " << (dir / "rep_report.json").string() << "\n";
  return 0;
}

int run_path(const GlobalOptions& global, const std::string& group_spec,
             const std::string& alphas_text, int truncation) {
  const GroupModel group = GroupModel::parse(group_spec);
  const std::vector<double> alphas = parse_alpha_grid(alphas_text);
  int window = global.window;
  if (window < 0) {
    if (!group.finite()) {
      throw ParameterError("infinite groups require --window");
    }
    window = group.diameter();
  }
  const EmbeddingSpec embedding = embedding_for(group);
  auto ball = std::make_shared<const Ball>(ball_enumerate(group, window));
  const std::vector<PathPoint> sweep = path_sweep(ball, embedding, alphas, window);
  const SchurReport schur = build_schur_report(group, embedding, alphas, truncation);

  RunConfig config;
  config.group = group.spec_string();
  config.window = global.window;
  config.truncation = truncation;
  config.alphas = alphas;
  const std::string config_text = config.to_canonical_string();

  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "path.csv", path_csv(sweep));
  atomic_write(dir / "schur.json", schur_report_json(schur, config_text));
  std::cout << "path points=" << sweep.size() << " window=" << window
            << " monotone="
            << (coefficients_strictly_decreasing(sweep) ? "yes" : "no") << "\n";
  for (const SchurRow& row : schur.rows) {
    std::cout << "schur alpha=" << format_double(row.alpha)
              << " truncated=" << format_double(row.truncated_sum)
              << (row.schur_bounded ? "" : "  (not Schur-bounded at this alpha)")
              << "\n";
  }
  std::cout << "wrote " << (dir / "path.csv").string() << " and "
            << (dir / "schur.json").string() << "\n";
  return 0;
}

int run_cocycle(const GlobalOptions& global, const std::string& group_spec,
                const std::string& kernel_spec, const std::string& epsilons_text,
                int pairs) {
  const GroupModel group = GroupModel::parse(group_spec);
  if (!group.finite()) {
    throw ParameterError(
        "the direct-sum cocycle needs exact-mode summands; pick a finite "
        "group model");
  }
  const KernelSpec spec = parse_kernel_spec(kernel_spec);
  const std::vector<double> epsilons = parse_epsilon_list(epsilons_text);
  auto ball =
      std::make_shared<const Ball>(ball_enumerate(group, group.diameter()));
  const Kernel kernel = make_kernel(group, ball, spec, global.seed);

  std::vector<std::pair<double, std::shared_ptr<const RenormedSpace>>> summands;
  summands.reserve(epsilons.size());
  for (double eps : epsilons) {
    summands.emplace_back(eps, std::make_shared<const RenormedSpace>(
                                   build_renormed_space(kernel, eps,
                                                        global.tol_psd)));
  }
  const CocycleModel model = cocycle_build(summands, global.window);
  const double residual =
      global.seed ? cocycle_identity_check(model, pairs, *global.seed)
                  : cocycle_identity_check(model, pairs);
  const GrowthProfile profile = norm_growth_profile(model);

  RunConfig config;
  config.group = group.spec_string();
  config.kernel = kernel_spec;
  config.window = global.window;
  config.seed = global.seed;
  config.tol_psd = global.tol_psd;
  config.epsilons = epsilons;
  const std::string config_text = config.to_canonical_string();

  const fs::path dir = prepare_out_dir(global);
  atomic_write(dir / "cocycle.json",
               cocycle_json(model, profile, residual, pairs, config_text));
  std::cout << "cocycle summands=" << model.summands.size()
            << " C=" << format_double(model.uniform_bound)
            << " identity_residual=" << format_double(residual) << "\n";
  std::cout << "wrote " << (dir / "cocycle.json").string() << "\n";
  return 0;
}

int run_report(const std::vector<std::string>& files) {
  int certificates = 0;
  int passing = 0;
  for (const std::string& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open: " + file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    std::cout << render_artifact(text);
    // Count verdict-bearing artifacts for the closing summary.
    if (text.find("\"schema\": \"certificate/1\"") != std::string::npos) {
      ++certificates;
      if (text.find("\"pass\": true") != std::string::npos) ++passing;
    }
    std::cout << "\n";
  }
  if (certificates > 0) {
    std::cout << "certificates: " << passing << " pass, "
              << (certificates - passing) << " fail\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "builds positive definite kernels on finitely generated groups, renorms "
      "the ball space, and certifies the coefficient conditions"};
  app.fallthrough(true);
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--out-dir", global.out_dir, "directory for artifacts")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "seed for randomized constructions");
  app.add_option("--tol-psd", global.tol_psd,
                 "override the 1e-8 factor of the psd tolerance");
  app.add_option("--window", global.window,
                 "verification window radius (default: whole finite group)");

  int exit_code = 0;

  std::string ball_group;
  int ball_radius = 0;
  auto* ball_cmd = app.add_subcommand("ball", "enumerate a metric ball");
  ball_cmd->add_option("--group", ball_group, "group spec, e.g. torus:32,2")
      ->required();
  ball_cmd->add_option("--radius", ball_radius, "ball radius")->required();
  ball_cmd->callback(
      [&] { exit_code = run_ball(global, ball_group, ball_radius); });

  std::string kernel_group, kernel_kernel;
  int kernel_radius = -1;
  auto* kernel_cmd = app.add_subcommand("kernel", "build a kernel matrix");
  kernel_cmd->add_option("--group", kernel_group, "group spec")->required();
  kernel_cmd->add_option("--kernel", kernel_kernel, "kernel spec type:param")
      ->required();
  kernel_cmd->add_option("--radius", kernel_radius,
                         "ball radius (default: group diameter)");
  kernel_cmd->callback([&] {
    exit_code = run_kernel(global, kernel_group, kernel_kernel, kernel_radius);
  });

  std::string verify_group, verify_kernel;
  double verify_epsilon = 0.0;
  int verify_support = -1;
  auto* verify_cmd =
      app.add_subcommand("verify", "forward and converse coefficient certificates");
  verify_cmd->add_option("--group", verify_group, "group spec")->required();
  verify_cmd->add_option("--kernel", verify_kernel, "kernel spec")->required();
  verify_cmd->add_option("--epsilon", verify_epsilon, "closeness target")
      ->required();
  verify_cmd->add_option("--support", verify_support,
                         "declared S (default: the kernel's own)");
  verify_cmd->callback([&] {
    exit_code = run_verify(global, verify_group, verify_kernel, verify_epsilon,
                           verify_support);
  });

  std::string rep_group, rep_kernel;
  double rep_epsilon = 0.0;
  auto* rep_cmd =
      app.add_subcommand("rep", "representation norms on the renormed space");
  rep_cmd->add_option("--group", rep_group, "group spec")->required();
  rep_cmd->add_option("--kernel", rep_kernel, "kernel spec")->required();
  rep_cmd->add_option("--epsilon", rep_epsilon, "renorming epsilon")->required();
  rep_cmd->callback(
      [&] { exit_code = run_rep(global, rep_group, rep_kernel, rep_epsilon); });

  std::string path_group, path_alphas;
  int path_truncation = 30;
  auto* path_cmd =
      app.add_subcommand("path", "alpha sweep of the interpolating family");
  path_cmd->add_option("--group", path_group, "group spec")->required();
  path_cmd->add_option("--alphas", path_alphas,
                       "alpha grid: one value, a comma list, or "
                       "start:stop:log|lin:count")
      ->required();
  path_cmd->add_option("--truncation", path_truncation,
                       "Schur row-sum truncation radius")
      ->capture_default_str();
  path_cmd->callback([&] {
    exit_code = run_path(global, path_group, path_alphas, path_truncation);
  });

  std::string cocycle_group, cocycle_kernel;
  std::string cocycle_epsilons =
      "0.5,0.25,0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625";
  int cocycle_pairs = 100;
  auto* cocycle_cmd =
      app.add_subcommand("cocycle", "direct-sum cocycle over an epsilon ladder");
  cocycle_cmd->add_option("--group", cocycle_group, "finite group spec")
      ->required();
  cocycle_cmd->add_option("--kernel", cocycle_kernel, "kernel spec")->required();
  cocycle_cmd->add_option("--epsilons", cocycle_epsilons,
                          "strictly decreasing comma list")
      ->capture_default_str();
  cocycle_cmd->add_option("--pairs", cocycle_pairs,
                          "seeded pairs for the identity check")
      ->capture_default_str();
  cocycle_cmd->callback([&] {
    exit_code = run_cocycle(global, cocycle_group, cocycle_kernel,
                            cocycle_epsilons, cocycle_pairs);
  });

  std::vector<std::string> report_files;
  auto* report_cmd =
      app.add_subcommand("report", "render artifact JSON as text tables");
  report_cmd->add_option("files", report_files, "artifact files")->required();
  report_cmd->callback([&] { exit_code = run_report(report_files); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const renorm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
