// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "renorm/artifact_io.hpp"
#include "renorm/certify.hpp"
#include "renorm/errors.hpp"
#include "renorm/groups.hpp"
#include "renorm/kernels.hpp"
#include "renorm/path.hpp"
#include "renorm/renormed.hpp"

using namespace renorm;
namespace fs = std::filesystem;

namespace {

std::shared_ptr<const Ball> make_ball(const GroupModel& group, int radius) {
  return std::make_shared<const Ball>(ball_enumerate(group, radius));
}

fs::path temp_file(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "renorm-io-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("doubles format with enough digits to round-trip exactly") {
  // (Subnormals are excluded: std::stod reports ERANGE for them, though the
  // printed form is still exact. No artifact value reaches that range.)
  for (double x : {1.0 / 3.0, 0.1, -2.5, 1e300, 2.2250738585072014e-308, 0.0,
                   0.24705882352941178, 1.0986122886681098}) {
    CAPTURE(x);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.5) == "-0.5");
  CHECK_THROWS_AS(format_double(std::nan("")), NumericError);
  CHECK_THROWS_AS(format_double(1.0 / 0.0), NumericError);
}

TEST_CASE("the JSON writer emits the documented stable layout") {
  JsonWriter w;
  w.begin_object();
  w.key("n").value(1);
  w.key("list").begin_array().value(0.5).value("s").null().end_array();
  w.key("inner").begin_object().key("flag").value(false).end_object();
  w.end_object();
  CHECK(w.str() ==
        "{\n"
        "  \"n\": 1,\n"
        "  \"list\": [0.5, \"s\", null],\n"
        "  \"inner\": {\n"
        "    \"flag\": false\n"
        "  }\n"
        "}\n");
}

TEST_CASE("writer output is well-formed JSON, escapes included") {
  JsonWriter w;
  w.begin_object();
  w.key("text").value(std::string("a\"b\\c\n\td\x01"));
  w.key("numbers").begin_array().value(1.5).value(std::int64_t{-7}).end_array();
  w.end_object();
  const nlohmann::json parsed = nlohmann::json::parse(w.str());
  CHECK(parsed["text"] == "a\"b\\c\n\td\x01");
  CHECK(parsed["numbers"][0] == 1.5);
  CHECK(parsed["numbers"][1] == -7);
}

TEST_CASE("atomic_write leaves no temporary behind and overwrites cleanly") {
  const fs::path target = temp_file("atomic.txt");
  atomic_write(target, "first\n");
  CHECK(slurp(target) == "first\n");
  atomic_write(target, "second\n");
  CHECK(slurp(target) == "second\n");
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));
}

TEST_CASE("kernels survive the save/load round trip bit-for-bit") {
  const GroupModel ring = GroupModel::cyclic(12);
  const Kernel original = gram_random_kernel(make_ball(ring, 6), 2, 3);
  const fs::path file = temp_file("kernel.json");
  atomic_write(file, kernel_json(original));

  const Kernel loaded = load_kernel(file);
  CHECK(loaded.kind == original.kind);
  CHECK(loaded.support_radius == original.support_radius);
  CHECK(loaded.ball->group.spec_string() == "cyclic:12");
  CHECK(loaded.size() == original.size());
  CHECK(loaded.values == original.values);  // exact: %.17g round-trips
  REQUIRE(loaded.params.seed.has_value());
  CHECK(*loaded.params.seed == 3);

  SUBCASE("schema violations are named") {
    atomic_write(file, "{\"schema\": \"kernel/999\"}");
    CHECK_THROWS_WITH_AS(load_kernel(file),
                         doctest::Contains("unknown schema"), SchemaError);
    atomic_write(file, "not json at all");
    CHECK_THROWS_AS(load_kernel(file), SchemaError);
  }
}

TEST_CASE("run configurations round-trip through their canonical string") {
  RunConfig config;
  config.group = "torus:16,2";
  config.kernel = "ball-overlap:3";
  config.epsilon = 0.125;
  config.support = 7;
  config.window = 4;
  config.truncation = 25;
  config.seed = 42;
  config.alphas = {0.5, 2.0};
  const RunConfig back = RunConfig::from_canonical_string(config.to_canonical_string());
  CHECK(back == config);

  const RunConfig defaults;
  CHECK(RunConfig::from_canonical_string(defaults.to_canonical_string()) ==
        defaults);

  CHECK_THROWS_AS(RunConfig::from_canonical_string("group=z:1;martian=1"),
                  SchemaError);
  CHECK_THROWS_AS(RunConfig::from_canonical_string("epsilon=banana"),
                  SchemaError);
}

TEST_CASE("rendered certificates end with their verdict") {
  const GroupModel ring = GroupModel::cyclic(16);
  const RenormedSpace space =
      build_renormed_space(ball_overlap_kernel(make_ball(ring, 8), 4), 0.5);
  const CoefficientMatrix matrix = coefficients(space, -1);

  const Certificate good = verify_forward(matrix, 0.5, 9);
  const std::string good_text = render_artifact(certificate_json(good, "cfg"));
  CHECK(good_text.find("result") != std::string::npos);
  CHECK(good_text.rfind("PASS\n") == good_text.size() - 5);

  const Certificate bad = verify_forward(matrix, 1e-6, 9);
  const std::string bad_text = render_artifact(certificate_json(bad, "cfg"));
  CHECK(bad_text.rfind("FAIL\n") == bad_text.size() - 5);

  CHECK_THROWS_AS(render_artifact("{\"schema\": \"bogus/9\"}"), SchemaError);
  CHECK_THROWS_AS(render_artifact("{\"no\": \"schema\"}"), SchemaError);
  CHECK_THROWS_AS(render_artifact("]["), SchemaError);
}

TEST_CASE("every artifact family renders and parses as JSON") {
  const GroupModel ring = GroupModel::cyclic(12);
  const auto ball = make_ball(ring, 6);

  const std::string ball_text = ball_json(*ball);
  CHECK(nlohmann::json::parse(ball_text)["schema"] == "ball/1");
  CHECK(render_artifact(ball_text).find("cyclic:12") != std::string::npos);

  const EmbeddingSpec embedding = embedding_for(ring);
  const SchurReport schur = build_schur_report(ring, embedding, {0.5, 2.0}, 6);
  const std::string schur_text = schur_report_json(schur, "cfg");
  CHECK(nlohmann::json::parse(schur_text)["schema"] == "schur/1");
  CHECK(render_artifact(schur_text).find("0.5") != std::string::npos);

  RepReport rep;
  rep.config = "cfg";
  rep.group_spec = "cyclic:12";
  rep.kernel_kind = "ball-overlap";
  rep.epsilon = 0.5;
  rep.mode = "exact";
  rep.lambda = 0.4;
  rep.opnorm = 2.0;
  rep.generator_norms.push_back({"(1)", 1.25, false});
  rep.sup_rep_norm = 1.5;
  rep.infimum_norm = 1.5;
  rep.adjoint_residual_max = 1e-12;
  const std::string rep_text = rep_report_json(rep);
  CHECK(nlohmann::json::parse(rep_text)["schema"] == "rep-report/1");
  CHECK(render_artifact(rep_text).find("1.25") != std::string::npos);
}

TEST_CASE("the path CSV has the documented header and one row per alpha") {
  const GroupModel ring = GroupModel::cyclic(12);
  const auto ball = make_ball(ring, ring.diameter());
  const std::vector<PathPoint> sweep =
      path_sweep(ball, embedding_for(ring), {0.5, 1.0, 2.0}, 3);
  const std::string csv = path_csv(sweep);
  CHECK(csv.rfind("alpha,modulator,normalizer,max_neighbor_deviation,"
                  "max_offdiagonal,lambda,opnorm\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  // Rows are plain parseable numbers.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);
  CHECK(line.rfind("0.5,", 0) == 0);
}
