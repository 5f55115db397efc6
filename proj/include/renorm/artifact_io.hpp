// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "renorm/certify.hpp"
#include "renorm/cocycle.hpp"
#include "renorm/path.hpp"

namespace renorm {

// Formats with 17 significant digits ("%.17g"), enough for bit-faithful
// round-trips of IEEE doubles.  NumericError on non-finite input (JSON has
// no representation for it, and no artifact should contain one).
std::string format_double(double value);

// Minimal deterministic JSON emitter: keys appear in call order, numbers go
// through format_double, output is pretty-printed with two-space indents.
// Writing is hand-rolled so artifacts are byte-stable across platforms;
// parsing (the less delicate direction) uses a standard JSON library.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(const std::string& text);
  JsonWriter& value(const char* text);
  JsonWriter& value(double number);
  JsonWriter& value(int number);
  JsonWriter& value(std::int64_t number);
  JsonWriter& value(std::uint64_t number);
  JsonWriter& value(bool flag);
  JsonWriter& null();

  std::string str() const;

 private:
  enum class Frame { Object, Array };
  void before_value();
  void indent();

  std::ostringstream out_;
  std::vector<Frame> stack_;
  std::vector<bool> has_items_;
  bool pending_key_ = false;
};

// Writes content to path via a temporary file in the same directory followed
// by an atomic rename, so partially written artifacts never appear under the
// final name.  Throws Error on I/O failure.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// ---- artifact serializers (deterministic byte-for-byte) -------------------

std::string kernel_json(const Kernel& kernel);
std::string ball_json(const Ball& ball);
std::string certificate_json(const Certificate& cert, const std::string& config);
std::string schur_report_json(const SchurReport& report, const std::string& config);
std::string path_csv(const std::vector<PathPoint>& sweep);
std::string cocycle_json(const CocycleModel& model, const GrowthProfile& profile,
                         double identity_residual, int pair_count,
                         const std::string& config);

// Representation-norm report assembled by the CLI from library calls.
struct RepReportRow {
  std::string element;
  double value = 0.0;
  bool lower_bound = false;
};

struct RepReport {
  std::string config;
  std::string group_spec;
  std::string kernel_kind;
  double epsilon = 0.0;
  std::string mode;
  double lambda = 0.0;
  double opnorm = 0.0;
  std::vector<RepReportRow> generator_norms;
  std::optional<double> sup_rep_norm;        // exact mode only
  std::optional<double> infimum_norm;        // exact mode only
  std::optional<double> adjoint_residual_max;  // exact mode only
};

std::string rep_report_json(const RepReport& report);

// Parses a kernel artifact back into a Kernel, re-enumerating its ball from
// the recorded group spec and radius.  SchemaError names any offending field.
Kernel load_kernel(const std::filesystem::path& path);

// Renders any artifact JSON produced above as an aligned, deterministic text
// table (certificates end with their PASS/FAIL verdict).  SchemaError for
// unknown or missing schema.
std::string render_artifact(const std::string& json_text);

// ---- run configuration -----------------------------------------------------

// Enough of a CLI invocation to reproduce its mathematics.  The canonical
// string is embedded in artifacts, and parse(to_string(c)) == c.
struct RunConfig {
  std::string group;        // group spec string, e.g. "torus:32,2"
  std::string kernel;       // kernel spec string, e.g. "ball-overlap:8"
  double epsilon = 0.0;     // 0 = unset
  int support = -1;         // declared S; -1 = auto (kernel's own)
  int window = -1;          // -1 = whole group / unset
  int radius = -1;          // explicit ball radius; -1 = derived
  int truncation = 30;      // Schur truncation radius
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_psd;
  std::vector<double> alphas;
  std::vector<double> epsilons;  // cocycle summands

  std::string to_canonical_string() const;
  static RunConfig from_canonical_string(const std::string& text);
  bool operator==(const RunConfig&) const = default;
};

}  // namespace renorm
