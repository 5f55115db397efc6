// SPDX-License-Identifier: Apache-2.0
#include "renorm/artifact_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "renorm/errors.hpp"

namespace renorm {

namespace {

using nlohmann::json;

std::string escape_json(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("artifact is not valid JSON: ") + e.what());
  }
}

const json& require_field(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw SchemaError(std::string("missing field: ") + field);
  }
  return *it;
}

std::string require_string(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_string()) {
    throw SchemaError(std::string("field is not a string: ") + field);
  }
  return v.get<std::string>();
}

std::int64_t require_int(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number_integer()) {
    throw SchemaError(std::string("field is not an integer: ") + field);
  }
  return v.get<std::int64_t>();
}

double require_number(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number()) {
    throw SchemaError(std::string("field is not a number: ") + field);
  }
  return v.get<double>();
}

// Aligned two-column table accumulator used by render_artifact.
class Table {
 public:
  void row(const std::string& label, const std::string& value) {
    rows_.emplace_back(label, value);
  }
  void row(const std::string& label, double value) {
    rows_.emplace_back(label, format_double(value));
  }
  void row(const std::string& label, std::int64_t value) {
    rows_.emplace_back(label, std::to_string(value));
  }
  void blank() { rows_.emplace_back("", ""); }

  std::string str(const std::string& title) const {
    std::size_t width = 0;
    for (const auto& [label, value] : rows_) width = std::max(width, label.size());
    std::ostringstream out;
    out << "== " << title << " ==\n";
    for (const auto& [label, value] : rows_) {
      if (label.empty() && value.empty()) {
        out << "\n";
        continue;
      }
      out << "  " << label;
      out << std::string(width - label.size() + 2, ' ');
      out << value << "\n";
    }
    return out.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string verdict_word(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    throw NumericError("refusing to serialize a non-finite number");
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// ---- JsonWriter -------------------------------------------------------------

void JsonWriter::indent() {
  out_ << "\n" << std::string(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  if (stack_.back() == Frame::Object) {
    throw Error("JSON writer: object members need a key");
  }
  if (has_items_.back()) out_ << ", ";
  has_items_.back() = true;
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ << "{";
  stack_.push_back(Frame::Object);
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  if (stack_.empty() || stack_.back() != Frame::Object) {
    throw Error("JSON writer: unbalanced end_object");
  }
  const bool had_items = has_items_.back();
  stack_.pop_back();
  has_items_.pop_back();
  // Objects nested inside arrays stay compact; top-level objects are
  // pretty-printed one member per line.
  const bool compact =
      std::find(stack_.begin(), stack_.end(), Frame::Array) != stack_.end();
  if (had_items && !compact) indent();
  out_ << "}";
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ << "[";
  stack_.push_back(Frame::Array);
  has_items_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  if (stack_.empty() || stack_.back() != Frame::Array) {
    throw Error("JSON writer: unbalanced end_array");
  }
  stack_.pop_back();
  has_items_.pop_back();
  out_ << "]";
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (stack_.empty() || stack_.back() != Frame::Object || pending_key_) {
    throw Error("JSON writer: key outside an object");
  }
  const bool compact =
      std::find(stack_.begin(), stack_.end(), Frame::Array) != stack_.end();
  const bool had_items = has_items_.back();
  if (had_items) out_ << ",";
  has_items_.back() = true;
  if (compact) {
    if (had_items) out_ << " ";
  } else {
    indent();
  }
  out_ << '"' << escape_json(name) << "\": ";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& text) {
  before_value();
  out_ << '"' << escape_json(text) << '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* text) { return value(std::string(text)); }

JsonWriter& JsonWriter::value(double number) {
  before_value();
  out_ << format_double(number);
  return *this;
}

JsonWriter& JsonWriter::value(int number) {
  before_value();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t number) {
  before_value();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t number) {
  before_value();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(bool flag) {
  before_value();
  out_ << (flag ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ << "null";
  return *this;
}

std::string JsonWriter::str() const {
  if (!stack_.empty()) throw Error("JSON writer: unclosed object or array");
  return out_.str() + "\n";
}

// ---- atomic file writes -----------------------------------------------------

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                ec.message());
  }
}

// ---- serializers ------------------------------------------------------------

std::string kernel_json(const Kernel& kernel) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("kernel/1");
  w.key("group").value(kernel.group().spec_string());
  w.key("ball_radius").value(kernel.ball->radius);
  w.key("kind").value(kernel_kind_name(kernel.kind));
  w.key("support_radius").value(kernel.support_radius);
  w.key("params").begin_object();
  if (kernel.params.overlap_radius) {
    w.key("overlap_radius").value(*kernel.params.overlap_radius);
  }
  if (kernel.params.ray_length) w.key("ray_length").value(*kernel.params.ray_length);
  if (kernel.params.alpha) w.key("alpha").value(*kernel.params.alpha);
  if (kernel.params.pattern_radius) {
    w.key("pattern_radius").value(*kernel.params.pattern_radius);
  }
  if (kernel.params.seed) w.key("seed").value(*kernel.params.seed);
  if (kernel.params.embedding) w.key("embedding").value(*kernel.params.embedding);
  w.end_object();
  w.key("size").value(kernel.size());
  w.key("values").begin_array();
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = 0; j < kernel.size(); ++j) w.value(kernel.values(i, j));
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string ball_json(const Ball& ball) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("ball/1");
  w.key("group").value(ball.group.spec_string());
  w.key("radius").value(ball.radius);
  w.key("size").value(ball.size());
  w.key("sphere_sizes").begin_array();
  for (std::uint64_t s : ball.group.sphere_sizes(ball.radius)) w.value(s);
  w.end_array();
  w.key("elements").begin_array();
  for (int i = 0; i < ball.size(); ++i) {
    w.begin_object();
    w.key("index").value(i);
    w.key("distance").value(ball.distance_of(i));
    w.key("element").value(ball.group.to_string(ball.element(i)));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string certificate_json(const Certificate& cert, const std::string& config) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("certificate/1");
  w.key("config").value(config);
  w.key("direction").value(cert.direction);
  w.key("group").value(cert.group_spec);
  w.key("window").value(cert.window_radius);
  w.key("window_size").value(cert.window_size);
  w.key("epsilon_target").value(cert.epsilon_target);
  w.key("epsilon_measured").value(cert.epsilon_measured);
  w.key("s_declared").value(cert.s_declared);
  w.key("s_measured").value(cert.s_measured);
  w.key("verdicts").begin_object();
  w.key("unit_norm").value(cert.unit_norm_pass);
  w.key("neighbor").value(cert.neighbor_pass);
  w.key("support").value(cert.support_pass);
  if (cert.psd_pass) w.key("psd").value(*cert.psd_pass);
  w.end_object();
  if (cert.direction == "forward") {
    w.key("bookkeeping").begin_object();
    w.key("applicable").value(cert.bookkeeping_applicable);
    w.key("bound").value(cert.bookkeeping_bound);
    w.key("holds").value(cert.bookkeeping_holds);
    w.end_object();
  }
  if (cert.psd_min_eigenvalue) {
    w.key("psd_min_eigenvalue").value(*cert.psd_min_eigenvalue);
  }
  w.key("witnesses").begin_array();
  for (const Witness& witness : cert.witnesses) {
    w.begin_object();
    w.key("g").value(witness.g);
    w.key("h").value(witness.h);
    w.key("value").value(witness.value);
    w.end_object();
  }
  w.end_array();
  w.key("pass").value(cert.pass);
  w.end_object();
  return w.str();
}

std::string schur_report_json(const SchurReport& report, const std::string& config) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("schur/1");
  w.key("config").value(config);
  w.key("group").value(report.group_spec);
  w.key("embedding").value(report.embedding);
  w.key("truncation_radius").value(report.truncation_radius);
  w.key("divergence_threshold");
  if (report.divergence_threshold) {
    w.value(*report.divergence_threshold);
  } else {
    w.null();
  }
  w.key("rows").begin_array();
  for (const SchurRow& row : report.rows) {
    w.begin_object();
    w.key("alpha").value(row.alpha);
    w.key("truncated_sum").value(row.truncated_sum);
    w.key("series_value");
    if (row.series_value) {
      w.value(*row.series_value);
    } else {
      w.null();
    }
    w.key("tail_bound");
    if (row.tail_bound) {
      w.value(*row.tail_bound);
    } else {
      w.null();
    }
    w.key("schur_bounded").value(row.schur_bounded);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string path_csv(const std::vector<PathPoint>& sweep) {
  std::ostringstream out;
  out << "alpha,modulator,normalizer,max_neighbor_deviation,max_offdiagonal,"
         "lambda,opnorm\n";
  for (const PathPoint& point : sweep) {
    out << format_double(point.alpha) << ','
        << format_double(point.modulator_value) << ','
        << format_double(point.normalizer) << ','
        << format_double(point.max_neighbor_deviation) << ','
        << format_double(point.max_offdiagonal) << ','
        << format_double(point.lambda) << ','
        << format_double(point.opnorm) << '\n';
  }
  return out.str();
}

std::string cocycle_json(const CocycleModel& model, const GrowthProfile& profile,
                         double identity_residual, int pair_count,
                         const std::string& config) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("cocycle/1");
  w.key("config").value(config);
  w.key("group").value(model.group_spec);
  w.key("window").value(model.window_radius);
  w.key("window_size").value(model.window_size);
  w.key("summands").begin_array();
  for (const CocycleSummand& summand : model.summands) {
    w.begin_object();
    w.key("epsilon").value(summand.epsilon);
    w.key("rep_norm_sup").value(summand.rep_norm_sup_value);
    w.key("rep_norm_infimum").value(summand.rep_norm_infimum_value);
    w.end_object();
  }
  w.end_array();
  w.key("c_measured").value(model.uniform_bound);
  w.key("identity_residual_max").value(identity_residual);
  w.key("identity_pairs").value(pair_count);
  w.key("growth_profile").begin_array();
  for (const GrowthRow& row : profile.rows) {
    w.begin_object();
    w.key("length").value(row.length);
    w.key("count").value(row.count);
    w.key("min").value(row.min);
    w.key("mean").value(row.mean);
    w.key("max").value(row.max);
    w.end_object();
  }
  w.end_array();
  w.key("minimum_monotone").value(profile.minimum_monotone);
  w.key("properness").value("not certified");
  w.end_object();
  return w.str();
}

std::string rep_report_json(const RepReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value("rep-report/1");
  w.key("config").value(report.config);
  w.key("group").value(report.group_spec);
  w.key("kernel").value(report.kernel_kind);
  w.key("epsilon").value(report.epsilon);
  w.key("mode").value(report.mode);
  w.key("lambda").value(report.lambda);
  w.key("opnorm").value(report.opnorm);
  w.key("generator_norms").begin_array();
  for (const RepReportRow& row : report.generator_norms) {
    w.begin_object();
    w.key("element").value(row.element);
    w.key("value").value(row.value);
    w.key("lower_bound").value(row.lower_bound);
    w.end_object();
  }
  w.end_array();
  w.key("sup_rep_norm");
  if (report.sup_rep_norm) {
    w.value(*report.sup_rep_norm);
  } else {
    w.null();
  }
  w.key("infimum_norm");
  if (report.infimum_norm) {
    w.value(*report.infimum_norm);
  } else {
    w.null();
  }
  w.key("adjoint_residual_max");
  if (report.adjoint_residual_max) {
    w.value(*report.adjoint_residual_max);
  } else {
    w.null();
  }
  w.end_object();
  return w.str();
}

// ---- loading ----------------------------------------------------------------

namespace {

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "ball-overlap") return KernelKind::BallOverlap;
  if (name == "tree-ray") return KernelKind::TreeRay;
  if (name == "gaussian") return KernelKind::Gaussian;
  if (name == "gram-random") return KernelKind::GramRandom;
  throw SchemaError("unknown kernel kind: " + name);
}

}  // namespace

Kernel load_kernel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const json j = parse_json(buffer.str());

  const std::string schema = require_string(j, "schema");
  if (schema != "kernel/1") throw SchemaError("unknown schema: " + schema);

  const std::string group_spec = require_string(j, "group");
  const int radius = static_cast<int>(require_int(j, "ball_radius"));
  const GroupModel group = GroupModel::parse(group_spec);
  auto ball = std::make_shared<const Ball>(ball_enumerate(group, radius));

  Kernel kernel;
  kernel.ball = ball;
  kernel.kind = parse_kernel_kind(require_string(j, "kind"));
  kernel.support_radius = static_cast<int>(require_int(j, "support_radius"));

  const int size = static_cast<int>(require_int(j, "size"));
  if (size != ball->size()) {
    throw SchemaError("size does not match the re-enumerated ball");
  }
  const json& values = require_field(j, "values");
  if (!values.is_array() ||
      values.size() != static_cast<std::size_t>(size) * size) {
    throw SchemaError("values must hold size*size numbers");
  }
  kernel.values.resize(size, size);
  std::size_t pos = 0;
  for (int i = 0; i < size; ++i) {
    for (int j2 = 0; j2 < size; ++j2, ++pos) {
      if (!values[pos].is_number()) throw SchemaError("values must be numbers");
      kernel.values(i, j2) = values[pos].get<double>();
    }
  }

  const json& params = require_field(j, "params");
  if (!params.is_object()) throw SchemaError("params must be an object");
  if (params.contains("overlap_radius")) {
    kernel.params.overlap_radius = params["overlap_radius"].get<int>();
  }
  if (params.contains("ray_length")) {
    kernel.params.ray_length = params["ray_length"].get<int>();
  }
  if (params.contains("alpha")) kernel.params.alpha = params["alpha"].get<double>();
  if (params.contains("pattern_radius")) {
    kernel.params.pattern_radius = params["pattern_radius"].get<int>();
  }
  if (params.contains("seed")) {
    kernel.params.seed = params["seed"].get<std::uint64_t>();
  }
  if (params.contains("embedding")) {
    kernel.params.embedding = params["embedding"].get<std::string>();
  }
  return kernel;
}

// ---- rendering --------------------------------------------------------------

namespace {

std::string render_certificate(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("window", require_int(j, "window"));
  t.row("window size", require_int(j, "window_size"));
  t.row("epsilon target", require_number(j, "epsilon_target"));
  t.row("epsilon measured", require_number(j, "epsilon_measured"));
  t.row("S declared", require_int(j, "s_declared"));
  t.row("S measured", require_int(j, "s_measured"));
  const json& verdicts = require_field(j, "verdicts");
  t.row("unit norm", verdict_word(require_field(verdicts, "unit_norm").get<bool>()));
  t.row("neighbor", verdict_word(require_field(verdicts, "neighbor").get<bool>()));
  t.row("support", verdict_word(require_field(verdicts, "support").get<bool>()));
  if (verdicts.contains("psd")) {
    t.row("psd", verdict_word(verdicts["psd"].get<bool>()));
  }
  if (j.contains("bookkeeping")) {
    const json& b = j["bookkeeping"];
    if (require_field(b, "applicable").get<bool>()) {
      t.row("bookkeeping bound", require_number(b, "bound"));
      t.row("bookkeeping holds", verdict_word(require_field(b, "holds").get<bool>()));
    }
  }
  const json& witnesses = require_field(j, "witnesses");
  for (const json& witness : witnesses) {
    std::ostringstream line;
    line << "g=" << require_string(witness, "g")
         << "  h=" << require_string(witness, "h")
         << "  value=" << format_double(require_number(witness, "value"));
    t.row("witness", line.str());
  }
  t.blank();
  t.row("result", verdict_word(require_field(j, "pass").get<bool>()));
  return t.str("certificate (" + require_string(j, "direction") + ")");
}

std::string render_kernel(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("ball radius", require_int(j, "ball_radius"));
  t.row("kind", require_string(j, "kind"));
  t.row("support radius", require_int(j, "support_radius"));
  t.row("size", require_int(j, "size"));
  return t.str("kernel");
}

std::string render_ball(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("radius", require_int(j, "radius"));
  t.row("size", require_int(j, "size"));
  const json& spheres = require_field(j, "sphere_sizes");
  std::ostringstream line;
  for (std::size_t i = 0; i < spheres.size(); ++i) {
    if (i) line << " ";
    line << spheres[i].get<std::uint64_t>();
  }
  t.row("sphere sizes", line.str());
  return t.str("ball");
}

std::string render_schur(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("embedding", require_string(j, "embedding"));
  t.row("truncation radius", require_int(j, "truncation_radius"));
  const json& threshold = require_field(j, "divergence_threshold");
  t.row("divergence threshold",
        threshold.is_null() ? std::string("none")
                            : format_double(threshold.get<double>()));
  for (const json& row : require_field(j, "rows")) {
    std::ostringstream line;
    line << "truncated=" << format_double(require_number(row, "truncated_sum"));
    const json& series = require_field(row, "series_value");
    if (!series.is_null()) {
      line << "  series=" << format_double(series.get<double>());
    }
    const json& tail = require_field(row, "tail_bound");
    if (!tail.is_null()) {
      line << "  tail<=" << format_double(tail.get<double>());
    }
    line << "  "
         << (require_field(row, "schur_bounded").get<bool>()
                 ? "bounded"
                 : "not Schur-bounded at this alpha");
    t.row("alpha " + format_double(require_number(row, "alpha")), line.str());
  }
  return t.str("schur row sums");
}

std::string render_rep_report(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("kernel", require_string(j, "kernel"));
  t.row("epsilon", require_number(j, "epsilon"));
  t.row("mode", require_string(j, "mode"));
  t.row("lambda", require_number(j, "lambda"));
  t.row("opnorm", require_number(j, "opnorm"));
  for (const json& row : require_field(j, "generator_norms")) {
    std::ostringstream line;
    line << format_double(require_number(row, "value"));
    if (require_field(row, "lower_bound").get<bool>()) line << " (lower bound)";
    t.row("generator " + require_string(row, "element"), line.str());
  }
  const json& sup = require_field(j, "sup_rep_norm");
  if (!sup.is_null()) t.row("sup rep norm", sup.get<double>());
  const json& infimum = require_field(j, "infimum_norm");
  if (!infimum.is_null()) t.row("infimum formula", infimum.get<double>());
  const json& adjoint = require_field(j, "adjoint_residual_max");
  if (!adjoint.is_null()) t.row("adjoint residual", adjoint.get<double>());
  return t.str("representation norms");
}

std::string render_cocycle(const json& j) {
  Table t;
  t.row("group", require_string(j, "group"));
  t.row("window", require_int(j, "window"));
  t.row("window size", require_int(j, "window_size"));
  for (const json& summand : require_field(j, "summands")) {
    std::ostringstream line;
    line << "rep_norm_sup=" << format_double(require_number(summand, "rep_norm_sup"))
         << "  infimum="
         << format_double(require_number(summand, "rep_norm_infimum"));
    t.row("epsilon " + format_double(require_number(summand, "epsilon")),
          line.str());
  }
  t.row("uniform bound C", require_number(j, "c_measured"));
  t.row("identity residual", require_number(j, "identity_residual_max"));
  for (const json& row : require_field(j, "growth_profile")) {
    std::ostringstream line;
    line << "count=" << require_int(row, "count")
         << "  min=" << format_double(require_number(row, "min"))
         << "  mean=" << format_double(require_number(row, "mean"))
         << "  max=" << format_double(require_number(row, "max"));
    t.row("length " + std::to_string(require_int(row, "length")), line.str());
  }
  t.row("properness", require_string(j, "properness"));
  return t.str("cocycle");
}

}  // namespace

std::string render_artifact(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) throw SchemaError("artifact root must be an object");
  const std::string schema = require_string(j, "schema");
  if (schema == "certificate/1") return render_certificate(j);
  if (schema == "kernel/1") return render_kernel(j);
  if (schema == "ball/1") return render_ball(j);
  if (schema == "schur/1") return render_schur(j);
  if (schema == "rep-report/1") return render_rep_report(j);
  if (schema == "cocycle/1") return render_cocycle(j);
  throw SchemaError("unknown schema: " + schema);
}

// ---- run configuration ------------------------------------------------------

namespace {

std::string join_doubles(const std::vector<double>& values) {
  if (values.empty()) return "-";
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ",";
    out << format_double(values[i]);
  }
  return out.str();
}

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> values;
  if (text == "-" || text.empty()) return values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw SchemaError("config holds a malformed number: " + item);
    }
  }
  return values;
}

}  // namespace

std::string RunConfig::to_canonical_string() const {
  std::ostringstream out;
  out << "group=" << group;
  out << ";kernel=" << (kernel.empty() ? "-" : kernel);
  out << ";epsilon=" << (epsilon > 0.0 ? format_double(epsilon) : "-");
  out << ";support=" << support;
  out << ";window=" << window;
  out << ";radius=" << radius;
  out << ";truncation=" << truncation;
  out << ";seed=" << (seed ? std::to_string(*seed) : "-");
  out << ";tol-psd=" << (tol_psd ? format_double(*tol_psd) : "-");
  out << ";alphas=" << join_doubles(alphas);
  out << ";epsilons=" << join_doubles(epsilons);
  return out.str();
}

RunConfig RunConfig::from_canonical_string(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ';')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos) {
      throw SchemaError("config entry lacks '=': " + part);
    }
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    try {
      if (key == "group") {
        config.group = value;
      } else if (key == "kernel") {
        config.kernel = value == "-" ? "" : value;
      } else if (key == "epsilon") {
        config.epsilon = value == "-" ? 0.0 : std::stod(value);
      } else if (key == "support") {
        config.support = std::stoi(value);
      } else if (key == "window") {
        config.window = std::stoi(value);
      } else if (key == "radius") {
        config.radius = std::stoi(value);
      } else if (key == "truncation") {
        config.truncation = std::stoi(value);
      } else if (key == "seed") {
        if (value != "-") config.seed = std::stoull(value);
      } else if (key == "tol-psd") {
        if (value != "-") config.tol_psd = std::stod(value);
      } else if (key == "alphas") {
        config.alphas = split_doubles(value);
      } else if (key == "epsilons") {
        config.epsilons = split_doubles(value);
      } else {
        throw SchemaError("unknown config key: " + key);
      }
    } catch (const SchemaError&) {
      throw;
    } catch (const std::exception&) {
      throw SchemaError("config holds a malformed value for key: " + key);
    }
  }
  return config;
}

}  // namespace renorm
