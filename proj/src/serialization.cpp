#include "credal/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "credal/error.hpp"

namespace credal {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(std::string_view source, const std::string& field,
                             const std::string& message) {
  std::string msg(source);
  if (!field.empty()) msg += ": " + field;
  msg += ": " + message;
  fail(ErrorCode::ParseError, msg);
}

std::string index_field(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::vector<double> parse_number_row(const json& row, std::string_view source,
                                     const std::string& field, const char* what) {
  if (!row.is_array()) parse_fail(source, field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    const json& x = row[i];
    if (!x.is_number()) parse_fail(source, index_field(field, i), std::string(what) + " must be a number");
    out.push_back(x.get<double>());
  }
  return out;
}

SpacePtr parse_space(const json& doc, std::string_view source) {
  if (!doc.contains("space")) parse_fail(source, "space", "missing field");
  const json& s = doc["space"];
  if (!s.is_object()) parse_fail(source, "space", "expected an object");
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it.key() != "labels" && it.key() != "metric") {
      parse_fail(source, "space." + it.key(), "unknown field");
    }
  }
  if (!s.contains("labels")) parse_fail(source, "space.labels", "missing field");
  const json& l = s["labels"];
  if (!l.is_array() || l.empty()) parse_fail(source, "space.labels", "expected a nonempty array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!l[i].is_string()) parse_fail(source, index_field("space.labels", i), "label must be a string");
    labels.push_back(l[i].get<std::string>());
  }

  std::optional<Matrix> metric;
  if (s.contains("metric") && !s["metric"].is_null()) {
    const json& m = s["metric"];
    if (!m.is_array() || m.size() != labels.size()) {
      parse_fail(source, "space.metric", "expected " + std::to_string(labels.size()) + " rows");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string field = index_field("space.metric", i);
      rows.push_back(parse_number_row(m[i], source, field, "distance"));
      if (rows.back().size() != labels.size()) {
        parse_fail(source, field, "expected " + std::to_string(labels.size()) + " entries");
      }
    }
    metric = Matrix::from_rows(rows);
  }
  try {
    return make_space(std::move(labels), std::move(metric));
  } catch (const Error& e) {
    parse_fail(source, "space", e.what());
  }
}

}  // namespace

Instance parse_instance(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(source, "", e.what());
  }
  if (!doc.is_object()) parse_fail(source, "", "top level must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "name" && it.key() != "space" && it.key() != "vertices") {
      parse_fail(source, it.key(), "unknown field");
    }
  }

  std::optional<std::string> name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail(source, "name", "expected a string");
    name = doc["name"].get<std::string>();
  }

  SpacePtr space = parse_space(doc, source);

  if (!doc.contains("vertices")) parse_fail(source, "vertices", "missing field");
  const json& v = doc["vertices"];
  if (!v.is_array() || v.empty()) parse_fail(source, "vertices", "expected a nonempty array");
  std::vector<Distribution> vertices;
  vertices.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string field = index_field("vertices", i);
    std::vector<double> w = parse_number_row(v[i], source, field, "weight");
    try {
      vertices.emplace_back(space, std::move(w));
    } catch (const Error& e) {
      parse_fail(source, field, e.what());
    }
  }
  return Instance{std::move(name), CredalSet(space, std::move(vertices))};
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

std::string format_real(double x) {
  if (std::isinf(x) && x > 0) return "+inf";
  if (std::isinf(x)) return "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_real(ExtendedReal x) { return format_real(x.value()); }

std::string quote_json(std::string_view s) { return json(std::string(s)).dump(); }

void JsonWriter::newline() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::raw(std::string_view text) { out_ += text; }

void JsonWriter::before_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Frame& f = stack_.back();
  if (f.object) fail(ErrorCode::InvalidArgument, "JsonWriter: object member needs a key");
  if (f.count++ > 0) raw(",");
  if (f.compact) {
    if (f.count > 1) raw(" ");
  } else {
    newline();
  }
}

JsonWriter& JsonWriter::key(std::string_view name) {
  if (stack_.empty() || !stack_.back().object || pending_key_) {
    fail(ErrorCode::InvalidArgument, "JsonWriter: key outside an object");
  }
  Frame& f = stack_.back();
  if (f.count++ > 0) raw(",");
  newline();
  raw(quote_json(name));
  raw(": ");
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  raw("{");
  stack_.push_back({true, false, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const Frame f = stack_.back();
  stack_.pop_back();
  if (f.count > 0) newline();
  raw("}");
  return *this;
}

JsonWriter& JsonWriter::begin_array(bool compact) {
  before_value();
  raw("[");
  stack_.push_back({false, compact, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const Frame f = stack_.back();
  stack_.pop_back();
  if (f.count > 0 && !f.compact) newline();
  raw("]");
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  before_value();
  raw(std::isfinite(x) ? format_real(x) : quote_json(format_real(x)));
  return *this;
}

JsonWriter& JsonWriter::value(ExtendedReal x) { return value(x.value()); }

JsonWriter& JsonWriter::value(std::string_view s) {
  before_value();
  raw(quote_json(s));
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  before_value();
  raw(b ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t n) {
  before_value();
  raw(std::to_string(n));
  return *this;
}

JsonWriter& JsonWriter::value(int n) {
  before_value();
  raw(std::to_string(n));
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  raw("null");
  return *this;
}

std::string serialize_instance(const Instance& instance) {
  const CredalSet& set = instance.set;
  const FiniteSpace& space = *set.space();
  JsonWriter w;
  w.begin_object();
  if (instance.name) w.field("name", std::string_view(*instance.name));
  w.key("space").begin_object();
  w.key("labels").begin_array(true);
  for (const auto& l : space.labels()) w.value(std::string_view(l));
  w.end_array();
  if (space.has_metric()) {
    const Matrix& m = *space.metric();
    w.key("metric").begin_array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      w.begin_array(true);
      for (double x : m.row(i)) w.value(x);
      w.end_array();
    }
    w.end_array();
  }
  w.end_object();
  w.key("vertices").begin_array();
  for (const auto& v : set.vertices()) {
    w.begin_array(true);
    for (double x : v.weights()) w.value(x);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string convergence_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out(kConvergenceCsvHeader);
  out += '\n';
  auto cell = [&out](const std::optional<double>& x) {
    out += ',';
    if (x) out += format_real(*x);
  };
  for (const auto& r : records) {
    out += std::to_string(r.step);
    cell(r.kl_bar.total.value());
    cell(r.gjs);
    cell(r.gtv);
    cell(r.gw1);
    cell(r.weak_gap);
    cell(r.residuals.pinsker_slack);
    cell(r.residuals.js_quarter_slack);
    cell(r.residuals.weak_lipschitz_slack);
    cell(r.residuals.w1_diameter_slack);
    out += '\n';
  }
  return out;
}

}  // namespace credal
