#include "hullbound/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hullbound/errors.hpp"

namespace hullbound {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::object;
  return v;
}

JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::array;
  return v;
}

JsonValue& JsonValue::add(std::string key, JsonValue v) {
  if (kind_ != Kind::object) throw Error("add() on a non-object JSON value");
  members_.emplace_back(std::move(key), std::move(v));
  return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
  if (kind_ != Kind::array) throw Error("push() on a non-array JSON value");
  items_.push_back(std::move(v));
  return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int level) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * level), ' ');
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int level) const {
  switch (kind_) {
    case Kind::null: out += "null"; return;
    case Kind::boolean: out += bool_ ? "true" : "false"; return;
    case Kind::integer: out += std::to_string(int_); return;
    case Kind::number: {
      if (!std::isfinite(num_)) throw Error("cannot serialize a non-finite number");
      out += format_double(num_);
      return;
    }
    case Kind::string: write_escaped(out, str_); return;
    case Kind::array: {
      if (items_.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += indent > 0 ? "," : ",";
        newline_indent(out, indent, level + 1);
        items_[i].write(out, indent, level + 1);
      }
      newline_indent(out, indent, level);
      out += ']';
      return;
    }
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ",";
        newline_indent(out, indent, level + 1);
        write_escaped(out, members_[i].first);
        out += indent > 0 ? ": " : ":";
        members_[i].second.write(out, indent, level + 1);
      }
      newline_indent(out, indent, level);
      out += '}';
      return;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

namespace {

JsonValue points_json(const std::vector<Point>& pts) {
  JsonValue arr = JsonValue::array();
  for (const Point& p : pts) {
    JsonValue pair = JsonValue::array();
    pair.push(p.x).push(p.y);
    arr.push(std::move(pair));
  }
  return arr;
}

JsonValue optional_json(const std::optional<double>& v) {
  if (v) return JsonValue(*v);
  return JsonValue("undefined");
}

}  // namespace

JsonValue to_json(const PLFunction& g) {
  JsonValue o = JsonValue::object();
  o.add("breakpoints", points_json(g.breakpoints()));
  o.add("shape", g.shape() == Shape::convex ? "convex" : "concave");
  return o;
}

JsonValue to_json(const HullPolygon& h) { return points_json(h.vertices()); }

JsonValue to_json(const Domain& d) {
  JsonValue arr = JsonValue::array();
  for (const auto& iv : d.intervals()) {
    JsonValue pair = JsonValue::array();
    pair.push(iv.lo).push(iv.hi);
    arr.push(std::move(pair));
  }
  return arr;
}

JsonValue to_json(const BoundsReport& r) {
  JsonValue o = JsonValue::object();
  o.add("mean_x", r.mean_x);
  o.add("lower", r.lower);
  o.add("upper", r.upper);
  o.add("f_at_mean", optional_json(r.f_at_mean));
  o.add("jensen_reduced", r.jensen_reduced);
  return o;
}

JsonValue to_json(const ConstantsReport& r) {
  JsonValue o = JsonValue::object();
  o.add("mean_x", optional_json(r.mean_x));
  o.add("c_l_at", optional_json(r.c_l_at));
  o.add("c_u_at", optional_json(r.c_u_at));
  o.add("s_l", r.s_l);
  o.add("s_u", r.s_u);
  o.add("c_hat_l", optional_json(r.c_hat_l));
  o.add("c_hat_u", optional_json(r.c_hat_u));
  o.add("obvious_inf", r.obvious_inf);
  o.add("obvious_sup", r.obvious_sup);
  o.add("obvious_ratio_lo", optional_json(r.obvious_ratio_lo));
  o.add("obvious_ratio_hi", optional_json(r.obvious_ratio_hi));
  return o;
}

JsonValue to_json(const DiscreteDistribution& dist) {
  JsonValue o = JsonValue::object();
  JsonValue s = JsonValue::array();
  for (double x : dist.support) s.push(x);
  JsonValue w = JsonValue::array();
  for (double x : dist.weights) w.push(x);
  o.add("support", std::move(s));
  o.add("weights", std::move(w));
  return o;
}

JsonValue to_json(const VerifyReport& r) {
  JsonValue o = JsonValue::object();
  o.add("all_pass", r.all_pass);
  o.add("worst_margin", r.worst_margin);
  o.add("tolerance", r.tolerance);
  JsonValue coords = JsonValue::array();
  for (const auto& c : r.coords) {
    JsonValue co = JsonValue::object();
    co.add("index", c.index);
    co.add("mean_value", c.mean_value);
    co.add("value", c.value);
    co.add("lower", c.lower);
    co.add("upper", c.upper);
    co.add("margin_lower", c.margin_lower);
    co.add("margin_upper", c.margin_upper);
    co.add("pass", c.pass);
    co.add("f_at_mean", optional_json(c.f_at_mean));
    co.add("ratio_lower", optional_json(c.ratio_lower));
    co.add("ratio_upper", optional_json(c.ratio_upper));
    coords.push(std::move(co));
  }
  o.add("coords", std::move(coords));
  return o;
}

JsonValue to_json(const OracleSummary& s) {
  JsonValue o = JsonValue::object();
  o.add("trials", s.trials);
  o.add("passes", s.passes);
  o.add("pass_fraction", s.pass_fraction);
  o.add("worst_margin", s.worst_margin);
  if (s.first_failure) o.add("first_failure", *s.first_failure);
  else o.add("first_failure", JsonValue());
  o.add("tolerance", s.tolerance);
  o.add("seed", s.seed);
  return o;
}

JsonValue to_json(const McEstimate& e) {
  JsonValue o = JsonValue::object();
  o.add("samples", e.samples);
  o.add("mean_x", e.mean_x);
  o.add("se_x", e.se_x);
  o.add("mean_fx", e.mean_fx);
  o.add("se_fx", e.se_fx);
  return o;
}

namespace {

std::string csv_points(const std::vector<Point>& pts) {
  std::string out = "x,y\n";
  for (const Point& p : pts) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += '\n';
  }
  return out;
}

nlohmann::json parse_or_throw(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("malformed JSON input");
  return j;
}

}  // namespace

std::string to_csv(const PLFunction& g) { return csv_points(g.breakpoints()); }
std::string to_csv(const HullPolygon& h) { return csv_points(h.vertices()); }

MarkovOperator markov_from_json(const std::string& text) {
  nlohmann::json j = parse_or_throw(text);
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  if (!j.is_array() || j.empty()) throw Error("operator JSON must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw Error("operator rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  std::vector<double> data;
  data.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw Error("operator rows have unequal lengths");
    for (const auto& e : row) {
      if (!e.is_number()) throw Error("operator entries must be numbers");
      data.push_back(e.get<double>());
    }
  }
  return MarkovOperator(rows, cols, std::move(data));
}

FiniteConditioning conditioning_from_json(const std::string& text) {
  nlohmann::json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("weights") || !j.contains("partition"))
    throw Error("conditioning JSON needs \"weights\" and \"partition\"");
  std::vector<double> weights;
  for (const auto& w : j["weights"]) {
    if (!w.is_number()) throw Error("conditioning weights must be numbers");
    weights.push_back(w.get<double>());
  }
  std::vector<std::vector<std::size_t>> partition;
  for (const auto& block : j["partition"]) {
    if (!block.is_array()) throw Error("conditioning partition must be an array of index arrays");
    std::vector<std::size_t> b;
    for (const auto& i : block) {
      if (!i.is_number_unsigned()) throw Error("partition indices must be nonnegative integers");
      b.push_back(i.get<std::size_t>());
    }
    partition.push_back(std::move(b));
  }
  return FiniteConditioning(std::move(weights), std::move(partition));
}

std::vector<double> reals_from_json(const std::string& text) {
  nlohmann::json j = parse_or_throw(text);
  if (j.is_object() && j.contains("values")) j = j["values"];
  if (!j.is_array()) throw Error("expected a JSON array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw Error("expected a JSON array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Domain domain_from_json(const std::string& text) {
  nlohmann::json j = parse_or_throw(text);
  if (!j.is_array()) throw Error("domain JSON must be an array of [lo, hi] pairs");
  std::vector<Interval> intervals;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw Error("domain JSON must be an array of [lo, hi] pairs");
    intervals.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return Domain(std::move(intervals));
}

std::map<std::string, std::string> config_from_json(const std::string& text) {
  nlohmann::json j = parse_or_throw(text);
  if (!j.is_object()) throw Error("config JSON must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) out[key] = value.get<std::string>();
    else if (value.is_boolean()) out[key] = value.get<bool>() ? "true" : "false";
    else if (value.is_number_unsigned()) out[key] = std::to_string(value.get<std::uint64_t>());
    else if (value.is_number_integer()) out[key] = std::to_string(value.get<std::int64_t>());
    else if (value.is_number()) out[key] = format_double(value.get<double>());
    else throw Error("config values must be scalars");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
  if (!out.flush()) throw Error("failed writing file '" + path + "'");
}

}  // namespace hullbound
