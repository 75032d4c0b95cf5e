#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hullbound/bounds.hpp"
#include "hullbound/domain.hpp"
#include "hullbound/geometry.hpp"
#include "hullbound/markov.hpp"
#include "hullbound/oracle.hpp"
#include "hullbound/witness.hpp"

namespace hullbound {

// Output JSON value with insertion-ordered object keys and floats printed with
// 17 significant digits, so identical runs dump byte-identical text.
class JsonValue {
public:
  static JsonValue object();
  static JsonValue array();
  JsonValue() : kind_(Kind::null) {}
  JsonValue(double v) : kind_(Kind::number), num_(v) {}
  JsonValue(std::uint64_t v) : kind_(Kind::integer), int_(v) {}
  JsonValue(int v) : kind_(Kind::integer), int_(static_cast<std::uint64_t>(v)) {}
  JsonValue(bool v) : kind_(Kind::boolean), bool_(v) {}
  JsonValue(std::string v) : kind_(Kind::string), str_(std::move(v)) {}
  JsonValue(const char* v) : kind_(Kind::string), str_(v) {}

  JsonValue& add(std::string key, JsonValue v);  // object
  JsonValue& push(JsonValue v);                  // array

  std::string dump(int indent = 0) const;

private:
  enum class Kind { null, object, array, string, number, integer, boolean };
  Kind kind_;
  double num_ = 0.0;
  std::uint64_t int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> items_;

  void write(std::string& out, int indent, int level) const;
};

std::string format_double(double v);  // %.17g

JsonValue to_json(const PLFunction& g);
JsonValue to_json(const HullPolygon& h);
JsonValue to_json(const Domain& d);
JsonValue to_json(const BoundsReport& r);
JsonValue to_json(const ConstantsReport& r);
JsonValue to_json(const DiscreteDistribution& dist);
JsonValue to_json(const VerifyReport& r);
JsonValue to_json(const OracleSummary& s);
JsonValue to_json(const McEstimate& e);

// CSV with one "x,y" row per point, for plotting.
std::string to_csv(const PLFunction& g);
std::string to_csv(const HullPolygon& h);

// Input parsing (strict: throws Error on malformed documents).
MarkovOperator markov_from_json(const std::string& text);
FiniteConditioning conditioning_from_json(const std::string& text);
std::vector<double> reals_from_json(const std::string& text);
Domain domain_from_json(const std::string& text);

// Flat key-value config file: {"fn": "...", "domain": "...", "resolution": 2049, ...}.
// Values are returned as strings for uniform CLI merging.
std::map<std::string, std::string> config_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hullbound
