// Copyright 2026 The fincert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FINCERT_JSON_IO_HPP
#define FINCERT_JSON_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fincert/core.hpp"
#include "fincert/rational.hpp"

namespace fincert {

using Json = nlohmann::ordered_json;

// Scalars cross the JSON boundary as integers or strings ("p/q" or exact
// decimal). Non-integer JSON numbers are rejected: a binary double is
// not the decimal the author wrote, so exactness would silently break.
inline Rational scalar_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
    return Rational(Integer(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float())
    throw ParseError(
        "non-integer JSON number; write decimals as strings to keep them exact");
  throw ParseError("expected a scalar, got " + std::string(j.type_name()));
}

inline Json scalar_to_json(const Rational& r) { return Json(format_rational(r)); }

inline std::vector<Rational> vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(scalar_from_json(e));
  return out;
}

inline Json vector_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(scalar_to_json(r));
  return out;
}

inline Json measure_to_json(const DiscreteMeasure& m) {
  Json out = Json::object();
  for (std::size_t i = 0; i < m.size(); ++i)
    out[m.support()[i]] = format_rational(m.weights()[i]);
  return out;
}

inline DiscreteMeasure measure_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a measure object");
  std::vector<std::string> support;
  std::vector<Rational> weights;
  for (const auto& [key, value] : j.items()) {
    support.push_back(key);
    weights.push_back(scalar_from_json(value));
  }
  return DiscreteMeasure(std::move(support), std::move(weights));
}

namespace detail {

inline const Json& require_key(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace detail

/// Parses the common instance layout:
///   { "points": [label...],
///     "functions": [{"name": label, "values": [scalar...]}...] }
/// Values align with "points" by position.
inline FamilyMatrix family_from_json(const Json& j,
                                     const char* functions_key = "functions") {
  const Json& points = detail::require_key(j, "points");
  if (!points.is_array() || points.empty())
    throw ParseError("'points' must be a non-empty array of labels");
  std::vector<std::string> cols;
  for (const auto& p : points) {
    if (!p.is_string()) throw ParseError("point labels must be strings");
    cols.push_back(p.get<std::string>());
  }

  const Json& functions = detail::require_key(j, functions_key);
  if (!functions.is_array() || functions.empty())
    throw ParseError(std::string("'") + functions_key +
                     "' must be a non-empty array");
  std::vector<std::string> rows;
  std::vector<std::vector<Rational>> values;
  for (const auto& f : functions) {
    rows.push_back(detail::require_key(f, "name").get<std::string>());
    auto vals = vector_from_json(detail::require_key(f, "values"));
    if (vals.size() != cols.size())
      throw ParseError("function '" + rows.back() + "' has " +
                       std::to_string(vals.size()) + " values for " +
                       std::to_string(cols.size()) + " points");
    values.push_back(std::move(vals));
  }
  return FamilyMatrix(std::move(rows), std::move(cols), std::move(values));
}

inline Json family_to_json(const FamilyMatrix& a) {
  Json j;
  j["points"] = a.col_labels();
  Json fns = Json::array();
  for (std::size_t f = 0; f < a.rows(); ++f) {
    Json fn;
    fn["name"] = a.row_labels()[f];
    fn["values"] = vector_to_json(a.row(f));
    fns.push_back(std::move(fn));
  }
  j["functions"] = std::move(fns);
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);  // exceptions carry the byte position
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

// FNV-1a over a canonical dump of the parsed content. The hash ties a
// certificate to the instance data it talks about, independent of
// formatting, so `verify` can refuse drifted pairs.
inline std::string content_hash(const Json& canonical) {
  const std::string dump = canonical.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::string family_hash(const FamilyMatrix& a) {
  return content_hash(family_to_json(a));
}

/// Point list with attached values, the `fan` input:
///   { "points": [[scalar...]...], "g": [scalar...] }
struct FanInstance {
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> g;
};

inline FanInstance fan_from_json(const Json& j) {
  FanInstance out;
  const Json& pts = detail::require_key(j, "points");
  if (!pts.is_array() || pts.empty())
    throw ParseError("'points' must be a non-empty array of vectors");
  for (const auto& p : pts) out.points.push_back(vector_from_json(p));
  out.g = vector_from_json(detail::require_key(j, "g"));
  if (out.g.size() != out.points.size())
    throw ParseError("'g' must assign one value per point");
  return out;
}

inline Json fan_to_json(const FanInstance& inst) {
  Json j;
  Json pts = Json::array();
  for (const auto& p : inst.points) pts.push_back(vector_to_json(p));
  j["points"] = std::move(pts);
  j["g"] = vector_to_json(inst.g);
  return j;
}

/// Polyhedral sublinear functionals, the `strassen` input:
///   { "functionals": [{"name": label, "generators": [[scalar...]...]}...] }
struct FunctionalsFile {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<Rational>>> generators;
};

inline FunctionalsFile functionals_from_json(const Json& j) {
  FunctionalsFile out;
  const Json& fs = detail::require_key(j, "functionals");
  if (!fs.is_array() || fs.empty())
    throw ParseError("'functionals' must be a non-empty array");
  for (const auto& f : fs) {
    out.names.push_back(detail::require_key(f, "name").get<std::string>());
    const Json& gens = detail::require_key(f, "generators");
    if (!gens.is_array() || gens.empty())
      throw ParseError("functional '" + out.names.back() + "' has no generators");
    std::vector<std::vector<Rational>> g;
    for (const auto& gen : gens) g.push_back(vector_from_json(gen));
    out.generators.push_back(std::move(g));
  }
  return out;
}

inline Json functionals_to_json(const FunctionalsFile& file) {
  Json fs = Json::array();
  for (std::size_t i = 0; i < file.names.size(); ++i) {
    Json f;
    f["name"] = file.names[i];
    Json gens = Json::array();
    for (const auto& g : file.generators[i]) gens.push_back(vector_to_json(g));
    f["generators"] = std::move(gens);
    fs.push_back(std::move(f));
  }
  Json j;
  j["functionals"] = std::move(fs);
  return j;
}

/// Plain vector lists ({"vectors": [[scalar...]...]}), used for pietsch
/// nets and samples.
inline std::vector<std::vector<Rational>> vectors_from_json(const Json& j) {
  const Json& vs = detail::require_key(j, "vectors");
  if (!vs.is_array() || vs.empty())
    throw ParseError("'vectors' must be a non-empty array");
  std::vector<std::vector<Rational>> out;
  for (const auto& v : vs) out.push_back(vector_from_json(v));
  return out;
}

inline Json vectors_to_json(const std::vector<std::vector<Rational>>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(vector_to_json(v));
  Json j;
  j["vectors"] = std::move(arr);
  return j;
}

/// Rational operator matrix ({"matrix": [[scalar...]...]}), rows act on
/// vectors by inner product.
inline std::vector<std::vector<Rational>> operator_from_json(const Json& j) {
  const Json& m = detail::require_key(j, "matrix");
  if (!m.is_array() || m.empty()) throw ParseError("'matrix' must be a non-empty array");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : m) out.push_back(vector_from_json(row));
  return out;
}

inline Json operator_to_json(const std::vector<std::vector<Rational>>& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(vector_to_json(r));
  Json j;
  j["matrix"] = std::move(rows);
  return j;
}

}  // namespace fincert

#endif  // FINCERT_JSON_IO_HPP
