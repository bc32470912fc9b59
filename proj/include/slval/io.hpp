#pragma once

// JSON encodings. Scalars always travel as canonical strings.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "slval/error.hpp"
#include "slval/exactnum.hpp"
#include "slval/harness.hpp"
#include "slval/linalg.hpp"
#include "slval/polytope.hpp"
#include "slval/triangulate.hpp"
#include "slval/valuation.hpp"

namespace slval::io {

using json = nlohmann::ordered_json;

/// Parses a scalar string and checks it lives in Q or in Q(sqrt(field_d)).
inline Scalar parse_scalar(const std::string& text, long field_d) {
  Scalar s = Scalar::parse(text);
  if (!s.is_rational() && s.field() != field_d) {
    throw FieldMismatch("scalar '" + text + "' is outside the configured field Q(sqrt(" +
                        std::to_string(field_d) + "))");
  }
  return s;
}

inline Scalar scalar_from_json(const json& j, long field_d) {
  if (!j.is_string()) throw ParseError("expected a scalar string, got " + j.dump());
  return parse_scalar(j.get<std::string>(), field_d);
}

inline json to_json(const Scalar& s) { return s.str(); }

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline json to_json(const Polytope& p, long field_d) {
  json j;
  j["ambient_dim"] = p.ambient_dim();
  j["field_d"] = field_d;
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  j["vertices"] = std::move(verts);
  return j;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON document: ") + e.what());
  }
}

/// {"ambient_dim": n, "field_d": d, "vertices": [[s, ...], ...]}. The vertices
/// may be any finite point list; the result is its canonical hull.
inline Polytope polytope_from_json(const json& j, long* field_out = nullptr) {
  return guarded([&] {
    if (!j.is_object()) throw ParseError("polytope must be a JSON object");
    const auto n = j.at("ambient_dim").get<std::size_t>();
    const long d = j.contains("field_d") ? j.at("field_d").get<long>() : 0;
    if (d != 0 && !detail::is_square_free(d)) throw ParseError("field_d must be 0 or square-free >= 2");
    std::vector<Vector> pts;
    for (const auto& row : j.at("vertices")) {
      if (!row.is_array() || row.size() != n) throw ParseError("vertex with wrong coordinate count");
      Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = scalar_from_json(row[i], d);
      pts.push_back(std::move(v));
    }
    if (field_out) *field_out = d;
    return from_points(n, std::move(pts));
  });
}

inline json to_json(const CauchySolution& f) {
  json j;
  if (f.kind() == CauchySolution::Kind::linear) {
    j["kind"] = "linear";
    j["lambda"] = f.lambda().str();
  } else {
    j["kind"] = "rational_part";
  }
  return j;
}

inline CauchySolution cauchy_from_json(const json& j, long field_d) {
  return guarded([&] {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "linear") return CauchySolution::linear(scalar_from_json(j.at("lambda"), field_d));
    if (kind == "rational_part") return CauchySolution::rational_part();
    throw ParseError("unknown Cauchy solution kind '" + kind + "'");
  });
}

/// {"c0": s, "c0p": s, "d0": s, "psi": {...}, "phi": {...}}.
inline json to_json(const ClassifiedValuation& v) {
  json j;
  j["c0"] = v.c0.str();
  j["c0p"] = v.c0p.str();
  j["d0"] = v.d0.str();
  j["psi"] = to_json(v.psi);
  j["phi"] = to_json(v.phi);
  return j;
}

/// Missing fields default to zero.
inline ClassifiedValuation valuation_from_json(const json& j, long field_d) {
  return guarded([&] {
    if (!j.is_object()) throw ParseError("valuation must be a JSON object");
    ClassifiedValuation v;
    if (j.contains("c0")) v.c0 = scalar_from_json(j.at("c0"), field_d);
    if (j.contains("c0p")) v.c0p = scalar_from_json(j.at("c0p"), field_d);
    if (j.contains("d0")) v.d0 = scalar_from_json(j.at("d0"), field_d);
    if (j.contains("psi")) v.psi = cauchy_from_json(j.at("psi"), field_d);
    if (j.contains("phi")) v.phi = cauchy_from_json(j.at("phi"), field_d);
    return v;
  });
}

/// Row-major array of scalar-string rows.
inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

inline Matrix matrix_from_json(const json& j, long field_d) {
  return guarded([&] {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const std::size_t cols = j.front().size();
    Matrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix");
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c], field_d);
    }
    return m;
  });
}

/// Simplices as vertex-index lists into the parent's canonical vertex order.
inline json to_json(const Triangulation& t, const Polytope& parent) {
  json a = json::array();
  for (const auto& idx : vertex_indices(t, parent)) a.push_back(idx);
  return a;
}

inline Triangulation triangulation_from_json(const json& j, const Polytope& parent) {
  return guarded([&] {
    Triangulation t;
    for (const auto& cell : j) {
      std::vector<Vector> pts;
      for (const auto& i : cell) {
        const auto k = i.get<std::size_t>();
        if (k >= parent.size()) throw ParseError("simplex vertex index out of range");
        pts.push_back(parent.vertices()[k]);
      }
      t.simplices.emplace_back(parent.ambient_dim(), std::move(pts));
    }
    if (!t.simplices.empty()) t.dim = t.simplices.front().dim();
    std::sort(t.simplices.begin(), t.simplices.end());
    return t;
  });
}

inline json to_json(const FitReport& r) {
  static constexpr const char* kNames[5] = {"c0", "c0p", "cn", "d0", "dn"};
  json j;
  json coef;
  for (std::size_t i = 0; i < 5; ++i) coef[kNames[i]] = r.coefficients[i].str();
  j["coefficients"] = std::move(coef);
  json probes = json::array();
  for (const auto& v : r.probe_values) probes.push_back(v.str());
  j["probe_values"] = std::move(probes);
  j["residual_max"] = r.residual_max.str();
  j["validation_count"] = r.validation_count;
  return j;
}

inline json to_json(const UscSequence& s) {
  json j;
  j["sequence"] = s.name;
  json vals = json::array();
  for (const auto& v : s.values) vals.push_back(v.str());
  j["values"] = std::move(vals);
  j["constant"] = s.constant;
  j["limit"] = s.limit_name;
  j["limit_value"] = s.limit_value.str();
  j["violation"] = s.violation;
  j["forces"] = s.constraint;
  return j;
}

inline json to_json(const UscReport& r) {
  json j;
  j["c0p"] = r.c0p.str();
  j["d0"] = r.d0.str();
  json s = json::array();
  for (const auto& x : r.s_values) s.push_back(x.str());
  j["s_values"] = std::move(s);
  j["first"] = to_json(r.first);
  j["second"] = to_json(r.second);
  j["violation"] = r.violated();
  return j;
}

}  // namespace slval::io
