#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "prmw/point_geometry.hpp"

namespace prmw {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kPointOrder = "lex-ascending";
inline constexpr const char* kMonomialOrder = "homogenized-desc-lex";

// JSON layouts for cached point sets, evaluation tables and witness
// subspaces. The layouts carry the field spec and the ordering metadata so a
// cache file is self-describing; exact shapes are documented in the README
// and stable across versions.

inline json to_json(const FieldSpec& F) {
  return json{{"p", F.p()}, {"e", F.extension_degree()}, {"q", F.q()}, {"modulus", F.modulus()}};
}

inline const char* kind_name(SpaceKind k) { return k == SpaceKind::projective ? "projective" : "affine"; }

inline SpaceKind kind_from_name(const std::string& s) {
  if (s == "projective") return SpaceKind::projective;
  if (s == "affine") return SpaceKind::affine;
  throw std::invalid_argument("unknown space kind: " + s);
}

inline json to_json(const PointSet& ps) {
  json pts = json::array();
  for (const auto& p : ps.points) pts.push_back(p);
  return json{{"schema_version", kSchemaVersion},
              {"kind", kind_name(ps.kind)},
              {"m", ps.m},
              {"q", ps.q},
              {"point_order", kPointOrder},
              {"points", std::move(pts)}};
}

inline PointSet point_set_from_json(const json& j) {
  PointSet ps;
  ps.kind = kind_from_name(j.at("kind").get<std::string>());
  ps.m = j.at("m").get<int>();
  ps.q = j.at("q").get<std::uint32_t>();
  for (const auto& p : j.at("points")) ps.points.push_back(p.get<std::vector<fe>>());
  ps.build_index();
  return ps;
}

inline json to_json(const MonomialBasis& b) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", kind_name(b.kind)},
              {"m", b.m},
              {"d", b.d},
              {"monomial_order", kMonomialOrder},
              {"exponents", b.exponents}};
}

inline json to_json(const EvaluationTable& t) {
  json rows = json::array();
  for (const auto& r : t.values) rows.push_back(r);
  return json{{"schema_version", kSchemaVersion},
              {"basis", to_json(t.basis)},
              {"points", to_json(t.points)},
              {"values", std::move(rows)}};  // row-major: rows = monomials
}

inline EvaluationTable evaluation_table_from_json(const json& j) {
  EvaluationTable t;
  const json& b = j.at("basis");
  t.basis = monomial_basis(b.at("m").get<int>(), b.at("d").get<int>(), kind_from_name(b.at("kind").get<std::string>()));
  if (t.basis.exponents != b.at("exponents").get<std::vector<std::vector<int>>>())
    throw std::invalid_argument("evaluation_table_from_json: monomial order mismatch");
  t.points = point_set_from_json(j.at("points"));
  for (const auto& r : j.at("values")) t.values.push_back(r.get<std::vector<fe>>());
  if (t.values.size() != t.basis.size()) throw std::invalid_argument("evaluation_table_from_json: row count mismatch");
  const std::size_t P = t.points.size();
  for (const auto& r : t.values) {
    if (r.size() != P) throw std::invalid_argument("evaluation_table_from_json: column count mismatch");
  }
  t.row_zero_masks.clear();
  for (const auto& r : t.values) {
    Bitset mask(P);
    for (std::size_t c = 0; c < P; ++c)
      if (r[c] == 0) mask.set(c);
    t.row_zero_masks.push_back(std::move(mask));
  }
  return t;
}

// Witness subspaces: row-major coefficient matrices plus the monomial order
// metadata (shared layout with the table cache).
inline json to_json(const SubspaceBasis& W) {
  json rows = json::array();
  for (int i = 0; i < W.r; ++i) rows.push_back(W.row(static_cast<std::size_t>(i)));
  return json{{"schema_version", kSchemaVersion},
              {"r", W.r},
              {"N", W.N},
              {"monomial_order", kMonomialOrder},
              {"pivot_columns", W.pivot_columns},
              {"rows", std::move(rows)}};
}

inline SubspaceBasis subspace_from_json(const json& j, const FieldSpec& F) {
  std::vector<std::vector<fe>> rows;
  for (const auto& r : j.at("rows")) rows.push_back(r.get<std::vector<fe>>());
  return subspace_from_rows(rows, j.at("N").get<std::size_t>(), F);
}

// Compact digest of a witness for table rows: row-major entries joined by '.'.
inline std::string witness_digest(const SubspaceBasis& W) {
  std::string s;
  for (std::size_t i = 0; i < W.rows.a.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(W.rows.a[i]);
  }
  return s;
}

}  // namespace prmw
