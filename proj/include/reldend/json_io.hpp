#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldend/error.hpp"
#include "reldend/finite_algebra.hpp"
#include "reldend/index.hpp"
#include "reldend/scalar.hpp"

namespace reldend {

using nlohmann::json;

namespace jsonio {

/// Location inside a JSON document, rendered like "$.ops.mul[0][1]".
class Path {
 public:
  Path() = default;
  [[nodiscard]] Path operator/(std::string_view key) const { return Path(text_ + "." + std::string(key)); }
  [[nodiscard]] Path operator[](std::size_t i) const { return Path(text_ + "[" + std::to_string(i) + "]"); }
  [[nodiscard]] const std::string& str() const { return text_; }

 private:
  explicit Path(std::string t) : text_(std::move(t)) {}
  std::string text_ = "$";
};

[[noreturn]] inline void fail(const Path& at, const std::string& msg) {
  throw MalformedInput(at.str() + ": " + msg);
}

inline const json& field(const json& j, const Path& at, const char* key) {
  if (!j.is_object()) fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const json* optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline std::string as_string(const json& j, const Path& at) {
  if (!j.is_string()) fail(at, "expected a string");
  return j.get<std::string>();
}

inline std::size_t as_size(const json& j, const Path& at) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(at, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline Scalar as_scalar(const json& j, const Path& at) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) fail(at, "expected a \"p/q\" string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const MalformedInput& e) {
    fail(at, e.what());
  }
}

inline const json& as_array(const json& j, const Path& at, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) fail(at, "expected an array");
  if (size && j.size() != *size) fail(at, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
  return j;
}

inline std::vector<std::string> names_of(const json& j, const Path& at) {
  const Path p = at / "elements";
  std::vector<std::string> names;
  for (std::size_t i = 0; i < as_array(field(j, at, "elements"), p).size(); ++i)
    names.push_back(as_string(j["elements"][i], p[i]));
  if (names.empty()) fail(p, "needs at least one element");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (names[i] == names[k]) fail(p[i], "duplicate element name '" + names[i] + "'");
  return names;
}

/// Element given by position or by name.
inline Element element_of(const json& j, const std::vector<std::string>& names, const Path& at) {
  if (j.is_number_integer()) {
    if (j.get<long long>() < 0) fail(at, "element position must be nonnegative");
    auto e = j.get<Element>();
    if (e >= names.size()) fail(at, "element " + std::to_string(e) + " out of range");
    return e;
  }
  if (j.is_string()) {
    if (auto e = detail::find_name(names, j.get<std::string>())) return *e;
    fail(at, "unknown element '" + j.get<std::string>() + "'");
  }
  fail(at, "expected an element name or position");
}

inline Table table_of(const json& j, const std::vector<std::string>& names, const Path& at) {
  const std::size_t n = names.size();
  as_array(j, at, n);
  Table t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    as_array(j[a], at[a], n);
    for (std::size_t b = 0; b < n; ++b) t[a][b] = element_of(j[a][b], names, at[a][b]);
  }
  return t;
}

inline std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& ref) {
  std::filesystem::path p(ref);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

inline std::optional<std::size_t> shorthand_size(std::string_view ref, std::string_view prefix) {
  if (!ref.starts_with(prefix)) return std::nullopt;
  std::string_view digits = ref.substr(prefix.size());
  if (digits.empty() || digits.size() > 6) return std::nullopt;
  std::size_t n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

}  // namespace jsonio

inline json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw MalformedInput("cannot open '" + file.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedInput(file.string() + ": " + e.what());
  }
}

/// {"elements": [...], "product": [[...]], "unit": name | null, "commutative": bool}
/// Table entries are element names or positions.
inline SemigroupTable semigroup_from_json(const json& j, const jsonio::Path& at = {}) {
  using namespace jsonio;
  auto names = names_of(j, at);
  Table product = table_of(field(j, at, "product"), names, at / "product");
  std::optional<Element> unit;
  if (const json* u = optional_field(j, "unit")) unit = element_of(*u, names, at / "unit");
  bool commutative = false;
  if (const json* c = optional_field(j, "commutative")) {
    if (!c->is_boolean()) fail(at / "commutative", "expected a boolean");
    commutative = c->get<bool>();
  }
  return SemigroupTable(std::move(names), std::move(product), unit, commutative);
}

inline json semigroup_to_json(const SemigroupTable& s) {
  json j;
  j["elements"] = s.names();
  json rows = json::array();
  for (const auto& row : s.product()) {
    json r = json::array();
    for (Element e : row) r.push_back(s.name(e));
    rows.push_back(r);
  }
  j["product"] = rows;
  j["unit"] = s.unit() ? json(s.name(*s.unit())) : json(nullptr);
  j["commutative"] = s.claims_commutative();
  return j;
}

inline std::optional<VirtualSemigroup> virtual_semigroup(std::string_view name) {
  if (name == "positive_integers") return VirtualSemigroup::positive_integers();
  if (name == "nonnegative_integers") return VirtualSemigroup::nonnegative_integers();
  return std::nullopt;
}

/// A finite table or a named virtual semigroup.
struct SemigroupSpec {
  std::optional<SemigroupTable> table;
  std::optional<VirtualSemigroup> virt;

  /// Checked conversion; a finite table must pass its axioms.
  [[nodiscard]] IndexStructure index() const { return table ? IndexStructure::of(*table) : IndexStructure::of(*virt); }
};

/// Accepts an inline object (table or {"virtual": name}), the shorthands
/// "trivial" and "cyclic:N", or a file path relative to `base_dir`.
inline SemigroupSpec semigroup_spec_from_json(const json& j, const std::filesystem::path& base_dir,
                                              const jsonio::Path& at = {}) {
  using namespace jsonio;
  if (j.is_string()) {
    const std::string ref = j.get<std::string>();
    if (ref == "trivial") return {SemigroupTable::trivial(), std::nullopt};
    if (auto n = shorthand_size(ref, "cyclic:")) {
      if (*n == 0) fail(at, "cyclic:N needs N >= 1");
      return {SemigroupTable::cyclic(*n), std::nullopt};
    }
    auto file = resolve(base_dir, ref);
    return semigroup_spec_from_json(read_json_file(file), file.parent_path());
  }
  if (!j.is_object()) fail(at, "expected a semigroup object, shorthand or file path");
  if (const json* v = optional_field(j, "virtual")) {
    auto vs = virtual_semigroup(as_string(*v, at / "virtual"));
    if (!vs) fail(at / "virtual", "unknown virtual semigroup (known: positive_integers, nonnegative_integers)");
    return {std::nullopt, std::move(vs)};
  }
  return {semigroup_from_json(j, at), std::nullopt};
}

/// {"elements": [...], "left": [[...]], "right": [[...]]}
inline DimonoidTable dimonoid_from_json(const json& j, const jsonio::Path& at = {}) {
  using namespace jsonio;
  auto names = names_of(j, at);
  Table left = table_of(field(j, at, "left"), names, at / "left");
  Table right = table_of(field(j, at, "right"), names, at / "right");
  return DimonoidTable(std::move(names), std::move(left), std::move(right));
}

/// "matching:N", "cyclic:N" (the dimonoid of Z/N), or a dimonoid file. A
/// semigroup file is accepted too and becomes its dimonoid.
inline DimonoidTable load_dimonoid(const std::string& ref) {
  using namespace jsonio;
  if (auto n = shorthand_size(ref, "matching:")) {
    if (*n == 0) throw MalformedInput("matching:N needs N >= 1");
    return matching_dimonoid(*n);
  }
  if (auto n = shorthand_size(ref, "cyclic:")) {
    if (*n == 0) throw MalformedInput("cyclic:N needs N >= 1");
    return dimonoid_from_semigroup(SemigroupTable::cyclic(*n));
  }
  json j = read_json_file(ref);
  if (j.is_object() && j.contains("product") && !j.contains("left")) return dimonoid_from_semigroup(semigroup_from_json(j));
  return dimonoid_from_json(j);
}

/// Semigroup fields inline, or "semigroup": ref; plus "values": n x n scalars.
inline Cocycle cocycle_from_json(const json& j, const std::filesystem::path& base_dir, const jsonio::Path& at = {}) {
  using namespace jsonio;
  SemigroupTable base = [&] {
    if (const json* ref = optional_field(j, "semigroup")) {
      auto spec = semigroup_spec_from_json(*ref, base_dir, at / "semigroup");
      if (!spec.table) fail(at / "semigroup", "cocycles need a finite semigroup");
      return *spec.table;
    }
    return semigroup_from_json(j, at);
  }();
  const std::size_t n = base.size();
  const Path vp = at / "values";
  const json& vals = as_array(field(j, at, "values"), vp, n);
  std::vector<std::vector<Scalar>> values(n, std::vector<Scalar>(n));
  for (std::size_t a = 0; a < n; ++a) {
    as_array(vals[a], vp[a], n);
    for (std::size_t b = 0; b < n; ++b) {
      values[a][b] = as_scalar(vals[a][b], vp[a][b]);
      if (values[a][b].is_zero()) fail(vp[a][b], "cocycle values must be nonzero");
    }
  }
  return Cocycle(std::move(base), std::move(values));
}

namespace jsonio {

inline Tensor3 tensor_from_json(const json& j, std::size_t d, const Path& at) {
  as_array(j, at, d);
  Tensor3 t(d);
  for (std::size_t i = 0; i < d; ++i) {
    as_array(j[i], at[i], d);
    for (std::size_t k = 0; k < d; ++k) {
      as_array(j[i][k], at[i][k], d);
      for (std::size_t l = 0; l < d; ++l) t.at(i, k, l) = as_scalar(j[i][k][l], at[i][k][l]);
    }
  }
  return t;
}

inline json tensor_to_json(const Tensor3& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.dim(); ++i) {
    json a = json::array();
    for (std::size_t k = 0; k < t.dim(); ++k) {
      json b = json::array();
      for (std::size_t l = 0; l < t.dim(); ++l) b.push_back(t.at(i, k, l).str());
      a.push_back(b);
    }
    out.push_back(a);
  }
  return out;
}

inline Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const Path& at) {
  as_array(j, at, rows);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    as_array(j[i], at[i], cols);
    for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = as_scalar(j[i][k], at[i][k]);
  }
  return m;
}

/// "(a,b)" or "(a)" with element names; whitespace around names is ignored.
inline std::vector<Element> parse_key(std::string_view key, const IndexStructure& ix, const Path& at) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')') fail(at, "operation key must look like \"(a,b)\"");
  key = key.substr(1, key.size() - 2);
  std::vector<Element> out;
  for (;;) {
    auto comma = key.find(',');
    std::string_view part = key.substr(0, comma);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    auto e = ix.find(part);
    if (!e) fail(at, "unknown index element '" + std::string(part) + "'");
    out.push_back(*e);
    if (comma == std::string_view::npos) break;
    key.remove_prefix(comma + 1);
  }
  if (out.size() > 2) fail(at, "operation keys have one or two index elements");
  return out;
}

inline std::string key_string(const std::vector<Element>& key, const IndexStructure& ix) {
  std::string s = "(";
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? "," : "") + ix.name(key[i]);
  return s + ")";
}

}  // namespace jsonio

/// {"dim": d, "basis": [...], "semigroup": ref, "ops": {role: {"(a,b)" | "(a)" | "*": d x d x d}},
///  "unit": [d scalars] | null}
inline FiniteRelativeAlgebra algebra_from_json(const json& j, const std::filesystem::path& base_dir,
                                               const jsonio::Path& at = {}) {
  using namespace jsonio;
  const std::size_t d = as_size(field(j, at, "dim"), at / "dim");
  if (d == 0) fail(at / "dim", "dimension must be positive");
  std::vector<std::string> basis;
  if (const json* b = optional_field(j, "basis")) {
    as_array(*b, at / "basis", d);
    for (std::size_t i = 0; i < d; ++i) basis.push_back(as_string((*b)[i], (at / "basis")[i]));
  } else {
    for (std::size_t i = 0; i < d; ++i) basis.push_back("e" + std::to_string(i));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (basis[i] == basis[k]) fail((at / "basis")[i], "duplicate basis name '" + basis[i] + "'");

  IndexStructure ix = semigroup_spec_from_json(field(j, at, "semigroup"), base_dir, at / "semigroup").index();
  FiniteRelativeAlgebra alg(std::move(basis), ix);

  const Path op_path = at / "ops";
  const json& ops = field(j, at, "ops");
  if (!ops.is_object()) fail(op_path, "expected an object of operations");
  for (const auto& [role, entries] : ops.items()) {
    const Path rp = op_path / role;
    if (!entries.is_object()) fail(rp, "expected an object keyed by index tuples");
    int arity = 0;
    std::vector<std::pair<std::vector<Element>, Tensor3>> keyed;
    std::optional<Tensor3> uniform;
    for (const auto& [key, tensor] : entries.items()) {
      const Path kp = rp / key;
      if (key == "*") {
        uniform = tensor_from_json(tensor, d, kp);
        continue;
      }
      auto k = parse_key(key, ix, kp);
      if (arity != 0 && arity != static_cast<int>(k.size())) fail(kp, "mixed key arities in one operation");
      arity = static_cast<int>(k.size());
      keyed.emplace_back(std::move(k), tensor_from_json(tensor, d, kp));
    }
    alg.add_role(role, arity == 0 ? 2 : arity);
    for (auto& [k, t] : keyed) alg.set_constants(role, std::move(k), std::move(t));
    if (uniform) alg.set_uniform(role, std::move(*uniform));
  }

  if (const json* u = optional_field(j, "unit")) {
    as_array(*u, at / "unit", d);
    Vector unit;
    for (std::size_t i = 0; i < d; ++i) unit.add_term(i, as_scalar((*u)[i], (at / "unit")[i]));
    alg.set_unit(std::move(unit));
  }
  return alg;
}

inline FiniteRelativeAlgebra load_algebra(const std::filesystem::path& file) {
  return algebra_from_json(read_json_file(file), file.parent_path());
}

inline json index_to_json(const IndexStructure& ix) {
  if (const SemigroupTable* s = ix.semigroup()) return semigroup_to_json(*s);
  if (!ix.finite()) return json{{"virtual", ix.kind()}};
  throw ContractViolation("only semigroup-indexed algebras can be serialized");
}

inline json algebra_to_json(const FiniteRelativeAlgebra& alg) {
  json j;
  j["dim"] = alg.dim();
  j["basis"] = alg.basis();
  j["semigroup"] = index_to_json(alg.index());
  json ops = json::object();
  for (const auto& [role, rc] : alg.roles()) {
    json entries = json::object();
    for (const auto& [key, t] : rc.constants) entries[jsonio::key_string(key, alg.index())] = jsonio::tensor_to_json(t);
    if (rc.uniform) entries["*"] = jsonio::tensor_to_json(*rc.uniform);
    ops[role] = entries;
  }
  j["ops"] = ops;
  if (alg.unit()) {
    json u = json::array();
    for (std::size_t i = 0; i < alg.dim(); ++i) u.push_back(alg.unit()->coefficient(i).str());
    j["unit"] = u;
  } else {
    j["unit"] = nullptr;
  }
  return j;
}

/// {"elem": matrix, "*": matrix, "harmonic": matrix}; matrices are rows of
/// scalars and act on column vectors.
inline MatrixFamily matrix_family_from_json(const json& j, const IndexStructure& ix, std::size_t rows,
                                            std::size_t cols, const jsonio::Path& at) {
  using namespace jsonio;
  if (!j.is_object()) fail(at, "expected an object of matrices");
  MatrixFamily f;
  for (const auto& [key, m] : j.items()) {
    const Path kp = at / key;
    if (key == "*") {
      f.uniform = matrix_from_json(m, rows, cols, kp);
    } else if (key == "harmonic") {
      f.harmonic = matrix_from_json(m, rows, cols, kp);
    } else {
      auto e = ix.find(key);
      if (!e) fail(kp, "unknown index element '" + key + "'");
      f.explicit_maps[*e] = matrix_from_json(m, rows, cols, kp);
    }
  }
  return f;
}

/// {"algebra": ref (optional when a carrier is given), "maps": {...}}
inline RotaBaxterFamily rb_from_json(const json& j, const std::filesystem::path& base_dir,
                                     std::optional<FiniteRelativeAlgebra> carrier = std::nullopt) {
  using namespace jsonio;
  const Path at;
  if (const json* ref = optional_field(j, "algebra")) {
    if (ref->is_string()) {
      auto file = resolve(base_dir, ref->get<std::string>());
      carrier = load_algebra(file);
    } else {
      carrier = algebra_from_json(*ref, base_dir, at / "algebra");
    }
  }
  if (!carrier) fail(at, "no carrier algebra: give \"algebra\" or --algebra");
  MatrixFamily maps = matrix_family_from_json(field(j, at, "maps"), carrier->index(), carrier->dim(), carrier->dim(),
                                              at / "maps");
  return {std::move(*carrier), std::move(maps)};
}

/// {"target": ref (optional, defaults to the source), "maps": {...}}
inline MorphismFamily morphism_from_json(const json& j, const std::filesystem::path& base_dir,
                                         const FiniteRelativeAlgebra& source) {
  using namespace jsonio;
  const Path at;
  FiniteRelativeAlgebra target = source;
  if (const json* ref = optional_field(j, "target")) {
    if (ref->is_string())
      target = load_algebra(resolve(base_dir, ref->get<std::string>()));
    else
      target = algebra_from_json(*ref, base_dir, at / "target");
  }
  MatrixFamily maps = matrix_family_from_json(field(j, at, "maps"), source.index(), target.dim(), source.dim(),
                                              at / "maps");
  return {source, std::move(target), std::move(maps)};
}

}  // namespace reldend
