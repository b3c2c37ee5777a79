#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldend/error.hpp"
#include "reldend/report.hpp"
#include "reldend/scalar.hpp"

namespace reldend {

/// Element of an index semigroup or dimonoid. For finite tables this is the
/// position in the element list; for virtual semigroups it is the element
/// itself (e.g. the positive integer n).
using Element = std::uint64_t;

using Table = std::vector<std::vector<Element>>;

namespace detail {

inline std::vector<std::string> default_names(std::size_t n, bool letters) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (letters && n <= 26)
      names.emplace_back(1, static_cast<char>('a' + i));
    else
      names.push_back(std::to_string(i));
  }
  return names;
}

inline void validate_names(const std::vector<std::string>& names) {
  if (names.empty()) throw MalformedInput("index structure needs at least one element");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw MalformedInput("empty element name");
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw MalformedInput("duplicate element name '" + names[i] + "'");
  }
}

inline void validate_table(const Table& t, std::size_t n, std::string_view what) {
  if (t.size() != n) throw MalformedInput(std::string(what) + " table must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i].size() != n)
      throw MalformedInput(std::string(what) + " table row " + std::to_string(i) + " must have " +
                           std::to_string(n) + " entries");
    for (Element e : t[i])
      if (e >= n)
        throw MalformedInput(std::string(what) + " table entry " + std::to_string(e) + " out of range in row " +
                             std::to_string(i));
  }
}

inline std::optional<Element> find_name(const std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Element>(it - names.begin());
}

}  // namespace detail

/// Finite semigroup given by its multiplication table, with an optional
/// declared unit and a declared (not inferred) commutativity claim.
class SemigroupTable {
 public:
  SemigroupTable(std::vector<std::string> names, Table product, std::optional<Element> unit = std::nullopt,
                 bool claims_commutative = false)
      : names_(std::move(names)), product_(std::move(product)), unit_(unit), commutative_(claims_commutative) {
    detail::validate_names(names_);
    detail::validate_table(product_, names_.size(), "product");
    if (unit_ && *unit_ >= names_.size()) throw MalformedInput("unit element out of range");
  }

  /// The one-element monoid.
  static SemigroupTable trivial() { return SemigroupTable({"1"}, {{0}}, Element{0}, true); }

  /// Z/n under addition, elements named "0".."n-1".
  static SemigroupTable cyclic(std::size_t n) {
    if (n == 0) throw MalformedInput("cyclic group needs n >= 1");
    Table t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return SemigroupTable(detail::default_names(n, false), std::move(t), Element{0}, true);
  }

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] Element operator()(Element a, Element b) const { return product_[a][b]; }
  [[nodiscard]] const Table& product() const { return product_; }
  [[nodiscard]] std::optional<Element> unit() const { return unit_; }
  [[nodiscard]] bool claims_commutative() const { return commutative_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(Element a) const { return names_.at(a); }
  [[nodiscard]] std::optional<Element> find(std::string_view name) const { return detail::find_name(names_, name); }

  friend bool operator==(const SemigroupTable&, const SemigroupTable&) = default;

 private:
  std::vector<std::string> names_;
  Table product_;
  std::optional<Element> unit_;
  bool commutative_;
};

/// Finite dimonoid: two operations, left (⊣) and right (⊢).
class DimonoidTable {
 public:
  DimonoidTable(std::vector<std::string> names, Table left, Table right)
      : names_(std::move(names)), left_(std::move(left)), right_(std::move(right)) {
    detail::validate_names(names_);
    detail::validate_table(left_, names_.size(), "left");
    detail::validate_table(right_, names_.size(), "right");
  }

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] Element left(Element a, Element b) const { return left_[a][b]; }
  [[nodiscard]] Element right(Element a, Element b) const { return right_[a][b]; }
  [[nodiscard]] const Table& left_table() const { return left_; }
  [[nodiscard]] const Table& right_table() const { return right_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] const std::string& name(Element a) const { return names_.at(a); }
  [[nodiscard]] std::optional<Element> find(std::string_view name) const { return detail::find_name(names_, name); }
  /// True when both operations coincide, i.e. the dimonoid is a semigroup.
  [[nodiscard]] bool is_semigroup_form() const { return left_ == right_; }

  friend bool operator==(const DimonoidTable&, const DimonoidTable&) = default;

 private:
  std::vector<std::string> names_;
  Table left_;
  Table right_;
};

/// Infinite semigroup with a computed product. Axiom checks over it run on a
/// caller-supplied finite window of elements.
struct VirtualSemigroup {
  std::string name;
  std::function<Element(Element, Element)> product;
  std::optional<Element> unit;
  bool commutative = false;
  Element min_element = 0;

  /// (Z_{>0}, +)
  static VirtualSemigroup positive_integers() {
    return {"positive_integers", [](Element a, Element b) { return a + b; }, std::nullopt, true, 1};
  }
  /// (Z_{>=0}, +), unit 0
  static VirtualSemigroup nonnegative_integers() {
    return {"nonnegative_integers", [](Element a, Element b) { return a + b; }, Element{0}, true, 0};
  }
};

/// 2-cocycle c: S x S -> K^x on a finite semigroup.
class Cocycle {
 public:
  Cocycle(SemigroupTable base, std::vector<std::vector<Scalar>> values)
      : base_(std::move(base)), values_(std::move(values)) {
    const std::size_t n = base_.size();
    if (values_.size() != n) throw MalformedInput("cocycle values must have one row per element");
    for (const auto& row : values_) {
      if (row.size() != n) throw MalformedInput("cocycle value rows must have one entry per element");
      for (const auto& v : row)
        if (v.is_zero()) throw MalformedInput("cocycle values must be nonzero");
    }
  }

  [[nodiscard]] const SemigroupTable& base() const { return base_; }
  [[nodiscard]] const Scalar& operator()(Element a, Element b) const { return values_[a][b]; }
  [[nodiscard]] const std::vector<std::vector<Scalar>>& values() const { return values_; }

 private:
  SemigroupTable base_;
  std::vector<std::vector<Scalar>> values_;
};

/// Checks associativity, the declared unit and the declared commutativity.
/// The first failing triple in lexicographic order is reported.
inline Report check_semigroup(const SemigroupTable& s) {
  Report r{.check = "semigroup"};
  const Element n = s.size();
  auto nm = [&](Element a) { return s.name(a); };
  for (Element a = 0; a < n && r.passed; ++a)
    for (Element b = 0; b < n && r.passed; ++b)
      for (Element c = 0; c < n && r.passed; ++c) {
        ++r.instances;
        Element lhs = s(s(a, b), c);
        Element rhs = s(a, s(b, c));
        if (lhs != rhs) r.fail({"associativity", {nm(a), nm(b), nm(c)}, {}, nm(lhs), nm(rhs)});
      }
  if (auto u = s.unit()) {
    for (Element a = 0; a < n && r.passed; ++a) {
      ++r.instances;
      if (s(a, *u) != a) r.fail({"right-unit", {nm(a)}, {}, nm(s(a, *u)), nm(a)});
      else if (s(*u, a) != a) r.fail({"left-unit", {nm(a)}, {}, nm(s(*u, a)), nm(a)});
    }
  }
  if (s.claims_commutative()) {
    for (Element a = 0; a < n && r.passed; ++a)
      for (Element b = 0; b < n && r.passed; ++b) {
        ++r.instances;
        if (s(a, b) != s(b, a)) r.fail({"commutativity", {nm(a), nm(b)}, {}, nm(s(a, b)), nm(s(b, a))});
      }
  }
  return r;
}

/// The five dimonoid identities, in the order they are checked.
inline const std::vector<std::string>& dimonoid_identity_names() {
  static const std::vector<std::string> names = {
      "(a-|b)-|c = a-|(b-|c)", "a-|(b-|c) = a-|(b|-c)", "(a|-b)-|c = a|-(b-|c)",
      "(a-|b)|-c = a|-(b|-c)", "a|-(b|-c) = (a|-b)|-c"};
  return names;
}

/// Checks the five dimonoid identities on all triples. Triples are the outer
/// loop, so the reported counterexample is the lexicographically first
/// failing triple (and the first identity it breaks).
inline Report check_dimonoid(const DimonoidTable& d) {
  Report r{.check = "dimonoid"};
  const Element n = d.size();
  auto L = [&](Element a, Element b) { return d.left(a, b); };
  auto R = [&](Element a, Element b) { return d.right(a, b); };
  auto nm = [&](Element a) { return d.name(a); };
  const auto& ids = dimonoid_identity_names();
  for (Element a = 0; a < n && r.passed; ++a)
    for (Element b = 0; b < n && r.passed; ++b)
      for (Element c = 0; c < n && r.passed; ++c) {
        const std::pair<Element, Element> sides[5] = {
            {L(L(a, b), c), L(a, L(b, c))}, {L(a, L(b, c)), L(a, R(b, c))}, {L(R(a, b), c), R(a, L(b, c))},
            {R(L(a, b), c), R(a, R(b, c))}, {R(a, R(b, c)), R(R(a, b), c)}};
        for (std::size_t k = 0; k < 5; ++k) {
          ++r.instances;
          if (sides[k].first != sides[k].second) {
            r.fail({ids[k], {nm(a), nm(b), nm(c)}, {}, nm(sides[k].first), nm(sides[k].second)});
            break;
          }
        }
      }
  return r;
}

/// Checks c(a,b) c(ab,g) = c(a,bg) c(b,g) on all triples.
inline Report check_cocycle(const Cocycle& c) {
  Report r{.check = "cocycle"};
  const auto& s = c.base();
  const Element n = s.size();
  for (Element a = 0; a < n && r.passed; ++a)
    for (Element b = 0; b < n && r.passed; ++b)
      for (Element g = 0; g < n && r.passed; ++g) {
        ++r.instances;
        Scalar lhs = c(a, b) * c(s(a, b), g);
        Scalar rhs = c(a, s(b, g)) * c(b, g);
        if (lhs != rhs) r.fail({"cocycle", {s.name(a), s.name(b), s.name(g)}, {}, lhs.str(), rhs.str()});
      }
  return r;
}

/// Both dimonoid operations equal the semigroup product.
inline DimonoidTable dimonoid_from_semigroup(const SemigroupTable& s) {
  if (!check_semigroup(s).passed) throw ContractViolation("dimonoid_from_semigroup: input is not a semigroup");
  return DimonoidTable(s.names(), s.product(), s.product());
}

/// a -| b = a and a |- b = b on n elements.
inline DimonoidTable matching_dimonoid(std::size_t n) {
  if (n == 0) throw MalformedInput("matching dimonoid needs n >= 1");
  Table left(n, std::vector<Element>(n)), right(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      left[a][b] = a;
      right[a][b] = b;
    }
  return DimonoidTable(detail::default_names(n, true), std::move(left), std::move(right));
}

/// Uniform view of the index structure an algebra is graded by: a finite
/// semigroup, a finite dimonoid, or a virtual semigroup. Cheap to copy.
class IndexStructure {
 public:
  static IndexStructure of(const SemigroupTable& s) {
    if (Report r = check_semigroup(s); !r.passed)
      throw ContractViolation("index semigroup fails its axioms (" + r.counterexample->equation + ")");
    IndexStructure ix;
    auto sp = std::make_shared<const SemigroupTable>(s);
    ix.kind_ = "semigroup";
    ix.mul_ = [sp](Element a, Element b) { return (*sp)(a, b); };
    ix.left_ = ix.mul_;
    ix.right_ = ix.mul_;
    ix.has_product_ = true;
    ix.commutative_ = s.claims_commutative();
    ix.unit_ = s.unit();
    ix.size_ = s.size();
    ix.name_ = [sp](Element a) { return sp->name(a); };
    ix.find_ = [sp](std::string_view n) { return sp->find(n); };
    ix.semigroup_ = sp;
    return ix;
  }

  static IndexStructure of(const DimonoidTable& d) {
    if (Report r = check_dimonoid(d); !r.passed)
      throw ContractViolation("index dimonoid fails its axioms (" + r.counterexample->equation + ")");
    IndexStructure ix;
    auto dp = std::make_shared<const DimonoidTable>(d);
    ix.kind_ = "dimonoid";
    ix.left_ = [dp](Element a, Element b) { return dp->left(a, b); };
    ix.right_ = [dp](Element a, Element b) { return dp->right(a, b); };
    ix.has_product_ = d.is_semigroup_form();
    if (ix.has_product_) {
      ix.mul_ = ix.left_;
      bool symmetric = true;
      for (Element a = 0; a < d.size(); ++a)
        for (Element b = 0; b < d.size(); ++b) symmetric = symmetric && d.left(a, b) == d.left(b, a);
      ix.commutative_ = symmetric;
    }
    ix.size_ = d.size();
    ix.name_ = [dp](Element a) { return dp->name(a); };
    ix.find_ = [dp](std::string_view n) { return dp->find(n); };
    return ix;
  }

  static IndexStructure of(const VirtualSemigroup& v) {
    IndexStructure ix;
    ix.kind_ = v.name;
    ix.mul_ = v.product;
    ix.left_ = v.product;
    ix.right_ = v.product;
    ix.has_product_ = true;
    ix.commutative_ = v.commutative;
    ix.unit_ = v.unit;
    ix.size_ = std::nullopt;
    ix.name_ = [](Element a) { return std::to_string(a); };
    Element lo = v.min_element;
    ix.find_ = [lo](std::string_view n) -> std::optional<Element> {
      if (n.empty() || n.size() > 18) return std::nullopt;
      Element value = 0;
      for (char ch : n) {
        if (ch < '0' || ch > '9') return std::nullopt;
        value = value * 10 + static_cast<Element>(ch - '0');
      }
      if (value < lo) return std::nullopt;
      return value;
    };
    return ix;
  }

  /// The semigroup product. Dimonoids that are not of semigroup form have none.
  [[nodiscard]] Element mul(Element a, Element b) const {
    if (!has_product_) throw ContractViolation("index dimonoid is not of semigroup form; no single product");
    return mul_(a, b);
  }
  [[nodiscard]] Element left(Element a, Element b) const { return left_(a, b); }
  [[nodiscard]] Element right(Element a, Element b) const { return right_(a, b); }

  [[nodiscard]] bool has_product() const { return has_product_; }
  [[nodiscard]] bool commutative() const { return commutative_; }
  [[nodiscard]] std::optional<Element> unit() const { return unit_; }
  [[nodiscard]] bool finite() const { return size_.has_value(); }
  [[nodiscard]] const std::string& kind() const { return kind_; }

  [[nodiscard]] std::size_t size() const {
    if (!size_) throw ContractViolation("virtual index semigroup has no finite element list");
    return *size_;
  }
  [[nodiscard]] std::vector<Element> elements() const {
    std::vector<Element> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  [[nodiscard]] std::string name(Element a) const { return name_(a); }
  [[nodiscard]] Element parse(std::string_view n) const {
    if (auto e = find_(n)) return *e;
    throw MalformedInput("unknown index element '" + std::string(n) + "'");
  }
  [[nodiscard]] std::optional<Element> find(std::string_view n) const { return find_(n); }

  /// The underlying finite semigroup table, when there is one.
  [[nodiscard]] const SemigroupTable* semigroup() const { return semigroup_.get(); }

 private:
  IndexStructure() = default;

  std::string kind_;
  std::function<Element(Element, Element)> mul_, left_, right_;
  bool has_product_ = false;
  bool commutative_ = false;
  std::optional<Element> unit_;
  std::optional<std::size_t> size_;
  std::function<std::string(Element)> name_;
  std::function<std::optional<Element>(std::string_view)> find_;
  std::shared_ptr<const SemigroupTable> semigroup_;
};

}  // namespace reldend
