#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reldend/axioms.hpp"
#include "reldend/error.hpp"
#include "reldend/index.hpp"
#include "reldend/lincomb.hpp"
#include "reldend/operations.hpp"
#include "reldend/tree.hpp"

namespace reldend {

using TreeComb = LinComb<Tree>;

/// Free dendriform algebra over a dimonoid: the span of nonempty planar
/// binary trees with vertices decorated by X and internal edges decorated by
/// the dimonoid's elements, with operations prec_a and succ_a.
class FreeDendriform {
 public:
  FreeDendriform(std::vector<std::string> decorations, DimonoidTable dimonoid)
      : dimonoid_(std::move(dimonoid)), index_(IndexStructure::of(dimonoid_)) {
    detail::validate_names(decorations);
    for (const auto& d : decorations)
      if (d == "e") throw MalformedInput("'e' is reserved for the empty tree");
    names_.decorations = std::move(decorations);
    auto dp = std::make_shared<const DimonoidTable>(dimonoid_);
    names_.edge_name = [dp](Element a) { return dp->name(a); };
    names_.find_edge = [dp](std::string_view n) { return dp->find(n); };
  }

  [[nodiscard]] const DimonoidTable& dimonoid() const { return dimonoid_; }
  [[nodiscard]] const IndexStructure& index() const { return index_; }
  [[nodiscard]] const TreeNames& names() const { return names_; }
  [[nodiscard]] std::size_t decoration_count() const { return names_.decorations.size(); }

  [[nodiscard]] BasisFormatter<Tree> formatter() const {
    return [names = names_](const Tree& t) { return tree_print(t, names); };
  }
  [[nodiscard]] Tree parse(std::string_view text) const { return tree_parse(text, names_); }
  [[nodiscard]] std::string print(const Tree& t) const { return tree_print(t, names_); }

  /// Throws MalformedInput if a label or edge is not declared.
  void validate(const Tree& t) const {
    if (t.empty()) return;
    if (t.label() >= decoration_count()) throw MalformedInput("undeclared vertex label " + std::to_string(t.label()));
    for (auto e : {t.left_edge(), t.right_edge()})
      if (e && *e >= dimonoid_.size()) throw MalformedInput("undeclared edge label " + std::to_string(*e));
    validate(t.left());
    validate(t.right());
  }

  /// s prec_a t on trees. s prec_a e = s and e prec_a t = 0.
  [[nodiscard]] TreeComb prec(const Tree& s, const Tree& t, Element a) const {
    TreeComb out;
    prec_into(s, t, a, out);
    return out;
  }
  /// s succ_a t on trees. e succ_a t = t and s succ_a e = 0.
  [[nodiscard]] TreeComb succ(const Tree& s, const Tree& t, Element a) const {
    TreeComb out;
    succ_into(s, t, a, out);
    return out;
  }

  [[nodiscard]] TreeComb prec(const TreeComb& s, const TreeComb& t, Element a) const {
    return combine(s, t, a, &FreeDendriform::prec_into);
  }
  [[nodiscard]] TreeComb succ(const TreeComb& s, const TreeComb& t, Element a) const {
    return combine(s, t, a, &FreeDendriform::succ_into);
  }

  /// Family operations "prec", "succ" and the derived "circ"
  /// (x circ_a y = x succ_a y - y prec_a x), plus their pair-indexed lifts.
  [[nodiscard]] OperationSet<Tree> family_ops() const {
    OperationSet<Tree> ops;
    auto self = std::make_shared<const FreeDendriform>(*this);
    ops.family["prec"] = [self](Element a, const TreeComb& x, const TreeComb& y) { return self->prec(x, y, a); };
    ops.family["succ"] = [self](Element a, const TreeComb& x, const TreeComb& y) { return self->succ(x, y, a); };
    ops.family["circ"] = [self](Element a, const TreeComb& x, const TreeComb& y) {
      return self->succ(x, y, a) - self->prec(y, x, a);
    };
    return lift_family_ops(std::move(ops));
  }

 private:
  using Into = void (FreeDendriform::*)(const Tree&, const Tree&, Element, TreeComb&) const;

  TreeComb combine(const TreeComb& s, const TreeComb& t, Element a, Into f) const {
    if (a >= dimonoid_.size()) throw ContractViolation("index element out of range");
    TreeComb out;
    for (const auto& [ts, cs] : s)
      for (const auto& [tt, ct] : t) {
        TreeComb part;
        (this->*f)(ts, tt, a, part);
        out.add_scaled(part, cs * ct);
      }
    return out;
  }

  void prec_into(const Tree& s, const Tree& t, Element a, TreeComb& out) const {
    if (s.empty()) return;
    if (t.empty()) {
      out.add_term(s, 1);
      return;
    }
    const Tree& s2 = s.right();
    if (s2.empty()) {
      out.add_term(Tree::node(s.label(), s.left(), s.left_edge(), t, a), 1);
      return;
    }
    const Element sigma = *s.right_edge();
    TreeComb inner;
    prec_into(s2, t, a, inner);
    for (const auto& [r, c] : inner)
      out.add_term(Tree::node(s.label(), s.left(), s.left_edge(), r, dimonoid_.left(sigma, a)), c);
    inner = {};
    succ_into(s2, t, sigma, inner);
    for (const auto& [r, c] : inner)
      out.add_term(Tree::node(s.label(), s.left(), s.left_edge(), r, dimonoid_.right(sigma, a)), c);
  }

  void succ_into(const Tree& s, const Tree& t, Element a, TreeComb& out) const {
    if (t.empty()) return;
    if (s.empty()) {
      out.add_term(t, 1);
      return;
    }
    const Tree& t1 = t.left();
    if (t1.empty()) {
      out.add_term(Tree::node(t.label(), s, a, t.right(), t.right_edge()), 1);
      return;
    }
    const Element tau = *t.left_edge();
    TreeComb inner;
    prec_into(s, t1, tau, inner);
    for (const auto& [r, c] : inner)
      out.add_term(Tree::node(t.label(), r, dimonoid_.left(a, tau), t.right(), t.right_edge()), c);
    inner = {};
    succ_into(s, t1, a, inner);
    for (const auto& [r, c] : inner)
      out.add_term(Tree::node(t.label(), r, dimonoid_.right(a, tau), t.right(), t.right_edge()), c);
  }

  DimonoidTable dimonoid_;
  IndexStructure index_;
  TreeNames names_;
};

/// Operations of a free carrier whose dimonoid comes from a semigroup; they
/// are expected to satisfy the family dendriform identities.
inline OperationSet<Tree> free_family_ops(const FreeDendriform& f) {
  if (!f.dimonoid().is_semigroup_form())
    throw ContractViolation("free_family_ops requires a dimonoid whose two operations coincide");
  return f.family_ops();
}

/// Operations of a free carrier over a projection dimonoid (a -| b = a,
/// a |- b = b); they are expected to satisfy the matching identities.
inline OperationSet<Tree> free_matching_ops(const FreeDendriform& f) {
  const auto& d = f.dimonoid();
  for (Element a = 0; a < d.size(); ++a)
    for (Element b = 0; b < d.size(); ++b)
      if (d.left(a, b) != a || d.right(a, b) != b)
        throw ContractViolation("free_matching_ops requires the projection dimonoid");
  return f.family_ops();
}

/// Integer-only uniform draw in [0, n), identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ContractViolation("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % n;
  }
}

namespace detail {
inline Tree random_tree_of_size(std::mt19937_64& rng, std::size_t n, std::size_t x_count, std::size_t s_count) {
  if (n == 0) return {};
  const auto label = static_cast<Label>(uniform_below(rng, x_count));
  const std::size_t left_n = uniform_below(rng, n);
  Tree left = random_tree_of_size(rng, left_n, x_count, s_count);
  std::optional<Element> le;
  if (!left.empty()) le = uniform_below(rng, s_count);
  Tree right = random_tree_of_size(rng, n - 1 - left_n, x_count, s_count);
  std::optional<Element> re;
  if (!right.empty()) re = uniform_below(rng, s_count);
  return Tree::node(label, std::move(left), le, std::move(right), re);
}
}  // namespace detail

/// Nonempty random tree with 1..max_vertices vertices (count uniform), split
/// sizes uniform at each vertex, labels uniform.
inline Tree random_tree(std::mt19937_64& rng, std::size_t x_count, std::size_t s_count, std::size_t max_vertices) {
  if (max_vertices == 0) throw ContractViolation("random_tree needs max_vertices >= 1");
  if (x_count == 0 || s_count == 0) throw ContractViolation("random_tree needs labels to draw from");
  const std::size_t n = 1 + uniform_below(rng, max_vertices);
  return detail::random_tree_of_size(rng, n, x_count, s_count);
}

inline Tree random_tree(std::size_t x_count, std::size_t s_count, std::size_t max_vertices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_tree(rng, x_count, s_count, max_vertices);
}

/// `count` triples of random trees from one seeded stream.
inline std::vector<std::array<Tree, 3>> sample_triples(std::size_t x_count, std::size_t s_count,
                                                       std::size_t max_vertices, std::size_t count,
                                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<Tree, 3>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Tree a = random_tree(rng, x_count, s_count, max_vertices);
    Tree b = random_tree(rng, x_count, s_count, max_vertices);
    Tree c = random_tree(rng, x_count, s_count, max_vertices);
    out.push_back({std::move(a), std::move(b), std::move(c)});
  }
  return out;
}

/// Sampled domain over all dimonoid elements.
inline Domain<Tree> free_sampled_domain(const FreeDendriform& f, std::size_t max_vertices, std::size_t count,
                                        std::uint64_t seed) {
  return Domain<Tree>::sampled(f.index().elements(),
                               sample_triples(f.decoration_count(), f.dimonoid().size(), max_vertices, count, seed));
}

}  // namespace reldend
