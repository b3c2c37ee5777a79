#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "reldend/error.hpp"
#include "reldend/index.hpp"
#include "reldend/lincomb.hpp"
#include "reldend/operations.hpp"
#include "reldend/report.hpp"

namespace reldend {

// ---------------------------------------------------------------------------
// Term language. Every identity checked by the engine is a pair of terms
// built from three basis variables x, y, z, up to three index variables
// a, b, c, and the named operations of an OperationSet.
// ---------------------------------------------------------------------------

class IndexExpr {
 public:
  enum class Kind { var, mul, left, right, unit };

  static IndexExpr var(int v) { return IndexExpr(Kind::var, v, {}, {}); }
  static IndexExpr unit() { return IndexExpr(Kind::unit, -1, {}, {}); }
  static IndexExpr binary(Kind k, const IndexExpr& a, const IndexExpr& b) {
    return IndexExpr(k, -1, std::make_shared<IndexExpr>(a), std::make_shared<IndexExpr>(b));
  }

  [[nodiscard]] Element eval(const IndexStructure& ix, const std::array<Element, 3>& env) const {
    switch (kind_) {
      case Kind::var: return env[static_cast<std::size_t>(var_)];
      case Kind::mul: return ix.mul(lhs_->eval(ix, env), rhs_->eval(ix, env));
      case Kind::left: return ix.left(lhs_->eval(ix, env), rhs_->eval(ix, env));
      case Kind::right: return ix.right(lhs_->eval(ix, env), rhs_->eval(ix, env));
      case Kind::unit:
        if (auto u = ix.unit()) return *u;
        throw ContractViolation("identity refers to the index unit but the index semigroup has none");
    }
    return 0;
  }

  [[nodiscard]] int max_var() const {
    if (kind_ == Kind::var) return var_;
    if (lhs_) return std::max(lhs_->max_var(), rhs_->max_var());
    return -1;
  }
  [[nodiscard]] bool uses(Kind k) const {
    if (kind_ == k) return true;
    return lhs_ && (lhs_->uses(k) || rhs_->uses(k));
  }

 private:
  IndexExpr(Kind k, int v, std::shared_ptr<IndexExpr> a, std::shared_ptr<IndexExpr> b)
      : kind_(k), var_(v), lhs_(std::move(a)), rhs_(std::move(b)) {}

  Kind kind_;
  int var_;
  std::shared_ptr<IndexExpr> lhs_, rhs_;
};

class Term {
 public:
  enum class Kind { var, unit, zero, pair_op, family_op, map, sum, difference };

  static Term var(int v) { return Term(Node{Kind::var, v}); }
  static Term unit() { return Term(Node{Kind::unit}); }
  static Term zero() { return Term(Node{Kind::zero}); }
  static Term pair_op(std::string role, IndexExpr i, IndexExpr j, const Term& l, const Term& r) {
    return Term(Node{Kind::pair_op, -1, std::move(role), std::move(i), std::move(j), l.node_, r.node_});
  }
  static Term family_op(std::string role, IndexExpr i, const Term& l, const Term& r) {
    return Term(Node{Kind::family_op, -1, std::move(role), std::move(i), std::nullopt, l.node_, r.node_});
  }
  static Term map(std::string role, IndexExpr i, const Term& t) {
    return Term(Node{Kind::map, -1, std::move(role), std::move(i), std::nullopt, t.node_, nullptr});
  }
  friend Term operator+(const Term& a, const Term& b) {
    return Term(Node{Kind::sum, -1, {}, std::nullopt, std::nullopt, a.node_, b.node_});
  }
  friend Term operator-(const Term& a, const Term& b) {
    return Term(Node{Kind::difference, -1, {}, std::nullopt, std::nullopt, a.node_, b.node_});
  }

  template <class B>
  [[nodiscard]] LinComb<B> eval(const OperationSet<B>& ops, const IndexStructure& ix,
                                const std::array<LinComb<B>, 3>& vars, const std::array<Element, 3>& idx) const {
    return eval_node(*node_, ops, ix, vars, idx);
  }

  /// Largest basis variable and index variable referenced, and the roles used.
  void collect(int& max_basis, int& max_index, std::set<std::pair<Kind, std::string>>& roles) const {
    collect_node(*node_, max_basis, max_index, roles);
  }

 private:
  struct Node {
    Kind kind;
    int var = -1;
    std::string role;
    std::optional<IndexExpr> i, j;
    std::shared_ptr<const Node> l, r;
  };

  explicit Term(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  template <class B>
  static LinComb<B> eval_node(const Node& n, const OperationSet<B>& ops, const IndexStructure& ix,
                              const std::array<LinComb<B>, 3>& vars, const std::array<Element, 3>& idx) {
    switch (n.kind) {
      case Kind::var: return vars[static_cast<std::size_t>(n.var)];
      case Kind::unit:
        if (!ops.unit) throw ContractViolation("identity refers to the unit element but the algebra declares none");
        return *ops.unit;
      case Kind::zero: return {};
      case Kind::pair_op:
        return ops.pair_op(n.role)(n.i->eval(ix, idx), n.j->eval(ix, idx), eval_node(*n.l, ops, ix, vars, idx),
                                   eval_node(*n.r, ops, ix, vars, idx));
      case Kind::family_op:
        return ops.family_op(n.role)(n.i->eval(ix, idx), eval_node(*n.l, ops, ix, vars, idx),
                                     eval_node(*n.r, ops, ix, vars, idx));
      case Kind::map: return ops.map(n.role)(n.i->eval(ix, idx), eval_node(*n.l, ops, ix, vars, idx));
      case Kind::sum: return eval_node(*n.l, ops, ix, vars, idx) + eval_node(*n.r, ops, ix, vars, idx);
      case Kind::difference: return eval_node(*n.l, ops, ix, vars, idx) - eval_node(*n.r, ops, ix, vars, idx);
    }
    return {};
  }

  static void collect_node(const Node& n, int& mb, int& mi, std::set<std::pair<Kind, std::string>>& roles) {
    if (n.kind == Kind::var) mb = std::max(mb, n.var);
    if (n.i) mi = std::max(mi, n.i->max_var());
    if (n.j) mi = std::max(mi, n.j->max_var());
    if (n.kind == Kind::pair_op || n.kind == Kind::family_op || n.kind == Kind::map) roles.emplace(n.kind, n.role);
    if (n.l) collect_node(*n.l, mb, mi, roles);
    if (n.r) collect_node(*n.r, mb, mi, roles);
  }

  std::shared_ptr<const Node> node_;
};

/// One identity lhs = rhs, universally quantified over its variables.
struct Equation {
  std::string id;
  Term lhs;
  Term rhs;
};

/// Closed list of identity systems the engine knows by name.
enum class AxiomSuite {
  RelAssoc,
  RelUnital,
  RelComm,
  RelLie,
  RelPoisson,
  RelDendriform,
  RelZinbiel,
  RelPreLie,
  RelPrePoisson,
  FamDendriform,
  FamZinbiel,
  FamPreLie,
  FamPrePoisson,
  DimonoidDendriform,
  RelSymmetric,
  FamSymmetric,
  RotaBaxter,
};

inline const std::vector<std::pair<AxiomSuite, std::string>>& suite_names() {
  static const std::vector<std::pair<AxiomSuite, std::string>> names = {
      {AxiomSuite::RelAssoc, "RelAssoc"},
      {AxiomSuite::RelUnital, "RelUnital"},
      {AxiomSuite::RelComm, "RelComm"},
      {AxiomSuite::RelLie, "RelLie"},
      {AxiomSuite::RelPoisson, "RelPoisson"},
      {AxiomSuite::RelDendriform, "RelDendriform"},
      {AxiomSuite::RelZinbiel, "RelZinbiel"},
      {AxiomSuite::RelPreLie, "RelPreLie"},
      {AxiomSuite::RelPrePoisson, "RelPrePoisson"},
      {AxiomSuite::FamDendriform, "FamDendriform"},
      {AxiomSuite::FamZinbiel, "FamZinbiel"},
      {AxiomSuite::FamPreLie, "FamPreLie"},
      {AxiomSuite::FamPrePoisson, "FamPrePoisson"},
      {AxiomSuite::DimonoidDendriform, "DimonoidDendriform"},
      {AxiomSuite::RelSymmetric, "RelSymmetric"},
      {AxiomSuite::FamSymmetric, "FamSymmetric"},
      {AxiomSuite::RotaBaxter, "RotaBaxter"},
  };
  return names;
}

inline std::string to_string(AxiomSuite s) {
  for (const auto& [v, n] : suite_names())
    if (v == s) return n;
  return "?";
}

inline AxiomSuite parse_suite(std::string_view name) {
  for (const auto& [v, n] : suite_names())
    if (n == name) return v;
  throw MalformedInput("unknown axiom suite '" + std::string(name) + "'");
}

namespace dsl {

inline const IndexExpr a = IndexExpr::var(0);
inline const IndexExpr b = IndexExpr::var(1);
inline const IndexExpr c = IndexExpr::var(2);
inline const IndexExpr w = IndexExpr::unit();
inline IndexExpr operator*(const IndexExpr& p, const IndexExpr& q) {
  return IndexExpr::binary(IndexExpr::Kind::mul, p, q);
}
/// p -| q
inline IndexExpr lft(const IndexExpr& p, const IndexExpr& q) { return IndexExpr::binary(IndexExpr::Kind::left, p, q); }
/// p |- q
inline IndexExpr rgt(const IndexExpr& p, const IndexExpr& q) {
  return IndexExpr::binary(IndexExpr::Kind::right, p, q);
}

inline const Term x = Term::var(0);
inline const Term y = Term::var(1);
inline const Term z = Term::var(2);
inline const Term one = Term::unit();
inline const Term zero = Term::zero();

inline Term P(const std::string& role, const IndexExpr& i, const IndexExpr& j, const Term& l, const Term& r) {
  return Term::pair_op(role, i, j, l, r);
}
inline Term F(const std::string& role, const IndexExpr& i, const Term& l, const Term& r) {
  return Term::family_op(role, i, l, r);
}
inline Term M(const std::string& role, const IndexExpr& i, const Term& t) { return Term::map(role, i, t); }

}  // namespace dsl

namespace detail {

inline std::vector<Equation> rel_assoc_eqs(const std::string& mul = "mul") {
  using namespace dsl;
  return {{"associativity", P(mul, a * b, c, P(mul, a, b, x, y), z), P(mul, a, b * c, x, P(mul, b, c, y, z))}};
}

inline std::vector<Equation> rel_comm_eqs() {
  using namespace dsl;
  auto eqs = rel_assoc_eqs();
  eqs.push_back({"commutativity", P("mul", a, b, x, y), P("mul", b, a, y, x)});
  return eqs;
}

inline std::vector<Equation> rel_lie_eqs() {
  using namespace dsl;
  const std::string br = "bracket";
  return {{"skew-symmetry", P(br, a, b, x, y) + P(br, b, a, y, x), zero},
          {"jacobi",
           P(br, a * b, c, P(br, a, b, x, y), z) + P(br, c * a, b, P(br, c, a, z, x), y) +
               P(br, b * c, a, P(br, b, c, y, z), x),
           zero}};
}

inline std::vector<Equation> rel_zinbiel_eqs() {
  using namespace dsl;
  const std::string s = "ast";
  return {{"zinbiel", P(s, a, b * c, x, P(s, b, c, y, z)),
           P(s, a * b, c, P(s, a, b, x, y), z) + P(s, b * a, c, P(s, b, a, y, x), z)}};
}

inline std::vector<Equation> rel_prelie_eqs() {
  using namespace dsl;
  const std::string o = "circ";
  return {{"left-pre-lie", P(o, a, b * c, x, P(o, b, c, y, z)) - P(o, a * b, c, P(o, a, b, x, y), z),
           P(o, b, a * c, y, P(o, a, c, x, z)) - P(o, b * a, c, P(o, b, a, y, x), z)}};
}

inline std::vector<Equation> fam_zinbiel_eqs() {
  using namespace dsl;
  const std::string s = "ast";
  return {{"zinbiel", F(s, a, x, F(s, b, y, z)), F(s, a * b, F(s, a, x, y), z) + F(s, a * b, F(s, b, y, x), z)},
          {"zinbiel-swap", F(s, a, x, F(s, b, y, z)), F(s, b, y, F(s, a, x, z))}};
}

inline std::vector<Equation> fam_prelie_eqs() {
  using namespace dsl;
  const std::string o = "circ";
  return {{"left-pre-lie", F(o, a, x, F(o, b, y, z)) - F(o, a * b, F(o, a, x, y), z),
           F(o, b, y, F(o, a, x, z)) - F(o, b * a, F(o, b, y, x), z)}};
}

template <class T>
void append(std::vector<T>& to, const std::vector<T>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace detail

/// The identities of a suite, in checking order.
inline std::vector<Equation> suite_equations(AxiomSuite suite) {
  using namespace dsl;
  using detail::append;
  switch (suite) {
    case AxiomSuite::RelAssoc: return detail::rel_assoc_eqs();
    case AxiomSuite::RelUnital: {
      auto eqs = detail::rel_assoc_eqs();
      eqs.push_back({"unit-right", P("mul", a, w, x, one), x});
      eqs.push_back({"unit-left", P("mul", w, a, one, x), x});
      return eqs;
    }
    case AxiomSuite::RelComm: return detail::rel_comm_eqs();
    case AxiomSuite::RelLie: return detail::rel_lie_eqs();
    case AxiomSuite::RelPoisson: {
      auto eqs = detail::rel_comm_eqs();
      append(eqs, detail::rel_lie_eqs());
      eqs.push_back({"leibniz", P("bracket", a, b * c, x, P("mul", b, c, y, z)),
                     P("mul", a * b, c, P("bracket", a, b, x, y), z) +
                         P("mul", b, a * c, y, P("bracket", a, c, x, z))});
      return eqs;
    }
    case AxiomSuite::RelDendriform:
      return {{"dendriform-prec", P("prec", a * b, c, P("prec", a, b, x, y), z),
               P("prec", a, b * c, x, P("prec", b, c, y, z) + P("succ", b, c, y, z))},
              {"dendriform-middle", P("prec", a * b, c, P("succ", a, b, x, y), z),
               P("succ", a, b * c, x, P("prec", b, c, y, z))},
              {"dendriform-succ", P("succ", a * b, c, P("prec", a, b, x, y) + P("succ", a, b, x, y), z),
               P("succ", a, b * c, x, P("succ", b, c, y, z))}};
    case AxiomSuite::RelZinbiel: return detail::rel_zinbiel_eqs();
    case AxiomSuite::RelPreLie: return detail::rel_prelie_eqs();
    case AxiomSuite::RelPrePoisson: {
      auto eqs = detail::rel_prelie_eqs();
      append(eqs, detail::rel_zinbiel_eqs());
      eqs.push_back({"pre-poisson-bracket-ast", P("ast", a * b, c, P("circ", a, b, x, y) - P("circ", b, a, y, x), z),
                     P("circ", a, b * c, x, P("ast", b, c, y, z)) - P("ast", b, a * c, y, P("circ", a, c, x, z))});
      eqs.push_back({"pre-poisson-product-circ",
                     P("circ", a * b, c, P("ast", a, b, x, y) + P("ast", b, a, y, x), z),
                     P("ast", a, b * c, x, P("circ", b, c, y, z)) + P("ast", b, a * c, y, P("circ", a, c, x, z))});
      return eqs;
    }
    case AxiomSuite::FamDendriform:
      return {{"dendriform-prec", F("prec", b, F("prec", a, x, y), z),
               F("prec", a * b, x, F("prec", b, y, z) + F("succ", a, y, z))},
              {"dendriform-middle", F("prec", b, F("succ", a, x, y), z), F("succ", a, x, F("prec", b, y, z))},
              {"dendriform-succ", F("succ", a * b, F("prec", b, x, y) + F("succ", a, x, y), z),
               F("succ", a, x, F("succ", b, y, z))}};
    case AxiomSuite::FamZinbiel: return detail::fam_zinbiel_eqs();
    case AxiomSuite::FamPreLie: return detail::fam_prelie_eqs();
    case AxiomSuite::FamPrePoisson: {
      auto eqs = detail::fam_prelie_eqs();
      append(eqs, detail::fam_zinbiel_eqs());
      eqs.push_back({"pre-poisson-bracket-ast", F("ast", a * b, F("circ", a, x, y) - F("circ", b, y, x), z),
                     F("circ", a, x, F("ast", b, y, z)) - F("ast", b, y, F("circ", a, x, z))});
      eqs.push_back({"pre-poisson-product-circ", F("circ", a * b, F("ast", a, x, y) + F("ast", b, y, x), z),
                     F("ast", a, x, F("circ", b, y, z)) + F("ast", b, y, F("circ", a, x, z))});
      return eqs;
    }
    case AxiomSuite::DimonoidDendriform:
      return {{"dendriform-prec", F("prec", b, F("prec", a, x, y), z),
               F("prec", lft(a, b), x, F("prec", b, y, z)) + F("prec", rgt(a, b), x, F("succ", a, y, z))},
              {"dendriform-middle", F("prec", b, F("succ", a, x, y), z), F("succ", a, x, F("prec", b, y, z))},
              {"dendriform-succ", F("succ", lft(a, b), F("prec", b, x, y), z) + F("succ", rgt(a, b), F("succ", a, x, y), z),
               F("succ", a, x, F("succ", b, y, z))}};
    case AxiomSuite::RelSymmetric: return {{"symmetry", P("succ", a, b, x, y), P("prec", b, a, y, x)}};
    case AxiomSuite::FamSymmetric: return {{"symmetry", F("succ", a, x, y), F("prec", a, x, y)}};
    case AxiomSuite::RotaBaxter:
      return {{"rota-baxter", P("mul", a, b, M("R", a, x), M("R", b, y)),
               M("R", a * b, P("mul", a, b, M("R", a, x), y) + P("mul", a, b, x, M("R", b, y)))}};
  }
  return {};
}

/// Suites whose identities swap index arguments need a commutative index.
inline bool suite_requires_commutative(AxiomSuite s) {
  switch (s) {
    case AxiomSuite::RelComm:
    case AxiomSuite::RelLie:
    case AxiomSuite::RelPoisson:
    case AxiomSuite::RelZinbiel:
    case AxiomSuite::RelPreLie:
    case AxiomSuite::RelPrePoisson:
    case AxiomSuite::FamZinbiel:
    case AxiomSuite::FamPreLie:
    case AxiomSuite::FamPrePoisson:
    case AxiomSuite::RelSymmetric: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Domains and the checking engine.
// ---------------------------------------------------------------------------

/// What the identities are quantified over. Index variables range over
/// `indices` (all elements of a finite index when empty). Basis variables
/// range over all tuples from `basis`, or over the fixed `samples` when
/// those are given. Filters drop tuples before counting.
template <class B>
struct Domain {
  std::vector<Element> indices;
  std::vector<B> basis;
  std::vector<std::array<B, 3>> samples;
  std::function<bool(std::span<const Element>)> index_filter;
  std::function<bool(std::span<const B>)> basis_filter;

  static Domain exhaustive(std::vector<Element> indices, std::vector<B> basis) {
    Domain d;
    d.indices = std::move(indices);
    d.basis = std::move(basis);
    return d;
  }
  static Domain sampled(std::vector<Element> indices, std::vector<std::array<B, 3>> samples) {
    Domain d;
    d.indices = std::move(indices);
    d.samples = std::move(samples);
    return d;
  }
};

struct CheckOptions {
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  unsigned threads = 0;
};

template <class B>
using BasisFormatter = std::function<std::string(const B&)>;

namespace detail {

inline std::vector<std::array<Element, 3>> index_tuples(const std::vector<Element>& elems, int arity,
                                                        const std::function<bool(std::span<const Element>)>& keep) {
  std::vector<std::array<Element, 3>> out;
  const std::size_t n = elems.size();
  std::size_t total = 1;
  for (int k = 0; k < arity; ++k) total *= n;
  for (std::size_t t = 0; t < total; ++t) {
    std::array<Element, 3> tup{0, 0, 0};
    std::size_t rem = t;
    for (int k = arity - 1; k >= 0; --k) {
      tup[static_cast<std::size_t>(k)] = elems[rem % n];
      rem /= n;
    }
    if (!keep || keep(std::span<const Element>(tup.data(), static_cast<std::size_t>(arity)))) out.push_back(tup);
  }
  return out;
}

template <class B>
std::vector<std::array<B, 3>> basis_tuples(const Domain<B>& d, int arity) {
  std::vector<std::array<B, 3>> out;
  auto keep = [&](const std::array<B, 3>& t) {
    return !d.basis_filter || d.basis_filter(std::span<const B>(t.data(), static_cast<std::size_t>(arity)));
  };
  if (!d.samples.empty()) {
    for (const auto& t : d.samples)
      if (keep(t)) out.push_back(t);
    return out;
  }
  const std::size_t n = d.basis.size();
  if (n == 0) return out;
  std::size_t total = 1;
  for (int k = 0; k < arity; ++k) total *= n;
  for (std::size_t t = 0; t < total; ++t) {
    std::array<B, 3> tup{d.basis[0], d.basis[0], d.basis[0]};
    std::size_t rem = t;
    for (int k = arity - 1; k >= 0; --k) {
      tup[static_cast<std::size_t>(k)] = d.basis[rem % n];
      rem /= n;
    }
    if (keep(tup)) out.push_back(tup);
  }
  return out;
}

}  // namespace detail

/// Checks a list of identities on a domain. Instances are ordered by
/// equation, then index tuple, then basis tuple (both lexicographic in domain
/// order); the earliest failing instance is reported whatever the thread
/// count, and `instances` counts the instances up to and including it.
template <class B>
Report check_equations(std::string name, const std::vector<Equation>& eqs, const OperationSet<B>& ops,
                       const IndexStructure& ix, const Domain<B>& dom, const BasisFormatter<B>& fmt,
                       CheckOptions opt = {}) {
  std::vector<Element> indices = dom.indices;
  if (indices.empty()) {
    if (!ix.finite()) throw ContractViolation("virtual index semigroup requires a finite window of elements");
    indices = ix.elements();
  } else if (ix.finite()) {
    for (Element e : indices)
      if (e >= ix.size()) throw ContractViolation("domain index " + std::to_string(e) + " out of range");
  }

  struct Plan {
    const Equation* eq;
    int basis_arity, index_arity;
    std::vector<std::array<Element, 3>> idx;
    std::vector<std::array<B, 3>> basis;
    std::uint64_t offset, count;
  };
  std::vector<Plan> plans;
  std::uint64_t total = 0;
  for (const auto& eq : eqs) {
    int mb = -1, mi = -1;
    std::set<std::pair<Term::Kind, std::string>> roles;
    eq.lhs.collect(mb, mi, roles);
    eq.rhs.collect(mb, mi, roles);
    for (const auto& [kind, role] : roles) {
      if (kind == Term::Kind::pair_op) (void)ops.pair_op(role);
      if (kind == Term::Kind::family_op) (void)ops.family_op(role);
      if (kind == Term::Kind::map) (void)ops.map(role);
    }
    Plan p{&eq, mb + 1, mi + 1, {}, {}, total, 0};
    p.idx = detail::index_tuples(indices, p.index_arity, dom.index_filter);
    p.basis = detail::basis_tuples(dom, p.basis_arity);
    p.count = static_cast<std::uint64_t>(p.idx.size()) * p.basis.size();
    total += p.count;
    plans.push_back(std::move(p));
  }

  auto locate = [&](std::uint64_t pos) -> std::pair<const Plan*, std::uint64_t> {
    auto it = std::upper_bound(plans.begin(), plans.end(), pos,
                               [](std::uint64_t v, const Plan& p) { return v < p.offset; });
    --it;
    return {&*it, pos - it->offset};
  };
  auto evaluate = [&](std::uint64_t pos, LinComb<B>* lhs_out, LinComb<B>* rhs_out, const Plan** plan_out,
                      std::uint64_t* local_out) {
    auto [plan, local] = locate(pos);
    const auto& idx = plan->idx[local / plan->basis.size()];
    const auto& bt = plan->basis[local % plan->basis.size()];
    std::array<LinComb<B>, 3> vars;
    for (int k = 0; k < plan->basis_arity; ++k) vars[static_cast<std::size_t>(k)] = LinComb<B>(bt[static_cast<std::size_t>(k)]);
    LinComb<B> lhs = plan->eq->lhs.eval(ops, ix, vars, idx);
    LinComb<B> rhs = plan->eq->rhs.eval(ops, ix, vars, idx);
    bool ok = lhs == rhs;
    if (lhs_out) *lhs_out = std::move(lhs);
    if (rhs_out) *rhs_out = std::move(rhs);
    if (plan_out) *plan_out = plan;
    if (local_out) *local_out = local;
    return ok;
  };

  std::atomic<std::uint64_t> first_failure{total};
  unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  if (total < 2 * threads) threads = 1;

  if (threads == 1) {
    for (std::uint64_t pos = 0; pos < total; ++pos)
      if (!evaluate(pos, nullptr, nullptr, nullptr, nullptr)) {
        first_failure = pos;
        break;
      }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      try {
        for (;;) {
          std::uint64_t pos = next.fetch_add(1);
          if (pos >= total || pos >= first_failure.load()) return;
          if (!evaluate(pos, nullptr, nullptr, nullptr, nullptr)) {
            std::uint64_t cur = first_failure.load();
            while (pos < cur && !first_failure.compare_exchange_weak(cur, pos)) {
            }
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        first_failure = 0;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  Report r{.check = std::move(name)};
  const std::uint64_t fail = first_failure.load();
  if (fail == total) {
    r.instances = total;
    return r;
  }
  r.instances = fail + 1;
  LinComb<B> lhs, rhs;
  const Plan* plan = nullptr;
  std::uint64_t local = 0;
  evaluate(fail, &lhs, &rhs, &plan, &local);
  const auto& idx = plan->idx[local / plan->basis.size()];
  const auto& bt = plan->basis[local % plan->basis.size()];
  Counterexample ce{plan->eq->id, {}, {}, lc_to_json(lhs, fmt), lc_to_json(rhs, fmt)};
  for (int k = 0; k < plan->index_arity; ++k) ce.indices.push_back(ix.name(idx[static_cast<std::size_t>(k)]));
  for (int k = 0; k < plan->basis_arity; ++k) ce.inputs.push_back(fmt(bt[static_cast<std::size_t>(k)]));
  r.fail(std::move(ce));
  return r;
}

/// Runs a named suite. Suites that swap index arguments reject a
/// non-commutative index with ContractViolation.
template <class B>
Report check_axioms(const OperationSet<B>& ops, AxiomSuite suite, const IndexStructure& ix, const Domain<B>& dom,
                    const BasisFormatter<B>& fmt, CheckOptions opt = {}) {
  if (suite_requires_commutative(suite) && !ix.commutative())
    throw ContractViolation(to_string(suite) + " requires a commutative index semigroup");
  return check_equations(to_string(suite), suite_equations(suite), ops, ix, dom, fmt, opt);
}

}  // namespace reldend
