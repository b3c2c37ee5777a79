#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "reldend/error.hpp"
#include "reldend/index.hpp"
#include "reldend/lincomb.hpp"

namespace reldend {

/// Bilinear operation indexed by a pair of index elements: x op_{a,b} y.
template <class B>
using PairOp = std::function<LinComb<B>(Element, Element, const LinComb<B>&, const LinComb<B>&)>;

/// Bilinear operation indexed by a single index element: x op_a y.
template <class B>
using FamilyOp = std::function<LinComb<B>(Element, const LinComb<B>&, const LinComb<B>&)>;

/// Family of linear maps R_a (Rota-Baxter operators, morphism components).
template <class B>
using MapFamily = std::function<LinComb<B>(Element, const LinComb<B>&)>;

/// Named operations on one carrier. Role names are the ones used by the
/// axiom suites: "mul", "prec", "succ", "ast", "circ", "bracket", and "R"
/// for a map family.
template <class B>
struct OperationSet {
  std::map<std::string, PairOp<B>> pair;
  std::map<std::string, FamilyOp<B>> family;
  std::map<std::string, MapFamily<B>> maps;
  std::optional<LinComb<B>> unit;

  [[nodiscard]] const PairOp<B>& pair_op(const std::string& role) const {
    auto it = pair.find(role);
    if (it == pair.end()) throw ContractViolation("missing pair-indexed operation '" + role + "'");
    return it->second;
  }
  [[nodiscard]] const FamilyOp<B>& family_op(const std::string& role) const {
    auto it = family.find(role);
    if (it == family.end()) throw ContractViolation("missing family operation '" + role + "'");
    return it->second;
  }
  [[nodiscard]] const MapFamily<B>& map(const std::string& role) const {
    auto it = maps.find(role);
    if (it == maps.end()) throw ContractViolation("missing map family '" + role + "'");
    return it->second;
  }
};

/// Turns a single-index operation into a pair-indexed one following the
/// independence patterns relating family algebras to relative algebras:
/// prec_{a,b} = prec_b, succ_{a,b} = succ_a, ast_{a,b} = ast_a,
/// circ_{a,b} = circ_a.
template <class B>
PairOp<B> family_to_pair(const std::string& role, FamilyOp<B> op) {
  if (role == "prec")
    return [op = std::move(op)](Element, Element b, const LinComb<B>& x, const LinComb<B>& y) { return op(b, x, y); };
  if (role == "succ" || role == "ast" || role == "circ")
    return [op = std::move(op)](Element a, Element, const LinComb<B>& x, const LinComb<B>& y) { return op(a, x, y); };
  throw ContractViolation("no family-to-pair convention for role '" + role + "'");
}

/// Adds the pair-indexed lift of every family operation that has a lifting
/// convention and no pair-indexed operation of the same name yet.
template <class B>
OperationSet<B> lift_family_ops(OperationSet<B> ops) {
  for (const auto& [role, op] : ops.family) {
    if (ops.pair.contains(role)) continue;
    if (role == "prec" || role == "succ" || role == "ast" || role == "circ")
      ops.pair.emplace(role, family_to_pair<B>(role, op));
  }
  return ops;
}

}  // namespace reldend
