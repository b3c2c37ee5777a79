#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reldend/axioms.hpp"
#include "reldend/finite_algebra.hpp"
#include "reldend/index.hpp"
#include "reldend/operations.hpp"

namespace reldend {

/// A construction whose hypothesis failed on the check domain. Carries the
/// failing report.
class ConstructionRefused : public ContractViolation {
 public:
  ConstructionRefused(const std::string& what, Report report)
      : ContractViolation(what), report_(std::move(report)) {}
  [[nodiscard]] const Report& report() const { return report_; }

 private:
  Report report_;
};

namespace detail {
inline void require_commutative(const IndexStructure& ix, std::string_view what) {
  if (!ix.commutative()) throw ContractViolation(std::string(what) + " requires a commutative index semigroup");
}
}  // namespace detail

/// x ._{a,b} y = x succ_{a,b} y + x prec_{a,b} y
template <class B>
PairOp<B> assoc_from_dend(PairOp<B> prec, PairOp<B> succ) {
  return [prec = std::move(prec), succ = std::move(succ)](Element a, Element b, const LinComb<B>& x,
                                                          const LinComb<B>& y) {
    return succ(a, b, x, y) + prec(a, b, x, y);
  };
}

/// x circ_{a,b} y = x succ_{a,b} y - y prec_{b,a} x
template <class B>
PairOp<B> prelie_from_dend(PairOp<B> prec, PairOp<B> succ, const IndexStructure& ix) {
  detail::require_commutative(ix, "prelie_from_dend");
  return [prec = std::move(prec), succ = std::move(succ)](Element a, Element b, const LinComb<B>& x,
                                                          const LinComb<B>& y) {
    return succ(a, b, x, y) - prec(b, a, y, x);
  };
}

/// x prec_{a,b} y = y ast_{b,a} x and x succ_{a,b} y = x ast_{a,b} y.
/// The result satisfies x succ_{a,b} y = y prec_{b,a} x identically.
template <class B>
std::pair<PairOp<B>, PairOp<B>> dend_from_zinbiel(PairOp<B> ast, const IndexStructure& ix) {
  detail::require_commutative(ix, "dend_from_zinbiel");
  PairOp<B> prec = [ast](Element a, Element b, const LinComb<B>& x, const LinComb<B>& y) { return ast(b, a, y, x); };
  return {std::move(prec), std::move(ast)};
}

/// x ._{a,b} y = x ast_{a,b} y + y ast_{b,a} x
template <class B>
PairOp<B> comm_from_zinbiel(PairOp<B> ast, const IndexStructure& ix) {
  detail::require_commutative(ix, "comm_from_zinbiel");
  auto [prec, succ] = dend_from_zinbiel(std::move(ast), ix);
  return assoc_from_dend(std::move(prec), std::move(succ));
}

/// [x, y]_{a,b} = x circ_{a,b} y - y circ_{b,a} x
template <class B>
PairOp<B> lie_from_prelie(PairOp<B> circ, const IndexStructure& ix) {
  detail::require_commutative(ix, "lie_from_prelie");
  return [circ = std::move(circ)](Element a, Element b, const LinComb<B>& x, const LinComb<B>& y) {
    return circ(a, b, x, y) - circ(b, a, y, x);
  };
}

/// ast := succ, after verifying x succ_{a,b} y = y prec_{b,a} x on the domain.
template <class B>
PairOp<B> zinbiel_from_symmetric_dend(PairOp<B> prec, PairOp<B> succ, const IndexStructure& ix, const Domain<B>& dom,
                                      const BasisFormatter<B>& fmt) {
  detail::require_commutative(ix, "zinbiel_from_symmetric_dend");
  OperationSet<B> ops;
  ops.pair["prec"] = std::move(prec);
  ops.pair["succ"] = succ;
  Report r = check_axioms(ops, AxiomSuite::RelSymmetric, ix, dom, fmt);
  if (!r.passed) throw ConstructionRefused("dendriform operations are not symmetric", r);
  return succ;
}

/// mul from the zinbiel part and bracket from the pre-Lie part, after
/// verifying the pre-Poisson identities on the domain.
template <class B>
std::pair<PairOp<B>, PairOp<B>> poisson_from_prepoisson(PairOp<B> circ, PairOp<B> ast, const IndexStructure& ix,
                                                        const Domain<B>& dom, const BasisFormatter<B>& fmt) {
  detail::require_commutative(ix, "poisson_from_prepoisson");
  OperationSet<B> ops;
  ops.pair["circ"] = circ;
  ops.pair["ast"] = ast;
  Report r = check_axioms(ops, AxiomSuite::RelPrePoisson, ix, dom, fmt);
  if (!r.passed) throw ConstructionRefused("operations do not form a pre-Poisson algebra", r);
  return {comm_from_zinbiel(std::move(ast), ix), lie_from_prelie(std::move(circ), ix)};
}

/// x prec_{a,b} y = x ._{a,b} R_b(y) and x succ_{a,b} y = R_a(x) ._{a,b} y.
/// `carrier` provides "mul" and the map family "R"; the Rota-Baxter
/// identity is verified on the domain first.
template <class B>
std::pair<PairOp<B>, PairOp<B>> dend_from_rb(const OperationSet<B>& carrier, const IndexStructure& ix,
                                             const Domain<B>& dom, const BasisFormatter<B>& fmt) {
  Report r = check_axioms(carrier, AxiomSuite::RotaBaxter, ix, dom, fmt);
  if (!r.passed) throw ConstructionRefused("Rota-Baxter identity fails", r);
  PairOp<B> mul = carrier.pair_op("mul");
  MapFamily<B> R = carrier.map("R");
  PairOp<B> prec = [mul, R](Element a, Element b, const LinComb<B>& x, const LinComb<B>& y) {
    return mul(a, b, x, R(b, y));
  };
  PairOp<B> succ = [mul, R](Element a, Element b, const LinComb<B>& x, const LinComb<B>& y) {
    return mul(a, b, R(a, x), y);
  };
  return {std::move(prec), std::move(succ)};
}

inline std::pair<PairOp<BasisIndex>, PairOp<BasisIndex>> dend_from_rb(const RotaBaxterFamily& rb,
                                                                     const Domain<BasisIndex>& dom) {
  auto ops = rb.carrier.operations();
  ops.maps["R"] = rb.maps.as_maps();
  return dend_from_rb(ops, rb.carrier.index(), dom, rb.carrier.formatter());
}

/// Names accepted by derive().
inline const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names = {
      "assoc-from-dend",   "prelie-from-dend", "zinbiel-from-symmetric-dend", "dend-from-zinbiel",
      "comm-from-zinbiel", "lie-from-prelie",  "poisson-from-prepoisson",     "dend-from-rb"};
  return names;
}

/// Applies a named construction to the operations of a carrier and returns
/// only the derived pair-indexed operations. Constructions with a
/// hypothesis verify it on `dom`.
template <class B>
OperationSet<B> derive(std::string_view name, const OperationSet<B>& in, const IndexStructure& ix,
                       const Domain<B>& dom, const BasisFormatter<B>& fmt) {
  OperationSet<B> out;
  if (name == "assoc-from-dend") {
    out.pair["mul"] = assoc_from_dend(in.pair_op("prec"), in.pair_op("succ"));
  } else if (name == "prelie-from-dend") {
    out.pair["circ"] = prelie_from_dend(in.pair_op("prec"), in.pair_op("succ"), ix);
  } else if (name == "zinbiel-from-symmetric-dend") {
    out.pair["ast"] = zinbiel_from_symmetric_dend(in.pair_op("prec"), in.pair_op("succ"), ix, dom, fmt);
  } else if (name == "dend-from-zinbiel") {
    auto [prec, succ] = dend_from_zinbiel(in.pair_op("ast"), ix);
    out.pair["prec"] = std::move(prec);
    out.pair["succ"] = std::move(succ);
  } else if (name == "comm-from-zinbiel") {
    out.pair["mul"] = comm_from_zinbiel(in.pair_op("ast"), ix);
  } else if (name == "lie-from-prelie") {
    out.pair["bracket"] = lie_from_prelie(in.pair_op("circ"), ix);
  } else if (name == "poisson-from-prepoisson") {
    auto [mul, bracket] = poisson_from_prepoisson(in.pair_op("circ"), in.pair_op("ast"), ix, dom, fmt);
    out.pair["mul"] = std::move(mul);
    out.pair["bracket"] = std::move(bracket);
  } else if (name == "dend-from-rb") {
    auto [prec, succ] = dend_from_rb(in, ix, dom, fmt);
    out.pair["prec"] = std::move(prec);
    out.pair["succ"] = std::move(succ);
  } else {
    throw MalformedInput("unknown construction '" + std::string(name) + "'");
  }
  return out;
}

/// x ._{a,b} y = c(a,b) xy for an ordinary associative algebra (a "mul"
/// role that does not depend on the index) and a 2-cocycle c.
inline FiniteRelativeAlgebra cocycle_twist(const FiniteRelativeAlgebra& base, const Cocycle& c) {
  const RoleConstants& rc = base.role("mul");
  const Tensor3* product = rc.uniform ? &*rc.uniform : nullptr;
  if (!product) {
    if (rc.arity != 2 || rc.constants.empty()) throw ContractViolation("cocycle_twist: base product is missing");
    product = &rc.constants.begin()->second;
    for (const auto& [key, t] : rc.constants)
      if (!(t == *product)) throw ContractViolation("cocycle_twist: base product depends on the index");
  }
  {
    FiniteRelativeAlgebra ordinary(base.basis(), IndexStructure::of(SemigroupTable::trivial()));
    ordinary.add_role("mul", 2);
    ordinary.set_uniform("mul", *product);
    Report r = check_axioms(ordinary.operations(), AxiomSuite::RelAssoc, ordinary.index(),
                            ordinary.exhaustive_domain(), ordinary.formatter());
    if (!r.passed) throw ConstructionRefused("cocycle_twist: base product is not associative", r);
  }
  if (Report r = check_cocycle(c); !r.passed) throw ConstructionRefused("cocycle_twist: not a 2-cocycle", r);

  FiniteRelativeAlgebra out(base.basis(), IndexStructure::of(c.base()));
  out.add_role("mul", 2);
  const std::size_t d = base.dim();
  for (Element a = 0; a < c.base().size(); ++a)
    for (Element b = 0; b < c.base().size(); ++b) {
      Tensor3 t(d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) t.at(i, j, k) = c(a, b) * product->at(i, j, k);
      out.set_constants("mul", {a, b}, std::move(t));
    }
  return out;
}

/// The ordinary algebra V (x) KS over the trivial monoid: basis e_i@s and
/// (x@a) op (y@b) = (x op_{a,b} y)@ab for every role. Family roles are
/// lifted to pair form first. A unit 1 becomes 1@w.
inline FiniteRelativeAlgebra collapse(const FiniteRelativeAlgebra& alg) {
  const IndexStructure& ix = alg.index();
  if (!ix.finite()) throw ContractViolation("collapse requires a finite index semigroup");
  const std::size_t n = ix.size();
  const std::size_t d = alg.dim();
  auto pos = [n](BasisIndex i, Element a) { return i * n + a; };

  std::vector<std::string> basis;
  for (BasisIndex i = 0; i < d; ++i)
    for (Element a = 0; a < n; ++a) basis.push_back(alg.basis_name(i) + "@" + ix.name(a));

  FiniteRelativeAlgebra out(basis, IndexStructure::of(SemigroupTable::trivial()));
  auto ops = alg.operations();
  for (const auto& [name, rc] : alg.roles()) {
    const PairOp<BasisIndex>& op = ops.pair_op(name);
    Tensor3 t(d * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = ix.mul(a, b);
        for (BasisIndex i = 0; i < d; ++i)
          for (BasisIndex j = 0; j < d; ++j)
            for (const auto& [k, coeff] : op(a, b, Vector(i), Vector(j))) t.at(pos(i, a), pos(j, b), pos(k, ab)) = coeff;
      }
    out.add_role(name, 2);
    out.set_uniform(name, std::move(t));
  }
  if (alg.unit()) {
    if (!ix.unit()) throw ContractViolation("collapse: algebra has a unit but the index has no unit element");
    Vector u;
    for (const auto& [i, coeff] : *alg.unit()) u.add_term(pos(i, *ix.unit()), coeff);
    out.set_unit(std::move(u));
  }
  return out;
}

}  // namespace reldend
