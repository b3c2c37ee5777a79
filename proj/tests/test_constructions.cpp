#include <gtest/gtest.h>

#include "reldend/constructions.hpp"
#include "reldend/free_dendriform.hpp"
#include "reldend/json_io.hpp"

using namespace reldend;

namespace {

constexpr std::size_t kDegree = 8;

// Independent model of Q[t] truncated at degree kDegree: coefficient lists.
using Poly = std::vector<Scalar>;

Poly monomial(std::size_t n) {
  Poly p(n + 1);
  p[n] = Scalar(1);
  return p;
}

Poly integrate(const Poly& p) {
  Poly out(p.size() + 1);
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / Scalar(static_cast<long>(i + 1));
  return out;
}

Poly times(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

Vector truncate(const Poly& p) {
  Vector v;
  for (std::size_t i = 0; i < p.size() && i <= kDegree; ++i) v.add_term(i, p[i]);
  return v;
}

FiniteRelativeAlgebra truncated() { return load_algebra(std::filesystem::path(RELDEND_DATA) / "truncated_integration.json"); }

// Keeps basis tuples whose total degree fits: sum of degrees + (k - 1) <= d.
Domain<BasisIndex> degree_filtered(const FiniteRelativeAlgebra& alg) {
  auto dom = alg.exhaustive_domain();
  dom.basis_filter = [](std::span<const BasisIndex> t) {
    std::size_t s = t.size() - 1;
    for (auto i : t) s += i;
    return s <= kDegree;
  };
  return dom;
}

Tensor3 scalar_tensor(const Scalar& s) {
  Tensor3 t(1);
  t.at(0, 0, 0) = s;
  return t;
}

RotaBaxterFamily harmonic_rb() {
  FiniteRelativeAlgebra alg({"x"}, IndexStructure::of(VirtualSemigroup::positive_integers()));
  alg.add_role("mul", 2);
  alg.set_uniform("mul", scalar_tensor(1));
  MatrixFamily maps;
  maps.harmonic = Matrix::identity(1);
  return {alg, maps};
}

Domain<BasisIndex> harmonic_window(Element n, Element bound) {
  std::vector<Element> idx;
  for (Element e = 1; e <= n; ++e) idx.push_back(e);
  auto dom = Domain<BasisIndex>::exhaustive(idx, {0});
  dom.index_filter = [bound](std::span<const Element> t) {
    Element s = 0;
    for (auto e : t) s += e;
    return s <= bound;
  };
  return dom;
}

BasisFormatter<BasisIndex> x_name() {
  return [](const BasisIndex&) { return std::string("x"); };
}

FiniteRelativeAlgebra sign_cocycle_base() {
  FiniteRelativeAlgebra k({"e"}, IndexStructure::of(SemigroupTable::trivial()));
  k.add_role("mul", 2);
  k.set_uniform("mul", scalar_tensor(1));
  k.set_unit(Vector(0));
  return k;
}

Cocycle sign_cocycle() {
  return Cocycle(SemigroupTable::cyclic(2), {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(-1)}});
}

}  // namespace

TEST(TruncatedZinbiel, ConstantsMatchIntegration) {
  auto alg = truncated();
  auto ast = alg.operations().pair_op("ast");
  for (std::size_t m = 0; m <= kDegree; ++m)
    for (std::size_t n = 0; n <= kDegree; ++n)
      EXPECT_EQ(ast(0, 0, Vector(m), Vector(n)), truncate(times(integrate(monomial(m)), monomial(n)))) << m << "," << n;
}

TEST(TruncatedZinbiel, ZinbielAndSwapIdentities) {
  auto alg = truncated();
  auto dom = degree_filtered(alg);
  Report r = check_axioms(alg.operations(), AxiomSuite::RelZinbiel, alg.index(), dom, alg.formatter());
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  // Tuples (m, n, p) with m + n + p <= 6.
  EXPECT_EQ(r.instances, 84u);
  r = check_axioms(alg.operations(), AxiomSuite::FamZinbiel, alg.index(), dom, alg.formatter());
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  EXPECT_EQ(r.instances, 168u);
}

TEST(TruncatedZinbiel, TruncationIsAQuotient) {
  // t^{d+1} Q[t] is an ideal for the integration product, so the identities
  // also hold on the triples the degree filter drops.
  auto alg = truncated();
  Report r = check_axioms(alg.operations(), AxiomSuite::FamZinbiel, alg.index(), alg.exhaustive_domain(),
                          alg.formatter());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.instances, 2u * 729u);
}

TEST(TruncatedZinbiel, DendriformChain) {
  auto alg = truncated();
  auto dom = degree_filtered(alg);
  auto [prec, succ] = dend_from_zinbiel(alg.operations().pair_op("ast"), alg.index());
  OperationSet<BasisIndex> dend;
  dend.pair["prec"] = prec;
  dend.pair["succ"] = succ;
  EXPECT_TRUE(check_axioms(dend, AxiomSuite::RelDendriform, alg.index(), dom, alg.formatter()).passed);
  EXPECT_TRUE(check_axioms(dend, AxiomSuite::RelSymmetric, alg.index(), dom, alg.formatter()).passed);

  // Round trip back to the zinbiel product.
  auto ast = zinbiel_from_symmetric_dend(prec, succ, alg.index(), dom, alg.formatter());
  auto orig = alg.operations().pair_op("ast");
  for (BasisIndex m = 0; m <= kDegree; ++m)
    for (BasisIndex n = 0; n <= kDegree; ++n) EXPECT_EQ(ast(0, 0, Vector(m), Vector(n)), orig(0, 0, Vector(m), Vector(n)));
}

TEST(TruncatedZinbiel, CommutativeProduct) {
  auto alg = truncated();
  auto mul = comm_from_zinbiel(alg.operations().pair_op("ast"), alg.index());
  OperationSet<BasisIndex> ops;
  ops.pair["mul"] = mul;
  Report r = check_axioms(ops, AxiomSuite::RelComm, alg.index(), degree_filtered(alg), alg.formatter());
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  for (std::size_t m = 0; m <= kDegree; ++m)
    for (std::size_t n = 0; m + n + 1 <= kDegree; ++n) {
      Poly fm = monomial(m), fn = monomial(n);
      Poly expect = times(integrate(fm), fn);
      Poly other = times(integrate(fn), fm);
      for (std::size_t i = 0; i < other.size(); ++i) expect[i] += other[i];
      EXPECT_EQ(mul(0, 0, Vector(m), Vector(n)), truncate(expect));
      EXPECT_EQ(mul(0, 0, Vector(m), Vector(n)),
                Vector(m + n + 1, Scalar(static_cast<long>(m + n + 2), static_cast<long>((m + 1) * (n + 1)))));
    }
}

TEST(TruncatedZinbiel, PrePoissonWithZeroCircle) {
  auto alg = truncated();
  auto dom = degree_filtered(alg);
  PairOp<BasisIndex> circ = [](Element, Element, const Vector&, const Vector&) { return Vector{}; };
  auto [mul, bracket] = poisson_from_prepoisson(circ, alg.operations().pair_op("ast"), alg.index(), dom, alg.formatter());
  OperationSet<BasisIndex> ops;
  ops.pair["mul"] = mul;
  ops.pair["bracket"] = bracket;
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelPoisson, alg.index(), dom, alg.formatter()).passed);
  EXPECT_TRUE(bracket(0, 0, Vector(1), Vector(2)).is_zero());
}

TEST(HarmonicFamily, RotaBaxterDendriform) {
  auto rb = harmonic_rb();
  auto dom = harmonic_window(18, 20);
  auto [prec, succ] = dend_from_rb(rb, dom);
  OperationSet<BasisIndex> ops;
  ops.pair["prec"] = prec;
  ops.pair["succ"] = succ;
  auto ix = rb.carrier.index();
  Report r = check_axioms(ops, AxiomSuite::RelDendriform, ix, dom, x_name());
  EXPECT_TRUE(r.passed) << r.to_json().dump();
  // x prec_{m,n} y = xy/n and x succ_{m,n} y = xy/m.
  EXPECT_EQ(prec(3, 5, Vector(0), Vector(0)), Vector(0, Scalar(1, 5)));
  EXPECT_EQ(succ(3, 5, Vector(0), Vector(0)), Vector(0, Scalar(1, 3)));

  ops.pair["mul"] = assoc_from_dend(prec, succ);
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelAssoc, ix, dom, x_name()).passed);
  ops.pair["circ"] = prelie_from_dend(prec, succ, ix);
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelPreLie, ix, dom, x_name()).passed);
  ops.pair["bracket"] = lie_from_prelie(ops.pair["circ"], ix);
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelLie, ix, dom, x_name()).passed);
}

TEST(HarmonicFamily, SymmetricDendriformGivesZinbiel) {
  auto rb = harmonic_rb();
  auto dom = harmonic_window(18, 20);
  auto [prec, succ] = dend_from_rb(rb, dom);
  auto ix = rb.carrier.index();
  OperationSet<BasisIndex> ops;
  ops.pair["ast"] = zinbiel_from_symmetric_dend(prec, succ, ix, dom, x_name());
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelZinbiel, ix, dom, x_name()).passed);
  ops.pair["mul"] = comm_from_zinbiel(ops.pair["ast"], ix);
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelComm, ix, dom, x_name()).passed);
}

TEST(HarmonicFamily, SymmetryWithoutSwappingIndicesFails) {
  auto rb = harmonic_rb();
  auto dom = harmonic_window(4, 20);
  auto [prec, succ] = dend_from_rb(rb, dom);
  OperationSet<BasisIndex> ops;
  ops.pair["prec"] = prec;
  ops.pair["succ"] = succ;
  using namespace dsl;
  std::vector<Equation> literal = {{"symmetry", P("succ", a, b, x, y), P("prec", a, b, y, x)}};
  Report r = check_equations("literal", literal, ops, rb.carrier.index(), dom, x_name());
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.counterexample->indices, (std::vector<std::string>{"1", "2"}));
}

TEST(HarmonicFamily, CommutativeProductWithoutSwapFails) {
  auto rb = harmonic_rb();
  auto dom = harmonic_window(4, 20);
  auto ix = rb.carrier.index();
  auto [prec, succ] = dend_from_rb(rb, dom);
  PairOp<BasisIndex> ast = succ;
  OperationSet<BasisIndex> ops;
  ops.pair["mul"] = [ast](Element a, Element b, const Vector& x, const Vector& y) { return ast(a, b, x, y) + ast(a, b, y, x); };
  EXPECT_FALSE(check_axioms(ops, AxiomSuite::RelComm, ix, dom, x_name()).passed);
}

TEST(HarmonicFamily, RefusedWhenNotRotaBaxter) {
  auto rb = harmonic_rb();
  rb.maps.harmonic.reset();
  rb.maps.uniform = Matrix::identity(1);
  try {
    (void)dend_from_rb(rb, harmonic_window(3, 20));
    FAIL() << "expected refusal";
  } catch (const ConstructionRefused& e) {
    EXPECT_FALSE(e.report().passed);
    EXPECT_EQ(e.report().counterexample->equation, "rota-baxter");
  }
}

TEST(Refusals, NonSymmetricDendriform) {
  auto f = FreeDendriform({"x"}, dimonoid_from_semigroup(SemigroupTable::cyclic(2)));
  auto ops = free_family_ops(f);
  auto dom = free_sampled_domain(f, 3, 20, 0);
  try {
    (void)zinbiel_from_symmetric_dend(ops.pair_op("prec"), ops.pair_op("succ"), f.index(), dom, f.formatter());
    FAIL() << "expected refusal";
  } catch (const ConstructionRefused& e) {
    EXPECT_EQ(e.report().check, "RelSymmetric");
    EXPECT_EQ(e.report().counterexample->equation, "symmetry");
  }
}

TEST(Refusals, NotPrePoisson) {
  auto alg = truncated();
  auto dom = degree_filtered(alg);
  auto ast = alg.operations().pair_op("ast");
  EXPECT_THROW((void)poisson_from_prepoisson(ast, ast, alg.index(), dom, alg.formatter()), ConstructionRefused);
}

TEST(Refusals, NonCommutativeIndex) {
  auto f = FreeDendriform({"x"}, matching_dimonoid(2));
  auto ops = f.family_ops();
  EXPECT_THROW((void)prelie_from_dend(ops.pair_op("prec"), ops.pair_op("succ"), f.index()), ContractViolation);
  EXPECT_THROW((void)dend_from_zinbiel(ops.pair_op("prec"), f.index()), ContractViolation);
}

TEST(FreeCarrier, PreLieAndLieOverZ2) {
  auto f = FreeDendriform({"x", "y"}, dimonoid_from_semigroup(SemigroupTable::cyclic(2)));
  auto ops = free_family_ops(f);
  auto dom = free_sampled_domain(f, 4, 40, 1);
  ops.pair["mul"] = assoc_from_dend(ops.pair_op("prec"), ops.pair_op("succ"));
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelAssoc, f.index(), dom, f.formatter()).passed);

  auto circ = prelie_from_dend(ops.pair_op("prec"), ops.pair_op("succ"), f.index());
  ops.pair["circ"] = circ;
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelPreLie, f.index(), dom, f.formatter()).passed);
  // The lift of the family circle product is the same operation.
  for (const auto& [s, t, u] : dom.samples) {
    (void)u;
    for (Element a = 0; a < 2; ++a)
      for (Element b = 0; b < 2; ++b)
        EXPECT_EQ(circ(a, b, TreeComb(s), TreeComb(t)), ops.family_op("circ")(a, TreeComb(s), TreeComb(t)));
  }
  ops.pair["bracket"] = lie_from_prelie(circ, f.index());
  EXPECT_TRUE(check_axioms(ops, AxiomSuite::RelLie, f.index(), dom, f.formatter()).passed);
}

TEST(FreeCarrier, UnswappedPreLieAndLieFail) {
  auto f = FreeDendriform({"x", "y"}, dimonoid_from_semigroup(SemigroupTable::cyclic(2)));
  auto ops = free_family_ops(f);
  auto dom = free_sampled_domain(f, 4, 40, 1);
  auto prec = ops.pair_op("prec");
  auto succ = ops.pair_op("succ");
  OperationSet<Tree> lit;
  lit.pair["circ"] = [prec, succ](Element a, Element b, const TreeComb& x, const TreeComb& y) {
    return succ(a, b, x, y) - prec(a, b, y, x);
  };
  EXPECT_FALSE(check_axioms(lit, AxiomSuite::RelPreLie, f.index(), dom, f.formatter()).passed);

  auto circ = prelie_from_dend(prec, succ, f.index());
  lit.pair["bracket"] = [circ](Element a, Element b, const TreeComb& x, const TreeComb& y) {
    return circ(a, b, x, y) - circ(a, b, y, x);
  };
  Report r = check_axioms(lit, AxiomSuite::RelLie, f.index(), dom, f.formatter());
  ASSERT_FALSE(r.passed);
  EXPECT_EQ(r.counterexample->equation, "skew-symmetry");
}

TEST(CocycleTwist, SignCocycle) {
  auto twisted = cocycle_twist(sign_cocycle_base(), sign_cocycle());
  Report r = check_axioms(twisted.operations(), AxiomSuite::RelAssoc, twisted.index(), twisted.exhaustive_domain(),
                          twisted.formatter());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.instances, 8u);
  EXPECT_EQ(twisted.operations().pair_op("mul")(1, 1, Vector(0), Vector(0)), Vector(0, Scalar(-1)));
}

TEST(CocycleTwist, CollapseIsAnAssociativeAlgebra) {
  auto twisted = cocycle_twist(sign_cocycle_base(), sign_cocycle());
  twisted.set_unit(Vector(0));
  auto c = collapse(twisted);
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.basis(), (std::vector<std::string>{"e@0", "e@1"}));
  Report r = check_axioms(c.operations(), AxiomSuite::RelAssoc, c.index(), c.exhaustive_domain(), c.formatter());
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.instances, 8u);
  EXPECT_TRUE(check_axioms(c.operations(), AxiomSuite::RelUnital, c.index(), c.exhaustive_domain(), c.formatter()).passed);
  // e@1 squares to -e@0: the Gaussian rationals.
  auto mul = c.operations().pair_op("mul");
  EXPECT_EQ(mul(0, 0, Vector(1), Vector(1)), Vector(0, Scalar(-1)));
  EXPECT_EQ(mul(0, 0, Vector(0), Vector(1)), Vector(1));
}

TEST(CocycleTwist, Refusals) {
  Cocycle bad(SemigroupTable::cyclic(2), {{Scalar(1), Scalar(2)}, {Scalar(1), Scalar(1)}});
  try {
    (void)cocycle_twist(sign_cocycle_base(), bad);
    FAIL() << "expected refusal";
  } catch (const ConstructionRefused& e) {
    EXPECT_EQ(e.report().counterexample->equation, "cocycle");
  }

  FiniteRelativeAlgebra nonassoc({"e", "f"}, IndexStructure::of(SemigroupTable::trivial()));
  nonassoc.add_role("mul", 2);
  Tensor3 t(2);
  t.at(0, 0, 1) = Scalar(1);  // e e = f
  t.at(1, 0, 0) = Scalar(1);  // f e = e
  nonassoc.set_uniform("mul", t);
  EXPECT_THROW((void)cocycle_twist(nonassoc, sign_cocycle()), ConstructionRefused);

  FiniteRelativeAlgebra indexed({"e"}, IndexStructure::of(SemigroupTable::cyclic(2)));
  indexed.add_role("mul", 2);
  indexed.set_constants("mul", {0, 0}, scalar_tensor(1));
  indexed.set_constants("mul", {0, 1}, scalar_tensor(2));
  EXPECT_THROW((void)cocycle_twist(indexed, sign_cocycle()), ContractViolation);
}

TEST(Derive, NamesDispatch) {
  auto alg = truncated();
  auto dom = degree_filtered(alg);
  auto ops = alg.operations();
  auto out = derive("dend-from-zinbiel", ops, alg.index(), dom, alg.formatter());
  EXPECT_TRUE(out.pair.contains("prec") && out.pair.contains("succ"));
  auto mul = derive("assoc-from-dend", out, alg.index(), dom, alg.formatter());
  auto comm = derive("comm-from-zinbiel", ops, alg.index(), dom, alg.formatter());
  for (BasisIndex m = 0; m < 4; ++m)
    for (BasisIndex n = 0; n < 4; ++n)
      EXPECT_EQ(mul.pair_op("mul")(0, 0, Vector(m), Vector(n)), comm.pair_op("mul")(0, 0, Vector(m), Vector(n)));
  EXPECT_THROW((void)derive("nothing", ops, alg.index(), dom, alg.formatter()), MalformedInput);
  EXPECT_THROW((void)derive("lie-from-prelie", ops, alg.index(), dom, alg.formatter()), ContractViolation);
  EXPECT_EQ(construction_names().size(), 8u);
}

TEST(Materialize, DerivedOperationsBecomeConstants) {
  auto alg = truncated();
  auto comm = comm_from_zinbiel(alg.operations().pair_op("ast"), alg.index());
  auto m = materialize(alg.basis(), alg.index(), {{"mul", comm}});
  EXPECT_EQ(m.constants("mul", 0, 0)->product(1, 2), Vector(4, Scalar(5, 6)));
}
