// Command-line front end: loads index structures and algebras from JSON,
// runs axiom suites and constructions, and prints JSON reports.
//
// Exit status: 0 all checks pass, 1 a check failed (or a construction was
// refused), 2 malformed input, 3 contract violation.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reldend/reldend.hpp"

namespace {

using namespace reldend;

struct Flags {
  std::string semigroup, dimonoid, algebra, cocycle, rb, morphism;
  std::string suite, construction, expr, out;
  std::string decorations = "x,y";
  std::size_t samples = 200;
  std::size_t max_vertices = 6;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> window;
  unsigned threads = 0;
};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw MalformedInput("cannot write '" + path + "'");
  f << text << "\n";
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw MalformedInput(std::string("missing required flag ") + flag);
}

/// Index elements for a check: all elements of a finite index, or the
/// window 0..N (restricted to valid elements) of a virtual one.
std::vector<Element> domain_indices(const IndexStructure& ix, const Flags& f) {
  if (ix.finite()) return {};
  if (!f.window) throw ContractViolation("virtual index semigroup '" + ix.kind() + "' needs --window N");
  std::vector<Element> out;
  for (Element e = 0; e <= *f.window; ++e)
    if (ix.find(std::to_string(e))) out.push_back(e);
  if (out.empty()) throw ContractViolation("--window selects no index elements");
  return out;
}

Domain<BasisIndex> algebra_domain(const FiniteRelativeAlgebra& alg, const Flags& f) {
  return Domain<BasisIndex>::exhaustive(domain_indices(alg.index(), f), alg.basis_indices());
}

FiniteRelativeAlgebra finite_result(const FiniteRelativeAlgebra& src, const OperationSet<BasisIndex>& ops) {
  if (!src.index().finite()) throw ContractViolation("derived operations over a virtual index cannot be tabulated");
  FiniteRelativeAlgebra out = materialize(src.basis(), src.index(), ops.pair);
  return out;
}

Report with_algebra(Report r, const FiniteRelativeAlgebra& alg, const Flags& f) {
  json a = algebra_to_json(alg);
  if (!f.out.empty()) write_file(f.out, a.dump(2));
  r.details["algebra"] = std::move(a);
  return r;
}

struct FreeCarrier {
  FreeDendriform carrier;
  OperationSet<Tree> ops;
};

FreeCarrier free_carrier(const Flags& f) {
  require(f.dimonoid, "--dimonoid");
  FreeDendriform carrier(split_names(f.decorations), load_dimonoid(f.dimonoid));
  OperationSet<Tree> ops = carrier.family_ops();
  ops.pair["mul"] = assoc_from_dend(ops.pair_op("prec"), ops.pair_op("succ"));
  if (carrier.index().commutative()) ops.pair["bracket"] = lie_from_prelie(ops.pair_op("circ"), carrier.index());
  return {std::move(carrier), std::move(ops)};
}

Report run(const std::string& cmd, const Flags& f) {
  if (cmd == "check-semigroup") {
    require(f.semigroup, "--semigroup");
    SemigroupSpec spec = semigroup_spec_from_json(read_json_file(f.semigroup), std::filesystem::path(f.semigroup).parent_path());
    if (!spec.table) throw ContractViolation("virtual semigroups have no table to check");
    return check_semigroup(*spec.table);
  }
  if (cmd == "check-dimonoid") {
    require(f.dimonoid, "--dimonoid");
    return check_dimonoid(load_dimonoid(f.dimonoid));
  }
  if (cmd == "check-cocycle") {
    require(f.cocycle, "--cocycle");
    return check_cocycle(cocycle_from_json(read_json_file(f.cocycle), std::filesystem::path(f.cocycle).parent_path()));
  }
  if (cmd == "check-algebra") {
    require(f.algebra, "--algebra");
    require(f.suite, "--suite");
    AxiomSuite suite = parse_suite(f.suite);
    FiniteRelativeAlgebra alg = load_algebra(f.algebra);
    return check_axioms(alg.operations(), suite, alg.index(), algebra_domain(alg, f), alg.formatter(), {f.threads});
  }
  if (cmd == "check-rb") {
    require(f.rb, "--rb");
    std::optional<FiniteRelativeAlgebra> carrier;
    if (!f.algebra.empty()) carrier = load_algebra(f.algebra);
    RotaBaxterFamily rb = rb_from_json(read_json_file(f.rb), std::filesystem::path(f.rb).parent_path(), carrier);
    return check_rota_baxter(rb, algebra_domain(rb.carrier, f), {f.threads});
  }
  if (cmd == "check-morphism") {
    require(f.algebra, "--algebra");
    require(f.morphism, "--morphism");
    AxiomSuite suite = f.suite.empty() ? AxiomSuite::RelAssoc : parse_suite(f.suite);
    FiniteRelativeAlgebra src = load_algebra(f.algebra);
    MorphismFamily m = morphism_from_json(read_json_file(f.morphism), std::filesystem::path(f.morphism).parent_path(), src);
    return check_morphism(m, suite, {f.threads});
  }
  if (cmd == "derive") {
    require(f.construction, "--construction");
    if (f.construction == "dend-from-rb") {
      require(f.rb, "--rb");
      std::optional<FiniteRelativeAlgebra> carrier;
      if (!f.algebra.empty()) carrier = load_algebra(f.algebra);
      RotaBaxterFamily rb = rb_from_json(read_json_file(f.rb), std::filesystem::path(f.rb).parent_path(), carrier);
      auto dom = algebra_domain(rb.carrier, f);
      auto [prec, succ] = dend_from_rb(rb, dom);
      OperationSet<BasisIndex> ops;
      ops.pair["prec"] = prec;
      ops.pair["succ"] = succ;
      Report r = check_axioms(ops, AxiomSuite::RelDendriform, rb.carrier.index(), dom, rb.carrier.formatter(), {f.threads});
      r.check = "derive:dend-from-rb";
      if (!rb.carrier.index().finite()) return r;
      return with_algebra(r, finite_result(rb.carrier, ops), f);
    }
    require(f.algebra, "--algebra");
    FiniteRelativeAlgebra alg = load_algebra(f.algebra);
    auto dom = algebra_domain(alg, f);
    OperationSet<BasisIndex> ops = derive(f.construction, alg.operations(), alg.index(), dom, alg.formatter());
    Report r{.check = "derive:" + f.construction};
    return with_algebra(r, finite_result(alg, ops), f);
  }
  if (cmd == "collapse") {
    require(f.algebra, "--algebra");
    FiniteRelativeAlgebra out = collapse(load_algebra(f.algebra));
    Report r{.check = "collapse"};
    return with_algebra(r, out, f);
  }
  if (cmd == "free-eval") {
    require(f.expr, "--expr");
    FreeCarrier fc = free_carrier(f);
    TreeComb value = evaluate_expression(fc.carrier, f.expr);
    Report r{.check = "free-eval"};
    r.details["expression"] = f.expr;
    r.details["result"] = lc_to_json(value, fc.carrier.formatter());
    r.details["text"] = lc_to_string(value, fc.carrier.formatter());
    return r;
  }
  if (cmd == "free-check") {
    require(f.suite, "--suite");
    AxiomSuite suite = parse_suite(f.suite);
    if (f.max_vertices == 0) throw MalformedInput("--max-vertices must be at least 1");
    FreeCarrier fc = free_carrier(f);
    auto dom = free_sampled_domain(fc.carrier, f.max_vertices, f.samples, f.seed);
    Report r = check_axioms(fc.ops, suite, fc.carrier.index(), dom, fc.carrier.formatter(), {f.threads});
    r.details = {{"samples", f.samples}, {"max_vertices", f.max_vertices}, {"seed", f.seed},
                 {"decorations", split_names(f.decorations)}};
    return r;
  }
  throw MalformedInput("unknown command '" + cmd + "'");
}

void summarize(const Report& r) {
  if (r.passed) {
    std::cerr << r.check << ": PASS (" << r.instances << " instances)\n";
    if (r.details.contains("text")) std::cerr << r.details["text"].get<std::string>() << "\n";
    return;
  }
  std::cerr << r.check << ": FAIL after " << r.instances << " instances\n";
  if (const auto& c = r.counterexample) {
    std::cerr << "  equation " << c->equation << "\n  indices";
    for (const auto& s : c->indices) std::cerr << " " << s;
    std::cerr << "\n  inputs";
    for (const auto& s : c->inputs) std::cerr << " " << s;
    std::cerr << "\n  lhs " << c->lhs.dump() << "\n  rhs " << c->rhs.dump() << "\n";
  }
}

int emit_error(const std::string& cmd, const char* kind, const std::string& message, int code) {
  json j{{"check", cmd}, {"error", {{"kind", kind}, {"message", message}}}};
  std::cout << j.dump(2) << "\n";
  std::cerr << cmd << ": " << kind << ": " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative and family algebra checker"};
  app.require_subcommand(1, 1);
  Flags f;

  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> commands = {
      {"check-semigroup", "Check a semigroup table"},
      {"check-dimonoid", "Check the dimonoid identities"},
      {"check-cocycle", "Check the 2-cocycle identity"},
      {"check-algebra", "Run an axiom suite on a finite algebra"},
      {"check-rb", "Check a Rota-Baxter family"},
      {"check-morphism", "Check a family of maps is a morphism"},
      {"derive", "Apply a construction to an algebra"},
      {"collapse", "Collapse an algebra to an ordinary algebra"},
      {"free-eval", "Evaluate an expression in the free dendriform algebra"},
      {"free-check", "Run an axiom suite on random free trees"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--semigroup", f.semigroup, "Semigroup JSON file");
    sub->add_option("--dimonoid", f.dimonoid, "Dimonoid JSON file, matching:N or cyclic:N");
    sub->add_option("--algebra", f.algebra, "Algebra JSON file");
    sub->add_option("--cocycle", f.cocycle, "Cocycle JSON file");
    sub->add_option("--rb", f.rb, "Rota-Baxter family JSON file");
    sub->add_option("--morphism", f.morphism, "Morphism family JSON file");
    sub->add_option("--suite", f.suite, "Axiom suite name");
    sub->add_option("--construction", f.construction, "Construction name");
    sub->add_option("--expr", f.expr, "Free algebra expression");
    sub->add_option("--samples", f.samples, "Random triples for free-check")->capture_default_str();
    sub->add_option("--max-vertices", f.max_vertices, "Largest random tree")->capture_default_str();
    sub->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    sub->add_option("--window", f.window, "Use index elements up to N of a virtual semigroup");
    sub->add_option("--decorations", f.decorations, "Comma-separated vertex labels")->capture_default_str();
    sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--out", f.out, "Write the produced algebra here");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Report r = run(cmd, f);
    std::cout << r.to_json().dump(2) << "\n";
    summarize(r);
    return r.passed ? 0 : 1;
  } catch (const ConstructionRefused& e) {
    Report r = e.report();
    std::cout << r.to_json().dump(2) << "\n";
    std::cerr << cmd << ": construction refused: " << e.what() << "\n";
    summarize(r);
    return 1;
  } catch (const MalformedInput& e) {
    return emit_error(cmd, "malformed-input", e.what(), 2);
  } catch (const ContractViolation& e) {
    return emit_error(cmd, "contract-violation", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error(cmd, "malformed-input", e.what(), 2);
  }
}
