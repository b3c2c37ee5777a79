#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldend/constructions.hpp"
#include "reldend/error.hpp"
#include "reldend/free_dendriform.hpp"
#include "reldend/scalar.hpp"
#include "reldend/tree.hpp"

namespace reldend {

/// Evaluates expressions over a free dendriform carrier:
///
///   expr  := term (("+" | "-") term)*
///   term  := scalar "*" term | "-" term | atom
///   atom  := op "(" index ["," index] "," expr "," expr ")" | tree | "(" expr ")"
///
/// prec and succ take one index (family form) or two (pair form, where
/// prec_{a,b} = prec_b and succ_{a,b} = succ_a). mul, circ and bracket take
/// two indices and are the derived associative, pre-Lie and Lie products;
/// circ and bracket need a commutative index.
class ExpressionEvaluator {
 public:
  explicit ExpressionEvaluator(const FreeDendriform& carrier) : carrier_(carrier), ops_(carrier.family_ops()) {}

  [[nodiscard]] TreeComb evaluate(std::string_view text) const {
    Parser p{*this, text, TreeReader(text, carrier_.names())};
    TreeComb out = p.expr();
    p.r.skip_ws();
    if (p.r.position() != text.size()) p.r.fail("unexpected trailing input", p.r.position());
    return out;
  }

 private:
  struct Parser {
    const ExpressionEvaluator& ev;
    std::string_view text;
    TreeReader r;

    TreeComb expr() {
      TreeComb acc = term();
      for (;;) {
        r.skip_ws();
        char c = r.peek();
        if (c != '+' && c != '-') return acc;
        advance(1);
        if (c == '+')
          acc += term();
        else
          acc -= term();
      }
    }

    TreeComb term() {
      r.skip_ws();
      char c = r.peek();
      if (c == '-') {
        advance(1);
        return -term();
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = r.position();
        Scalar k = scalar();
        r.skip_ws();
        if (r.peek() != '*') r.fail("expected '*' after scalar", start);
        advance(1);
        return k * term();
      }
      return atom();
    }

    TreeComb atom() {
      r.skip_ws();
      if (r.peek() == '(') {
        advance(1);
        TreeComb inner = expr();
        expect(')');
        return inner;
      }
      const std::size_t start = r.position();
      std::string id = r.read_identifier("expression");
      r.skip_ws();
      if (r.peek() != '(') {
        reset(start);
        return TreeComb(r.read_tree());
      }
      return call(id, start);
    }

    TreeComb call(const std::string& op, std::size_t start) {
      static const std::vector<std::string> known = {"prec", "succ", "mul", "circ", "bracket"};
      if (std::find(known.begin(), known.end(), op) == known.end()) r.fail("unknown operation '" + op + "'", start);
      advance(1);
      std::vector<Element> indices{index()};
      expect(',');
      if (auto second = try_index()) {
        indices.push_back(*second);
        expect(',');
      }
      TreeComb x = expr();
      expect(',');
      TreeComb y = expr();
      expect(')');

      const auto& ix = ev.carrier_.index();
      const auto& ops = ev.ops_;
      if (indices.size() == 1) {
        if (op != "prec" && op != "succ") r.fail(op + " takes two index arguments", start);
        return ops.family_op(op)(indices[0], x, y);
      }
      const Element a = indices[0], b = indices[1];
      if (op == "prec" || op == "succ") return ops.pair_op(op)(a, b, x, y);
      auto prec = ops.pair_op("prec");
      auto succ = ops.pair_op("succ");
      if (op == "mul") return assoc_from_dend(prec, succ)(a, b, x, y);
      if (op == "circ") return prelie_from_dend(prec, succ, ix)(a, b, x, y);
      return lie_from_prelie(prelie_from_dend(prec, succ, ix), ix)(a, b, x, y);
    }

    Element index() {
      r.skip_ws();
      const std::size_t start = r.position();
      std::string name = r.read_identifier("index element");
      auto e = ev.carrier_.index().find(name);
      if (!e) r.fail("unknown index element '" + name + "'", start);
      return *e;
    }

    // An index element followed by ','. Otherwise rewinds and returns nothing.
    std::optional<Element> try_index() {
      r.skip_ws();
      const std::size_t start = r.position();
      std::size_t end = start;
      while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) ++end;
      if (end == start) return std::nullopt;
      std::size_t after = end;
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after >= text.size() || text[after] != ',') return std::nullopt;
      auto e = ev.carrier_.index().find(text.substr(start, end - start));
      if (!e) return std::nullopt;
      reset(end);
      return e;
    }

    Scalar scalar() {
      const std::size_t start = r.position();
      std::size_t end = start;
      auto digits = [&] {
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      };
      digits();
      if (end < text.size() && text[end] == '/') {
        ++end;
        digits();
      }
      try {
        Scalar k = Scalar::parse(text.substr(start, end - start));
        reset(end);
        return k;
      } catch (const MalformedInput& e) {
        r.fail(e.what(), start);
      }
    }

    void expect(char c) {
      r.skip_ws();
      if (r.peek() != c) r.fail(std::string("expected '") + c + "'", r.position());
      advance(1);
    }
    void advance(std::size_t n) { reset(r.position() + n); }
    void reset(std::size_t pos) { r.seek(pos); }
  };

  const FreeDendriform& carrier_;
  OperationSet<Tree> ops_;
};

inline TreeComb evaluate_expression(const FreeDendriform& carrier, std::string_view text) {
  return ExpressionEvaluator(carrier).evaluate(text);
}

}  // namespace reldend
