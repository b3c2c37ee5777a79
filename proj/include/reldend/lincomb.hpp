#pragma once

#include <nlohmann/json.hpp>

#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <type_traits>
#include <utility>

#include "reldend/scalar.hpp"

namespace reldend {

/// Finite formal linear combination over an ordered basis type.
///
/// Terms are kept in a map keyed by basis element, so iteration runs in
/// basis order and no stored coefficient is ever zero. Two combinations are
/// equal exactly when their term maps are equal.
template <class B>
class LinComb {
 public:
  using basis_type = B;
  using Terms = std::map<B, Scalar>;

  LinComb() = default;
  explicit LinComb(B b, Scalar coefficient = Scalar(1)) { add_term(std::move(b), coefficient); }
  LinComb(std::initializer_list<std::pair<B, Scalar>> terms) {
    for (const auto& [b, c] : terms) add_term(b, c);
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] auto begin() const { return terms_.begin(); }
  [[nodiscard]] auto end() const { return terms_.end(); }

  [[nodiscard]] Scalar coefficient(const B& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const B& b, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// this += k * other
  void add_scaled(const LinComb& other, const Scalar& k) {
    if (k.is_zero()) return;
    for (const auto& [b, c] : other.terms_) add_term(b, c * k);
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator-(const LinComb& a) {
    LinComb r;
    for (const auto& [b, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), b, -c);
    return r;
  }
  friend LinComb operator*(const Scalar& k, const LinComb& a) {
    LinComb r;
    if (k.is_zero()) return r;
    for (const auto& [b, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), b, c * k);
    return r;
  }

  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

template <class B>
LinComb<B> lc_add(const LinComb<B>& a, const LinComb<B>& b) {
  return a + b;
}

template <class B>
LinComb<B> lc_scale(const Scalar& k, const LinComb<B>& a) {
  return k * a;
}

/// Extends a basis-level map linearly: sum_i a_i f(b_i).
template <class B, class F>
auto lc_linear_extend(F&& f, const LinComb<B>& a) {
  using R = std::invoke_result_t<F&, const B&>;
  R result;
  for (const auto& [b, c] : a) result.add_scaled(f(b), c);
  return result;
}

/// Extends a basis-level binary operation bilinearly:
/// sum_{i,j} a_i b_j f(b_i, b_j, aux...).
template <class B, class F, class... Aux>
auto lc_bilinear_extend(F&& f, const LinComb<B>& a, const LinComb<B>& b, const Aux&... aux) {
  using R = std::invoke_result_t<F&, const B&, const B&, const Aux&...>;
  R result;
  for (const auto& [bi, ci] : a)
    for (const auto& [bj, cj] : b) result.add_scaled(f(bi, bj, aux...), ci * cj);
  return result;
}

/// Serializes as [["p/q", basis], ...] in basis order.
template <class B, class Fmt>
nlohmann::json lc_to_json(const LinComb<B>& a, Fmt&& basis_to_json) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [b, c] : a) out.push_back(nlohmann::json::array({c.str(), basis_to_json(b)}));
  return out;
}

template <class B, class Parse>
LinComb<B> lc_from_json(const nlohmann::json& j, Parse&& parse_basis) {
  if (!j.is_array()) throw MalformedInput("linear combination must be a JSON array");
  LinComb<B> out;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_string())
      throw MalformedInput("linear combination term must be [\"p/q\", basis]");
    out.add_term(parse_basis(term[1]), Scalar::parse(term[0].get<std::string>()));
  }
  return out;
}

/// Human-readable form "p/q * b + p/q * b - ..."; the zero combination prints "0".
template <class B, class Fmt>
std::string lc_to_string(const LinComb<B>& a, Fmt&& basis_to_string) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : a) {
    if (first) {
      out += c.str();
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      out += (c.sign() < 0 ? -c : c).str();
    }
    out += " * ";
    out += basis_to_string(b);
    first = false;
  }
  return out;
}

}  // namespace reldend
