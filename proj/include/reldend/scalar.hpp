#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "reldend/error.hpp"

namespace reldend {

/// Exact rational number. Always kept in lowest terms with a positive
/// denominator, so equality is plain structural equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) : value_(num, den) {
    if (den == 0) throw MalformedInput("zero denominator");
    value_.canonicalize();
  }
  explicit Scalar(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q", "p" or "-p/q". Whitespace around the parts is not allowed.
  static Scalar parse(std::string_view text) {
    if (text.empty()) throw MalformedInput("empty scalar");
    auto valid_int = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw MalformedInput("malformed scalar '" + std::string(text) + "'");
    std::string num_s(num);
    if (num_s.front() == '+') num_s.erase(0, 1);
    mpz_class n(num_s, 10), d(std::string(den), 10);
    if (d == 0) throw MalformedInput("zero denominator in '" + std::string(text) + "'");
    return Scalar(mpq_class(n, d));
  }

  /// Always "p/q", including integers ("3/1") and zero ("0/1").
  [[nodiscard]] std::string str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] const mpq_class& value() const { return value_; }

  Scalar& operator+=(const Scalar& o) { value_ += o.value_; return *this; }
  Scalar& operator-=(const Scalar& o) { value_ -= o.value_; return *this; }
  Scalar& operator*=(const Scalar& o) { value_ *= o.value_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw ContractViolation("division by zero scalar");
    value_ /= o.value_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.value_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class value_{0};
};

}  // namespace reldend
