#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reldend/axioms.hpp"
#include "reldend/error.hpp"
#include "reldend/index.hpp"
#include "reldend/lincomb.hpp"
#include "reldend/operations.hpp"

namespace reldend {

/// Basis elements of a finite-dimensional carrier are positions 0..d-1.
using BasisIndex = std::size_t;
using Vector = LinComb<BasisIndex>;

/// d x d x d structure constants: e_i op e_j = sum_k at(i, j, k) e_k.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d) {}

  [[nodiscard]] std::size_t dim() const { return d_; }
  [[nodiscard]] Scalar& at(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * d_ + j) * d_ + k]; }
  [[nodiscard]] const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * d_ + j) * d_ + k];
  }
  [[nodiscard]] Vector product(BasisIndex i, BasisIndex j) const {
    Vector out;
    for (std::size_t k = 0; k < d_; ++k) out.add_term(k, at(i, j, k));
    return out;
  }
  [[nodiscard]] bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<Scalar> data_;
};

/// Rows x cols matrix acting on column vectors: the image of e_j is
/// sum_i at(i, j) e_i.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t d, const Scalar& k = Scalar(1)) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = k;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Vector apply(const Vector& v) const {
    Vector out;
    for (const auto& [j, c] : v) {
      if (j >= cols_) throw ContractViolation("vector index out of range for matrix");
      for (std::size_t i = 0; i < rows_; ++i) out.add_term(i, at(i, j) * c);
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Structure constants of one operation role. Pair-indexed roles are keyed
/// by (a, b), family roles by (a). A `uniform` tensor applies to every key
/// that has no explicit entry (index-independent operations, and operations
/// over virtual index semigroups). Missing keys without a uniform tensor
/// act as zero.
struct RoleConstants {
  int arity = 2;
  std::map<std::vector<Element>, Tensor3> constants;
  std::optional<Tensor3> uniform;

  [[nodiscard]] const Tensor3* find(const std::vector<Element>& key) const {
    auto it = constants.find(key);
    if (it != constants.end()) return &it->second;
    if (uniform) return &*uniform;
    return nullptr;
  }
};

/// Finite-dimensional algebra graded by an index structure, given by
/// structure constants for each operation role.
class FiniteRelativeAlgebra {
 public:
  FiniteRelativeAlgebra(std::vector<std::string> basis, IndexStructure index)
      : basis_(std::move(basis)), index_(std::move(index)) {
    if (basis_.empty()) throw MalformedInput("algebra basis must be nonempty");
  }

  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] const std::vector<std::string>& basis() const { return basis_; }
  [[nodiscard]] const IndexStructure& index() const { return index_; }
  [[nodiscard]] const std::map<std::string, RoleConstants>& roles() const { return roles_; }
  [[nodiscard]] bool has_role(const std::string& r) const { return roles_.contains(r); }
  [[nodiscard]] const RoleConstants& role(const std::string& r) const {
    auto it = roles_.find(r);
    if (it == roles_.end()) throw ContractViolation("algebra has no operation '" + r + "'");
    return it->second;
  }
  [[nodiscard]] const std::optional<Vector>& unit() const { return unit_; }

  void set_unit(Vector u) { unit_ = std::move(u); }

  /// Declares a role (empty constants) with the given arity.
  RoleConstants& add_role(const std::string& name, int arity) {
    if (arity != 1 && arity != 2) throw MalformedInput("operation arity must be 1 or 2");
    auto& rc = roles_[name];
    rc.arity = arity;
    return rc;
  }

  void set_constants(const std::string& name, std::vector<Element> key, Tensor3 t) {
    check_tensor(t);
    auto& rc = roles_.at(name);
    if (static_cast<int>(key.size()) != rc.arity) throw MalformedInput("index key arity mismatch for '" + name + "'");
    rc.constants[std::move(key)] = std::move(t);
  }
  void set_uniform(const std::string& name, Tensor3 t) {
    check_tensor(t);
    roles_.at(name).uniform = std::move(t);
  }

  /// Structure constants for a pair-indexed role at (a, b).
  [[nodiscard]] const Tensor3* constants(const std::string& name, Element a, Element b) const {
    return role(name).find({a, b});
  }

  [[nodiscard]] std::string basis_name(BasisIndex i) const { return basis_.at(i); }

  /// Operations as bilinear maps on vectors, keyed by role.
  [[nodiscard]] OperationSet<BasisIndex> operations() const {
    OperationSet<BasisIndex> ops;
    for (const auto& [name, rc] : roles_) {
      auto shared = std::make_shared<const RoleConstants>(rc);
      auto basis_op = [shared](const std::vector<Element>& key) {
        return [t = shared->find(key)](const BasisIndex& i, const BasisIndex& j) {
          return t ? t->product(i, j) : Vector{};
        };
      };
      if (rc.arity == 2) {
        ops.pair[name] = [shared, basis_op](Element a, Element b, const Vector& x, const Vector& y) {
          if (x.is_zero() || y.is_zero()) return Vector{};
          return lc_bilinear_extend(basis_op({a, b}), x, y);
        };
      } else {
        ops.family[name] = [shared, basis_op](Element a, const Vector& x, const Vector& y) {
          if (x.is_zero() || y.is_zero()) return Vector{};
          return lc_bilinear_extend(basis_op({a}), x, y);
        };
      }
    }
    ops.unit = unit_;
    return lift_family_ops(std::move(ops));
  }

  [[nodiscard]] std::vector<BasisIndex> basis_indices() const {
    std::vector<BasisIndex> out(dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

  [[nodiscard]] BasisFormatter<BasisIndex> formatter() const {
    return [names = basis_](const BasisIndex& i) { return names.at(i); };
  }

  /// Every basis tuple, every index tuple of the finite index.
  [[nodiscard]] Domain<BasisIndex> exhaustive_domain() const { return Domain<BasisIndex>::exhaustive({}, basis_indices()); }

 private:
  void check_tensor(const Tensor3& t) const {
    if (t.dim() != dim()) throw MalformedInput("structure constants must be " + std::to_string(dim()) + "^3");
  }

  std::vector<std::string> basis_;
  IndexStructure index_;
  std::map<std::string, RoleConstants> roles_;
  std::optional<Vector> unit_;
};

/// Evaluates pair-indexed operations on every basis pair and index pair of a
/// finite index and stores the results as structure constants.
inline FiniteRelativeAlgebra materialize(const std::vector<std::string>& basis, const IndexStructure& index,
                                         const std::map<std::string, PairOp<BasisIndex>>& ops) {
  FiniteRelativeAlgebra out(basis, index);
  const std::size_t d = basis.size();
  for (const auto& [name, op] : ops) {
    out.add_role(name, 2);
    for (Element a : index.elements())
      for (Element b : index.elements()) {
        Tensor3 t(d);
        for (BasisIndex i = 0; i < d; ++i)
          for (BasisIndex j = 0; j < d; ++j)
            for (const auto& [k, c] : op(a, b, Vector(i), Vector(j))) {
              if (k >= d) throw ContractViolation("operation result outside the basis");
              t.at(i, j, k) = c;
            }
        out.set_constants(name, {a, b}, std::move(t));
      }
  }
  return out;
}

/// Family of linear maps given by matrices: explicit per index element,
/// a uniform matrix for all others, or M/n for integer-valued indices
/// (the "harmonic" family, e.g. R_n(x) = x/n over the positive integers).
struct MatrixFamily {
  std::map<Element, Matrix> explicit_maps;
  std::optional<Matrix> uniform;
  std::optional<Matrix> harmonic;

  [[nodiscard]] Matrix at(Element a) const {
    if (auto it = explicit_maps.find(a); it != explicit_maps.end()) return it->second;
    if (uniform) return *uniform;
    if (harmonic) {
      if (a == 0) throw ContractViolation("harmonic map family is undefined at index 0");
      Matrix m = *harmonic;
      const Scalar inv(1, static_cast<long>(a));
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= inv;
      return m;
    }
    throw ContractViolation("map family is undefined at index " + std::to_string(a) + " (window not closed)");
  }

  [[nodiscard]] MapFamily<BasisIndex> as_maps() const {
    return [self = *this](Element a, const Vector& v) { return self.at(a).apply(v); };
  }
};

/// Rota-Baxter family: operators R_a on an algebra with a "mul" role.
struct RotaBaxterFamily {
  FiniteRelativeAlgebra carrier;
  MatrixFamily maps;
};

/// Family of linear maps f_a between two algebras over the same index.
struct MorphismFamily {
  FiniteRelativeAlgebra source;
  FiniteRelativeAlgebra target;
  MatrixFamily maps;
};

/// Checks R_a(x) R_b(y) = R_{ab}(R_a(x) y + x R_b(y)) on the domain. The
/// carrier must be associative on the same domain.
inline Report check_rota_baxter(const RotaBaxterFamily& rb, const Domain<BasisIndex>& dom, CheckOptions opt = {}) {
  for (const auto& [a, m] : rb.maps.explicit_maps)
    if (m.rows() != rb.carrier.dim() || m.cols() != rb.carrier.dim())
      throw MalformedInput("Rota-Baxter map has the wrong shape");
  auto ops = rb.carrier.operations();
  Report assoc = check_axioms(ops, AxiomSuite::RelAssoc, rb.carrier.index(), dom, rb.carrier.formatter(), opt);
  if (!assoc.passed) throw ContractViolation("Rota-Baxter carrier is not associative on the window");
  ops.maps["R"] = rb.maps.as_maps();
  return check_axioms(ops, AxiomSuite::RotaBaxter, rb.carrier.index(), dom, rb.carrier.formatter(), opt);
}

/// Checks f_{ab}(x op_{a,b} y) = f_a(x) op_{a,b} f_b(y) for every
/// pair-indexed role the suite uses, every basis pair and index pair.
inline Report check_morphism(const MorphismFamily& f, AxiomSuite suite, CheckOptions opt = {}) {
  const auto& src = f.source;
  const auto& dst = f.target;
  if (!src.index().finite() || !dst.index().finite() || src.index().size() != dst.index().size() ||
      (src.index().semigroup() && dst.index().semigroup() && !(*src.index().semigroup() == *dst.index().semigroup())))
    throw ContractViolation("morphism source and target must share the index semigroup");
  const auto& ix = src.index();
  for (Element a : ix.elements()) {
    Matrix m = f.maps.at(a);
    if (m.rows() != dst.dim() || m.cols() != src.dim()) throw ContractViolation("morphism component has the wrong shape");
  }
  auto src_ops = src.operations();
  auto dst_ops = dst.operations();
  for (const auto* alg : {&src, &dst}) {
    Report r = check_axioms(alg->operations(), suite, alg->index(), alg->exhaustive_domain(), alg->formatter(), opt);
    if (!r.passed) throw ContractViolation("morphism endpoint fails " + to_string(suite));
  }

  std::set<std::pair<Term::Kind, std::string>> roles;
  int mb = -1, mi = -1;
  for (const auto& eq : suite_equations(suite)) {
    eq.lhs.collect(mb, mi, roles);
    eq.rhs.collect(mb, mi, roles);
  }
  Report r{.check = "morphism:" + to_string(suite)};
  auto fmt = src.formatter();
  auto dfmt = dst.formatter();
  for (const auto& [kind, role] : roles) {
    if (kind == Term::Kind::map) continue;
    const auto& sop = src_ops.pair_op(role);
    const auto& dop = dst_ops.pair_op(role);
    for (Element a : ix.elements())
      for (Element b : ix.elements())
        for (BasisIndex i = 0; i < src.dim(); ++i)
          for (BasisIndex j = 0; j < src.dim(); ++j) {
            ++r.instances;
            Vector x(i), y(j);
            Vector lhs = f.maps.at(ix.mul(a, b)).apply(sop(a, b, x, y));
            Vector rhs = dop(a, b, f.maps.at(a).apply(x), f.maps.at(b).apply(y));
            if (lhs != rhs) {
              r.fail({"morphism-" + role, {ix.name(a), ix.name(b)}, {fmt(i), fmt(j)}, lc_to_json(lhs, dfmt),
                      lc_to_json(rhs, dfmt)});
              return r;
            }
          }
  }
  return r;
}

}  // namespace reldend
