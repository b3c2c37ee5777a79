#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldend/error.hpp"
#include "reldend/index.hpp"

namespace reldend {

/// Vertex decoration: position in the carrier's decoration list.
using Label = std::uint32_t;

/// Planar rooted binary tree with decorated vertices and decorated internal
/// edges. The default-constructed tree is the empty tree e. An edge label
/// exists exactly when the subtree on that side is nonempty.
///
/// Trees are immutable and share subtrees. The total order compares vertex
/// count first, then shape in preorder, then labels in preorder.
class Tree {
 public:
  Tree() = default;

  static Tree node(Label label, Tree left, std::optional<Element> left_edge, Tree right,
                   std::optional<Element> right_edge) {
    if (left.empty() != !left_edge.has_value() || right.empty() != !right_edge.has_value())
      throw MalformedInput("edge labels must be present exactly on edges to nonempty subtrees");
    auto n = std::make_shared<Node>();
    n->label = label;
    n->vertices = 1 + left.vertices() + right.vertices();
    n->left_edge = left_edge.value_or(0);
    n->right_edge = right_edge.value_or(0);
    n->hash = mix(mix(mix(mix(mix(0x9e3779b97f4a7c15ULL, label), left.hash()), right.hash()), n->left_edge),
                  n->right_edge);
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return Tree(std::move(n));
  }

  static Tree leaf(Label label) { return node(label, {}, std::nullopt, {}, std::nullopt); }

  [[nodiscard]] bool empty() const { return !node_; }
  [[nodiscard]] std::size_t vertices() const { return node_ ? node_->vertices : 0; }
  [[nodiscard]] std::uint64_t hash() const { return node_ ? node_->hash : 0; }
  [[nodiscard]] Label label() const { return get().label; }
  [[nodiscard]] Tree left() const { return Tree(get().left); }
  [[nodiscard]] Tree right() const { return Tree(get().right); }
  [[nodiscard]] std::optional<Element> left_edge() const {
    return get().left ? std::optional<Element>(node_->left_edge) : std::nullopt;
  }
  [[nodiscard]] std::optional<Element> right_edge() const {
    return get().right ? std::optional<Element>(node_->right_edge) : std::nullopt;
  }

  friend bool operator==(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.vertices() != b.vertices()) return false;
    return compare_shape(a.node_.get(), b.node_.get()) == 0 && compare_labels(a.node_.get(), b.node_.get()) == 0;
  }

  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.vertices() != b.vertices()) return a.vertices() <=> b.vertices();
    if (int c = compare_shape(a.node_.get(), b.node_.get()); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = compare_labels(a.node_.get(), b.node_.get());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Node {
    Label label = 0;
    std::shared_ptr<const Node> left, right;
    Element left_edge = 0, right_edge = 0;
    std::size_t vertices = 1;
    std::uint64_t hash = 0;
  };

  explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  [[nodiscard]] const Node& get() const {
    if (!node_) throw ContractViolation("the empty tree has no root");
    return *node_;
  }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  // Preorder comparison of (has left, has right) flags.
  static int compare_shape(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (!x || !y) return !x ? -1 : 1;
    if (!x->left != !y->left) return !x->left ? -1 : 1;
    if (!x->right != !y->right) return !x->right ? -1 : 1;
    if (int c = compare_shape(x->left.get(), y->left.get()); c != 0) return c;
    return compare_shape(x->right.get(), y->right.get());
  }

  // Preorder comparison of vertex label, left edge, right edge. Assumes
  // equal shapes; empty subtrees compare equal.
  static int compare_labels(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (!x || !y) return !x ? -1 : 1;
    if (x->label != y->label) return x->label < y->label ? -1 : 1;
    if (x->left && y->left && x->left_edge != y->left_edge) return x->left_edge < y->left_edge ? -1 : 1;
    if (x->right && y->right && x->right_edge != y->right_edge) return x->right_edge < y->right_edge ? -1 : 1;
    if (int c = compare_labels(x->left.get(), y->left.get()); c != 0) return c;
    return compare_labels(x->right.get(), y->right.get());
  }

  std::shared_ptr<const Node> node_;
};

/// Names for printing and parsing trees.
struct TreeNames {
  std::vector<std::string> decorations;
  std::function<std::string(Element)> edge_name;
  std::function<std::optional<Element>(std::string_view)> find_edge;

  [[nodiscard]] std::optional<Label> find_label(std::string_view s) const {
    for (std::size_t i = 0; i < decorations.size(); ++i)
      if (decorations[i] == s) return static_cast<Label>(i);
    return std::nullopt;
  }
};

/// "e" for the empty tree, otherwise label[left, right] where each side is
/// empty or "edge: tree"; a vertex with no children prints as "label[]".
inline std::string tree_print(const Tree& t, const TreeNames& names) {
  if (t.empty()) return "e";
  std::string out = names.decorations.at(t.label()) + "[";
  if (t.left().empty() && t.right().empty()) return out + "]";
  if (!t.left().empty()) out += names.edge_name(*t.left_edge()) + ": " + tree_print(t.left(), names);
  out += ", ";
  if (!t.right().empty()) out += names.edge_name(*t.right_edge()) + ": " + tree_print(t.right(), names);
  return out + "]";
}

/// Recursive-descent reader for the tree grammar. Used directly and by the
/// expression evaluator, which parses trees embedded in larger text.
class TreeReader {
 public:
  TreeReader(std::string_view text, const TreeNames& names, std::size_t pos = 0)
      : text_(text), names_(names), pos_(pos) {}

  Tree read_tree() {
    skip_ws();
    std::size_t start = pos_;
    std::string id = read_identifier("tree");
    skip_ws();
    if (peek() != '[') {
      if (id == "e") return {};
      fail("expected '[' after vertex label", start);
    }
    auto label = names_.find_label(id);
    if (!label) fail("undeclared vertex label '" + id + "'", start);
    ++pos_;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return Tree::leaf(*label);
    }
    auto [left, le] = read_side();
    skip_ws();
    if (peek() != ',') fail("expected ','", pos_);
    ++pos_;
    auto [right, re] = read_side();
    skip_ws();
    if (peek() != ']') fail("expected ']'", pos_);
    ++pos_;
    return Tree::node(*label, std::move(left), le, std::move(right), re);
  }

  [[nodiscard]] std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  [[nodiscard]] char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw MalformedInput("parse error at position " + std::to_string(at) + ": " + msg);
  }

  std::string read_identifier(const char* what) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what, start);
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  std::pair<Tree, std::optional<Element>> read_side() {
    skip_ws();
    if (peek() == ',' || peek() == ']') return {Tree{}, std::nullopt};
    std::size_t start = pos_;
    std::string edge = read_identifier("edge label");
    auto e = names_.find_edge(edge);
    if (!e) fail("undeclared edge label '" + edge + "'", start);
    skip_ws();
    if (peek() != ':') fail("expected ':' after edge label", pos_);
    ++pos_;
    std::size_t tree_start = pos_;
    Tree t = read_tree();
    if (t.empty()) fail("edge label on an empty subtree", tree_start);
    return {std::move(t), e};
  }

  std::string_view text_;
  const TreeNames& names_;
  std::size_t pos_;
};

inline Tree tree_parse(std::string_view text, const TreeNames& names) {
  TreeReader r(text, names);
  Tree t = r.read_tree();
  r.skip_ws();
  if (r.position() != text.size()) r.fail("trailing characters", r.position());
  return t;
}

}  // namespace reldend
