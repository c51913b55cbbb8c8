#pragma once

#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "culogic/error.hpp"

namespace culogic {

/// A finite carrier: a named atom set, the one-point unit, or a binary
/// product of carriers. Elements are addressed by index in a fixed
/// enumeration order (atoms in declaration order; product elements
/// lexicographic with the left component most significant), so enumeration
/// is deterministic and stable across runs.
class Carrier {
public:
  enum class Kind { Atoms, Unit, Product };

  static Carrier atoms(std::vector<std::string> names) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names)
      if (!seen.insert(n).second)
        throw Error("duplicate atom '" + n + "' in carrier");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Atoms;
    node->names = std::move(names);
    node->size = node->names.size();
    return Carrier(std::move(node));
  }

  static Carrier unit() {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Unit;
    node->size = 1;
    return Carrier(std::move(node));
  }

  static Carrier product(Carrier left, Carrier right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->size = left.size() * right.size();
    node->left = left.node_;
    node->right = right.node_;
    return Carrier(std::move(node));
  }

  Kind kind() const { return node_->kind; }
  std::size_t size() const { return node_->size; }
  bool is_unit() const { return node_->kind == Kind::Unit; }
  bool is_product() const { return node_->kind == Kind::Product; }

  Carrier left() const { return factor(node_->left); }
  Carrier right() const { return factor(node_->right); }

  const std::vector<std::string>& atom_names() const {
    if (node_->kind != Kind::Atoms) throw Error("carrier has no atom list");
    return node_->names;
  }

  /// Splits a product index into its two components.
  std::pair<std::size_t, std::size_t> unpair(std::size_t i) const {
    std::size_t rs = right().size();
    return {i / rs, i % rs};
  }
  /// Combines component indices into a product index.
  std::size_t pair_index(std::size_t l, std::size_t r) const {
    return l * right().size() + r;
  }

  std::string element_name(std::size_t i) const {
    switch (node_->kind) {
      case Kind::Atoms: return node_->names.at(i);
      case Kind::Unit: return "()";
      case Kind::Product: {
        auto [l, r] = unpair(i);
        return "(" + left().element_name(l) + "," + right().element_name(r) + ")";
      }
    }
    throw Error("unreachable");
  }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return structurally_equal(a.node_.get(), b.node_.get());
  }
  friend bool operator!=(const Carrier& a, const Carrier& b) { return !(a == b); }

private:
  struct Node {
    Kind kind = Kind::Unit;
    std::vector<std::string> names;     // Atoms only
    std::shared_ptr<const Node> left;   // Product only
    std::shared_ptr<const Node> right;
    std::size_t size = 1;
  };

  explicit Carrier(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Carrier factor(const std::shared_ptr<const Node>& n) {
    if (!n) throw Error("carrier is not a product");
    return Carrier(n);
  }

  static bool structurally_equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Atoms: return a->names == b->names;
      case Kind::Unit: return true;
      case Kind::Product:
        return structurally_equal(a->left.get(), b->left.get()) &&
               structurally_equal(a->right.get(), b->right.get());
    }
    return false;
  }

  std::shared_ptr<const Node> node_;
};

inline void require_same_carrier(const Carrier& a, const Carrier& b,
                                 const char* what) {
  if (a != b) throw Error(std::string("carrier mismatch in ") + what);
}

/// A total function between carriers, tabulated element-wise.
class MapArrow {
public:
  MapArrow(Carrier domain, Carrier codomain, std::vector<std::size_t> table)
      : dom_(std::move(domain)), cod_(std::move(codomain)), table_(std::move(table)) {
    if (table_.size() != dom_.size())
      throw Error("map table size does not match domain");
    for (std::size_t v : table_)
      if (v >= cod_.size()) throw Error("map table value out of codomain range");
  }

  const Carrier& domain() const { return dom_; }
  const Carrier& codomain() const { return cod_; }
  std::size_t apply(std::size_t i) const { return table_.at(i); }
  const std::vector<std::size_t>& table() const { return table_; }

  static MapArrow identity(const Carrier& x) {
    std::vector<std::size_t> t(x.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return MapArrow(x, x, std::move(t));
  }

  static MapArrow constant(const Carrier& domain, const Carrier& codomain,
                           std::size_t target) {
    if (target >= codomain.size()) throw Error("constant target out of range");
    return MapArrow(domain, codomain, std::vector<std::size_t>(domain.size(), target));
  }

  /// The unique arrow into the unit carrier.
  static MapArrow terminal(const Carrier& domain) {
    return MapArrow(domain, Carrier::unit(),
                    std::vector<std::size_t>(domain.size(), 0));
  }

  static MapArrow proj_left(const Carrier& a, const Carrier& b) {
    Carrier p = Carrier::product(a, b);
    std::vector<std::size_t> t(p.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.unpair(i).first;
    return MapArrow(p, a, std::move(t));
  }

  static MapArrow proj_right(const Carrier& a, const Carrier& b) {
    Carrier p = Carrier::product(a, b);
    std::vector<std::size_t> t(p.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.unpair(i).second;
    return MapArrow(p, b, std::move(t));
  }

  /// Pairing <f,g>: W -> A x B of arrows sharing a domain.
  static MapArrow pair(const MapArrow& f, const MapArrow& g) {
    require_same_carrier(f.domain(), g.domain(), "pairing");
    Carrier p = Carrier::product(f.codomain(), g.codomain());
    std::vector<std::size_t> t(f.domain().size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = p.pair_index(f.apply(i), g.apply(i));
    return MapArrow(f.domain(), p, std::move(t));
  }

  /// Product map f x g : A x B -> C x D.
  static MapArrow product_map(const MapArrow& f, const MapArrow& g) {
    Carrier d = Carrier::product(f.domain(), g.domain());
    Carrier c = Carrier::product(f.codomain(), g.codomain());
    std::vector<std::size_t> t(d.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto [l, r] = d.unpair(i);
      t[i] = c.pair_index(f.apply(l), g.apply(r));
    }
    return MapArrow(d, c, std::move(t));
  }

  /// The diagonal X -> X x X.
  static MapArrow diagonal(const Carrier& x) {
    return pair(identity(x), identity(x));
  }

  friend bool operator==(const MapArrow& f, const MapArrow& g) {
    return f.dom_ == g.dom_ && f.cod_ == g.cod_ && f.table_ == g.table_;
  }

private:
  Carrier dom_;
  Carrier cod_;
  std::vector<std::size_t> table_;
};

/// g after f.
inline MapArrow compose(const MapArrow& g, const MapArrow& f) {
  require_same_carrier(g.domain(), f.codomain(), "composition");
  std::vector<std::size_t> t(f.domain().size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.apply(f.apply(i));
  return MapArrow(f.domain(), g.codomain(), std::move(t));
}

} // namespace culogic
