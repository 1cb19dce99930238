#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monarel/rational.hpp"

namespace monarel {

/// An immutable structured token. Atoms are the elements of every finite set
/// in the library: plain names, the unit value, pairs, finite sets (powerset
/// elements and antichains), finitely supported rational distributions and
/// finite function graphs.
///
/// Every atom carries its canonical serialization; equality and ordering are
/// those of the serialized text, so constructions over atoms are
/// deterministic. `Atom::parse(a.str()) == a` for every atom.
///
/// Serialized forms:
///   leaf   name            (no whitespace and none of ()[]{}<>,:)
///   unit   ()
///   pair   (x,y)
///   set    {x,y}           members sorted, no duplicates
///   dist   [1/2:x,1/2:y]   support sorted, zero weights dropped
///   graph  <x:fx,y:fy>     keys sorted, one entry per key
class Atom {
 public:
  enum class Kind { leaf, unit, pair, set, dist, graph };

  Atom();  // the unit atom

  static Atom leaf(std::string name);
  static Atom unit();
  static Atom pair(const Atom& first, const Atom& second);
  /// Sorts and removes duplicates.
  static Atom set(std::vector<Atom> members);
  /// Sums weights of repeated atoms and drops zero weights. Negative weights
  /// are rejected.
  static Atom dist(std::vector<std::pair<Atom, Rational>> weights);
  /// Keys must be distinct.
  static Atom graph(std::vector<std::pair<Atom, Atom>> entries);

  /// Inverse of str(). Throws Error with the offending offset.
  static Atom parse(std::string_view text);

  Kind kind() const;
  const std::string& str() const;

  bool is_leaf() const { return kind() == Kind::leaf; }
  bool is_pair() const { return kind() == Kind::pair; }
  bool is_set() const { return kind() == Kind::set; }

  /// Pair components. Throw Error for non-pairs.
  const Atom& first() const;
  const Atom& second() const;

  /// Set members, or the support of a distribution, or the keys of a graph.
  std::span<const Atom> members() const;
  /// Distribution weights aligned with members().
  std::span<const Rational> weights() const;
  /// Graph values aligned with members().
  std::span<const Atom> values() const;

  /// Weight of `x` in a distribution atom (zero when absent).
  Rational weight_of(const Atom& x) const;
  /// Total mass of a distribution atom.
  Rational mass() const;
  /// Looks up `x` in a graph atom. Throws Error when `x` is not a key.
  const Atom& apply(const Atom& x) const;
  /// Membership in a set atom.
  bool contains(const Atom& x) const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.node_ == b.node_ || a.str() == b.str();
  }
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    return a.str() <=> b.str();
  }

 private:
  struct Node;
  static const std::shared_ptr<const Node>& unit_node();
  explicit Atom(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept {
    return std::hash<std::string>{}(a.str());
  }
};

}  // namespace monarel
