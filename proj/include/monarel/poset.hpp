#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monarel/finset.hpp"
#include "monarel/monad.hpp"

namespace monarel {

/// A finite partial order. The constructor adds reflexive pairs and rejects
/// relations that are not transitive or not antisymmetric.
class FinPoset {
 public:
  FinPoset(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq);
  static FinPoset discrete(FinSet carrier);
  /// carrier[0] < carrier[1] < ...
  static FinPoset chain(FinSet carrier);
  /// No validation: for relations already known to be partial orders.
  static FinPoset trusted(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq);

  const FinSet& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  bool leq(const Atom& x, const Atom& y) const;
  bool comparable(const Atom& x, const Atom& y) const { return leq(x, y) || leq(y, x); }
  /// All pairs x <= y, reflexive ones included.
  Rel relation() const;
  /// Strict pairs x < y.
  std::vector<std::pair<Atom, Atom>> strict_pairs() const;
  std::string str() const;

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.carrier_ == b.carrier_ && a.leq_ == b.leq_;
  }

 private:
  FinPoset(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq, bool validate);

  FinSet carrier_;
  std::vector<bool> leq_;  // row-major by carrier index
};

/// Every partial order on the carrier (carriers up to 4 elements).
std::vector<FinPoset> all_posets(const FinSet& carrier);
FinPoset product_poset(const FinPoset& a, const FinPoset& b);
bool is_monotone(const FinFun& f, const FinPoset& dom, const FinPoset& cod);

/// Minimal elements of a subset, sorted.
std::vector<Atom> minimize(const FinPoset& p, const std::vector<Atom>& subset);
bool is_antichain(const FinPoset& p, std::span<const Atom> xs);

// ------------------------------------------------------------ upper sets

/// A nonempty finitely generated upper set, stored by its antichain of
/// minimal generators as a set atom.
Atom upper_set(const FinPoset& p, const std::vector<Atom>& generators);
bool upper_contains(const FinPoset& p, const Atom& upper, const Atom& x);
/// Smyth order: up(E) <= up(F) iff up(E) contains up(F).
bool smyth_leq(const FinPoset& p, const Atom& e, const Atom& f);

/// T A: the nonempty antichains of A under the Smyth order.
FinPoset upper_poset(const FinPoset& a);
Atom upper_unit(const Atom& x);
Atom upper_mult(const FinPoset& a, const Atom& x);
Atom upper_map(const FinFun& f, const FinPoset& cod, const Atom& e);
/// up(E) x up(F) = up(E x F).
Atom upper_mediator(const Atom& e, const Atom& f);

/// An order on atoms: a table of strict pairs of leaves, extended to pairs
/// componentwise, to set atoms by the Smyth order, and to the unit.
class AtomOrder {
 public:
  explicit AtomOrder(std::vector<std::pair<std::string, std::string>> strict_leaves = {});
  /// Orders of the law-check carriers: a < b with c apart, 0 < 1 < 2,
  /// x y z discrete, u < w and v < w.
  static AtomOrder standard();

  bool leq(const Atom& x, const Atom& y) const;
  FinPoset on(const FinSet& carrier) const;

 private:
  std::set<std::pair<std::string, std::string>> strict_;
};

/// The upper-set monad as a MonadInstance whose carriers are ordered by
/// `order`; it carries the order so law checks draw monotone maps only.
MonadInstance upper_monad(const AtomOrder& order = AtomOrder::standard());

// ------------------------------------------------------------ factorization

enum class OrdSystem {
  /// surjective monotone maps, order embeddings: the image inherits the order
  inherited,
  /// quotient maps, injective monotone maps: the image carries the order
  /// generated by the domain
  generated,
};

std::string to_string(OrdSystem system);
OrdSystem parse_ord_system(std::string_view text);

struct OrdFactorization {
  FinPoset middle;
  FinFun epi;   // dom -> middle
  FinFun mono;  // middle -> cod, the inclusion
};

/// Throws Error when f is not monotone.
OrdFactorization factorize_ord(const FinFun& f, const FinPoset& dom, const FinPoset& cod,
                               OrdSystem system);

/// A relation whose pair set carries an order contained in the product order.
struct OrderedRel {
  Rel rel;
  FinPoset order;  // on rel.carrier()
};

/// The pair set ordered as a sub-order of A1 x A2.
OrderedRel inherited_order(const Rel& s, const FinPoset& a1, const FinPoset& a2);
/// Throws Error when `order` is not on S's pair set or not contained in the
/// product order.
OrderedRel ordered_rel(const Rel& s, const FinPoset& a1, const FinPoset& a2, FinPoset order);
/// Orders on S's pair set contained in the product order, up to `limit`:
/// the inherited and discrete orders first, then every other one when the
/// inherited order has at most 12 strict pairs, otherwise the orders with a
/// single strict pair.
std::vector<FinPoset> sub_orders(const Rel& s, const FinPoset& a1, const FinPoset& a2,
                                 std::size_t limit = 4096);

/// The pair set of lift_relation_ord, which does not depend on the system.
Rel lifted_pairs(const OrderedRel& s, const FinPoset& a1, const FinPoset& a2);

/// The lifted relation over (T A1, T A2): images (up pi1 Q, up pi2 Q) of the
/// nonempty antichains Q of S, ordered according to the system.
OrderedRel lift_relation_ord(const OrderedRel& s, const FinPoset& a1, const FinPoset& a2,
                             OrdSystem system);

struct OrderingWitness {
  FinPoset a1;
  FinPoset a2;
  OrderedRel s;
  Atom lower;   // a pair ordered under one system only
  Atom upper;
  OrdSystem ordered_by;
};

struct OrderingSearch {
  std::size_t instances = 0;
  std::size_t same_pairs = 0;  // instances whose pair sets agree
  std::optional<OrderingWitness> witness;
};

/// Compares the two lifts over every poset pair with |A1|, |A2| <= max_size,
/// every S, and the sub-orders of S (inherited order for the first system).
OrderingSearch search_ordering_difference(std::size_t max_size = 2, std::size_t suborder_limit = 64);

}  // namespace monarel
