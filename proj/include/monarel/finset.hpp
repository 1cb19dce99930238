#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monarel/atom.hpp"

namespace monarel {

/// An explicitly enumerated finite set in canonical (sorted) order.
class FinSet {
 public:
  FinSet() = default;
  /// Sorts; throws Error on duplicates.
  explicit FinSet(std::vector<Atom> elements);
  /// Convenience for tests and examples: every name becomes a leaf atom.
  static FinSet of(std::initializer_list<std::string_view> names);
  /// Sorts and silently removes duplicates.
  static FinSet from_range(std::vector<Atom> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::span<const Atom> elements() const { return elements_; }
  const Atom& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const Atom& x) const;
  /// Position in canonical order, or nullopt.
  std::optional<std::size_t> index_of(const Atom& x) const;
  bool is_subset_of(const FinSet& other) const;

  std::string str() const;

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::vector<Atom> elements_;
};

/// Total map between finite sets, stored as the image of each domain element
/// in canonical order.
class FinFun {
 public:
  /// Throws Error when `images` is not total on `dom` or leaves `cod`.
  FinFun(FinSet dom, FinSet cod, std::vector<Atom> images);
  static FinFun from(FinSet dom, FinSet cod,
                     const std::function<Atom(const Atom&)>& rule);
  static FinFun identity(const FinSet& a);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }
  std::span<const Atom> images() const { return images_; }

  /// Throws Error outside the domain.
  const Atom& operator()(const Atom& x) const;

  bool is_injective() const;
  bool is_surjective() const;
  std::string str() const;

  friend bool operator==(const FinFun&, const FinFun&) = default;

 private:
  FinSet dom_;
  FinSet cod_;
  std::vector<Atom> images_;
};

/// Subset S of left x right; the inclusion into the product is implicit.
class Rel {
 public:
  Rel(FinSet left, FinSet right, std::vector<std::pair<Atom, Atom>> pairs);
  static Rel diagonal(const FinSet& a);
  static Rel full(const FinSet& left, const FinSet& right);
  static Rel empty(const FinSet& left, const FinSet& right);
  /// Graph of a function, as a relation dom x cod.
  static Rel graph_of(const FinFun& f);

  const FinSet& left() const { return left_; }
  const FinSet& right() const { return right_; }
  /// The pairs as pair-atoms, in canonical order. This is the carrier of S.
  const FinSet& carrier() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  std::vector<std::pair<Atom, Atom>> pairs() const;

  bool contains(const Atom& a1, const Atom& a2) const;
  bool is_subset_of(const Rel& other) const;
  /// Elements of right related to `a1`.
  std::vector<Atom> successors(const Atom& a1) const;

  /// Inclusion S -> left x right.
  FinFun inclusion() const;
  FinFun proj1() const;
  FinFun proj2() const;

  std::string str() const;

  friend bool operator==(const Rel&, const Rel&) = default;

 private:
  FinSet left_;
  FinSet right_;
  FinSet pairs_;
};

/// f = mono . epi with mid the image of f.
struct Factorization {
  FinFun epi;
  FinSet mid;
  FinFun mono;
};

struct Product {
  FinSet carrier;
  FinFun pi1;
  FinFun pi2;
};

/// g . f. Throws Error when f.cod != g.dom.
FinFun compose(const FinFun& g, const FinFun& f);

/// Surjection onto the image followed by the inclusion of the image.
Factorization factorize(const FinFun& f);

/// Given e: X->>Y surjective, m: U>->V injective, l: X->U and r: Y->V with
/// m.l = r.e, returns the unique d: Y->U with d.e = l and m.d = r.
FinFun diagonal_fill_in(const FinFun& e, const FinFun& m, const FinFun& l,
                        const FinFun& r);

FinSet product_set(const FinSet& a, const FinSet& b);
Product product(const FinSet& a, const FinSet& b);
/// <f1, f2>: X -> A x B.
FinFun pairing(const FinFun& f1, const FinFun& f2);
/// f x g: A x B -> C x D.
FinFun tensor(const FinFun& f, const FinFun& g);

/// The monoidal unit {()}.
FinSet unit_set();

// Canonical structural isomorphisms of the cartesian structure, both as
// finite functions and as plain atom maps (for values outside any FinSet).
Atom assoc_value(const Atom& abc);          // ((a,b),c) |-> (a,(b,c))
Atom assoc_inverse_value(const Atom& abc);  // (a,(b,c)) |-> ((a,b),c)
Atom swap_value(const Atom& ab);            // (a,b) |-> (b,a)
Atom interchange_value(const Atom& x);      // ((a1,a2),(b1,b2)) |-> ((a1,b1),(a2,b2))

FinFun assoc(const FinSet& a, const FinSet& b, const FinSet& c);
FinFun left_unitor(const FinSet& b);   // I x B -> B
FinFun right_unitor(const FinSet& a);  // A x I -> A
FinFun swap(const FinSet& a, const FinSet& b);
/// (A1 x A2) x (B1 x B2) -> (A1 x B1) x (A2 x B2): the mediating map that
/// makes the binary product functor monoidal.
FinFun interchange(const FinSet& a1, const FinSet& a2, const FinSet& b1,
                   const FinSet& b2);

/// Every total function dom -> cod, in lexicographic order of image lists.
std::vector<FinFun> all_functions(const FinSet& dom, const FinSet& cod);
/// Every subset of `s`, as FinSets, ordered by bitmask.
std::vector<FinSet> all_subsets(const FinSet& s);
/// Every relation between `left` and `right`. Exponential; desk scale only.
std::vector<Rel> all_relations(const FinSet& left, const FinSet& right);

/// {a, b, c, ...} with the first n lowercase names.
FinSet letters(std::size_t n);
/// {0, 1, ..., n-1}.
FinSet numerals(std::size_t n);

}  // namespace monarel
