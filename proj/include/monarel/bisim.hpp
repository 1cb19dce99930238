#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monarel/finset.hpp"
#include "monarel/lifting.hpp"
#include "monarel/monad.hpp"

namespace monarel {

using StepKey = std::pair<Atom, Atom>;  // (state, label)

/// Labelled transition system: a finite set of successors per (state, label).
/// Missing entries mean no transition.
class LTS {
 public:
  LTS(FinSet states, FinSet labels, std::map<StepKey, FinSet> step);

  const FinSet& states() const { return states_; }
  const FinSet& labels() const { return labels_; }
  const std::map<StepKey, FinSet>& steps() const { return step_; }
  FinSet successors(const Atom& s, const Atom& label) const;

 private:
  FinSet states_;
  FinSet labels_;
  std::map<StepKey, FinSet> step_;
};

/// Probabilistic LTS: a (sub)distribution on states per (state, label).
/// Missing entries are the zero measure.
class PLTS {
 public:
  PLTS(FinSet states, FinSet labels, DistMode mode, std::map<StepKey, RatDist> step);

  const FinSet& states() const { return states_; }
  const FinSet& labels() const { return labels_; }
  DistMode mode() const { return mode_; }
  const std::map<StepKey, RatDist>& steps() const { return step_; }
  /// nullptr when there is no transition.
  const RatDist* step(const Atom& s, const Atom& label) const;
  /// Total weight of moving from s under label into the given states.
  Rational mass_into(const Atom& s, const Atom& label, std::span<const Atom> targets) const;

 private:
  FinSet states_;
  FinSet labels_;
  DistMode mode_;
  std::map<StepKey, RatDist> step_;
};

struct BisimFailure {
  Atom a1;
  Atom a2;
  Atom l1;
  Atom l2;
  std::string step1;  // successor set or distribution, as an atom string
  std::string step2;
  std::string reason;
  /// dist only: U with nu1(U) > nu2(S(U)) when the masses agree.
  std::optional<std::vector<Atom>> violated_subset;
  Rational lhs = 0;
  Rational rhs = 0;
};

struct BisimResult {
  bool holds = true;
  std::size_t checked = 0;  // (pair, label pair) steps examined
  std::optional<BisimFailure> failure;
};

/// S is a strong bisimulation when every related pair's labelled steps are
/// related by the Egli-Milner lifting of S. `labels` defaults to the
/// diagonal, which needs equal label sets. Throws Error on carrier mismatch.
BisimResult check_bisimulation(const Rel& s, const LTS& f1, const LTS& f2,
                               const std::optional<Rel>& labels = std::nullopt);

/// The same with the coupling lifting of S for distributions.
BisimResult check_prob_bisimulation(const Rel& s, const PLTS& f1, const PLTS& f2,
                                    const std::optional<Rel>& labels = std::nullopt);

/// Greatest relation passing the check: start from A1 x A2 and drop failing
/// pairs round by round until nothing changes.
Rel largest_bisimulation(const LTS& f1, const LTS& f2, const std::optional<Rel>& labels = std::nullopt);
Rel largest_bisimulation(const PLTS& f1, const PLTS& f2,
                         const std::optional<Rel>& labels = std::nullopt);

/// A partition of A1 + A2 (classes as in Saturation).
using Partition = std::vector<Saturation::Class>;

/// (1, s) for s in A1 and (2, t) for t in A2.
Atom tag_left(const Atom& s);
Atom tag_right(const Atom& t);

/// The combined system on the tagged disjoint union. Needs equal label sets
/// and modes.
PLTS disjoint_union(const PLTS& f1, const PLTS& f2);

/// Equivalence generated by S, as a partition of A1 + A2.
Partition generated_partition(const Rel& s);
/// {(a1, a2) : a1, a2 in a common class}.
Rel cross_relation(const Partition& e, const FinSet& a1, const FinSet& a2);

struct LarsenSkouFailure {
  Atom a;  // tagged states
  Atom b;
  Atom label;
  std::size_t target_class = 0;
  Rational mass_a = 0;
  Rational mass_b = 0;
};

struct LarsenSkouResult {
  bool holds = true;
  std::optional<LarsenSkouFailure> failure;
};

/// Equivalent states of the combined system move with equal probability
/// into every class, for every label. Throws Error when `e` is not a
/// partition of A1 + A2.
LarsenSkouResult larsen_skou_check(const PLTS& f1, const PLTS& f2, const Partition& e);

}  // namespace monarel
