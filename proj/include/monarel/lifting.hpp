#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monarel/finset.hpp"
#include "monarel/monad.hpp"

namespace monarel {

/// Lifted relation T^S for an enumerable monad: the direct image of
/// <T pi1, T pi2> : T S -> T A1 x T A2, as a relation over (T A1, T A2).
Rel lift_enumerate(const MonadInstance& t, const Rel& s);

/// Egli-Milner membership: every b1 has an S-partner in B2 and every b2 has
/// an S-partner in B1. Throws Error when B1 or B2 leave the carriers.
bool lift_member_powerset(const FinSet& b1, const FinSet& b2, const Rel& s);

/// Outcome of the coupling (transportation) feasibility check.
struct CouplingResult {
  bool member = false;
  /// A distribution on the pairs of S (pair atoms) with the two given
  /// marginals; present when member and a witness was requested.
  std::optional<RatDist> witness;
  /// When infeasible with equal masses: a subset U of A1 with
  /// nu1(U) > nu2(S(U)), read off a minimum cut.
  std::optional<std::vector<Atom>> violated_subset;
  Rational violated_lhs = 0;  // nu1(U)
  Rational violated_rhs = 0;  // nu2(S(U))
  /// Set when the two total masses differ.
  bool mass_mismatch = false;
};

/// Is there a (sub)probability distribution supported on S whose marginals
/// are nu1 and nu2? Decided exactly by max-flow on integer capacities after
/// clearing denominators. Throws Error on mode or carrier mismatch.
CouplingResult lift_member_dist(const RatDist& nu1, const RatDist& nu2, const Rel& s,
                                bool want_witness = true);

/// Marginals of a distribution over the pair atoms of S.
std::pair<RatDist, RatDist> coupling_marginals(const RatDist& coupling, const Rel& s);

/// The equivalence on the disjoint union A1 + A2 generated by S.
struct Saturation {
  struct Class {
    std::vector<Atom> left;   // C n A1
    std::vector<Atom> right;  // C n A2
  };
  std::vector<Class> classes;
  /// {(a1, a2) : a1 and a2 in the same class}.
  Rel saturated;
};

Saturation saturate(const Rel& s);
bool is_saturated(const Rel& s);

/// Class-mass criterion: nu1(C n A1) = nu2(C n A2) for every class C.
/// Throws Error when S is not saturated.
bool lift_member_dist_saturated(const RatDist& nu1, const RatDist& nu2, const Rel& s);

/// The explicit coupling nu(x1, x2) = nu1(x1) nu2(x2) / nu1(C n A1) for
/// x1, x2 in a common class C of nonzero mass. Requires S saturated and the
/// class masses to agree; throws Error otherwise.
RatDist converse_coupling(const RatDist& nu1, const RatDist& nu2, const Rel& s);

/// Membership in the lifted relation for any monad, by the decision
/// procedure matching its family: Egli-Milner for the powersets, coupling
/// feasibility for distributions, enumeration otherwise.
bool lift_member(const MonadInstance& t, const Atom& v1, const Atom& v2, const Rel& s);

/// The lifted relation as an object: extensional for enumerable monads,
/// a decision procedure otherwise. Both answer contains().
class LiftedRel {
 public:
  LiftedRel(MonadInstance monad, Rel base);

  const Rel& base() const { return base_; }
  const MonadInstance& monad() const { return monad_; }
  /// The explicit relation over (T A1, T A2), when the monad is enumerable.
  const std::optional<Rel>& extension() const { return extension_; }
  bool contains(const Atom& v1, const Atom& v2) const;

 private:
  MonadInstance monad_;
  Rel base_;
  std::optional<Rel> extension_;
};

/// Pairwise product relation: ((a1,b1),(a2,b2)) for (a1,a2) in S and
/// (b1,b2) in S'.
Rel product_rel(const Rel& s, const Rel& s2);

/// A random element of the lifted relation: sample R in T S and project.
std::pair<Atom, Atom> sample_lifted_pair(const MonadInstance& t, const Rel& s, Rng& rng);

struct LiftCheck {
  bool ok = true;
  std::size_t cases = 0;
  std::string counterexample;
};

/// Action of the lifted functor on a relation-preserving pair (h1, h2).
/// Checks that (T h1, T h2) maps T^S into T^S'; for enumerable monads also
/// returns the induced map between the lifted relations (as pair atoms).
struct LiftedMorphism {
  LiftCheck check;
  std::optional<FinFun> induced;
};

/// Throws Error when (h1, h2) does not map S into S'. For non-enumerable
/// monads the check runs on `samples` sampled members of T^S.
LiftedMorphism lifted_morphism(const MonadInstance& t, const Rel& s, const Rel& s2,
                               const FinFun& h1, const FinFun& h2, std::size_t samples = 200,
                               std::uint64_t seed = 1);

/// (a1,a2) in S implies (eta a1, eta a2) in T^S.
LiftCheck lifted_unit_check(const MonadInstance& t, const Rel& s);
/// (X1,X2) in T^(T^S) implies (mu X1, mu X2) in T^S. Exhaustive for
/// enumerable monads, sampled otherwise.
LiftCheck lifted_mult_check(const MonadInstance& t, const Rel& s, std::size_t samples = 200,
                            std::uint64_t seed = 1);
/// (a1,a2) in S and (b1,b2) in T^S' imply (t(a1,b1), t(a2,b2)) in T^(S x S').
LiftCheck lifted_strength_check(const MonadInstance& t, const Rel& s, const Rel& s2,
                                std::size_t samples = 200, std::uint64_t seed = 1);

}  // namespace monarel
