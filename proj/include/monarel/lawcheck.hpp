#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monarel/monad.hpp"

namespace monarel {

struct LawConfig {
  /// Base carriers range over sizes 0..max_size.
  std::size_t max_size = 3;
  /// Sampled cases per law, spread over the size combinations that are too
  /// large to enumerate (all of them for non-enumerable monads).
  std::size_t samples = 500;
  std::uint64_t seed = 1;
  /// A size combination is enumerated when its input tuples number at most
  /// this many.
  std::size_t exhaustive_limit = std::size_t{1} << 17;
};

struct Counterexample {
  std::string diagram;  // the two composites, as text
  std::string input;
  std::string lhs;
  std::string rhs;
  std::vector<std::size_t> sizes;  // base carrier sizes of the failing case
};

struct LawResult {
  std::string id;
  bool passed = true;
  std::size_t exhaustive_cases = 0;
  std::size_t sampled_cases = 0;
  std::optional<Counterexample> counterexample;
};

struct LawReport {
  std::string check;  // e.g. "monad-laws"
  std::string monad;
  LawConfig config;
  std::vector<LawResult> laws;

  bool passed() const;
  std::size_t cases() const;
  /// The first failing law, if any.
  const LawResult* first_failure() const;
};

LawReport check_monad_laws(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_strength_laws(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_mediator_laws(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_commutative(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_cartesian(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_derived_strengths(const MonadInstance& t, const LawConfig& cfg = {});
/// delta = <T pi1, T pi2> against the units and multiplications.
LawReport check_monad_morphism(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_strong_morphism(const MonadInstance& t, const LawConfig& cfg = {});
LawReport check_monoidal_morphism(const MonadInstance& t, const LawConfig& cfg = {});

/// Names accepted by run_check: monad, strength, mediator, commutative,
/// cartesian, derived, morphism, strong-morphism, monoidal-morphism.
const std::vector<std::string>& check_names();
LawReport run_check(const std::string& name, const MonadInstance& t, const LawConfig& cfg = {});
/// Every check that applies (mediator-based ones only with a mediator).
std::vector<LawReport> run_all_checks(const MonadInstance& t, const LawConfig& cfg = {});

// Corrupted monads for mutation tests.

/// Powerset with intersection in place of union.
MonadInstance mutant_intersection_mult(const MonadInstance& powerset);
/// Distribution multiplication that forgets the outer weights.
MonadInstance mutant_unweighted_mult(const MonadInstance& dist);
/// Strength with the pair components swapped: t(a, m) = T(b |-> (b, a)) m.
MonadInstance mutant_swapped_strength(const MonadInstance& t);
/// Strength that keeps only the least support point: t(a, m) = eta(a, b0).
MonadInstance mutant_least_point_strength(const MonadInstance& t);
/// Mediator that keeps only the least support point of its left argument.
MonadInstance mutant_left_biased_mediator(const MonadInstance& t);
/// Mediator that keeps only the least support point of its right argument.
MonadInstance mutant_right_biased_mediator(const MonadInstance& t);

}  // namespace monarel
