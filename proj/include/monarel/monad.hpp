#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monarel/atom.hpp"
#include "monarel/finset.hpp"
#include "monarel/random.hpp"
#include "monarel/rational.hpp"

namespace monarel {

using ValueMap = std::function<Atom(const Atom&)>;

/// Which lifting decision procedure applies to the monad's values.
enum class MonadFamily { powerset, nonempty_powerset, distribution, upper_set, identity, other };

/// A strong (and possibly monoidal) monad on finite sets, as a bundle of
/// value-level operations. Every operation acts on atoms; for enumerable
/// monads `apply` additionally materializes T A as a FinSet.
///
/// The bundle is a plain value: tests build corrupted variants by copying an
/// instance and replacing one member.
struct MonadInstance {
  std::string name;
  MonadFamily family = MonadFamily::other;
  bool enumerable = false;

  /// T A as a finite set (enumerable monads only).
  std::function<FinSet(const FinSet&)> apply;
  /// Upper bound on |T A| given |A|, or nullopt when it would overflow.
  /// Used to decide between enumeration and sampling.
  std::function<std::optional<std::size_t>(std::size_t)> apply_size;
  /// Whether `value` is an element of T(carrier).
  std::function<bool(const Atom& value, const FinSet& carrier)> is_element;

  std::function<Atom(const Atom&)> unit;
  std::function<Atom(const Atom&)> mult;
  std::function<Atom(const ValueMap&, const Atom&)> map;
  /// t_{A,B}(a, tb) in T(A x B).
  std::function<Atom(const Atom&, const Atom&)> strength;
  /// d_{A,B}(ta, tb) in T(A x B); empty when the monad has no mediator.
  std::function<Atom(const Atom&, const Atom&)> mediator;

  /// A random element of T(pool). The pool may be empty only when T of the
  /// empty set is inhabited.
  std::function<Atom(std::span<const Atom> pool, Rng&)> sample;
  /// Deterministic edge-case elements of T(pool) (Diracs, uniform, empty...).
  std::function<std::vector<Atom>(std::span<const Atom> pool)> corners;

  /// Set for monads on posets: the order on atoms. Law checks then only
  /// draw monotone maps.
  std::function<bool(const Atom&, const Atom&)> order;

  bool has_mediator() const { return static_cast<bool>(mediator); }
};

MonadInstance powerset_monad();
MonadInstance nonempty_powerset_monad();

enum class DistMode { probability, subprobability };
std::string to_string(DistMode mode);
DistMode parse_dist_mode(std::string_view text);

MonadInstance dist_monad(DistMode mode);
/// T A = A; used as the trivial instance in tests.
MonadInstance identity_monad();

/// Looks up a shipped Set monad by CLI name: powerset, nonempty-powerset,
/// dist, subdist, identity. Throws Error otherwise.
MonadInstance monad_by_name(std::string_view name);

// FinSet-level views of an enumerable monad.
FinFun map_fun(const MonadInstance& t, const FinFun& f);
FinFun unit_fun(const MonadInstance& t, const FinSet& a);
FinFun mult_fun(const MonadInstance& t, const FinSet& a);
FinFun strength_fun(const MonadInstance& t, const FinSet& a, const FinSet& b);
FinFun mediator_fun(const MonadInstance& t, const FinSet& a, const FinSet& b);

/// Exact discrete (sub)probability distribution on a finite carrier.
class RatDist {
 public:
  /// Validates support within carrier, non-negative weights and the mass
  /// constraint of `mode`.
  RatDist(FinSet carrier, std::map<Atom, Rational> weights, DistMode mode);
  static RatDist dirac(const FinSet& carrier, const Atom& x, DistMode mode = DistMode::probability);
  static RatDist uniform(const FinSet& carrier, DistMode mode = DistMode::probability);
  static RatDist zero(const FinSet& carrier);
  /// From a distribution atom over `carrier`.
  static RatDist from_atom(const Atom& value, const FinSet& carrier, DistMode mode);

  const FinSet& carrier() const { return carrier_; }
  DistMode mode() const { return mode_; }
  /// Positive weights only.
  const std::map<Atom, Rational>& weights() const { return weights_; }
  Rational weight(const Atom& x) const;
  Rational mass() const;
  /// nu(B) for a subset B of the carrier.
  Rational measure(std::span<const Atom> subset) const;
  Atom to_atom() const;

  friend bool operator==(const RatDist&, const RatDist&) = default;

 private:
  FinSet carrier_;
  std::map<Atom, Rational> weights_;
  DistMode mode_;
};

}  // namespace monarel
