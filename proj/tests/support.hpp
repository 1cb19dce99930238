#pragma once

#include <map>
#include <vector>

#include "monarel/bisim.hpp"
#include "monarel/finset.hpp"
#include "monarel/monad.hpp"
#include "monarel/random.hpp"

namespace monarel::testing {

inline Atom L(const char* s) { return Atom::leaf(s); }

/// Random distribution on `carrier` with denominators <= max_den; probability
/// mode sums to 1, subprobability mode to at most 1.
inline RatDist random_dist(const FinSet& carrier, Rng& rng, DistMode mode,
                           std::uint64_t max_den = 12) {
  std::uint64_t den = rng.between(1, max_den);
  std::uint64_t total = mode == DistMode::probability ? den : rng.between(0, den);
  std::vector<std::uint64_t> parts(carrier.size(), 0);
  if (!carrier.empty()) {
    for (std::uint64_t k = 0; k < total; ++k) ++parts[rng.below(carrier.size())];
  }
  std::map<Atom, Rational> w;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (parts[i] != 0) w[carrier[i]] = Rational(parts[i], den);
  return RatDist(carrier, std::move(w), mode);
}

inline Rel random_rel(const FinSet& a1, const FinSet& a2, Rng& rng, std::uint64_t density = 2) {
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& x : a1)
    for (const auto& y : a2)
      if (rng.below(density + 1) != 0) pairs.emplace_back(x, y);
  return Rel(a1, a2, std::move(pairs));
}

/// Strassen's condition: equal totals and nu1(U) <= nu2(S(U)) for all U.
inline bool strassen_oracle(const RatDist& nu1, const RatDist& nu2, const Rel& s) {
  if (nu1.mass() != nu2.mass()) return false;
  for (const auto& u : all_subsets(s.left())) {
    std::vector<Atom> image;
    for (const auto& x : u)
      for (const auto& y : s.successors(x)) image.push_back(y);
    FinSet img = FinSet::from_range(std::move(image));
    if (nu1.measure(u.elements()) > nu2.measure(img.elements())) return false;
  }
  return true;
}

inline PLTS random_plts(const FinSet& a, const FinSet& labels, Rng& rng) {
  std::map<StepKey, RatDist> step;
  for (const auto& s : a)
    for (const auto& l : labels)
      if (rng.below(5) != 0) step.emplace(StepKey{s, l}, random_dist(a, rng, DistMode::probability));
  return PLTS(a, labels, DistMode::probability, std::move(step));
}

/// A random partition of A1 + A2.
inline Partition random_partition(const FinSet& a1, const FinSet& a2, Rng& rng) {
  std::size_t k = 1 + rng.below(a1.size() + a2.size());
  Partition p(k);
  for (const auto& x : a1) p[rng.below(k)].left.push_back(x);
  for (const auto& y : a2) p[rng.below(k)].right.push_back(y);
  std::erase_if(p, [](const auto& c) { return c.left.empty() && c.right.empty(); });
  return p;
}

/// A pair of systems that respect the partition: every state of a class gets
/// the same class masses, spread at random inside each class.
inline std::pair<PLTS, PLTS> respecting_pair(const FinSet& a1, const FinSet& a2, const Partition& e,
                                      const FinSet& labels, Rng& rng) {
  std::map<StepKey, RatDist> s1;
  std::map<StepKey, RatDist> s2;
  for (const auto& cls : e) {
    for (const auto& l : labels) {
      if (rng.below(5) == 0) continue;
      std::uint64_t den = 1 + rng.below(12);
      // class-level distribution in units of 1/den, only to classes that
      // can absorb mass on both sides when the source class has both sides
      bool both = !cls.left.empty() && !cls.right.empty();
      std::vector<std::size_t> targets;
      for (std::size_t c = 0; c < e.size(); ++c) {
        bool absorbs = both ? (!e[c].left.empty() && !e[c].right.empty())
                            : (cls.left.empty() ? !e[c].right.empty() : !e[c].left.empty());
        if (absorbs) targets.push_back(c);
      }
      if (targets.empty()) continue;
      std::vector<std::uint64_t> units(e.size(), 0);
      for (std::uint64_t u = 0; u < den; ++u) ++units[targets[rng.below(targets.size())]];
      // each state sends units[c]/den into class c, split at random inside it
      auto spread = [&](bool left) {
        std::map<Atom, Rational> w;
        for (std::size_t c = 0; c < e.size(); ++c) {
          const auto& members = left ? e[c].left : e[c].right;
          if (units[c] == 0) continue;
          std::vector<std::uint64_t> parts(members.size(), 0);
          for (std::uint64_t q = 0; q < units[c] * 2; ++q) ++parts[rng.below(parts.size())];
          for (std::size_t m = 0; m < parts.size(); ++m)
            if (parts[m] != 0) w[members[m]] += Rational(parts[m], 2 * den);
        }
        return w;
      };
      for (const auto& x : cls.left)
        s1.emplace(StepKey{x, l}, RatDist(a1, spread(true), DistMode::probability));
      for (const auto& y : cls.right)
        s2.emplace(StepKey{y, l}, RatDist(a2, spread(false), DistMode::probability));
    }
  }
  return {PLTS(a1, labels, DistMode::probability, std::move(s1)),
          PLTS(a2, labels, DistMode::probability, std::move(s2))};
}

}  // namespace monarel::testing
