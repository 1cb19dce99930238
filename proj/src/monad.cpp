#include "monarel/monad.hpp"

#include <algorithm>
#include <numeric>

#include "monarel/error.hpp"

namespace monarel {

namespace {

void require_kind(const Atom& v, Atom::Kind kind, const char* what) {
  if (v.kind() != kind) throw Error(std::string("expected ") + what + ", got " + v.str());
}

// ------------------------------------------------------------ powerset

Atom power_unit(const Atom& x) { return Atom::set({x}); }

Atom power_mult(const Atom& family) {
  require_kind(family, Atom::Kind::set, "a set of sets");
  std::vector<Atom> out;
  for (const auto& s : family.members()) {
    require_kind(s, Atom::Kind::set, "a set");
    out.insert(out.end(), s.members().begin(), s.members().end());
  }
  return Atom::set(std::move(out));
}

Atom power_map(const ValueMap& f, const Atom& s) {
  require_kind(s, Atom::Kind::set, "a set");
  std::vector<Atom> out;
  out.reserve(s.members().size());
  for (const auto& x : s.members()) out.push_back(f(x));
  return Atom::set(std::move(out));
}

Atom power_strength(const Atom& a, const Atom& s) {
  require_kind(s, Atom::Kind::set, "a set");
  std::vector<Atom> out;
  for (const auto& y : s.members()) out.push_back(Atom::pair(a, y));
  return Atom::set(std::move(out));
}

Atom power_mediator(const Atom& s, const Atom& t) {
  require_kind(s, Atom::Kind::set, "a set");
  require_kind(t, Atom::Kind::set, "a set");
  std::vector<Atom> out;
  for (const auto& x : s.members())
    for (const auto& y : t.members()) out.push_back(Atom::pair(x, y));
  return Atom::set(std::move(out));
}

bool subset_of_carrier(const Atom& v, const FinSet& carrier) {
  if (!v.is_set()) return false;
  return std::all_of(v.members().begin(), v.members().end(),
                     [&](const Atom& x) { return carrier.contains(x); });
}

std::optional<std::size_t> pow2(std::size_t n) {
  if (n >= 8 * sizeof(std::size_t) - 1) return std::nullopt;
  return std::size_t{1} << n;
}

std::vector<Atom> subset_corners(std::span<const Atom> pool, bool allow_empty) {
  std::vector<Atom> out;
  if (allow_empty) out.push_back(Atom::set({}));
  if (!pool.empty()) {
    out.push_back(Atom::set(std::vector<Atom>(pool.begin(), pool.end())));
    out.push_back(Atom::set({pool.front()}));
    out.push_back(Atom::set({pool.back()}));
  }
  return out;
}

MonadInstance make_powerset(bool nonempty) {
  MonadInstance t;
  t.name = nonempty ? "nonempty-powerset" : "powerset";
  t.family = nonempty ? MonadFamily::nonempty_powerset : MonadFamily::powerset;
  t.enumerable = true;
  t.apply = [nonempty](const FinSet& a) {
    std::vector<Atom> out;
    for (const auto& s : all_subsets(a)) {
      if (nonempty && s.empty()) continue;
      out.push_back(Atom::set(std::vector<Atom>(s.begin(), s.end())));
    }
    return FinSet(std::move(out));
  };
  t.apply_size = [nonempty](std::size_t n) -> std::optional<std::size_t> {
    auto p = pow2(n);
    if (!p) return std::nullopt;
    return nonempty ? *p - 1 : *p;
  };
  t.is_element = [nonempty](const Atom& v, const FinSet& carrier) {
    return subset_of_carrier(v, carrier) && (!nonempty || !v.members().empty());
  };
  t.unit = power_unit;
  t.mult = power_mult;
  t.map = power_map;
  t.strength = power_strength;
  t.mediator = power_mediator;
  t.sample = [nonempty](std::span<const Atom> pool, Rng& rng) {
    if (nonempty && pool.empty()) throw Error("no nonempty subset of the empty set");
    while (true) {
      std::vector<Atom> out;
      for (const auto& x : pool)
        if (rng.coin()) out.push_back(x);
      if (!nonempty || !out.empty()) return Atom::set(std::move(out));
    }
  };
  t.corners = [nonempty](std::span<const Atom> pool) { return subset_corners(pool, !nonempty); };
  return t;
}

// ------------------------------------------------------------ distributions

Atom dist_unit(const Atom& x) { return Atom::dist({{x, Rational(1)}}); }

Atom dist_mult(const Atom& xi) {
  require_kind(xi, Atom::Kind::dist, "a distribution of distributions");
  std::vector<std::pair<Atom, Rational>> out;
  for (std::size_t i = 0; i < xi.members().size(); ++i) {
    const Atom& nu = xi.members()[i];
    require_kind(nu, Atom::Kind::dist, "a distribution");
    for (std::size_t j = 0; j < nu.members().size(); ++j)
      out.emplace_back(nu.members()[j], xi.weights()[i] * nu.weights()[j]);
  }
  return Atom::dist(std::move(out));
}

Atom dist_map(const ValueMap& f, const Atom& nu) {
  require_kind(nu, Atom::Kind::dist, "a distribution");
  std::vector<std::pair<Atom, Rational>> out;
  for (std::size_t i = 0; i < nu.members().size(); ++i)
    out.emplace_back(f(nu.members()[i]), nu.weights()[i]);
  return Atom::dist(std::move(out));
}

Atom dist_strength(const Atom& a, const Atom& nu) {
  return dist_map([&](const Atom& y) { return Atom::pair(a, y); }, nu);
}

Atom dist_mediator(const Atom& nu, const Atom& xi) {
  require_kind(nu, Atom::Kind::dist, "a distribution");
  require_kind(xi, Atom::Kind::dist, "a distribution");
  std::vector<std::pair<Atom, Rational>> out;
  for (std::size_t i = 0; i < nu.members().size(); ++i)
    for (std::size_t j = 0; j < xi.members().size(); ++j)
      out.emplace_back(Atom::pair(nu.members()[i], xi.members()[j]),
                       nu.weights()[i] * xi.weights()[j]);
  return Atom::dist(std::move(out));
}

// Splits `total` into `parts` positive integers.
std::vector<std::uint64_t> composition(std::uint64_t total, std::size_t parts, Rng& rng) {
  std::vector<std::uint64_t> cuts;
  // choose parts-1 distinct cut points in [1, total-1]
  std::vector<std::uint64_t> candidates(total - 1);
  std::iota(candidates.begin(), candidates.end(), 1);
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    auto k = rng.below(candidates.size());
    cuts.push_back(candidates[k]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  std::uint64_t prev = 0;
  for (auto c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

constexpr std::uint64_t kMaxDenominator = 12;

Atom sample_dist(std::span<const Atom> pool, Rng& rng, DistMode mode) {
  if (pool.empty()) {
    if (mode == DistMode::subprobability) return Atom::dist({});
    throw Error("no probability distribution on the empty set");
  }
  std::size_t support = rng.between(1, std::min<std::size_t>(3, pool.size()));
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Atom> chosen;
  for (std::size_t i = 0; i < support; ++i) {
    auto k = rng.below(idx.size());
    chosen.push_back(pool[idx[k]]);
    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::uint64_t den = rng.between(support, kMaxDenominator);
  std::uint64_t total = den;
  if (mode == DistMode::subprobability) total = rng.between(support, den);
  auto parts = composition(total, support, rng);
  std::vector<std::pair<Atom, Rational>> w;
  for (std::size_t i = 0; i < support; ++i)
    w.emplace_back(chosen[i], Rational(BigInt(parts[i]), BigInt(den)));
  return Atom::dist(std::move(w));
}

std::vector<Atom> dist_corners(std::span<const Atom> pool, DistMode mode) {
  std::vector<Atom> out;
  if (mode == DistMode::subprobability) out.push_back(Atom::dist({}));
  if (pool.empty()) return out;
  out.push_back(dist_unit(pool.front()));
  out.push_back(dist_unit(pool.back()));
  std::vector<std::pair<Atom, Rational>> uniform;
  std::size_t n = std::min<std::size_t>(pool.size(), kMaxDenominator);
  for (std::size_t i = 0; i < n; ++i) uniform.emplace_back(pool[i], Rational(1, n));
  out.push_back(Atom::dist(std::move(uniform)));
  if (mode == DistMode::subprobability) {
    out.push_back(Atom::dist({{pool.front(), Rational(1, 2)}}));
  }
  return out;
}

}  // namespace

MonadInstance powerset_monad() { return make_powerset(false); }
MonadInstance nonempty_powerset_monad() { return make_powerset(true); }

std::string to_string(DistMode mode) {
  return mode == DistMode::probability ? "probability" : "subprobability";
}

DistMode parse_dist_mode(std::string_view text) {
  if (text == "probability") return DistMode::probability;
  if (text == "subprobability") return DistMode::subprobability;
  throw Error("unknown distribution mode '" + std::string(text) + "'");
}

MonadInstance dist_monad(DistMode mode) {
  MonadInstance t;
  t.name = mode == DistMode::probability ? "dist" : "subdist";
  t.family = MonadFamily::distribution;
  t.enumerable = false;
  t.apply_size = [](std::size_t) -> std::optional<std::size_t> { return std::nullopt; };
  t.is_element = [mode](const Atom& v, const FinSet& carrier) {
    if (v.kind() != Atom::Kind::dist) return false;
    for (const auto& x : v.members())
      if (!carrier.contains(x)) return false;
    Rational m = v.mass();
    return mode == DistMode::probability ? m == 1 : m <= 1;
  };
  t.unit = dist_unit;
  t.mult = dist_mult;
  t.map = dist_map;
  t.strength = dist_strength;
  t.mediator = dist_mediator;
  t.sample = [mode](std::span<const Atom> pool, Rng& rng) { return sample_dist(pool, rng, mode); };
  t.corners = [mode](std::span<const Atom> pool) { return dist_corners(pool, mode); };
  return t;
}

MonadInstance identity_monad() {
  MonadInstance t;
  t.name = "identity";
  t.family = MonadFamily::identity;
  t.enumerable = true;
  t.apply = [](const FinSet& a) { return a; };
  t.apply_size = [](std::size_t n) -> std::optional<std::size_t> { return n; };
  t.is_element = [](const Atom& v, const FinSet& carrier) { return carrier.contains(v); };
  t.unit = [](const Atom& x) { return x; };
  t.mult = [](const Atom& x) { return x; };
  t.map = [](const ValueMap& f, const Atom& x) { return f(x); };
  t.strength = [](const Atom& a, const Atom& b) { return Atom::pair(a, b); };
  t.mediator = [](const Atom& a, const Atom& b) { return Atom::pair(a, b); };
  t.sample = [](std::span<const Atom> pool, Rng& rng) {
    if (pool.empty()) throw Error("identity monad: empty pool");
    return pool[rng.below(pool.size())];
  };
  t.corners = [](std::span<const Atom> pool) {
    return pool.empty() ? std::vector<Atom>{} : std::vector<Atom>{pool.front()};
  };
  return t;
}

MonadInstance monad_by_name(std::string_view name) {
  if (name == "powerset") return powerset_monad();
  if (name == "nonempty-powerset") return nonempty_powerset_monad();
  if (name == "dist") return dist_monad(DistMode::probability);
  if (name == "subdist") return dist_monad(DistMode::subprobability);
  if (name == "identity") return identity_monad();
  throw Error("unknown monad '" + std::string(name) +
              "' (expected powerset, nonempty-powerset, dist, subdist or identity)");
}

// ------------------------------------------------------------ FinSet views

namespace {

void require_enumerable(const MonadInstance& t) {
  if (!t.enumerable) throw Error("monad '" + t.name + "' is not enumerable");
}

}  // namespace

FinFun map_fun(const MonadInstance& t, const FinFun& f) {
  require_enumerable(t);
  return FinFun::from(t.apply(f.dom()), t.apply(f.cod()), [&](const Atom& v) {
    return t.map([&](const Atom& x) { return f(x); }, v);
  });
}

FinFun unit_fun(const MonadInstance& t, const FinSet& a) {
  require_enumerable(t);
  return FinFun::from(a, t.apply(a), t.unit);
}

FinFun mult_fun(const MonadInstance& t, const FinSet& a) {
  require_enumerable(t);
  FinSet ta = t.apply(a);
  return FinFun::from(t.apply(ta), ta, t.mult);
}

FinFun strength_fun(const MonadInstance& t, const FinSet& a, const FinSet& b) {
  require_enumerable(t);
  return FinFun::from(product_set(a, t.apply(b)), t.apply(product_set(a, b)),
                      [&](const Atom& p) { return t.strength(p.first(), p.second()); });
}

FinFun mediator_fun(const MonadInstance& t, const FinSet& a, const FinSet& b) {
  require_enumerable(t);
  if (!t.has_mediator()) throw Error("monad '" + t.name + "' has no mediator");
  return FinFun::from(product_set(t.apply(a), t.apply(b)), t.apply(product_set(a, b)),
                      [&](const Atom& p) { return t.mediator(p.first(), p.second()); });
}

// ------------------------------------------------------------ RatDist

RatDist::RatDist(FinSet carrier, std::map<Atom, Rational> weights, DistMode mode)
    : carrier_(std::move(carrier)), mode_(mode) {
  Rational total = 0;
  for (auto& [x, w] : weights) {
    if (!carrier_.contains(x)) throw Error("distribution weight on " + x.str() + " outside carrier");
    if (w < 0) throw Error("negative weight on " + x.str());
    if (w == 0) continue;
    total += w;
    weights_.emplace(x, w);
  }
  if (mode_ == DistMode::probability && total != 1) {
    throw Error("probability distribution has total mass " + format_rational(total));
  }
  if (mode_ == DistMode::subprobability && total > 1) {
    throw Error("subprobability distribution has total mass " + format_rational(total));
  }
}

RatDist RatDist::dirac(const FinSet& carrier, const Atom& x, DistMode mode) {
  return RatDist(carrier, {{x, Rational(1)}}, mode);
}

RatDist RatDist::uniform(const FinSet& carrier, DistMode mode) {
  std::map<Atom, Rational> w;
  for (const auto& x : carrier) w.emplace(x, Rational(1, carrier.size()));
  return RatDist(carrier, std::move(w), mode);
}

RatDist RatDist::zero(const FinSet& carrier) {
  return RatDist(carrier, {}, DistMode::subprobability);
}

RatDist RatDist::from_atom(const Atom& value, const FinSet& carrier, DistMode mode) {
  require_kind(value, Atom::Kind::dist, "a distribution");
  std::map<Atom, Rational> w;
  for (std::size_t i = 0; i < value.members().size(); ++i)
    w.emplace(value.members()[i], value.weights()[i]);
  return RatDist(carrier, std::move(w), mode);
}

Rational RatDist::weight(const Atom& x) const {
  auto it = weights_.find(x);
  return it == weights_.end() ? Rational(0) : it->second;
}

Rational RatDist::mass() const {
  Rational total = 0;
  for (const auto& [x, w] : weights_) total += w;
  return total;
}

Rational RatDist::measure(std::span<const Atom> subset) const {
  Rational total = 0;
  for (const auto& x : subset) total += weight(x);
  return total;
}

Atom RatDist::to_atom() const {
  return Atom::dist(std::vector<std::pair<Atom, Rational>>(weights_.begin(), weights_.end()));
}

}  // namespace monarel
