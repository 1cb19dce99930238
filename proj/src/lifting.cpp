#include "monarel/lifting.hpp"

#include <algorithm>
#include <numeric>

#include "maxflow.hpp"
#include "monarel/error.hpp"

namespace monarel {

namespace {

Atom first_of(const Atom& p) { return p.first(); }
Atom second_of(const Atom& p) { return p.second(); }

constexpr std::size_t kEnumerationLimit = std::size_t{1} << 16;

bool egli_milner(std::span<const Atom> b1, std::span<const Atom> b2, const Rel& s) {
  for (const auto& x : b1) {
    if (std::none_of(b2.begin(), b2.end(), [&](const Atom& y) { return s.contains(x, y); }))
      return false;
  }
  for (const auto& y : b2) {
    if (std::none_of(b1.begin(), b1.end(), [&](const Atom& x) { return s.contains(x, y); }))
      return false;
  }
  return true;
}

// Weights of a distribution atom, indexed by carrier position.
std::vector<Rational> weights_on(const Atom& nu, const FinSet& carrier) {
  std::vector<Rational> w(carrier.size(), Rational(0));
  for (std::size_t i = 0; i < nu.members().size(); ++i) {
    auto k = carrier.index_of(nu.members()[i]);
    if (!k) throw Error("distribution puts mass on " + nu.members()[i].str() + " outside " +
                        carrier.str());
    w[*k] = nu.weights()[i];
  }
  return w;
}

BigInt lcm_of_denominators(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  BigInt l = 1;
  for (const auto* v : {&a, &b}) {
    for (const auto& r : *v) {
      BigInt d = boost::multiprecision::denominator(r);
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
  }
  return l;
}

BigInt scaled(const Rational& r, const BigInt& factor) {
  Rational x = r * Rational(factor);
  return boost::multiprecision::numerator(x);  // exact: factor clears the denominator
}

struct CouplingCore {
  bool member = false;
  bool mass_mismatch = false;
  std::vector<std::pair<Atom, Rational>> witness;  // over pair atoms
  std::vector<Atom> violated;
  Rational lhs = 0;
  Rational rhs = 0;
};

CouplingCore coupling_core(const std::vector<Rational>& w1, const std::vector<Rational>& w2,
                           const Rel& s, bool want_witness) {
  CouplingCore out;
  Rational m1 = std::accumulate(w1.begin(), w1.end(), Rational(0));
  Rational m2 = std::accumulate(w2.begin(), w2.end(), Rational(0));
  if (m1 != m2) {
    out.mass_mismatch = true;
    return out;
  }
  const FinSet& left = s.left();
  const FinSet& right = s.right();
  const std::size_t n1 = left.size();
  const std::size_t n2 = right.size();
  const std::size_t source = n1 + n2;
  const std::size_t sink = source + 1;
  BigInt factor = lcm_of_denominators(w1, w2);
  BigInt total = scaled(m1, factor);

  detail::MaxFlow flow(n1 + n2 + 2);
  for (std::size_t i = 0; i < n1; ++i) flow.add_edge(source, i, scaled(w1[i], factor));
  for (std::size_t j = 0; j < n2; ++j) flow.add_edge(n1 + j, sink, scaled(w2[j], factor));
  std::vector<std::pair<Atom, std::size_t>> pair_edges;
  for (const auto& p : s.carrier()) {
    std::size_t i = *left.index_of(p.first());
    std::size_t j = *right.index_of(p.second());
    // total + 1 never saturates: the source side carries at most `total`
    pair_edges.emplace_back(p, flow.add_edge(i, n1 + j, total + 1));
  }
  BigInt value = flow.run(source, sink);
  if (value == total) {
    out.member = true;
    if (want_witness) {
      for (const auto& [p, e] : pair_edges) {
        if (flow.flow_on(e) != 0) out.witness.emplace_back(p, Rational(flow.flow_on(e), factor));
      }
    }
    return out;
  }
  auto side = flow.reachable(source);
  std::vector<Atom> image;
  for (std::size_t i = 0; i < n1; ++i) {
    if (!side[i]) continue;
    out.violated.push_back(left[i]);
    out.lhs += w1[i];
    for (const auto& y : s.successors(left[i])) image.push_back(y);
  }
  for (const auto& y : FinSet::from_range(std::move(image))) out.rhs += w2[*right.index_of(y)];
  return out;
}

bool inhabited(const MonadInstance& t, std::span<const Atom> pool) {
  return !pool.empty() || !t.corners(pool).empty();
}

}  // namespace

// ------------------------------------------------------------ enumeration

Rel lift_enumerate(const MonadInstance& t, const Rel& s) {
  if (!t.enumerable) throw Error("lift_enumerate: monad '" + t.name + "' is not enumerable");
  FinSet ts = t.apply(s.carrier());
  std::vector<std::pair<Atom, Atom>> pairs;
  pairs.reserve(ts.size());
  for (const auto& r : ts) pairs.emplace_back(t.map(first_of, r), t.map(second_of, r));
  return Rel(t.apply(s.left()), t.apply(s.right()), std::move(pairs));
}

bool lift_member_powerset(const FinSet& b1, const FinSet& b2, const Rel& s) {
  if (!b1.is_subset_of(s.left())) throw Error(b1.str() + " is not a subset of " + s.left().str());
  if (!b2.is_subset_of(s.right())) throw Error(b2.str() + " is not a subset of " + s.right().str());
  return egli_milner(b1.elements(), b2.elements(), s);
}

// ------------------------------------------------------------ couplings

CouplingResult lift_member_dist(const RatDist& nu1, const RatDist& nu2, const Rel& s,
                                bool want_witness) {
  if (nu1.mode() != nu2.mode()) throw Error("distributions have different modes");
  if (nu1.carrier() != s.left()) throw Error("first distribution is not over the left carrier");
  if (nu2.carrier() != s.right()) throw Error("second distribution is not over the right carrier");
  auto core = coupling_core(weights_on(nu1.to_atom(), s.left()), weights_on(nu2.to_atom(), s.right()),
                            s, want_witness);
  CouplingResult out;
  out.member = core.member;
  out.mass_mismatch = core.mass_mismatch;
  if (core.member && want_witness) {
    std::map<Atom, Rational> w(core.witness.begin(), core.witness.end());
    out.witness = RatDist(s.carrier(), std::move(w), nu1.mode());
  }
  if (!core.member && !core.mass_mismatch) {
    out.violated_subset = std::move(core.violated);
    out.violated_lhs = core.lhs;
    out.violated_rhs = core.rhs;
  }
  return out;
}

std::pair<RatDist, RatDist> coupling_marginals(const RatDist& coupling, const Rel& s) {
  std::map<Atom, Rational> m1;
  std::map<Atom, Rational> m2;
  for (const auto& [p, w] : coupling.weights()) {
    m1[p.first()] += w;
    m2[p.second()] += w;
  }
  return {RatDist(s.left(), std::move(m1), coupling.mode()),
          RatDist(s.right(), std::move(m2), coupling.mode())};
}

// ------------------------------------------------------------ saturation

Saturation saturate(const Rel& s) {
  const std::size_t n1 = s.left().size();
  const std::size_t n = n1 + s.right().size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : s.carrier()) {
    std::size_t a = find(*s.left().index_of(p.first()));
    std::size_t b = find(n1 + *s.right().index_of(p.second()));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // classes ordered by their smallest member index (left before right)
  std::vector<std::ptrdiff_t> slot(n, -1);
  std::vector<Saturation::Class> classes;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(classes.size());
      classes.emplace_back();
    }
    auto& cls = classes[static_cast<std::size_t>(slot[r])];
    if (x < n1) cls.left.push_back(s.left()[x]);
    else cls.right.push_back(s.right()[x - n1]);
  }
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& cls : classes)
    for (const auto& a : cls.left)
      for (const auto& b : cls.right) pairs.emplace_back(a, b);
  Rel saturated(s.left(), s.right(), std::move(pairs));
  return Saturation{std::move(classes), std::move(saturated)};
}

bool is_saturated(const Rel& s) { return saturate(s).saturated == s; }

bool lift_member_dist_saturated(const RatDist& nu1, const RatDist& nu2, const Rel& s) {
  if (nu1.mode() != nu2.mode()) throw Error("distributions have different modes");
  if (nu1.carrier() != s.left() || nu2.carrier() != s.right())
    throw Error("distribution carriers do not match the relation");
  Saturation sat = saturate(s);
  if (sat.saturated != s) throw Error("relation is not saturated");
  for (const auto& cls : sat.classes) {
    if (nu1.measure(cls.left) != nu2.measure(cls.right)) return false;
  }
  return true;
}

RatDist converse_coupling(const RatDist& nu1, const RatDist& nu2, const Rel& s) {
  if (!lift_member_dist_saturated(nu1, nu2, s))
    throw Error("class masses differ; no coupling exists");
  Saturation sat = saturate(s);
  std::map<Atom, Rational> w;
  for (const auto& cls : sat.classes) {
    Rational d = nu1.measure(cls.left);
    if (d == 0) continue;
    for (const auto& x1 : cls.left) {
      for (const auto& x2 : cls.right) {
        Rational v = nu1.weight(x1) * nu2.weight(x2) / d;
        if (v != 0) w.emplace(Atom::pair(x1, x2), v);
      }
    }
  }
  return RatDist(s.carrier(), std::move(w), nu1.mode());
}

// ------------------------------------------------------------ generic membership

bool lift_member(const MonadInstance& t, const Atom& v1, const Atom& v2, const Rel& s) {
  switch (t.family) {
    case MonadFamily::powerset:
    case MonadFamily::nonempty_powerset:
      if (!t.is_element(v1, s.left()) || !t.is_element(v2, s.right())) return false;
      return egli_milner(v1.members(), v2.members(), s);
    case MonadFamily::distribution:
      if (!t.is_element(v1, s.left()) || !t.is_element(v2, s.right())) return false;
      return coupling_core(weights_on(v1, s.left()), weights_on(v2, s.right()), s, false).member;
    default:
      if (!t.enumerable) throw Error("no membership procedure for monad '" + t.name + "'");
      return lift_enumerate(t, s).contains(v1, v2);
  }
}

LiftedRel::LiftedRel(MonadInstance monad, Rel base)
    : monad_(std::move(monad)), base_(std::move(base)) {
  if (monad_.enumerable) {
    auto n = monad_.apply_size(base_.size());
    if (n && *n <= kEnumerationLimit) extension_ = lift_enumerate(monad_, base_);
  }
}

bool LiftedRel::contains(const Atom& v1, const Atom& v2) const {
  switch (monad_.family) {
    case MonadFamily::powerset:
    case MonadFamily::nonempty_powerset:
    case MonadFamily::distribution:
      return lift_member(monad_, v1, v2, base_);
    default:
      if (!extension_) throw Error("lifted relation too large to enumerate");
      return extension_->contains(v1, v2);
  }
}

Rel product_rel(const Rel& s, const Rel& s2) {
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& p : s.carrier())
    for (const auto& q : s2.carrier())
      pairs.emplace_back(Atom::pair(p.first(), q.first()), Atom::pair(p.second(), q.second()));
  return Rel(product_set(s.left(), s2.left()), product_set(s.right(), s2.right()),
             std::move(pairs));
}

std::pair<Atom, Atom> sample_lifted_pair(const MonadInstance& t, const Rel& s, Rng& rng) {
  Atom r = t.sample(s.carrier().elements(), rng);
  return {t.map(first_of, r), t.map(second_of, r)};
}

// ------------------------------------------------------------ lifted structure

namespace {

// Members of T^S to check: all of them when enumerable and small, else samples.
std::vector<std::pair<Atom, Atom>> lifted_members(const MonadInstance& t, const Rel& s,
                                                  std::size_t samples, Rng& rng) {
  if (t.enumerable) {
    auto n = t.apply_size(s.size());
    if (n && *n <= kEnumerationLimit) return lift_enumerate(t, s).pairs();
  }
  std::vector<std::pair<Atom, Atom>> out;
  if (!inhabited(t, s.carrier().elements())) return out;
  for (const auto& r : t.corners(s.carrier().elements()))
    out.emplace_back(t.map(first_of, r), t.map(second_of, r));
  if (s.carrier().empty()) return out;
  for (std::size_t i = 0; i < samples; ++i) out.push_back(sample_lifted_pair(t, s, rng));
  return out;
}

std::string show_pair(const Atom& a, const Atom& b) { return "(" + a.str() + ", " + b.str() + ")"; }

}  // namespace

LiftedMorphism lifted_morphism(const MonadInstance& t, const Rel& s, const Rel& s2,
                               const FinFun& h1, const FinFun& h2, std::size_t samples,
                               std::uint64_t seed) {
  if (h1.dom() != s.left() || h1.cod() != s2.left() || h2.dom() != s.right() ||
      h2.cod() != s2.right()) {
    throw Error("lifted_morphism: maps do not match the relations' carriers");
  }
  for (const auto& p : s.carrier()) {
    if (!s2.contains(h1(p.first()), h2(p.second()))) {
      throw Error("lifted_morphism: pair " + p.str() + " is sent outside the target relation");
    }
  }
  auto apply1 = [&](const Atom& v) { return t.map([&](const Atom& x) { return h1(x); }, v); };
  auto apply2 = [&](const Atom& v) { return t.map([&](const Atom& x) { return h2(x); }, v); };

  LiftedMorphism out;
  LiftedRel target(t, s2);
  Rng rng(seed);
  auto members = lifted_members(t, s, samples, rng);
  std::vector<Atom> images;
  for (const auto& [v1, v2] : members) {
    ++out.check.cases;
    Atom w1 = apply1(v1);
    Atom w2 = apply2(v2);
    if (!target.contains(w1, w2)) {
      out.check.ok = false;
      out.check.counterexample = show_pair(v1, v2) + " maps to " + show_pair(w1, w2);
      return out;
    }
    images.push_back(Atom::pair(w1, w2));
  }
  if (t.enumerable) {
    LiftedRel source(t, s);
    if (source.extension() && target.extension()) {
      out.induced = FinFun(source.extension()->carrier(), target.extension()->carrier(),
                           std::move(images));
    }
  }
  return out;
}

LiftCheck lifted_unit_check(const MonadInstance& t, const Rel& s) {
  LiftCheck out;
  LiftedRel lifted(t, s);
  for (const auto& p : s.carrier()) {
    ++out.cases;
    Atom u1 = t.unit(p.first());
    Atom u2 = t.unit(p.second());
    if (!lifted.contains(u1, u2)) {
      out.ok = false;
      out.counterexample = "unit of " + p.str() + " gives " + show_pair(u1, u2);
      return out;
    }
  }
  return out;
}

LiftCheck lifted_mult_check(const MonadInstance& t, const Rel& s, std::size_t samples,
                            std::uint64_t seed) {
  LiftCheck out;
  LiftedRel lifted(t, s);
  Rng rng(seed);
  std::vector<std::pair<Atom, Atom>> outer;
  if (lifted.extension()) {
    // T^(T^S) over the explicit relation T^S
    auto n = t.apply_size(lifted.extension()->size());
    if (n && *n <= kEnumerationLimit) outer = lift_enumerate(t, *lifted.extension()).pairs();
  }
  if (outer.empty()) {
    auto inner = lifted_members(t, s, samples, rng);
    std::vector<Atom> pool;
    for (const auto& [a, b] : inner) pool.push_back(Atom::pair(a, b));
    FinSet distinct = FinSet::from_range(std::move(pool));
    pool.assign(distinct.begin(), distinct.end());
    if (inhabited(t, pool)) {
      auto project = [&](const Atom& xi) {
        outer.emplace_back(t.map(first_of, xi), t.map(second_of, xi));
      };
      for (const auto& xi : t.corners(pool)) project(xi);
      if (!pool.empty())
        for (std::size_t i = 0; i < samples; ++i) project(t.sample(pool, rng));
    }
  }
  for (const auto& [x1, x2] : outer) {
    ++out.cases;
    Atom m1 = t.mult(x1);
    Atom m2 = t.mult(x2);
    if (!lifted.contains(m1, m2)) {
      out.ok = false;
      out.counterexample = show_pair(x1, x2) + " flattens to " + show_pair(m1, m2);
      return out;
    }
  }
  return out;
}

LiftCheck lifted_strength_check(const MonadInstance& t, const Rel& s, const Rel& s2,
                                std::size_t samples, std::uint64_t seed) {
  LiftCheck out;
  Rng rng(seed);
  LiftedRel target(t, product_rel(s, s2));
  auto members = lifted_members(t, s2, samples, rng);
  for (const auto& p : s.carrier()) {
    for (const auto& [b1, b2] : members) {
      ++out.cases;
      Atom r1 = t.strength(p.first(), b1);
      Atom r2 = t.strength(p.second(), b2);
      if (!target.contains(r1, r2)) {
        out.ok = false;
        out.counterexample = "strength of " + p.str() + " with " + show_pair(b1, b2) +
                             " gives " + show_pair(r1, r2);
        return out;
      }
    }
  }
  return out;
}

}  // namespace monarel
