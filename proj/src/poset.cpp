#include "monarel/poset.hpp"

#include <algorithm>

#include "monarel/error.hpp"

namespace monarel {

// ------------------------------------------------------------ posets

FinPoset::FinPoset(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq)
    : FinPoset(std::move(carrier), leq, true) {}

FinPoset FinPoset::trusted(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq) {
  return FinPoset(std::move(carrier), leq, false);
}

FinPoset::FinPoset(FinSet carrier, const std::vector<std::pair<Atom, Atom>>& leq, bool validate)
    : carrier_(std::move(carrier)), leq_(carrier_.size() * carrier_.size(), false) {
  const std::size_t n = carrier_.size();
  for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = true;
  for (const auto& [x, y] : leq) {
    auto i = carrier_.index_of(x);
    auto j = carrier_.index_of(y);
    if (!i || !j) throw Error("order pair (" + x.str() + ", " + y.str() + ") leaves the carrier");
    leq_[*i * n + *j] = true;
  }
  if (!validate) return;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq_[i * n + j] && leq_[j * n + i])
        throw Error("order is not antisymmetric: " + carrier_[i].str() + " and " + carrier_[j].str());
      for (std::size_t k = 0; k < n; ++k)
        if (leq_[i * n + j] && leq_[j * n + k] && !leq_[i * n + k])
          throw Error("order is not transitive: " + carrier_[i].str() + " <= " + carrier_[j].str() +
                      " <= " + carrier_[k].str());
    }
  }
}

FinPoset FinPoset::discrete(FinSet carrier) { return FinPoset(std::move(carrier), {}); }

FinPoset FinPoset::chain(FinSet carrier) {
  std::vector<std::pair<Atom, Atom>> leq;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = i + 1; j < carrier.size(); ++j) leq.emplace_back(carrier[i], carrier[j]);
  return FinPoset(std::move(carrier), leq);
}

bool FinPoset::leq(const Atom& x, const Atom& y) const {
  auto i = carrier_.index_of(x);
  auto j = carrier_.index_of(y);
  if (!i || !j) throw Error("element outside the poset: " + (i ? y : x).str());
  return leq_[*i * carrier_.size() + *j];
}

Rel FinPoset::relation() const {
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& x : carrier_)
    for (const auto& y : carrier_)
      if (leq(x, y)) pairs.emplace_back(x, y);
  return Rel(carrier_, carrier_, std::move(pairs));
}

std::vector<std::pair<Atom, Atom>> FinPoset::strict_pairs() const {
  std::vector<std::pair<Atom, Atom>> out;
  for (const auto& x : carrier_)
    for (const auto& y : carrier_)
      if (x != y && leq(x, y)) out.emplace_back(x, y);
  return out;
}

std::string FinPoset::str() const {
  std::string out = carrier_.str() + " with ";
  auto strict = strict_pairs();
  if (strict.empty()) return out + "no strict pairs";
  for (std::size_t i = 0; i < strict.size(); ++i) {
    if (i) out += ", ";
    out += strict[i].first.str() + "<" + strict[i].second.str();
  }
  return out;
}

std::vector<FinPoset> all_posets(const FinSet& carrier) {
  if (carrier.size() > 4) throw Error("all_posets: carrier too large");
  std::vector<std::pair<Atom, Atom>> candidates;
  for (const auto& x : carrier)
    for (const auto& y : carrier)
      if (x != y) candidates.emplace_back(x, y);
  std::vector<FinPoset> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << candidates.size()); ++mask) {
    std::vector<std::pair<Atom, Atom>> leq;
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if (mask >> k & 1U) leq.push_back(candidates[k]);
    try {
      out.emplace_back(carrier, leq);
    } catch (const Error&) {
    }
  }
  return out;
}

FinPoset product_poset(const FinPoset& a, const FinPoset& b) {
  FinSet carrier = product_set(a.carrier(), b.carrier());
  std::vector<std::pair<Atom, Atom>> leq;
  for (const auto& p : carrier)
    for (const auto& q : carrier)
      if (a.leq(p.first(), q.first()) && b.leq(p.second(), q.second())) leq.emplace_back(p, q);
  return FinPoset::trusted(std::move(carrier), leq);
}

bool is_monotone(const FinFun& f, const FinPoset& dom, const FinPoset& cod) {
  if (f.dom() != dom.carrier() || f.cod() != cod.carrier())
    throw Error("map does not match the posets");
  for (const auto& x : dom.carrier())
    for (const auto& y : dom.carrier())
      if (dom.leq(x, y) && !cod.leq(f(x), f(y))) return false;
  return true;
}

namespace {

template <class Leq>
std::vector<Atom> minimal_by(const std::vector<Atom>& subset, Leq&& leq) {
  std::vector<Atom> out;
  for (const auto& x : subset) {
    bool minimal = std::none_of(subset.begin(), subset.end(),
                                [&](const Atom& y) { return y != x && leq(y, x); });
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Leq>
bool smyth_by(const Atom& e, const Atom& f, Leq&& leq) {
  for (const auto& y : f.members()) {
    bool covered = false;
    for (const auto& x : e.members())
      if (leq(x, y)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

/// Nonempty antichains of a carrier under leq, as set atoms.
template <class Leq>
std::vector<Atom> antichains_by(std::span<const Atom> carrier, Leq&& leq) {
  if (carrier.size() > 20) throw Error("refusing to enumerate antichains of a set of size " +
                                       std::to_string(carrier.size()));
  std::vector<Atom> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << carrier.size()); ++mask) {
    std::vector<Atom> xs;
    bool ok = true;
    for (std::size_t i = 0; i < carrier.size() && ok; ++i) {
      if (!(mask >> i & 1U)) continue;
      for (const auto& y : xs)
        if (leq(y, carrier[i]) || leq(carrier[i], y)) {
          ok = false;
          break;
        }
      xs.push_back(carrier[i]);
    }
    if (ok) out.push_back(Atom::set(std::move(xs)));
  }
  return out;
}

}  // namespace

std::vector<Atom> minimize(const FinPoset& p, const std::vector<Atom>& subset) {
  return minimal_by(subset, [&](const Atom& x, const Atom& y) { return p.leq(x, y); });
}

bool is_antichain(const FinPoset& p, std::span<const Atom> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (i != j && p.leq(xs[i], xs[j])) return false;
  return true;
}

// ------------------------------------------------------------ upper sets

Atom upper_set(const FinPoset& p, const std::vector<Atom>& generators) {
  if (generators.empty()) throw Error("upper sets need at least one generator");
  return Atom::set(minimize(p, generators));
}

bool upper_contains(const FinPoset& p, const Atom& upper, const Atom& x) {
  for (const auto& e : upper.members())
    if (p.leq(e, x)) return true;
  return false;
}

bool smyth_leq(const FinPoset& p, const Atom& e, const Atom& f) {
  return smyth_by(e, f, [&](const Atom& x, const Atom& y) { return p.leq(x, y); });
}

FinPoset upper_poset(const FinPoset& a) {
  FinSet carrier(antichains_by(a.carrier().elements(),
                               [&](const Atom& x, const Atom& y) { return a.leq(x, y); }));
  std::vector<std::pair<Atom, Atom>> leq;
  for (const auto& e : carrier)
    for (const auto& f : carrier)
      if (e != f && smyth_leq(a, e, f)) leq.emplace_back(e, f);
  return FinPoset::trusted(std::move(carrier), leq);
}

Atom upper_unit(const Atom& x) { return Atom::set({x}); }

Atom upper_mult(const FinPoset& a, const Atom& x) {
  std::vector<Atom> all;
  for (const auto& e : x.members())
    for (const auto& y : e.members()) all.push_back(y);
  return upper_set(a, all);
}

Atom upper_map(const FinFun& f, const FinPoset& cod, const Atom& e) {
  std::vector<Atom> image;
  for (const auto& x : e.members()) image.push_back(f(x));
  return upper_set(cod, image);
}

Atom upper_mediator(const Atom& e, const Atom& f) {
  std::vector<Atom> out;
  for (const auto& x : e.members())
    for (const auto& y : f.members()) out.push_back(Atom::pair(x, y));
  return Atom::set(std::move(out));
}

// ------------------------------------------------------------ atom orders

AtomOrder::AtomOrder(std::vector<std::pair<std::string, std::string>> strict_leaves) {
  for (auto& p : strict_leaves) strict_.insert(std::move(p));
  // close transitively so callers may list covers only
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [x, y] : std::set(strict_))
      for (const auto& [y2, z] : std::set(strict_))
        if (y == y2 && strict_.insert({x, z}).second) grew = true;
  }
  for (const auto& [x, y] : strict_)
    if (x == y || strict_.count({y, x})) throw Error("leaf order has a cycle through " + x);
}

AtomOrder AtomOrder::standard() {
  return AtomOrder({{"a", "b"}, {"0", "1"}, {"1", "2"}, {"u", "w"}, {"v", "w"}});
}

bool AtomOrder::leq(const Atom& x, const Atom& y) const {
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Atom::Kind::leaf: return x == y || strict_.count({x.str(), y.str()}) != 0;
    case Atom::Kind::unit: return true;
    case Atom::Kind::pair: return leq(x.first(), y.first()) && leq(x.second(), y.second());
    case Atom::Kind::set:
      return smyth_by(x, y, [&](const Atom& a, const Atom& b) { return leq(a, b); });
    default: return x == y;
  }
}

FinPoset AtomOrder::on(const FinSet& carrier) const {
  std::vector<std::pair<Atom, Atom>> leq;
  for (const auto& x : carrier)
    for (const auto& y : carrier)
      if (x != y && this->leq(x, y)) leq.emplace_back(x, y);
  return FinPoset(carrier, leq);
}

MonadInstance upper_monad(const AtomOrder& order) {
  auto leq = [order](const Atom& x, const Atom& y) { return order.leq(x, y); };
  auto minimal = [leq](const std::vector<Atom>& xs) { return Atom::set(minimal_by(xs, leq)); };
  MonadInstance t;
  t.name = "upper";
  t.family = MonadFamily::upper_set;
  t.enumerable = true;
  t.order = leq;
  t.apply = [leq](const FinSet& a) { return FinSet::from_range(antichains_by(a.elements(), leq)); };
  t.apply_size = [](std::size_t n) -> std::optional<std::size_t> {
    if (n >= 63) return std::nullopt;
    return (std::size_t{1} << n) - 1;
  };
  t.is_element = [leq](const Atom& v, const FinSet& carrier) {
    if (!v.is_set() || v.members().empty()) return false;
    for (const auto& x : v.members()) {
      if (!carrier.contains(x)) return false;
      for (const auto& y : v.members())
        if (x != y && leq(x, y)) return false;
    }
    return true;
  };
  t.unit = upper_unit;
  t.mult = [minimal](const Atom& x) {
    std::vector<Atom> all;
    for (const auto& e : x.members())
      for (const auto& y : e.members()) all.push_back(y);
    return minimal(all);
  };
  t.map = [minimal](const ValueMap& f, const Atom& e) {
    std::vector<Atom> image;
    for (const auto& x : e.members()) image.push_back(f(x));
    return minimal(image);
  };
  t.strength = [](const Atom& a, const Atom& e) {
    std::vector<Atom> out;
    for (const auto& x : e.members()) out.push_back(Atom::pair(a, x));
    return Atom::set(std::move(out));
  };
  t.mediator = upper_mediator;
  t.sample = [minimal](std::span<const Atom> pool, Rng& rng) {
    if (pool.empty()) throw Error("upper monad: empty pool");
    std::vector<Atom> xs{pool[rng.below(pool.size())]};
    for (const auto& x : pool)
      if (rng.below(3) == 0) xs.push_back(x);
    return minimal(xs);
  };
  t.corners = [minimal](std::span<const Atom> pool) {
    std::vector<Atom> out;
    if (pool.empty()) return out;
    out.push_back(Atom::set({pool.front()}));
    out.push_back(Atom::set({pool.back()}));
    out.push_back(minimal(std::vector<Atom>(pool.begin(), pool.end())));
    return out;
  };
  return t;
}

// ------------------------------------------------------------ factorization

std::string to_string(OrdSystem system) {
  return system == OrdSystem::inherited ? "inherited" : "generated";
}

OrdSystem parse_ord_system(std::string_view text) {
  if (text == "inherited" || text == "epi-regmono") return OrdSystem::inherited;
  if (text == "generated" || text == "extremalepi-mono") return OrdSystem::generated;
  throw Error("unknown factorization system '" + std::string(text) +
              "' (expected inherited or generated)");
}

OrdFactorization factorize_ord(const FinFun& f, const FinPoset& dom, const FinPoset& cod,
                               OrdSystem system) {
  if (!is_monotone(f, dom, cod)) throw Error("map is not monotone");
  Factorization plain = factorize(f);
  const FinSet& image = plain.mid;
  std::vector<std::pair<Atom, Atom>> leq;
  if (system == OrdSystem::inherited) {
    for (const auto& x : image)
      for (const auto& y : image)
        if (x != y && cod.leq(x, y)) leq.emplace_back(x, y);
  } else {
    // transitive closure of the pushed-forward order; it sits inside the
    // codomain order, so it stays antisymmetric
    const std::size_t n = image.size();
    std::vector<bool> r(n * n, false);
    for (const auto& x : dom.carrier())
      for (const auto& y : dom.carrier())
        if (dom.leq(x, y)) r[*image.index_of(f(x)) * n + *image.index_of(f(y))] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (r[i * n + k] && r[k * n + j]) r[i * n + j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && r[i * n + j]) leq.emplace_back(image[i], image[j]);
  }
  return OrdFactorization{FinPoset::trusted(image, leq), plain.epi, plain.mono};
}

// ------------------------------------------------------------ ordered relations

OrderedRel inherited_order(const Rel& s, const FinPoset& a1, const FinPoset& a2) {
  if (s.left() != a1.carrier() || s.right() != a2.carrier())
    throw Error("relation does not match the posets");
  std::vector<std::pair<Atom, Atom>> leq;
  for (const auto& p : s.carrier())
    for (const auto& q : s.carrier())
      if (p != q && a1.leq(p.first(), q.first()) && a2.leq(p.second(), q.second()))
        leq.emplace_back(p, q);
  return OrderedRel{s, FinPoset(s.carrier(), leq)};
}

OrderedRel ordered_rel(const Rel& s, const FinPoset& a1, const FinPoset& a2, FinPoset order) {
  if (order.carrier() != s.carrier()) throw Error("order is not on the relation's pairs");
  OrderedRel full = inherited_order(s, a1, a2);
  for (const auto& [p, q] : order.strict_pairs())
    if (!full.order.leq(p, q))
      throw Error("order relates " + p.str() + " below " + q.str() + " outside the product order");
  return OrderedRel{s, std::move(order)};
}

std::vector<FinPoset> sub_orders(const Rel& s, const FinPoset& a1, const FinPoset& a2,
                                 std::size_t limit) {
  OrderedRel full = inherited_order(s, a1, a2);
  auto strict = full.order.strict_pairs();
  std::vector<FinPoset> out{full.order};
  if (!strict.empty() && out.size() < limit) out.push_back(FinPoset::discrete(s.carrier()));
  if (strict.size() > 12) {
    // too many to enumerate: single strict pairs only
    for (const auto& p : strict) {
      if (out.size() >= limit) break;
      out.push_back(FinPoset::trusted(s.carrier(), {p}));
    }
    return out;
  }
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << strict.size()) && out.size() < limit;
       ++mask) {
    std::vector<std::pair<Atom, Atom>> leq;
    for (std::size_t k = 0; k < strict.size(); ++k)
      if (mask >> k & 1U) leq.push_back(strict[k]);
    try {
      out.emplace_back(s.carrier(), leq);
    } catch (const Error&) {
    }
  }
  return out;
}

namespace {

Atom lift_pair(const Atom& q, const FinPoset& a1, const FinPoset& a2) {
  std::vector<Atom> xs;
  std::vector<Atom> ys;
  for (const auto& p : q.members()) {
    xs.push_back(p.first());
    ys.push_back(p.second());
  }
  return Atom::pair(upper_set(a1, xs), upper_set(a2, ys));
}

}  // namespace

Rel lifted_pairs(const OrderedRel& s, const FinPoset& a1, const FinPoset& a2) {
  if (s.order.carrier() != s.rel.carrier()) throw Error("order is not on the relation's pairs");
  auto leq = [&](const Atom& x, const Atom& y) { return s.order.leq(x, y); };
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& q : antichains_by(s.rel.carrier().elements(), leq)) {
    Atom p = lift_pair(q, a1, a2);
    pairs.emplace_back(p.first(), p.second());
  }
  return Rel(upper_poset(a1).carrier(), upper_poset(a2).carrier(), std::move(pairs));
}

OrderedRel lift_relation_ord(const OrderedRel& s, const FinPoset& a1, const FinPoset& a2,
                             OrdSystem system) {
  if (s.order.carrier() != s.rel.carrier()) throw Error("order is not on the relation's pairs");
  FinPoset ts = upper_poset(s.order);
  FinPoset ta1 = upper_poset(a1);
  FinPoset ta2 = upper_poset(a2);
  FinPoset target = product_poset(ta1, ta2);
  FinFun proj = FinFun::from(ts.carrier(), target.carrier(),
                             [&](const Atom& q) { return lift_pair(q, a1, a2); });
  OrdFactorization fac = factorize_ord(proj, ts, target, system);
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& p : fac.middle.carrier()) pairs.emplace_back(p.first(), p.second());
  return OrderedRel{Rel(ta1.carrier(), ta2.carrier(), std::move(pairs)), fac.middle};
}

OrderingSearch search_ordering_difference(std::size_t max_size, std::size_t suborder_limit) {
  OrderingSearch out;
  std::vector<FinPoset> left;
  std::vector<FinPoset> right;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (auto& p : all_posets(letters(n))) left.push_back(std::move(p));
    for (auto& p : all_posets(numerals(n))) right.push_back(std::move(p));
  }
  for (const auto& a1 : left) {
    for (const auto& a2 : right) {
      for (const auto& s : all_relations(a1.carrier(), a2.carrier())) {
        if (s.size() == 0) continue;
        OrderedRel base = inherited_order(s, a1, a2);
        OrderedRel lifted = lift_relation_ord(base, a1, a2, OrdSystem::inherited);
        for (const auto& order : sub_orders(s, a1, a2, suborder_limit)) {
          ++out.instances;
          OrderedRel sub{s, order};
          OrderedRel other = lift_relation_ord(sub, a1, a2, OrdSystem::generated);
          if (other.rel != lifted.rel) continue;
          ++out.same_pairs;
          if (out.witness) continue;
          for (const auto& x : lifted.order.carrier()) {
            for (const auto& y : lifted.order.carrier()) {
              bool l = lifted.order.leq(x, y);
              if (l == other.order.leq(x, y)) continue;
              out.witness = OrderingWitness{a1, a2, sub, x, y,
                                            l ? OrdSystem::inherited : OrdSystem::generated};
              break;
            }
            if (out.witness) break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace monarel
