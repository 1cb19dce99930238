#include "monarel/lawcheck.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "monarel/error.hpp"
#include "monarel/finset.hpp"

namespace monarel {

namespace {

// ------------------------------------------------------------ input spaces

struct Space {
  enum class Kind { base, unit, prod, t, fun };
  Kind kind = Kind::base;
  FinSet base;
  FinSet cod;  // fun only
  std::vector<Space> parts;
};

Space base(FinSet s) { return Space{Space::Kind::base, std::move(s), {}, {}}; }
Space prod(Space a, Space b) { return Space{Space::Kind::prod, {}, {}, {std::move(a), std::move(b)}}; }
Space tof(Space a) { return Space{Space::Kind::t, {}, {}, {std::move(a)}}; }
Space fun(FinSet dom, FinSet cod) { return Space{Space::Kind::fun, std::move(dom), std::move(cod), {}}; }

std::optional<std::size_t> mul(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a || !b) return std::nullopt;
  if (*a != 0 && *b > SIZE_MAX / *a) return std::nullopt;
  return *a * *b;
}

std::optional<std::size_t> power(std::size_t base, std::size_t exp) {
  std::optional<std::size_t> out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = mul(out, base);
  return out;
}

class Cases {
 public:
  Cases(const MonadInstance& t, Rng& rng) : t_(t), rng_(rng) {}

  std::optional<std::size_t> size(const Space& s) const {
    switch (s.kind) {
      case Space::Kind::base: return s.base.size();
      case Space::Kind::unit: return 1;
      case Space::Kind::prod: return mul(size(s.parts[0]), size(s.parts[1]));
      case Space::Kind::fun: return power(s.cod.size(), s.base.size());
      case Space::Kind::t: {
        if (!t_.enumerable) return std::nullopt;
        auto inner = size(s.parts[0]);
        if (!inner) return std::nullopt;
        return t_.apply_size(*inner);
      }
    }
    return std::nullopt;
  }

  std::vector<Atom> enumerate(const Space& s) const {
    switch (s.kind) {
      case Space::Kind::base: return {s.base.begin(), s.base.end()};
      case Space::Kind::unit: return {Atom::unit()};
      case Space::Kind::prod: {
        std::vector<Atom> out;
        auto left = enumerate(s.parts[0]);
        auto right = enumerate(s.parts[1]);
        for (const auto& x : left)
          for (const auto& y : right) out.push_back(Atom::pair(x, y));
        return out;
      }
      case Space::Kind::fun: {
        std::vector<Atom> out;
        for (const auto& f : all_functions(s.base, s.cod)) {
          std::vector<std::pair<Atom, Atom>> entries;
          for (std::size_t i = 0; i < f.dom().size(); ++i) entries.emplace_back(f.dom()[i], f.images()[i]);
          Atom g = Atom::graph(std::move(entries));
          if (monotone(g, s.base)) out.push_back(std::move(g));
        }
        return out;
      }
      case Space::Kind::t: {
        FinSet ta = t_.apply(FinSet::from_range(enumerate(s.parts[0])));
        return {ta.begin(), ta.end()};
      }
    }
    return {};
  }

  bool inhabited(const Space& s) const {
    switch (s.kind) {
      case Space::Kind::base: return !s.base.empty();
      case Space::Kind::unit: return true;
      case Space::Kind::prod: return inhabited(s.parts[0]) && inhabited(s.parts[1]);
      case Space::Kind::fun: return s.base.empty() || !s.cod.empty();
      case Space::Kind::t: return inhabited(s.parts[0]) || !t_.corners({}).empty();
    }
    return false;
  }

  /// A random element, or nullopt when the space is empty.
  std::optional<Atom> sample(const Space& s) {
    switch (s.kind) {
      case Space::Kind::base:
        if (s.base.empty()) return std::nullopt;
        return s.base[rng_.below(s.base.size())];
      case Space::Kind::unit: return Atom::unit();
      case Space::Kind::prod: {
        auto x = sample(s.parts[0]);
        auto y = sample(s.parts[1]);
        if (!x || !y) return std::nullopt;
        return Atom::pair(*x, *y);
      }
      case Space::Kind::fun: {
        if (s.cod.empty() && !s.base.empty()) return std::nullopt;
        for (int attempt = 0; attempt < 64; ++attempt) {
          std::vector<std::pair<Atom, Atom>> entries;
          for (const auto& x : s.base) entries.emplace_back(x, s.cod[rng_.below(s.cod.size())]);
          Atom g = Atom::graph(std::move(entries));
          if (monotone(g, s.base)) return g;
        }
        // constant maps are always monotone
        std::vector<std::pair<Atom, Atom>> entries;
        const Atom& c = s.cod[rng_.below(s.cod.size())];
        for (const auto& x : s.base) entries.emplace_back(x, c);
        return Atom::graph(std::move(entries));
      }
      case Space::Kind::t: {
        std::vector<Atom> pool = inner_pool(s.parts[0]);
        auto corners = t_.corners(pool);
        if (pool.empty()) {
          if (corners.empty()) return std::nullopt;
          return corners[rng_.below(corners.size())];
        }
        if (!corners.empty() && rng_.below(4) == 0) return corners[rng_.below(corners.size())];
        return t_.sample(pool, rng_);
      }
    }
    return std::nullopt;
  }

 private:
  bool monotone(const Atom& g, const FinSet& dom) const {
    if (!t_.order) return true;
    for (const auto& x : dom)
      for (const auto& y : dom)
        if (t_.order(x, y) && !t_.order(g.apply(x), g.apply(y))) return false;
    return true;
  }

  static constexpr std::size_t kPoolLimit = 4096;
  static constexpr std::size_t kPoolDraws = 6;

  std::vector<Atom> inner_pool(const Space& inner) {
    auto n = size(inner);
    if (n && *n <= kPoolLimit) return enumerate(inner);
    std::vector<Atom> draws;
    for (std::size_t i = 0; i < kPoolDraws; ++i) {
      auto x = sample(inner);
      if (!x) return {};
      draws.push_back(*x);
    }
    FinSet distinct = FinSet::from_range(std::move(draws));
    return {distinct.begin(), distinct.end()};
  }

  const MonadInstance& t_;
  Rng& rng_;
};

// ------------------------------------------------------------ laws

using Sides = std::pair<Atom, Atom>;

struct Law {
  std::string id;
  std::string diagram;
  std::size_t arity;  // number of base carriers
  std::function<std::vector<Space>(const std::vector<FinSet>&)> inputs;
  std::function<Sides(const std::vector<Atom>&)> sides;
};

// Carriers at different input positions use disjoint names, so that
// confusing two components shows up as a value mismatch.
FinSet carrier(std::size_t position, std::size_t n) {
  static const char* names[4][3] = {
      {"a", "b", "c"}, {"0", "1", "2"}, {"x", "y", "z"}, {"u", "v", "w"}};
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 3 ? Atom::leaf(names[position % 4][i])
                        : Atom::leaf(std::string(names[position % 4][0]) + std::to_string(i)));
  }
  return FinSet(std::move(out));
}

std::uint64_t mix(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

std::string show_tuple(const std::vector<Atom>& xs) {
  std::string out = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += xs[i].str();
  }
  return out + ")";
}

LawResult run_law(const Law& law, const MonadInstance& t, const LawConfig& cfg) {
  LawResult res;
  res.id = law.id;
  Rng rng(mix(cfg.seed, law.id));
  Cases cases(t, rng);

  std::vector<std::vector<std::size_t>> combos{{}};
  for (std::size_t k = 0; k < law.arity; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : combos) {
      for (std::size_t n = 0; n <= cfg.max_size; ++n) {
        auto d = c;
        d.push_back(n);
        next.push_back(std::move(d));
      }
    }
    combos = std::move(next);
  }

  struct Plan {
    std::vector<std::size_t> sizes;
    std::vector<Space> spaces;
    bool enumerate;
    bool inhabited;
  };
  std::vector<Plan> plans;
  std::size_t sampled_combos = 0;
  for (const auto& c : combos) {
    std::vector<FinSet> sets;
    for (std::size_t k = 0; k < c.size(); ++k) sets.push_back(carrier(k, c[k]));
    Plan p{c, law.inputs(sets), false, true};
    std::optional<std::size_t> total = 1;
    for (const auto& s : p.spaces) {
      total = mul(total, cases.size(s));
      p.inhabited = p.inhabited && cases.inhabited(s);
    }
    if (!p.inhabited) continue;
    p.enumerate = total && *total <= cfg.exhaustive_limit;
    if (!p.enumerate) ++sampled_combos;
    plans.push_back(std::move(p));
  }
  const std::size_t per_combo =
      sampled_combos == 0 ? 0 : std::max<std::size_t>(1, (cfg.samples + sampled_combos - 1) / sampled_combos);

  auto check = [&](const Plan& p, const std::vector<Atom>& input) {
    Sides sides;
    try {
      sides = law.sides(input);
    } catch (const Error& e) {
      res.passed = false;
      res.counterexample = Counterexample{law.diagram, show_tuple(input), std::string("error: ") + e.what(),
                                          "", p.sizes};
      return false;
    }
    if (sides.first == sides.second) return true;
    res.passed = false;
    res.counterexample =
        Counterexample{law.diagram, show_tuple(input), sides.first.str(), sides.second.str(), p.sizes};
    return false;
  };

  for (const auto& p : plans) {
    if (p.enumerate) {
      std::vector<std::vector<Atom>> values;
      bool empty = false;
      for (const auto& s : p.spaces) {
        values.push_back(cases.enumerate(s));
        empty = empty || values.back().empty();
      }
      if (empty) continue;
      std::vector<std::size_t> idx(values.size(), 0);
      std::vector<Atom> input(values.size());
      bool done = false;
      while (!done) {
        for (std::size_t k = 0; k < values.size(); ++k) input[k] = values[k][idx[k]];
        ++res.exhaustive_cases;
        if (!check(p, input)) return res;
        std::size_t k = values.size();
        while (true) {
          if (k == 0) {
            done = true;
            break;
          }
          --k;
          if (++idx[k] < values[k].size()) break;
          idx[k] = 0;
        }
      }
    } else {
      for (std::size_t i = 0; i < per_combo; ++i) {
        std::vector<Atom> input;
        for (const auto& s : p.spaces) {
          auto x = cases.sample(s);
          if (!x) break;
          input.push_back(*x);
        }
        if (input.size() != p.spaces.size()) break;  // some input space is empty
        ++res.sampled_cases;
        if (!check(p, input)) return res;
      }
    }
  }
  return res;
}

LawReport run_laws(const std::string& check, const MonadInstance& t, const LawConfig& cfg,
                   const std::vector<Law>& laws) {
  LawReport report{check, t.name, cfg, {}};
  for (const auto& law : laws) report.laws.push_back(run_law(law, t, cfg));
  return report;
}

void require_mediator(const MonadInstance& t, const std::string& check) {
  if (!t.has_mediator()) throw Error(check + ": monad '" + t.name + "' has no mediator");
}

Atom pi1(const Atom& p) { return p.first(); }
Atom pi2(const Atom& p) { return p.second(); }
Atom left_unit(const Atom& p) { return p.second(); }   // ((), b) |-> b
Atom right_unit(const Atom& p) { return p.first(); }   // (a, ()) |-> a
Atom identity(const Atom& x) { return x; }

std::vector<Space> sets_of(std::vector<Space> s) { return s; }

}  // namespace

// ------------------------------------------------------------ reports

bool LawReport::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.passed; });
}

std::size_t LawReport::cases() const {
  std::size_t n = 0;
  for (const auto& r : laws) n += r.exhaustive_cases + r.sampled_cases;
  return n;
}

const LawResult* LawReport::first_failure() const {
  for (const auto& r : laws)
    if (!r.passed) return &r;
  return nullptr;
}

// ------------------------------------------------------------ checks

LawReport check_monad_laws(const MonadInstance& t, const LawConfig& cfg) {
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"functor:id", "T id = id on T A", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) { return Sides{T.map(identity, x[0]), x[0]}; }},
      {"functor:comp", "T (g . f) = T g . T f on T A", 3,
       [](const auto& s) {
         return sets_of({tof(base(s[0])), fun(s[0], s[1]), fun(s[1], s[2])});
       },
       [&](const auto& x) {
         const Atom& f = x[1];
         const Atom& g = x[2];
         Atom lhs = T.map([&](const Atom& a) { return g.apply(f.apply(a)); }, x[0]);
         Atom rhs = T.map([&](const Atom& b) { return g.apply(b); },
                          T.map([&](const Atom& a) { return f.apply(a); }, x[0]));
         return Sides{lhs, rhs};
       }},
      {"monad:left-unit", "mu . eta_T = id on T A", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) { return Sides{T.mult(T.unit(x[0])), x[0]}; }},
      {"monad:right-unit", "mu . T eta = id on T A", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) { return Sides{T.mult(T.map(T.unit, x[0])), x[0]}; }},
      {"monad:assoc", "mu . mu_T = mu . T mu on T T T A", 1,
       [](const auto& s) { return sets_of({tof(tof(tof(base(s[0]))))}); },
       [&](const auto& x) { return Sides{T.mult(T.mult(x[0])), T.mult(T.map(T.mult, x[0]))}; }},
  };
  return run_laws("monad-laws", t, cfg, laws);
}

LawReport check_strength_laws(const MonadInstance& t, const LawConfig& cfg) {
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"strength:l", "T l . t_{I,B} = l on I x T B", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) { return Sides{T.map(left_unit, T.strength(Atom::unit(), x[0])), x[0]}; }},
      {"strength:eta", "t_{A,B} . (id x eta) = eta on A x B", 2,
       [](const auto& s) { return sets_of({base(s[0]), base(s[1])}); },
       [&](const auto& x) {
         return Sides{T.strength(x[0], T.unit(x[1])), T.unit(Atom::pair(x[0], x[1]))};
       }},
      {"strength:double",
       "T alpha . t_{A x B,C} = t_{A,B x C} . (id x t_{B,C}) . alpha on (A x B) x T C", 3,
       [](const auto& s) { return sets_of({base(s[0]), base(s[1]), tof(base(s[2]))}); },
       [&](const auto& x) {
         Atom lhs = T.map(assoc_value, T.strength(Atom::pair(x[0], x[1]), x[2]));
         Atom rhs = T.strength(x[0], T.strength(x[1], x[2]));
         return Sides{lhs, rhs};
       }},
      {"strength:mu", "t . (id x mu) = mu . T t . t on A x T T B", 2,
       [](const auto& s) { return sets_of({base(s[0]), tof(tof(base(s[1])))}); },
       [&](const auto& x) {
         Atom lhs = T.strength(x[0], T.mult(x[1]));
         Atom rhs = T.mult(T.map([&](const Atom& p) { return T.strength(p.first(), p.second()); },
                                 T.strength(x[0], x[1])));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("strength-laws", t, cfg, laws);
}

LawReport check_mediator_laws(const MonadInstance& t, const LawConfig& cfg) {
  require_mediator(t, "mediator-laws");
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"mediator:l", "T l . d_{I,B} . (eta_I x id) = l on I x T B", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) {
         return Sides{T.map(left_unit, T.mediator(T.unit(Atom::unit()), x[0])), x[0]};
       }},
      {"mediator:r", "T r . d_{A,I} . (id x eta_I) = r on T A x I", 1,
       [](const auto& s) { return sets_of({tof(base(s[0]))}); },
       [&](const auto& x) {
         return Sides{T.map(right_unit, T.mediator(x[0], T.unit(Atom::unit()))), x[0]};
       }},
      {"mediator:eta", "d . (eta x eta) = eta on A x B", 2,
       [](const auto& s) { return sets_of({base(s[0]), base(s[1])}); },
       [&](const auto& x) {
         return Sides{T.mediator(T.unit(x[0]), T.unit(x[1])), T.unit(Atom::pair(x[0], x[1]))};
       }},
      {"mediator:double",
       "T alpha . d_{A x B,C} . (d_{A,B} x id) = d_{A,B x C} . (id x d_{B,C}) . alpha on (T A x T B) x T C",
       3,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1])), tof(base(s[2]))}); },
       [&](const auto& x) {
         Atom lhs = T.map(assoc_value, T.mediator(T.mediator(x[0], x[1]), x[2]));
         Atom rhs = T.mediator(x[0], T.mediator(x[1], x[2]));
         return Sides{lhs, rhs};
       }},
      {"mediator:mu", "d . (mu x mu) = mu . T d . d on T T A x T T B", 2,
       [](const auto& s) { return sets_of({tof(tof(base(s[0]))), tof(tof(base(s[1])))}); },
       [&](const auto& x) {
         Atom lhs = T.mediator(T.mult(x[0]), T.mult(x[1]));
         Atom rhs = T.mult(T.map([&](const Atom& p) { return T.mediator(p.first(), p.second()); },
                                 T.mediator(x[0], x[1])));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("mediator-laws", t, cfg, laws);
}

LawReport check_commutative(const MonadInstance& t, const LawConfig& cfg) {
  require_mediator(t, "commutative");
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"commutative", "d_{B,A} . c = T c . d_{A,B} on T A x T B", 2,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1]))}); },
       [&](const auto& x) {
         return Sides{T.mediator(x[1], x[0]), T.map(swap_value, T.mediator(x[0], x[1]))};
       }},
  };
  return run_laws("commutative", t, cfg, laws);
}

LawReport check_cartesian(const MonadInstance& t, const LawConfig& cfg) {
  require_mediator(t, "cartesian");
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"cartesian:pi1", "T pi1 . d = pi1 on T A x T B", 2,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1]))}); },
       [&](const auto& x) { return Sides{T.map(pi1, T.mediator(x[0], x[1])), x[0]}; }},
      {"cartesian:pi2", "T pi2 . d = pi2 on T A x T B", 2,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1]))}); },
       [&](const auto& x) { return Sides{T.map(pi2, T.mediator(x[0], x[1])), x[1]}; }},
  };
  return run_laws("cartesian", t, cfg, laws);
}

LawReport check_derived_strengths(const MonadInstance& t, const LawConfig& cfg) {
  require_mediator(t, "derived-strengths");
  const MonadInstance& T = t;
  // t = d . (eta x id), t' = d . (id x eta)
  auto ds = [&T](const Atom& a, const Atom& y) { return T.mediator(T.unit(a), y); };
  auto ds2 = [&T](const Atom& x, const Atom& b) { return T.mediator(x, T.unit(b)); };
  std::vector<Law> laws{
      {"derived:t-is-strength", "d . (eta x id) = t on A x T B", 2,
       [](const auto& s) { return sets_of({base(s[0]), tof(base(s[1]))}); },
       [&](const auto& x) { return Sides{ds(x[0], x[1]), T.strength(x[0], x[1])}; }},
      {"derived:tt'-left", "mu . T t' . t_{TA,B} = d on T A x T B", 2,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1]))}); },
       [&](const auto& x) {
         Atom lhs = T.mult(T.map([&](const Atom& p) { return ds2(p.first(), p.second()); },
                                 ds(x[0], x[1])));
         return Sides{lhs, T.mediator(x[0], x[1])};
       }},
      {"derived:tt'-right", "mu . T t . t'_{A,TB} = d on T A x T B", 2,
       [](const auto& s) { return sets_of({tof(base(s[0])), tof(base(s[1]))}); },
       [&](const auto& x) {
         Atom lhs = T.mult(T.map([&](const Atom& p) { return ds(p.first(), p.second()); },
                                 ds2(x[0], x[1])));
         return Sides{lhs, T.mediator(x[0], x[1])};
       }},
      {"derived:tt'-alpha",
       "T alpha . t'_{A x B,C} . (t_{A,B} x id) = t_{A,B x C} . (id x t'_{B,C}) . alpha on (A x T B) x C",
       3,
       [](const auto& s) { return sets_of({base(s[0]), tof(base(s[1])), base(s[2])}); },
       [&](const auto& x) {
         Atom lhs = T.map(assoc_value, ds2(ds(x[0], x[1]), x[2]));
         Atom rhs = ds(x[0], ds2(x[1], x[2]));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("derived-strengths", t, cfg, laws);
}

namespace {

Atom delta(const MonadInstance& t, const Atom& v) {
  return Atom::pair(t.map(pi1, v), t.map(pi2, v));
}

}  // namespace

LawReport check_monad_morphism(const MonadInstance& t, const LawConfig& cfg) {
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"morphism:eta", "delta . eta = eta x eta on A1 x A2", 2,
       [](const auto& s) { return sets_of({base(s[0]), base(s[1])}); },
       [&](const auto& x) {
         return Sides{delta(T, T.unit(Atom::pair(x[0], x[1]))),
                      Atom::pair(T.unit(x[0]), T.unit(x[1]))};
       }},
      {"morphism:mu", "delta . mu = (mu x mu) . delta_{TA1,TA2} . T delta on T T (A1 x A2)", 2,
       [](const auto& s) { return sets_of({tof(tof(prod(base(s[0]), base(s[1]))))}); },
       [&](const auto& x) {
         Atom lhs = delta(T, T.mult(x[0]));
         Atom inner = delta(T, T.map([&](const Atom& v) { return delta(T, v); }, x[0]));
         Atom rhs = Atom::pair(T.mult(inner.first()), T.mult(inner.second()));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("monad-morphism", t, cfg, laws);
}

LawReport check_strong_morphism(const MonadInstance& t, const LawConfig& cfg) {
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"morphism:strength",
       "delta . T theta . t = (t x t) . theta . (id x delta) on (A1 x A2) x T (B1 x B2)", 4,
       [](const auto& s) {
         return sets_of({prod(base(s[0]), base(s[1])), tof(prod(base(s[2]), base(s[3])))});
       },
       [&](const auto& x) {
         Atom lhs = delta(T, T.map(interchange_value, T.strength(x[0], x[1])));
         Atom rhs = Atom::pair(T.strength(x[0].first(), T.map(pi1, x[1])),
                               T.strength(x[0].second(), T.map(pi2, x[1])));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("strong-morphism", t, cfg, laws);
}

LawReport check_monoidal_morphism(const MonadInstance& t, const LawConfig& cfg) {
  require_mediator(t, "monoidal-morphism");
  const MonadInstance& T = t;
  std::vector<Law> laws{
      {"morphism:mediator",
       "delta . T theta . d = (d x d) . theta . (delta x delta) on T (A1 x A2) x T (B1 x B2)", 4,
       [](const auto& s) {
         return sets_of({tof(prod(base(s[0]), base(s[1]))), tof(prod(base(s[2]), base(s[3])))});
       },
       [&](const auto& x) {
         Atom lhs = delta(T, T.map(interchange_value, T.mediator(x[0], x[1])));
         Atom rhs = Atom::pair(T.mediator(T.map(pi1, x[0]), T.map(pi1, x[1])),
                               T.mediator(T.map(pi2, x[0]), T.map(pi2, x[1])));
         return Sides{lhs, rhs};
       }},
  };
  return run_laws("monoidal-morphism", t, cfg, laws);
}

// ------------------------------------------------------------ dispatch

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "monad",       "strength", "derived",         "mediator",         "commutative",
      "cartesian",   "morphism", "strong-morphism", "monoidal-morphism"};
  return names;
}

LawReport run_check(const std::string& name, const MonadInstance& t, const LawConfig& cfg) {
  if (name == "monad") return check_monad_laws(t, cfg);
  if (name == "strength") return check_strength_laws(t, cfg);
  if (name == "mediator") return check_mediator_laws(t, cfg);
  if (name == "commutative") return check_commutative(t, cfg);
  if (name == "cartesian") return check_cartesian(t, cfg);
  if (name == "derived") return check_derived_strengths(t, cfg);
  if (name == "morphism") return check_monad_morphism(t, cfg);
  if (name == "strong-morphism") return check_strong_morphism(t, cfg);
  if (name == "monoidal-morphism") return check_monoidal_morphism(t, cfg);
  throw Error("unknown check '" + name + "'");
}

std::vector<LawReport> run_all_checks(const MonadInstance& t, const LawConfig& cfg) {
  std::vector<LawReport> out;
  for (const auto& name : check_names()) {
    bool needs_mediator = name != "monad" && name != "strength" && name != "morphism" &&
                          name != "strong-morphism";
    if (needs_mediator && !t.has_mediator()) continue;
    out.push_back(run_check(name, t, cfg));
  }
  return out;
}

// ------------------------------------------------------------ mutants

MonadInstance mutant_intersection_mult(const MonadInstance& powerset) {
  MonadInstance m = powerset;
  m.name = powerset.name + "/intersection-mult";
  m.mult = [](const Atom& family) {
    if (family.members().empty()) return Atom::set({});
    std::vector<Atom> out;
    for (const auto& x : family.members()[0].members()) {
      bool everywhere = std::all_of(family.members().begin(), family.members().end(),
                                    [&](const Atom& s) { return s.contains(x); });
      if (everywhere) out.push_back(x);
    }
    return Atom::set(std::move(out));
  };
  return m;
}

MonadInstance mutant_unweighted_mult(const MonadInstance& dist) {
  MonadInstance m = dist;
  m.name = dist.name + "/unweighted-mult";
  m.mult = [](const Atom& xi) {
    std::vector<std::pair<Atom, Rational>> out;
    const auto n = xi.members().size();
    for (const auto& nu : xi.members())
      for (std::size_t j = 0; j < nu.members().size(); ++j)
        out.emplace_back(nu.members()[j], nu.weights()[j] / Rational(n));
    return Atom::dist(std::move(out));
  };
  return m;
}

MonadInstance mutant_swapped_strength(const MonadInstance& t) {
  MonadInstance m = t;
  m.name = t.name + "/swapped-strength";
  MonadInstance base_monad = t;
  m.strength = [base_monad](const Atom& a, const Atom& v) {
    return base_monad.map([&](const Atom& b) { return Atom::pair(b, a); }, v);
  };
  return m;
}

MonadInstance mutant_least_point_strength(const MonadInstance& t) {
  MonadInstance m = t;
  m.name = t.name + "/least-point-strength";
  MonadInstance base_monad = t;
  m.strength = [base_monad](const Atom& a, const Atom& v) {
    if (v.members().empty()) return base_monad.strength(a, v);
    return base_monad.unit(Atom::pair(a, v.members()[0]));
  };
  return m;
}

MonadInstance mutant_left_biased_mediator(const MonadInstance& t) {
  require_mediator(t, "mutant_left_biased_mediator");
  MonadInstance m = t;
  m.name = t.name + "/left-biased-mediator";
  MonadInstance base_monad = t;
  m.mediator = [base_monad](const Atom& x, const Atom& y) {
    if (x.members().empty()) return base_monad.mediator(x, y);
    return base_monad.strength(x.members()[0], y);
  };
  return m;
}

MonadInstance mutant_right_biased_mediator(const MonadInstance& t) {
  require_mediator(t, "mutant_right_biased_mediator");
  MonadInstance m = t;
  m.name = t.name + "/right-biased-mediator";
  MonadInstance base_monad = t;
  m.mediator = [base_monad](const Atom& x, const Atom& y) {
    if (y.members().empty()) return base_monad.mediator(x, y);
    Atom b = y.members()[0];
    return base_monad.map([&](const Atom& a) { return Atom::pair(a, b); }, x);
  };
  return m;
}

}  // namespace monarel
