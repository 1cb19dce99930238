#include <doctest.h>

#include "monarel/error.hpp"
#include "monarel/lawcheck.hpp"
#include "monarel/lifting.hpp"
#include "monarel/poset.hpp"
#include "support.hpp"

using namespace monarel;
using monarel::testing::L;

namespace {

FinSet S(std::initializer_list<std::string_view> names) { return FinSet::of(names); }

Atom up(std::initializer_list<const char*> names) {
  std::vector<Atom> xs;
  for (const char* n : names) xs.push_back(L(n));
  return Atom::set(std::move(xs));
}

}  // namespace

TEST_CASE("posets validate their axioms") {
  FinSet abc = S({"a", "b", "c"});
  CHECK_NOTHROW(FinPoset(abc, {{L("a"), L("b")}}));
  CHECK_THROWS_AS(FinPoset(abc, {{L("a"), L("b")}, {L("b"), L("a")}}), Error);
  CHECK_THROWS_AS(FinPoset(abc, {{L("a"), L("b")}, {L("b"), L("c")}}), Error);
  CHECK_THROWS_AS(FinPoset(abc, {{L("a"), L("z")}}), Error);
  CHECK(FinPoset::chain(abc).leq(L("a"), L("c")));
  CHECK_FALSE(FinPoset::discrete(abc).leq(L("a"), L("c")));
  // labelled partial orders on 0..3 points
  CHECK(all_posets(letters(0)).size() == 1);
  CHECK(all_posets(letters(1)).size() == 1);
  CHECK(all_posets(letters(2)).size() == 3);
  CHECK(all_posets(letters(3)).size() == 19);
  CHECK(all_posets(letters(4)).size() == 219);
}

TEST_CASE("upper-set monad examples") {
  FinPoset chain = FinPoset::chain(S({"0", "1"}));
  FinPoset t = upper_poset(chain);
  CHECK(t.carrier().str() == "{{0},{1}}");
  CHECK(t.leq(up({"0"}), up({"1"})));
  CHECK_FALSE(t.leq(up({"1"}), up({"0"})));

  FinPoset discrete = FinPoset::discrete(S({"a", "b"}));
  CHECK(upper_unit(L("a")) == up({"a"}));
  FinPoset td = upper_poset(discrete);
  CHECK(td.size() == 3);
  CHECK_FALSE(td.comparable(up({"a"}), up({"b"})));
  CHECK(td.leq(up({"a", "b"}), up({"a"})));

  Atom nested = Atom::set({up({"a"}), up({"b"})});
  CHECK(upper_mult(discrete, nested) == up({"a", "b"}));
  CHECK(upper_mult(chain, Atom::set({up({"0"}), up({"1"})})) == up({"0"}));
  CHECK(upper_set(chain, {L("1"), L("0")}) == up({"0"}));
  CHECK(upper_contains(chain, up({"0"}), L("1")));
  CHECK_FALSE(upper_contains(chain, up({"1"}), L("0")));
  CHECK(upper_mediator(up({"a", "b"}), up({"0"})).str() == "{(a,0),(b,0)}");
}

TEST_CASE("minimization is idempotent and order independent") {
  Rng rng(8);
  for (const auto& p : all_posets(letters(3))) {
    for (int i = 0; i < 20; ++i) {
      std::vector<Atom> xs;
      for (const auto& x : p.carrier())
        if (rng.coin()) xs.push_back(x);
      auto m = minimize(p, xs);
      CHECK(minimize(p, m) == m);
      CHECK(is_antichain(p, m));
      std::reverse(xs.begin(), xs.end());
      CHECK(minimize(p, xs) == m);
      // same upper set
      for (const auto& y : p.carrier()) {
        bool in_xs = std::any_of(xs.begin(), xs.end(), [&](const Atom& x) { return p.leq(x, y); });
        bool in_m = std::any_of(m.begin(), m.end(), [&](const Atom& x) { return p.leq(x, y); });
        CHECK(in_xs == in_m);
      }
    }
  }
}

TEST_CASE("upper monad as a MonadInstance agrees with the poset construction") {
  MonadInstance t = upper_monad();
  AtomOrder order = AtomOrder::standard();
  for (const char* names : {"a,b,c", "0,1,2", "u,v,w", "x,y"}) {
    std::vector<Atom> xs;
    std::string s = names;
    for (std::size_t i = 0; i < s.size(); i += 2) xs.push_back(L(s.substr(i, 1).c_str()));
    FinSet a(std::move(xs));
    CHECK(t.apply(a) == upper_poset(order.on(a)).carrier());
  }
  CHECK(order.leq(L("a"), L("b")));
  CHECK(order.leq(L("0"), L("2")));
  CHECK_FALSE(order.leq(L("a"), L("c")));
  CHECK(order.leq(Atom::parse("(a,0)"), Atom::parse("(b,1)")));
  CHECK(order.leq(Atom::parse("{a,c}"), Atom::parse("{b}")));
  CHECK_THROWS_AS(AtomOrder({{"a", "b"}, {"b", "a"}}), Error);
}

TEST_CASE("upper monad passes the law checks on ordered carriers") {
  LawConfig cfg;
  cfg.samples = 200;
  for (const auto& order : {AtomOrder::standard(), AtomOrder(), AtomOrder({{"a", "b"}, {"b", "c"}, {"x", "z"}})}) {
    MonadInstance t = upper_monad(order);
    for (const char* check : {"monad", "strength", "mediator", "commutative", "derived"}) {
      CAPTURE(check);
      LawReport rep = run_check(check, t, cfg);
      if (!rep.passed()) {
        const auto& f = *rep.first_failure();
        FAIL_CHECK(f.id << ": " << f.counterexample->input << " gives " << f.counterexample->lhs
                        << " vs " << f.counterexample->rhs);
      }
    }
  }
}

TEST_CASE("law checks draw monotone maps only for ordered monads") {
  MonadInstance t = upper_monad();
  LawReport rep = check_monad_laws(t);
  CHECK(rep.passed());
  // forgetting the order admits maps that break functoriality of minimization
  MonadInstance unordered = t;
  unordered.order = nullptr;
  LawReport broken = check_monad_laws(unordered);
  CHECK_FALSE(broken.passed());
  CHECK(broken.first_failure()->id == "functor:comp");
}

TEST_CASE("ordered factorization") {
  FinSet xy = S({"x", "y"});
  FinSet ab = S({"a", "b"});
  FinPoset anti = FinPoset::discrete(xy);
  FinPoset chain = FinPoset::chain(ab);
  FinFun f(xy, ab, {L("a"), L("b")});
  OrdFactorization two = factorize_ord(f, anti, chain, OrdSystem::inherited);
  OrdFactorization three = factorize_ord(f, anti, chain, OrdSystem::generated);
  CHECK(two.middle == chain);
  CHECK(three.middle == FinPoset::discrete(ab));
  CHECK(compose(two.mono, two.epi) == f);
  CHECK(compose(three.mono, three.epi) == f);

  FinFun id = FinFun::identity(ab);
  CHECK(factorize_ord(id, chain, chain, OrdSystem::generated).middle == chain);
  CHECK(factorize_ord(id, chain, chain, OrdSystem::inherited).middle == chain);

  FinSet one = S({"p"});
  FinFun collapse(xy, one, {L("p"), L("p")});
  CHECK(factorize_ord(collapse, anti, FinPoset::discrete(one), OrdSystem::inherited).middle ==
        factorize_ord(collapse, anti, FinPoset::discrete(one), OrdSystem::generated).middle);

  FinFun flip(ab, ab, {L("b"), L("a")});
  CHECK_THROWS_AS(factorize_ord(flip, chain, chain, OrdSystem::inherited), Error);
}

TEST_CASE("generated order is contained in the inherited one") {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    auto p1 = all_posets(letters(3));
    auto p2 = all_posets(numerals(3));
    const FinPoset& dom = p1[rng.below(p1.size())];
    const FinPoset& cod = p2[rng.below(p2.size())];
    std::vector<Atom> images;
    for (std::size_t k = 0; k < 3; ++k) images.push_back(cod.carrier()[rng.below(3)]);
    FinFun f(dom.carrier(), cod.carrier(), images);
    if (!is_monotone(f, dom, cod)) continue;
    auto gen = factorize_ord(f, dom, cod, OrdSystem::generated).middle;
    auto inh = factorize_ord(f, dom, cod, OrdSystem::inherited).middle;
    CHECK(gen.carrier() == inh.carrier());
    CHECK(gen.relation().is_subset_of(inh.relation()));
  }
}

TEST_CASE("lifted ordered relations") {
  FinPoset chain = FinPoset::chain(S({"0", "1"}));
  OrderedRel diag = inherited_order(Rel::diagonal(chain.carrier()), chain, chain);
  for (auto system : {OrdSystem::inherited, OrdSystem::generated}) {
    OrderedRel lifted = lift_relation_ord(diag, chain, chain, system);
    CHECK(lifted.rel == Rel::diagonal(upper_poset(chain).carrier()));
  }
  FinPoset d = FinPoset::discrete(S({"a", "b"}));
  Rel full = Rel::full(d.carrier(), d.carrier());
  OrderedRel lifted = lift_relation_ord(inherited_order(full, d, d), d, d, OrdSystem::inherited);
  CHECK(lifted.rel == Rel::full(upper_poset(d).carrier(), upper_poset(d).carrier()));
  // pair sets match the Set-level lifting when both orders are discrete
  for (const auto& s : all_relations(d.carrier(), d.carrier())) {
    OrderedRel o = lift_relation_ord(inherited_order(s, d, d), d, d, OrdSystem::generated);
    CHECK(o.rel == lift_enumerate(nonempty_powerset_monad(), s));
  }
  CHECK_THROWS_AS(ordered_rel(full, d, d, FinPoset::chain(full.carrier())), Error);
}

TEST_CASE("both systems lift every relation to the same pairs") {
  std::size_t compared = 0;
  std::vector<FinPoset> posets;
  for (std::size_t n = 0; n <= 3; ++n)
    for (auto& p : all_posets(letters(n))) posets.push_back(std::move(p));
  for (const auto& a : posets) {
    for (const auto& s : all_relations(a.carrier(), a.carrier())) {
      Rel two = lifted_pairs(inherited_order(s, a, a), a, a);
      for (const auto& order : sub_orders(s, a, a, 32)) {
        CHECK(lifted_pairs(OrderedRel{s, order}, a, a) == two);
        ++compared;
      }
    }
  }
  CHECK(compared > 10000);
}

TEST_CASE("search for differing orderings") {
  OrderingSearch found = search_ordering_difference(2, 16);
  CHECK(found.instances > 100);
  CHECK(found.same_pairs == found.instances);
  if (found.witness) {
    const auto& w = *found.witness;
    OrderedRel two = lift_relation_ord(inherited_order(w.s.rel, w.a1, w.a2), w.a1, w.a2,
                                       OrdSystem::inherited);
    OrderedRel three = lift_relation_ord(w.s, w.a1, w.a2, OrdSystem::generated);
    CHECK(two.order.leq(w.lower, w.upper) != three.order.leq(w.lower, w.upper));
  }
  MESSAGE("ordering search: " << found.instances << " instances, witness "
                              << std::string(found.witness ? "found" : "absent"));
}
