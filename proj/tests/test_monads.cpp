#include "doctest.h"

#include "monarel/error.hpp"
#include "monarel/monad.hpp"
#include "support.hpp"

using namespace monarel;
using monarel::testing::L;

TEST_CASE("powerset basics") {
  auto t = powerset_monad();
  CHECK(t.unit(L("a")).str() == "{a}");
  CHECK(t.mult(Atom::parse("{{a},{a,b}}")).str() == "{a,b}");
  CHECK(t.apply(letters(2)).size() == 4);
  CHECK(t.strength(L("x"), Atom::parse("{a,b}")).str() == "{(x,a),(x,b)}");
  CHECK(t.mediator(Atom::parse("{a}"), Atom::parse("{}")).str() == "{}");
}

TEST_CASE("nonempty powerset basics") {
  auto t = nonempty_powerset_monad();
  CHECK(t.apply(letters(2)).size() == 3);
  CHECK(t.unit(L("a")).str() == "{a}");
  CHECK(t.mediator(Atom::parse("{a}"), Atom::parse("{b}")).str() == "{(a,b)}");
  CHECK_FALSE(t.is_element(Atom::parse("{}"), letters(2)));
}

TEST_CASE("distribution basics") {
  auto t = dist_monad(DistMode::probability);
  Atom half = Atom::parse("[1/2:0,1/2:1]");
  CHECK(t.map([](const Atom&) { return L("a"); }, half).str() == "[1:a]");
  Atom inner = Atom::parse("[1/2:x,1/2:y]");
  CHECK(t.mult(t.unit(inner)) == inner);
  // product weights by hand: 1/2 * 1 each
  Atom d = t.mediator(inner, Atom::parse("[1:z]"));
  CHECK(d == Atom::dist({{Atom::pair(L("x"), L("z")), Rational(1, 2)},
                         {Atom::pair(L("y"), L("z")), Rational(1, 2)}}));
  CHECK_FALSE(t.is_element(Atom::parse("[1/2:x]"), FinSet::of({"x"})));
  CHECK(dist_monad(DistMode::subprobability).is_element(Atom::parse("[1/2:x]"), FinSet::of({"x"})));
}

TEST_CASE("RatDist validation") {
  FinSet c = FinSet::of({"x", "y"});
  CHECK_THROWS_AS(RatDist(c, {{L("x"), Rational(1, 2)}}, DistMode::probability), Error);
  CHECK_THROWS_AS(RatDist(c, {{L("z"), Rational(1)}}, DistMode::probability), Error);
  CHECK_THROWS_AS(RatDist(c, {{L("x"), Rational(2, 3)}, {L("y"), Rational(2, 3)}},
                          DistMode::subprobability),
                  Error);
  RatDist u = RatDist::uniform(c);
  CHECK(u.weight(L("x")) == Rational(1, 2));
  CHECK(RatDist::from_atom(u.to_atom(), c, DistMode::probability) == u);
  CHECK(RatDist::zero(c).mass() == 0);
}

TEST_CASE("functor laws for the enumerable monads") {
  for (const auto& t : {powerset_monad(), nonempty_powerset_monad(), identity_monad()}) {
    for (std::size_t n = 0; n <= 2; ++n) {
      for (std::size_t m = 0; m <= 2; ++m) {
        CHECK(map_fun(t, FinFun::identity(letters(n))) == FinFun::identity(t.apply(letters(n))));
        for (const auto& f : all_functions(letters(n), numerals(m))) {
          for (const auto& g : all_functions(numerals(m), letters(2))) {
            CHECK(map_fun(t, compose(g, f)) == compose(map_fun(t, g), map_fun(t, f)));
          }
        }
      }
    }
  }
}

TEST_CASE("apply lists each element once") {
  auto t = powerset_monad();
  for (std::size_t n = 0; n <= 4; ++n) {
    FinSet ta = t.apply(letters(n));
    CHECK(ta.size() == *t.apply_size(n));
    for (const auto& v : ta) CHECK(t.is_element(v, letters(n)));
  }
}

TEST_CASE("distribution map preserves mass exactly") {
  Rng rng(7);
  for (auto mode : {DistMode::probability, DistMode::subprobability}) {
    auto t = dist_monad(mode);
    FinSet a = letters(4);
    for (int i = 0; i < 300; ++i) {
      Atom nu = t.sample(a.elements(), rng);
      CHECK(t.is_element(nu, a));
      Atom image = t.map([](const Atom& x) { return x == Atom::leaf("a") ? x : Atom::leaf("b"); }, nu);
      CHECK(image.mass() == nu.mass());
    }
  }
}

TEST_CASE("distribution mediator is symmetric up to swap") {
  Rng rng(11);
  auto t = dist_monad(DistMode::probability);
  FinSet a = letters(3);
  FinSet b = numerals(2);
  for (int i = 0; i < 200; ++i) {
    Atom nu = t.sample(a.elements(), rng);
    Atom xi = t.sample(b.elements(), rng);
    CHECK(t.map(swap_value, t.mediator(nu, xi)) == t.mediator(xi, nu));
  }
}

TEST_CASE("monad_by_name") {
  CHECK(monad_by_name("dist").name == "dist");
  CHECK(monad_by_name("nonempty-powerset").family == MonadFamily::nonempty_powerset);
  CHECK_THROWS_AS(monad_by_name("list"), Error);
}
