#include <doctest.h>

#include "monarel/bisim.hpp"
#include "monarel/error.hpp"
#include "support.hpp"

using namespace monarel;
using monarel::testing::L;
using monarel::testing::random_dist;
using monarel::testing::random_partition;
using monarel::testing::random_plts;
using monarel::testing::respecting_pair;

namespace {

FinSet states(std::initializer_list<std::string_view> names) { return FinSet::of(names); }

RatDist dist(const FinSet& carrier, std::initializer_list<std::pair<const char*, Rational>> w,
             DistMode mode = DistMode::probability) {
  std::map<Atom, Rational> m;
  for (const auto& [x, p] : w) m[L(x)] = p;
  return RatDist(carrier, std::move(m), mode);
}

// s: 1/2 -> t, 1/2 -> u   versus   s': 1 -> t'
struct HalfHalf {
  FinSet a1 = states({"s", "t", "u"});
  FinSet a2 = states({"s'", "t'"});
  FinSet labels = states({"go"});
  PLTS f1{a1, labels, DistMode::probability,
          {{{L("s"), L("go")}, dist(a1, {{"t", Rational(1, 2)}, {"u", Rational(1, 2)}})}}};
  PLTS f2{a2, labels, DistMode::probability, {{{L("s'"), L("go")}, dist(a2, {{"t'", 1}})}}};
};

LTS random_lts(const FinSet& a, const FinSet& labels, Rng& rng) {
  std::map<StepKey, FinSet> step;
  for (const auto& s : a) {
    for (const auto& l : labels) {
      std::vector<Atom> succ;
      for (const auto& t : a)
        if (rng.below(3) == 0) succ.push_back(t);
      if (!succ.empty()) step.emplace(StepKey{s, l}, FinSet(std::move(succ)));
    }
  }
  return LTS(a, labels, std::move(step));
}

}  // namespace

TEST_CASE("LTS bisimulation examples") {
  FinSet a1 = states({"p", "q"});
  FinSet a2 = states({"p'", "q'"});
  FinSet labels = states({"a"});
  LTS f1(a1, labels, {{{L("p"), L("a")}, states({"q"})}});
  LTS f2(a2, labels, {{{L("p'"), L("a")}, states({"q'"})}});
  Rel iso(a1, a2, {{L("p"), L("p'")}, {L("q"), L("q'")}});
  CHECK(check_bisimulation(iso, f1, f2).holds);
  CHECK(check_bisimulation(Rel::empty(a1, a2), f1, f2).holds);

  LTS dead(a2, labels, {});
  Rel just(a1, a2, {{L("p"), L("p'")}});
  BisimResult r = check_bisimulation(just, f1, dead);
  REQUIRE_FALSE(r.holds);
  CHECK(r.failure->a1 == L("p"));
  CHECK(r.failure->step1 == "{q}");
  CHECK(r.failure->step2 == "{}");
  CHECK(r.failure->reason.find("first state") != std::string::npos);

  CHECK(check_bisimulation(Rel::diagonal(a1), f1, f1).holds);
  CHECK_THROWS_AS(check_bisimulation(Rel::diagonal(a2), f1, f2), Error);
  CHECK_THROWS_AS(LTS(a1, labels, {{{L("p"), L("a")}, states({"z"})}}), Error);
  CHECK_THROWS_AS(LTS(a1, labels, {{{L("p"), L("b")}, states({"q"})}}), Error);
}

TEST_CASE("label relations") {
  FinSet a = states({"p", "q"});
  LTS f1(a, states({"a"}), {{{L("p"), L("a")}, states({"q"})}});
  LTS f2(a, states({"b", "c"}), {{{L("p"), L("b")}, states({"q"})}});
  CHECK_THROWS_AS(check_bisimulation(Rel::diagonal(a), f1, f2), Error);
  Rel ab(states({"a"}), states({"b", "c"}), {{L("a"), L("b")}});
  CHECK(check_bisimulation(Rel::diagonal(a), f1, f2, ab).holds);
  Rel ac(states({"a"}), states({"b", "c"}), {{L("a"), L("c")}});
  CHECK_FALSE(check_bisimulation(Rel::diagonal(a), f1, f2, ac).holds);
}

TEST_CASE("probabilistic bisimulation examples") {
  HalfHalf h;
  Rel s(h.a1, h.a2, {{L("s"), L("s'")}, {L("t"), L("t'")}, {L("u"), L("t'")}});
  CHECK(check_prob_bisimulation(s, h.f1, h.f2).holds);

  Rel strand(h.a1, h.a2, {{L("s"), L("s'")}, {L("t"), L("t'")}});
  BisimResult r = check_prob_bisimulation(strand, h.f1, h.f2);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.failure->violated_subset);
  CHECK(*r.failure->violated_subset == std::vector<Atom>{L("u")});
  CHECK(r.failure->lhs == Rational(1, 2));
  CHECK(r.failure->rhs == 0);

  // Diracs related by a graph isomorphism
  FinSet b1 = states({"x", "y"});
  FinSet b2 = states({"x'", "y'"});
  FinSet go = states({"go"});
  PLTS d1(b1, go, DistMode::probability,
          {{{L("x"), L("go")}, RatDist::dirac(b1, L("y"))}, {{L("y"), L("go")}, RatDist::dirac(b1, L("x"))}});
  PLTS d2(b2, go, DistMode::probability,
          {{{L("x'"), L("go")}, RatDist::dirac(b2, L("y'"))},
           {{L("y'"), L("go")}, RatDist::dirac(b2, L("x'"))}});
  CHECK(check_prob_bisimulation(Rel(b1, b2, {{L("x"), L("x'")}, {L("y"), L("y'")}}), d1, d2).holds);
  CHECK_FALSE(check_prob_bisimulation(Rel(b1, b2, {{L("x"), L("y'")}}), d1, d2).holds);

  // a missing step against a present one is a mass mismatch
  PLTS stuck(b2, go, DistMode::probability, {});
  BisimResult m = check_prob_bisimulation(Rel(b1, b2, {{L("x"), L("x'")}}), d1, stuck);
  REQUIRE_FALSE(m.holds);
  CHECK(m.failure->reason == "total masses differ");
  CHECK(m.failure->step2 == "none");
}

TEST_CASE("largest bisimulation examples") {
  HalfHalf h;
  Rel big = largest_bisimulation(h.f1, h.f2);
  CHECK(big.contains(L("s"), L("s'")));
  CHECK(check_prob_bisimulation(big, h.f1, h.f2).holds);

  FinSet a = states({"p", "q", "r"});
  FinSet labels = states({"a"});
  PLTS quiet(a, labels, DistMode::probability, {});
  CHECK(largest_bisimulation(quiet, quiet) == Rel::full(a, a));
  LTS idle(a, labels, {});
  CHECK(largest_bisimulation(idle, idle) == Rel::full(a, a));

  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    LTS f = random_lts(a, labels, rng);
    CHECK(Rel::diagonal(a).is_subset_of(largest_bisimulation(f, f)));
    PLTS g = random_plts(a, labels, rng);
    CHECK(Rel::diagonal(a).is_subset_of(largest_bisimulation(g, g)));
  }
}

TEST_CASE("largest LTS bisimulation equals the union of all bisimulations") {
  Rng rng(11);
  FinSet labels = states({"a", "b"});
  for (int round = 0; round < 60; ++round) {
    FinSet a1 = letters(1 + rng.below(3));
    FinSet a2 = numerals(1 + rng.below(3));
    LTS f1 = random_lts(a1, labels, rng);
    LTS f2 = random_lts(a2, labels, rng);
    std::vector<std::pair<Atom, Atom>> all;
    for (const auto& s : all_relations(a1, a2))
      if (check_bisimulation(s, f1, f2).holds)
        for (const auto& p : s.pairs()) all.push_back(p);
    CHECK(largest_bisimulation(f1, f2) == Rel(a1, a2, std::move(all)));
  }
}

TEST_CASE("largest bisimulation passes its check and is maximal") {
  Rng rng(23);
  FinSet labels = states({"a", "b"});
  std::size_t spot_checks = 0;
  for (int round = 0; round < 150; ++round) {
    FinSet a1 = letters(1 + rng.below(5));
    FinSet a2 = numerals(1 + rng.below(5));
    PLTS f1 = random_plts(a1, labels, rng);
    PLTS f2 = random_plts(a2, labels, rng);
    Rel big = largest_bisimulation(f1, f2);
    CHECK(check_prob_bisimulation(big, f1, f2).holds);
    for (const auto& p : Rel::full(a1, a2).pairs()) {
      if (big.contains(p.first, p.second)) continue;
      auto pairs = big.pairs();
      pairs.push_back(p);
      CHECK_FALSE(check_prob_bisimulation(Rel(a1, a2, std::move(pairs)), f1, f2).holds);
      ++spot_checks;
    }

    LTS g1 = random_lts(a1, labels, rng);
    LTS g2 = random_lts(a2, labels, rng);
    Rel lbig = largest_bisimulation(g1, g2);
    CHECK(check_bisimulation(lbig, g1, g2).holds);
    for (const auto& p : Rel::full(a1, a2).pairs()) {
      if (lbig.contains(p.first, p.second)) continue;
      auto pairs = lbig.pairs();
      pairs.push_back(p);
      CHECK_FALSE(check_bisimulation(Rel(a1, a2, std::move(pairs)), g1, g2).holds);
    }
  }
  CHECK(spot_checks > 100);
}

TEST_CASE("Larsen-Skou examples") {
  HalfHalf h;
  Partition singletons;
  for (const auto& x : h.a1) singletons.push_back({{x}, {}});
  for (const auto& y : h.a1) singletons.push_back({{}, {y}});
  CHECK(larsen_skou_check(h.f1, PLTS(h.a1, h.labels, DistMode::probability, h.f1.steps()),
                          singletons)
            .holds);

  Rel s(h.a1, h.a2, {{L("s"), L("s'")}, {L("t"), L("t'")}, {L("u"), L("t'")}});
  CHECK(larsen_skou_check(h.f1, h.f2, generated_partition(s)).holds);

  FinSet a = states({"s", "t"});
  FinSet go = states({"go"});
  PLTS third(a, go, DistMode::probability,
             {{{L("s"), L("go")}, dist(a, {{"t", Rational(1, 3)}, {"s", Rational(2, 3)}})}});
  PLTS half(a, go, DistMode::probability,
            {{{L("s"), L("go")}, dist(a, {{"t", Rational(1, 2)}, {"s", Rational(1, 2)}})}});
  Partition e{{{L("s")}, {L("s")}}, {{L("t")}, {L("t")}}};
  LarsenSkouResult r = larsen_skou_check(third, half, e);
  REQUIRE_FALSE(r.holds);
  CHECK(r.failure->mass_a != r.failure->mass_b);

  Partition overlap{{{L("s")}, {L("s")}}, {{L("s"), L("t")}, {L("t")}}};
  CHECK_THROWS_AS(larsen_skou_check(third, half, overlap), Error);
  Partition missing{{{L("s")}, {L("s")}}};
  CHECK_THROWS_AS(larsen_skou_check(third, half, missing), Error);
}

TEST_CASE("disjoint union tags states") {
  HalfHalf h;
  PLTS u = disjoint_union(h.f1, h.f2);
  CHECK(u.states().size() == 5);
  CHECK(u.states().contains(Atom::parse("(1,s)")));
  CHECK(u.step(Atom::parse("(2,s')"), L("go"))->weight(Atom::parse("(2,t')")) == 1);
}

TEST_CASE("prob bisimulation matches Larsen-Skou for relations cut from equivalences") {
  Rng rng(2024);
  FinSet labels = states({"a", "b"});
  std::size_t instances = 0;
  std::size_t positives = 0;
  std::size_t couplings = 0;
  for (int round = 0; round < 400; ++round) {
    FinSet a1 = letters(1 + rng.below(5));
    FinSet a2 = numerals(1 + rng.below(5));
    Partition e = random_partition(a1, a2, rng);
    Rel s = cross_relation(e, a1, a2);
    auto [f1, f2] = rng.coin() ? respecting_pair(a1, a2, e, labels, rng)
                               : std::pair{random_plts(a1, labels, rng), random_plts(a2, labels, rng)};
    bool flow = check_prob_bisimulation(s, f1, f2).holds;
    bool ls = larsen_skou_check(f1, f2, generated_partition(s)).holds;
    CHECK(flow == ls);
    ++instances;
    if (flow) ++positives;

    // the explicit coupling wherever the flow check succeeds
    for (const auto& p : s.pairs()) {
      for (const auto& l : labels) {
        const RatDist* nu1 = f1.step(p.first, l);
        const RatDist* nu2 = f2.step(p.second, l);
        if (!nu1 || !nu2 || !lift_member_dist(*nu1, *nu2, s, false).member) continue;
        RatDist c = converse_coupling(*nu1, *nu2, s);
        for (const auto& [q, w] : c.weights()) CHECK(s.carrier().contains(q));
        auto [m1, m2] = coupling_marginals(c, s);
        CHECK(m1 == *nu1);
        CHECK(m2 == *nu2);
        ++couplings;
      }
    }
  }
  CHECK(instances >= 300);
  CHECK(positives >= 100);
  CHECK(couplings >= 200);
}

TEST_CASE("prob bisimulation gives equal class masses for any relation") {
  Rng rng(77);
  FinSet labels = states({"a"});
  std::size_t hits = 0;
  for (int round = 0; round < 400; ++round) {
    FinSet a1 = letters(1 + rng.below(4));
    FinSet a2 = numerals(1 + rng.below(4));
    Partition e = random_partition(a1, a2, rng);
    auto [f1, f2] = respecting_pair(a1, a2, e, labels, rng);
    // thin the saturated relation down to an arbitrary sub-relation
    std::vector<std::pair<Atom, Atom>> pairs;
    for (const auto& p : cross_relation(e, a1, a2).pairs())
      if (rng.below(4) != 0) pairs.push_back(p);
    Rel s(a1, a2, std::move(pairs));
    if (!check_prob_bisimulation(s, f1, f2).holds) continue;
    ++hits;
    Partition classes = generated_partition(s);
    for (const auto& p : s.pairs())
      for (const auto& l : labels)
        for (const auto& cls : classes)
          CHECK(f1.mass_into(p.first, l, cls.left) == f2.mass_into(p.second, l, cls.right));
  }
  CHECK(hits >= 50);
}
