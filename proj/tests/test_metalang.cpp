#include <doctest.h>

#include "monarel/error.hpp"
#include "monarel/lifting.hpp"
#include "monarel/metalang.hpp"
#include "support.hpp"

using namespace monarel;
using namespace monarel::ml;
using monarel::testing::random_rel;

namespace {

Model model(const MonadInstance& t, FinSet b) { return Model{t, {{"b", std::move(b)}}}; }

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Atom eval_in(Interpreter& in, const char* judgment, const std::vector<Atom>& env) {
  Judgment j = parse_judgment(judgment);
  typecheck(j.context, j.term);
  return in.eval(j.context, env, j.term);
}

}  // namespace

TEST_CASE("types print with minimal parentheses and parse back") {
  for (const char* src : {"b", "Unit", "b * b", "b -> b", "b -> b -> b", "(b -> b) -> b", "T b",
                          "T T b", "T (b * b)", "T (b -> T b)", "b * b * b", "b * (b * b)",
                          "(T b -> b) * Unit"}) {
    TypeP t = parse_type(src);
    CHECK(show(t) == src);
    CHECK(same_type(parse_type(show(t)), t));
  }
  CHECK(parse_type("b -> b -> b")->right->kind == Type::Kind::arrow);
  CHECK(parse_type("b * b * b")->left->kind == Type::Kind::prod);
  CHECK(parse_type("T b * b")->kind == Type::Kind::prod);
}

TEST_CASE("terms print and parse back") {
  for (const char* src :
       {"x", "()", "(x, y)", "fst p", "snd (f x)", "f x y", "(f x) y", "\\x:b. x",
        "\\f:b -> T b. \\x:b. f x", "val (x, y)", "let val z = m in val (x, z)",
        "let val z = let val u = m in val u in f z", "(\\x:b. x) y", "fst p x"}) {
    TermP t = parse_term(src);
    CHECK(show(parse_term(show(t))) == show(t));
  }
  CHECK(show(parse_term("(f x) y")) == "f x y");
  CHECK(show(parse_term("λx:b. x")) == "\\x:b. x");
  CHECK(parse_term("fst p x")->kind == Term::Kind::app);
  CHECK(term_size(parse_term("let val z = m in val (x, z)")) == 6);
}

TEST_CASE("syntax errors carry positions") {
  CHECK(error_of([] { parse_term("let val = x in x"); }).starts_with("position 8:"));
  CHECK(error_of([] { parse_term("(x, y"); }).starts_with("position 5:"));
  CHECK(error_of([] { parse_term("x $ y"); }).starts_with("position 2:"));
  CHECK(error_of([] { parse_type("b -> "); }).starts_with("position 5:"));
  CHECK(error_of([] { parse_term("fst"); }).starts_with("position 3:"));
  CHECK(error_of([] { parse_judgment("x : b |- x )"); }).starts_with("position 11:"));
  CHECK(error_of([] { parse_term("let val x = m val x"); }).find("expected 'in'") !=
        std::string::npos);
}

TEST_CASE("typechecking") {
  auto type_of = [](const char* src) {
    Judgment j = parse_judgment(src);
    return show(typecheck(j.context, j.term));
  };
  CHECK(type_of("x : b |- x") == "b");
  CHECK(type_of("|- ()") == "Unit");
  CHECK(type_of("x : b, y : b |- (x, y)") == "b * b");
  CHECK(type_of("p : b * Unit |- snd p") == "Unit");
  CHECK(type_of("|- \\x:b. val x") == "b -> T b");
  CHECK(type_of("m : T b, x : b |- let val z = m in val (x, z)") == "T (b * b)");
  CHECK(type_of("f : b -> T b, m : T b |- let val z = m in f z") == "T b");
  CHECK(type_of("x : b, x : Unit |- x") == "Unit");
  CHECK(type_of("\\x:b. \\x:T b. x") == "b -> T b -> T b");

  auto error = [](const char* src) {
    return error_of([&] {
      Judgment j = parse_judgment(src);
      typecheck(j.context, j.term);
    });
  };
  CHECK(error("x : b |- y").find("unbound variable 'y'") != std::string::npos);
  CHECK(error("x : b |- fst x").find("expects a pair") != std::string::npos);
  CHECK(error("x : b |- x x").find("non-function") != std::string::npos);
  CHECK(error("f : b -> b, u : Unit |- f u").starts_with("position 26:"));
  CHECK(error("x : b |- let val y = x in val y").find("binds a computation") != std::string::npos);
  CHECK(error("m : T b |- let val y = m in y").find("must be a computation") != std::string::npos);
}

TEST_CASE("denotations") {
  Interpreter in(model(powerset_monad(), letters(2)));
  CHECK(in.denote(parse_type("b")).size() == 2);
  CHECK(in.denote(parse_type("T b")).size() == 4);
  CHECK(in.denote(parse_type("b -> T b")).size() == 16);
  CHECK(in.denote(parse_type("T (b -> b)")).size() == 16);
  CHECK(in.denote(parse_type("b * Unit")).size() == 2);
  CHECK(in.denote_size(parse_type("T T T T b")) == std::nullopt);
  CHECK_THROWS_AS(in.denote(parse_type("T T T T b")), Error);
  CHECK_THROWS_AS(in.denote(parse_type("c")), Error);
  CHECK_THROWS_AS(Interpreter(model(dist_monad(DistMode::probability), letters(2))), Error);
}

TEST_CASE("evaluation in the powerset model") {
  Interpreter in(model(powerset_monad(), letters(2)));
  Atom a = Atom::leaf("a");
  Atom b = Atom::leaf("b");
  Atom both = Atom::parse("{a,b}");

  // nondeterministic choice threads the context through the strength
  CHECK(eval_in(in, "x : b, m : T b |- let val z = m in val (x, z)", {a, both}).str() ==
        "{(a,a),(a,b)}");
  // a union {a} u {b} assembled from a choice between two branches
  Atom f = eval_in(in, "|- \\y:b. val y", {});
  CHECK(f.apply(a).str() == "{a}");
  CHECK(eval_in(in, "m : T b, f : b -> T b |- let val z = m in f z", {both, f}) == both);
  CHECK(eval_in(in, "m : T b |- let val z = m in val ()", {Atom::parse("{}")}).str() == "{}");
  CHECK(eval_in(in, "x : b, y : b |- fst (snd ((), (y, x)))", {a, b}) == b);
  CHECK(eval_in(in, "x : b |- (\\y:b. (y, x)) x", {b}).str() == "(b,b)");

  Atom g = eval_in(in, "|- \\p:b * b. snd p", {});
  CHECK(g.apply(Atom::parse("(a,b)")) == b);
}

TEST_CASE("beta and unit laws hold semantically") {
  for (const auto& t : {powerset_monad(), nonempty_powerset_monad(), identity_monad()}) {
    Interpreter in(model(t, letters(2)));
    const FinSet& tb = in.denote(parse_type("T b"));
    const FinSet& fs = in.denote(parse_type("b -> T b"));
    Judgment lhs = parse_judgment("x : b, f : b -> T b |- let val y = val x in f y");
    Judgment rhs = parse_judgment("x : b, f : b -> T b |- f x");
    for (const auto& x : letters(2))
      for (const auto& f : fs)
        CHECK(in.eval(lhs.context, {x, f}, lhs.term) == in.eval(rhs.context, {x, f}, rhs.term));
    Judgment eta = parse_judgment("m : T b |- let val y = m in val y");
    for (const auto& m : tb) CHECK(in.eval(eta.context, {m}, eta.term) == m);
    Judgment assoc1 = parse_judgment(
        "m : T b, f : b -> T b, g : b -> T b |- let val y = (let val z = m in f z) in g y");
    Judgment assoc2 = parse_judgment(
        "m : T b, f : b -> T b, g : b -> T b |- let val z = m in let val y = f z in g y");
    for (const auto& m : tb)
      for (const auto& f : fs)
        for (const auto& g : fs)
          CHECK(in.eval(assoc1.context, {m, f, g}, assoc1.term) ==
                in.eval(assoc2.context, {m, f, g}, assoc2.term));
  }
}

TEST_CASE("logical relation at arrow types against brute force") {
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    FinSet a1 = letters(1 + rng.below(3));
    FinSet a2 = numerals(1 + rng.below(3));
    Rel r = random_rel(a1, a2, rng);
    Model m1 = model(powerset_monad(), a1);
    Model m2 = model(powerset_monad(), a2);
    LogicalRelation lr(m1, m2, {{"b", r}});

    const Rel& arrow = lr.at(parse_type("b -> b"));
    for (const auto& f1 : all_functions(a1, a1)) {
      for (const auto& f2 : all_functions(a2, a2)) {
        bool expected = true;
        for (const auto& [x1, x2] : r.pairs())
          if (!r.contains(f1(x1), f2(x2))) expected = false;
        std::vector<std::pair<Atom, Atom>> e1;
        std::vector<std::pair<Atom, Atom>> e2;
        for (std::size_t i = 0; i < a1.size(); ++i) e1.emplace_back(a1[i], f1.images()[i]);
        for (std::size_t i = 0; i < a2.size(); ++i) e2.emplace_back(a2[i], f2.images()[i]);
        CHECK(arrow.contains(Atom::graph(e1), Atom::graph(e2)) == expected);
      }
    }

    const Rel& tb = lr.at(parse_type("T b"));
    CHECK(tb == lift_enumerate(powerset_monad(), r));
    const Rel& ttb = lr.at(parse_type("T T b"));
    if (tb.size() <= 16) CHECK(ttb == lift_enumerate(powerset_monad(), tb));
    for (const auto& p : ttb.pairs()) CHECK(lr.related(parse_type("T T b"), p.first, p.second));
  }
}

TEST_CASE("the diagonal is preserved by the logical relation") {
  for (const auto& t : {powerset_monad(), nonempty_powerset_monad(), identity_monad()}) {
    FinSet a = letters(2);
    LogicalRelation lr(model(t, a), model(t, a), {{"b", Rel::diagonal(a)}});
    for (const char* ty : {"b -> b", "T b", "T T b", "b -> T b", "T (b * b)", "(b -> b) -> T b",
                           "T (b -> b)", "Unit * T b"}) {
      CAPTURE(ty);
      TypeP tt = parse_type(ty);
      CHECK(lr.at(tt) == Rel::diagonal(lr.left().denote(tt)));
    }
  }
}

TEST_CASE("models must agree on the monad and the base relation must fit") {
  FinSet a = letters(2);
  CHECK_THROWS_AS(LogicalRelation(model(powerset_monad(), a), model(nonempty_powerset_monad(), a),
                                  {{"b", Rel::diagonal(a)}}),
                  Error);
  CHECK_THROWS_AS(LogicalRelation(model(powerset_monad(), a), model(powerset_monad(), letters(3)),
                                  {{"b", Rel::diagonal(a)}}),
                  Error);
  LogicalRelation lr(model(powerset_monad(), a), model(powerset_monad(), a), {});
  CHECK_THROWS_AS(lr.at(parse_type("b")), Error);
}

TEST_CASE("generated judgments are well typed, small and reproducible") {
  TermGenerator g1(9);
  TermGenerator g2(9);
  std::size_t lets = 0;
  for (int i = 0; i < 500; ++i) {
    Judgment j = g1.next();
    Judgment k = g2.next();
    CHECK(show(j.term) == show(k.term));
    CHECK(term_size(j.term) <= 8);
    CHECK_NOTHROW(typecheck(j.context, j.term));
    if (show(j.term).find("let val") != std::string::npos) ++lets;
  }
  CHECK(lets > 25);
}

TEST_CASE("the basic lemma holds for generated terms") {
  std::size_t terms = 0;
  std::size_t cases = 0;
  for (const auto& t : {powerset_monad(), nonempty_powerset_monad()}) {
    Rng rng(17);
    TermGenerator gen(t.name == "powerset" ? 101 : 202);
    for (int config = 0; config < 20; ++config) {
      FinSet a1 = letters(1 + rng.below(2));
      FinSet a2 = numerals(1 + rng.below(2));
      Rel r = random_rel(a1, a2, rng);
      LogicalRelation lr(model(t, a1), model(t, a2), {{"b", r}});
      for (int i = 0; i < 60; ++i) {
        Judgment j = gen.next();
        LawReport rep = basic_lemma_check(lr, j, 300, config);
        ++terms;
        cases += rep.cases();
        if (!rep.passed()) {
          const auto& ce = *rep.first_failure()->counterexample;
          FAIL_CHECK(ce.diagram << " with " << ce.input << ": " << ce.lhs << " vs " << ce.rhs);
        }
      }
    }
  }
  CHECK(terms >= 2000);
  MESSAGE("basic lemma: " << terms << " judgments, " << cases << " environment pairs");
  CHECK(cases > 10 * terms);
}

TEST_CASE("basic lemma reports the failing environment") {
  // a unit that inspects the name of its argument is not parametric
  MonadInstance broken = powerset_monad();
  broken.unit = [](const Atom& x) { return x == Atom::leaf("a") ? Atom::set({}) : Atom::set({x}); };
  FinSet a = letters(2);
  Rel swap(a, a, {{Atom::leaf("a"), Atom::leaf("b")}, {Atom::leaf("b"), Atom::leaf("a")}});
  LogicalRelation lr(model(broken, a), model(broken, a), {{"b", swap}});
  LawReport rep = basic_lemma_check(lr, parse_judgment("x : b |- val x"));
  REQUIRE_FALSE(rep.passed());
  const auto& ce = *rep.first_failure()->counterexample;
  CHECK(ce.input == "[x=a] ~ [x=b]");
  CHECK(ce.lhs == "{}");
  CHECK(ce.rhs == "{b}");
  CHECK(rep.check == "basic-lemma");
}
