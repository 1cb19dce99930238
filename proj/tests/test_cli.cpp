#include <doctest.h>

#include <fstream>
#include <sstream>

#include "monarel/cli.hpp"
#include "monarel/io.hpp"
#include "support.hpp"

using namespace monarel;
using monarel::testing::L;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MONAREL_TEST_DATA) + "/" + name; }

std::string scratch(const std::string& name, const std::string& text) {
  std::string path = std::string(MONAREL_TEST_SCRATCH) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("member: infeasible half/half against a Dirac prints the cut") {
  auto r = run({"member", "--monad", "dist", "--S", data("half_s.json"), "--nu1",
                data("half_nu1.json"), "--nu2", data("dirac_z.json")});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "U = {u}"));
  CHECK(contains(r.out, "nu1(U) = 1/2 > nu2(S(U)) = 0"));

  auto q = run({"member", "--query", data("query_half.json"), "--json"});
  CHECK(q.code == 1);
  auto j = io::parse(q.out, "stdout");
  CHECK(j["member"] == false);
  CHECK(j["violated_subset"] == io::Json::array({"u"}));
}

TEST_CASE("member: the coupling witness has the requested marginals") {
  auto r = run({"member", "--monad", "dist", "--S", data("half_s.json"), "--nu1",
                data("half_nu1.json"), "--nu2", data("half_nu2.json"), "--json"});
  REQUIRE(r.code == 0);
  auto j = io::parse(r.out, "stdout");
  CHECK(j["member"] == true);

  Rel s = io::rel_from({io::read_file(data("half_s.json")), "s", ""});
  RatDist w = io::ratdist_from({j["witness"], "stdout", "/witness"}, s.carrier());
  auto [m1, m2] = coupling_marginals(w, s);
  CHECK(io::to_json(m1) == io::read_file(data("half_nu1.json")));
  CHECK(io::to_json(m2) == io::read_file(data("half_nu2.json")));
}

TEST_CASE("member: Egli-Milner answers for the powerset") {
  auto r = run({"member", "--query", data("query_powerset.json")});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "v in B1 has no S-partner in B2"));

  auto ok = run({"member", "--query", data("query_powerset.json"), "--monad", "nonempty-powerset"});
  CHECK(ok.code == 1);
}

TEST_CASE("bisimulations from files") {
  CHECK(run({"bisim", "--sys1", data("lts.json"), "--sys2", data("lts.json"), "--rel",
             data("lts_diag.json")})
            .code == 0);
  CHECK(run({"bisim", "--sys1", data("lts.json"), "--sys2", data("lts.json")}).code == 0);
  CHECK(run({"prob-bisim", "--sys1", data("plts.json"), "--sys2", data("plts.json"), "--rel",
             data("plts_merge.json")})
            .code == 0);

  auto bad = run({"prob-bisim", "--sys1", data("plts.json"), "--sys2", data("plts.json"), "--rel",
                  data("plts_st.json"), "--json"});
  CHECK(bad.code == 1);
  auto j = io::parse(bad.out, "stdout");
  CHECK(j["holds"] == false);
  CHECK(j["failure"]["a1"] == "s");
  CHECK(j["failure"]["a2"] == "t");

  // an LTS is not accepted where distributions are expected, and vice versa
  CHECK(run({"prob-bisim", "--sys1", data("lts.json"), "--sys2", data("lts.json")}).code == 2);
  CHECK(run({"bisim", "--sys1", data("plts.json"), "--sys2", data("plts.json")}).code == 2);
}

TEST_CASE("max-bisim and larsen-skou") {
  auto m = run({"max-bisim", "--sys1", data("lts.json"), "--sys2", data("lts.json"), "--json"});
  REQUIRE(m.code == 0);
  auto j = io::parse(m.out, "stdout");
  CHECK(j["probabilistic"] == false);
  // q and r have the same behaviour, p differs
  Rel r = io::rel_from({j["relation"], "stdout", "/relation"});
  CHECK(r.contains(L("q"), L("r")));
  CHECK(!r.contains(L("p"), L("q")));

  CHECK(run({"larsen-skou", "--sys1", data("plts.json"), "--sys2", data("plts.json"), "--rel",
             data("plts_merge.json")})
            .code == 0);
  auto bad = run({"larsen-skou", "--sys1", data("plts.json"), "--sys2", data("plts.json"),
                  "--classes", data("classes_bad.json")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "fails"));
  CHECK(run({"larsen-skou", "--sys1", data("plts.json"), "--sys2", data("plts.json")}).code == 2);
}

TEST_CASE("check-laws exit codes") {
  CHECK(run({"check-laws", "--monad", "powerset", "--max-size", "2"}).code == 0);
  CHECK(run({"check-laws", "--monad", "dist", "--samples", "60", "--max-size", "2"}).code == 0);
  auto cart = run({"check-laws", "--monad", "powerset", "--check", "cartesian", "--max-size", "2"});
  CHECK(cart.code == 1);
  CHECK(contains(cart.out, "FAIL cartesian:pi1"));
  auto mut = run({"check-laws", "--monad", "powerset", "--mutant", "intersection-mult", "--check",
                  "monad", "--max-size", "2"});
  CHECK(mut.code == 1);
  CHECK(contains(mut.out, "FAIL monad:right-unit"));
  CHECK(run({"check-laws", "--monad", "nope"}).code == 2);
  CHECK(run({"check-laws", "--monad", "powerset", "--check", "nope"}).code == 2);
}

TEST_CASE("identical seeds give identical reports") {
  std::vector<std::string> laws{"check-laws", "--monad", "dist", "--samples", "40",
                                "--max-size", "2",       "--seed", "7",      "--json"};
  auto a = run(laws), b = run(laws);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto other = laws;
  other[8] = "8";
  CHECK(run(other).out != a.out);

  std::vector<std::string> lemma{"basic-lemma", "--term",    data("bind.ml"), "--sizes", "2,3",
                                 "--samples",   "20",       "--seed",        "3",       "--json"};
  auto c = run(lemma), d = run(lemma);
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
  CHECK(io::parse(c.out, "stdout")["seed"] == 3);
}

TEST_CASE("report JSON round-trips") {
  auto r = run({"check-laws", "--monad", "subdist", "--samples", "30", "--max-size", "1", "--json"});
  auto j = io::parse(r.out, "stdout");
  CHECK(io::dump(j) == r.out);
  CHECK(j["reports"].size() > 3);
  CHECK(j["reports"][0]["config"]["samples"] == 30);
}

TEST_CASE("metalanguage commands") {
  auto lr = run({"logrel", "--model1", data("model_letters.json"), "--model2",
                 data("model_numerals.json"), "--rels", data("rels_b.json"), "--type", "T b"});
  CHECK(lr.code == 0);
  CHECK(contains(lr.out, "{a,b}  ~  {0,1}"));
  // the models differ, so base relations are needed
  CHECK(run({"logrel", "--model1", data("model_letters.json"), "--model2",
             data("model_numerals.json"), "--type", "b"})
            .code == 2);
  CHECK(run({"logrel", "--model1", data("model_letters.json"), "--model2",
             data("model_letters.json"), "--type", "b ->"})
            .code == 2);

  auto bl = run({"basic-lemma", "--term", data("bind.ml")});
  CHECK(bl.code == 0);
  CHECK(contains(bl.out, "16 base relation choices (exhaustive)"));
  CHECK(run({"basic-lemma", "--judgment", "x : b |- f x"}).code == 2);
  CHECK(run({"basic-lemma", "--model1", data("model_letters.json"), "--model2",
             data("model_numerals.json"), "--rels", data("rels_b.json"), "--judgment",
             "x : b |- val x"})
            .code == 0);
}

TEST_CASE("lift and poset-lift") {
  auto l = run({"lift", "--monad", "powerset", "--S", data("half_s.json"), "--json"});
  REQUIRE(l.code == 0);
  auto j = io::parse(l.out, "stdout");
  Rel s = io::rel_from({io::read_file(data("half_s.json")), "s", ""});
  CHECK(io::rel_from({j["lifted"], "stdout", "/lifted"}) == lift_enumerate(powerset_monad(), s));
  CHECK(run({"lift", "--monad", "dist", "--S", data("half_s.json")}).code == 2);

  auto p = run({"poset-lift", "--a1", data("chain2.json"), "--a2", data("chain2.json"), "--S",
                data("chain_diag.json")});
  CHECK(p.code == 0);
  CHECK(contains(p.out, "pair sets agree"));
  CHECK(run({"poset-lift", "--a1", data("chain2.json"), "--a2", data("chain2.json"), "--S",
             data("chain_diag.json"), "--system", "sideways"})
            .code == 2);
}

TEST_CASE("malformed input is reported with its location") {
  auto r = run({"lift", "--monad", "powerset", "--S", data("bad.json")});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "bad.json: byte 43"));

  auto path = scratch("pairs.json", R"({"left":["u"],"right":["x"],"pairs":[["u","x"],["u"]]})");
  auto p = run({"lift", "--monad", "powerset", "--S", path});
  CHECK(p.code == 2);
  CHECK(contains(p.err, "at /pairs/1"));

  auto w = scratch("weights.json", R"({"weights":{"u":"1/2","v":"one half"}})");
  auto q = run({"member", "--monad", "dist", "--S", data("half_s.json"), "--nu1", w, "--nu2",
                data("dirac_z.json")});
  CHECK(q.code == 2);
  CHECK(contains(q.err, "at /weights/v"));

  CHECK(run({"lift", "--monad", "powerset", "--S", data("missing.json")}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"member", "--bogus"}).code == 2);
  CHECK(run({"bisim", "--sys1", data("lts.json")}).code == 2);
  CHECK(run({"check-laws", "--monad", "dist", "--samples", "many"}).code == 2);

  auto h = run({"--help"});
  CHECK(h.code == 0);
  for (const char* word : {"check-laws", "lift", "member", "bisim", "prob-bisim", "max-bisim",
                           "larsen-skou", "logrel", "basic-lemma", "poset-lift", "relation",
                           "dist", "lts", "plts", "classes", "poset", "model", "query",
                           "term file", "Exit codes"}) {
    CHECK_MESSAGE(contains(h.out, word), word);
  }
  CHECK(h.out == cli::help_text());
  CHECK(run({"member", "--help"}).code == 0);
}
