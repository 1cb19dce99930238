#include "monarel/cli.hpp"

#include <functional>
#include <sstream>

#include "CLI11.hpp"

#include "monarel/error.hpp"
#include "monarel/io.hpp"
#include "monarel/random.hpp"

namespace monarel::cli {

namespace {

using io::Json;
using io::Node;

const char* const kSchemas = R"HELP(JSON inputs
  set        ["a", "b", "(a,b)", "{a,b}"]
             elements are atom strings: names, (), (x,y), {x,y}, [1/2:x,1/2:y]
  function   {"dom": set, "cod": set, "map": {"a": "x", ...}}
  relation   {"left": set, "right": set, "pairs": [["a", "x"], ...]}
  dist       {"mode": "probability" | "subprobability",
              "weights": {"a": "1/2", "b": 1}}
             weights are "p/q" strings or integers; "mode" defaults to
             probability; an optional "carrier": set overrides the carrier
             implied by the command
  lts        {"states": set, "labels": set, "step": {"s|a": set, ...}}
             missing steps have no successors
  plts       {"states": set, "labels": set, "mode": ..., "step": {"s|a": dist}}
             missing steps are the zero measure; "mode" is optional
  classes    [{"left": set, "right": set}, ...], a partition of A1 + A2
  poset      {"carrier": set, "leq": [["a", "b"], ...]}
             reflexive pairs may be omitted
  model      {"monad": name, "base": {"b": set, ...}}
  relations  {"b": relation, ...}, one relation per base type
  query      {"monad": name, "S": relation, "nu1": value, "nu2": value}
             values are sets for the powersets, dist objects for dist and
             subdist, atom strings otherwise
  term file  a judgment such as  x : b, f : b -> T b |- let val y = f x in val (x, y)
             (grammar in docs/grammar.md)

Reports (--json)
  check-laws   {"command", "monad", "seed", "passed", "reports": [{"check",
               "monad", "config", "passed", "cases", "laws": [{"id", "passed",
               "exhaustive_cases", "sampled_cases", "counterexample"?: {"diagram",
               "input", "lhs", "rhs", "sizes"}}]}]}
  lift         {"command", "monad", "seed", "S": relation, "lifted": relation}
  member       {"command", "monad", "seed", "member", "witness", ...}; dist adds
               "mass_mismatch" and "violated_subset", "nu1_U", "nu2_SU" on failure;
               the powersets add "unmatched"
  bisim, prob-bisim
               {"command", "seed", "holds", "checked", "failure"?: {"a1", "a2",
               "l1", "l2", "step1", "step2", "reason", "violated_subset"?,
               "lhs"?, "rhs"?}}
  max-bisim    {"command", "seed", "probabilistic", "relation": relation}
  larsen-skou  {"command", "seed", "holds", "classes", "failure"?: {"a", "b",
               "label", "class", "mass_a", "mass_b"}}
  logrel       {"command", "seed", "type", "relation": relation}
  basic-lemma  {"command", "seed", "judgment", "type", "monad", "relations",
               "relation_mode", "cases", "passed", "counterexample"?: {"relations",
               "input", "lhs", "rhs"}}
  poset-lift   {"command", "seed", "systems": [{"system", "pairs": relation,
               "order": [[x, y], ...]}], "same_pairs", "same_order"}

Monads: powerset, nonempty-powerset, dist, subdist, identity, upper
Exit codes: 0 pass or true, 1 fail or false (counterexample printed),
            2 usage or input error (malformed JSON reports the location))HELP";

struct Common {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t samples = 500;
  std::size_t max_size = 3;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Emit the structured JSON report");
  sub->add_option("--seed", c.seed, "Seed for every randomized step")->capture_default_str();
  sub->add_option("--samples", c.samples, "Sampled cases per randomized suite")->capture_default_str();
  sub->add_option("--max-size", c.max_size, "Largest base carrier for law checks")
      ->capture_default_str();
}

MonadInstance monad_named(const std::string& name) {
  if (name == "upper") return upper_monad();
  try {
    return monad_by_name(name);
  } catch (const Error&) {
    throw Error("unknown monad '" + name +
                "' (expected powerset, nonempty-powerset, dist, subdist, identity or upper)");
  }
}

MonadInstance apply_mutant(const std::string& name, const MonadInstance& t) {
  if (name == "intersection-mult") return mutant_intersection_mult(t);
  if (name == "unweighted-mult") return mutant_unweighted_mult(t);
  if (name == "swapped-strength") return mutant_swapped_strength(t);
  if (name == "least-point-strength") return mutant_least_point_strength(t);
  if (name == "left-biased-mediator") return mutant_left_biased_mediator(t);
  if (name == "right-biased-mediator") return mutant_right_biased_mediator(t);
  throw Error("unknown mutant " + name);
}

Json header(const std::string& command, const Common& c) {
  return Json{{"command", command}, {"seed", c.seed}};
}

void print_pairs(std::ostream& os, const Rel& r) {
  for (const auto& [a, b] : r.pairs()) os << "  " << a.str() << "  ~  " << b.str() << "\n";
}

std::string join(const std::vector<Atom>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
  return s + "}";
}

Json atoms_json(const std::vector<Atom>& xs) {
  Json out = Json::array();
  for (const Atom& x : xs) out.push_back(x.str());
  return out;
}

Node root(const Json& j, const std::string& source) { return Node{j, source, ""}; }

// ------------------------------------------------------------ check-laws

struct LawArgs {
  std::string monad;
  std::vector<std::string> checks;
  std::string mutant;
};

int cmd_check_laws(const LawArgs& a, const Common& c, std::ostream& out) {
  MonadInstance t = monad_named(a.monad);
  if (!a.mutant.empty()) t = apply_mutant(a.mutant, t);
  LawConfig cfg;
  cfg.max_size = c.max_size;
  cfg.samples = c.samples;
  cfg.seed = c.seed;
  std::vector<LawReport> reports;
  if (a.checks.empty()) {
    for (auto& r : run_all_checks(t, cfg)) {
      if (r.check != "cartesian") reports.push_back(std::move(r));
    }
  } else {
    for (const auto& name : a.checks) reports.push_back(run_check(name, t, cfg));
  }
  bool passed = true;
  for (const auto& r : reports) passed = passed && r.passed();

  if (c.json) {
    Json j = header("check-laws", c);
    j["monad"] = t.name;
    if (!a.mutant.empty()) j["mutant"] = a.mutant;
    j["passed"] = passed;
    j["reports"] = Json::array();
    for (const auto& r : reports) j["reports"].push_back(io::to_json(r));
    out << io::dump(j);
  } else {
    out << "monad " << t.name << ", seed " << c.seed << ", samples " << c.samples << ", max-size " << c.max_size << "\n";
    for (const auto& r : reports) {
      out << r.check << ": " << (r.passed() ? "passed" : "FAILED") << " (" << r.cases()
          << " cases)\n";
      for (const auto& l : r.laws) {
        out << "  " << (l.passed ? "ok  " : "FAIL") << " " << l.id << "  (" << l.exhaustive_cases
            << " exhaustive, " << l.sampled_cases << " sampled)\n";
        if (l.counterexample) {
          const auto& ce = *l.counterexample;
          out << "       diagram: " << ce.diagram << "\n"
              << "       input:   " << ce.input << "\n"
              << "       lhs:     " << ce.lhs << "\n"
              << "       rhs:     " << ce.rhs << "\n";
        }
      }
    }
    out << (passed ? "all laws hold\n" : "law violations found\n");
  }
  return passed ? 0 : 1;
}

// ------------------------------------------------------------ lift / member

int cmd_lift(const std::string& monad, const std::string& s_path, const Common& c,
             std::ostream& out) {
  MonadInstance t = monad_named(monad);
  if (!t.enumerable) throw Error("lift needs an enumerable monad; " + t.name + " is not (use member)");
  Json sj = io::read_file(s_path);
  Rel s = io::rel_from(root(sj, s_path));
  auto size = t.apply_size(s.size());
  if (!size || *size > (std::size_t{1} << 20)) {
    throw Error("T S is too large to enumerate (|S| = " + std::to_string(s.size()) + ")");
  }
  Rel lifted = lift_enumerate(t, s);
  if (c.json) {
    Json j = header("lift", c);
    j["monad"] = t.name;
    j["S"] = io::to_json(s);
    j["lifted"] = io::to_json(lifted);
    out << io::dump(j);
  } else {
    out << "lifted relation of " << t.name << " over |S| = " << s.size() << ": " << lifted.size()
        << " pairs\n";
    print_pairs(out, lifted);
  }
  return 0;
}

struct MemberArgs {
  std::string monad;
  std::string query;
  std::string s;
  std::string nu1;
  std::string nu2;
};

int cmd_member(const MemberArgs& a, const Common& c, std::ostream& out) {
  Json qj, sj, j1, j2;
  std::optional<Node> s_node, n1, n2;
  std::string monad = a.monad;
  if (!a.query.empty()) {
    qj = io::read_file(a.query);
    Node q = root(qj, a.query);
    if (monad.empty()) monad = q.at("monad").string();
    s_node.emplace(q.at("S"));
    n1.emplace(q.at("nu1"));
    n2.emplace(q.at("nu2"));
  } else {
    if (a.s.empty() || a.nu1.empty() || a.nu2.empty()) {
      throw Error("member needs --query or all of --S, --nu1, --nu2");
    }
    sj = io::read_file(a.s);
    j1 = io::read_file(a.nu1);
    j2 = io::read_file(a.nu2);
    s_node.emplace(root(sj, a.s));
    n1.emplace(root(j1, a.nu1));
    n2.emplace(root(j2, a.nu2));
  }
  if (monad.empty()) throw Error("no monad given (--monad or \"monad\" in the query)");
  MonadInstance t = monad_named(monad);
  Rel s = io::rel_from(*s_node);
  Atom v1 = io::monad_value_from(t, *n1, s.left());
  Atom v2 = io::monad_value_from(t, *n2, s.right());

  Json j = header("member", c);
  j["monad"] = t.name;
  std::ostringstream human;
  bool member = false;

  if (t.family == MonadFamily::distribution) {
    DistMode mode = t.name == "subdist" ? DistMode::subprobability : DistMode::probability;
    RatDist d1 = RatDist::from_atom(v1, s.left(), mode);
    RatDist d2 = RatDist::from_atom(v2, s.right(), mode);
    CouplingResult r = lift_member_dist(d1, d2, s);
    member = r.member;
    j["member"] = member;
    j["witness"] = r.witness ? io::to_json(*r.witness) : Json(nullptr);
    j["mass_mismatch"] = r.mass_mismatch;
    if (member) {
      human << "member: true\ncoupling on S:\n";
      for (const auto& [x, p] : r.witness->weights()) {
        human << "  " << x.str() << "  " << format_rational(p) << "\n";
      }
    } else if (r.mass_mismatch) {
      human << "member: false\nmasses differ: " << format_rational(d1.mass()) << " vs "
            << format_rational(d2.mass()) << "\n";
    } else {
      human << "member: false\n";
      if (r.violated_subset) {
        j["violated_subset"] = atoms_json(*r.violated_subset);
        j["nu1_U"] = format_rational(r.violated_lhs);
        j["nu2_SU"] = format_rational(r.violated_rhs);
        human << "cut witness: U = " << join(*r.violated_subset) << " with nu1(U) = "
              << format_rational(r.violated_lhs) << " > nu2(S(U)) = "
              << format_rational(r.violated_rhs) << "\n";
      }
    }
  } else if (t.family == MonadFamily::powerset || t.family == MonadFamily::nonempty_powerset) {
    FinSet b1 = FinSet::from_range({v1.members().begin(), v1.members().end()});
    FinSet b2 = FinSet::from_range({v2.members().begin(), v2.members().end()});
    member = lift_member_powerset(b1, b2, s);
    j["member"] = member;
    if (member) {
      std::vector<std::pair<Atom, Atom>> ps;
      for (const auto& [x, y] : s.pairs()) {
        if (b1.contains(x) && b2.contains(y)) ps.emplace_back(x, y);
      }
      Rel w(b1, b2, ps);
      j["witness"] = io::to_json(w);
      human << "member: true\nwitness R = S restricted to B1 x B2:\n";
      print_pairs(human, w);
    } else {
      j["witness"] = nullptr;
      Json unmatched = Json::array();
      human << "member: false\n";
      for (const Atom& x : b1.elements()) {
        bool ok = false;
        for (const Atom& y : b2.elements()) ok = ok || s.contains(x, y);
        if (!ok) {
          unmatched.push_back(Json{{"side", 1}, {"element", x.str()}});
          human << "  " << x.str() << " in B1 has no S-partner in B2\n";
        }
      }
      for (const Atom& y : b2.elements()) {
        bool ok = false;
        for (const Atom& x : b1.elements()) ok = ok || s.contains(x, y);
        if (!ok) {
          unmatched.push_back(Json{{"side", 2}, {"element", y.str()}});
          human << "  " << y.str() << " in B2 has no S-partner in B1\n";
        }
      }
      j["unmatched"] = unmatched;
    }
  } else {
    member = lift_member(t, v1, v2, s);
    j["member"] = member;
    j["witness"] = nullptr;
    human << "member: " << (member ? "true" : "false") << "\n";
  }

  if (c.json) out << io::dump(j);
  else out << human.str();
  return member ? 0 : 1;
}

// ------------------------------------------------------------ bisimulation

struct BisimArgs {
  std::string sys1;
  std::string sys2;
  std::string rel;
  std::string labels;
  std::string classes;
};

Json failure_json(const BisimFailure& f) {
  Json j{{"a1", f.a1.str()},   {"a2", f.a2.str()},       {"l1", f.l1.str()}, {"l2", f.l2.str()},
         {"step1", f.step1}, {"step2", f.step2}, {"reason", f.reason}};
  if (f.violated_subset) {
    j["violated_subset"] = atoms_json(*f.violated_subset);
    j["lhs"] = format_rational(f.lhs);
    j["rhs"] = format_rational(f.rhs);
  }
  return j;
}

std::optional<Rel> optional_rel(const std::string& path) {
  if (path.empty()) return std::nullopt;
  Json j = io::read_file(path);
  return io::rel_from(root(j, path));
}

Rel rel_or_diagonal(const std::string& path, const FinSet& s1, const FinSet& s2) {
  if (auto r = optional_rel(path)) return *r;
  if (s1 != s2) throw Error("--rel is required when the state sets differ");
  return Rel::diagonal(s1);
}

int report_bisim(const std::string& command, const BisimResult& r, const Common& c,
                 std::ostream& out) {
  if (c.json) {
    Json j = header(command, c);
    j["holds"] = r.holds;
    j["checked"] = r.checked;
    if (r.failure) j["failure"] = failure_json(*r.failure);
    out << io::dump(j);
  } else if (r.holds) {
    out << "bisimulation holds (" << r.checked << " steps checked)\n";
  } else {
    const auto& f = *r.failure;
    out << "not a bisimulation\n"
        << "  pair   " << f.a1.str() << " ~ " << f.a2.str() << "\n"
        << "  labels " << f.l1.str() << " ~ " << f.l2.str() << "\n"
        << "  step1  " << f.step1 << "\n"
        << "  step2  " << f.step2 << "\n"
        << "  reason " << f.reason << "\n";
    if (f.violated_subset) {
      out << "  cut    U = " << join(*f.violated_subset) << ": " << format_rational(f.lhs) << " > "
          << format_rational(f.rhs) << "\n";
    }
  }
  return r.holds ? 0 : 1;
}

int cmd_bisim(const BisimArgs& a, bool probabilistic, const Common& c, std::ostream& out) {
  Json j1 = io::read_file(a.sys1);
  Json j2 = io::read_file(a.sys2);
  Node n1 = root(j1, a.sys1), n2 = root(j2, a.sys2);
  std::optional<Rel> labels = optional_rel(a.labels);
  if (!probabilistic) {
    if (io::is_probabilistic(n1) || io::is_probabilistic(n2)) {
      throw Error("distribution-valued steps: use prob-bisim");
    }
    LTS f1 = io::lts_from(n1), f2 = io::lts_from(n2);
    Rel s = rel_or_diagonal(a.rel, f1.states(), f2.states());
    return report_bisim("bisim", check_bisimulation(s, f1, f2, labels), c, out);
  }
  PLTS f1 = io::plts_from(n1), f2 = io::plts_from(n2);
  Rel s = rel_or_diagonal(a.rel, f1.states(), f2.states());
  return report_bisim("prob-bisim", check_prob_bisimulation(s, f1, f2, labels), c, out);
}

int cmd_max_bisim(const BisimArgs& a, const Common& c, std::ostream& out) {
  Json j1 = io::read_file(a.sys1);
  Json j2 = io::read_file(a.sys2);
  Node n1 = root(j1, a.sys1), n2 = root(j2, a.sys2);
  std::optional<Rel> labels = optional_rel(a.labels);
  bool prob = io::is_probabilistic(n1) || io::is_probabilistic(n2);
  Rel r = prob ? largest_bisimulation(io::plts_from(n1), io::plts_from(n2), labels)
               : largest_bisimulation(io::lts_from(n1), io::lts_from(n2), labels);
  if (c.json) {
    Json j = header("max-bisim", c);
    j["probabilistic"] = prob;
    j["relation"] = io::to_json(r);
    out << io::dump(j);
  } else {
    out << "largest " << (prob ? "probabilistic " : "") << "bisimulation: " << r.size()
        << " pairs\n";
    print_pairs(out, r);
  }
  return 0;
}

int cmd_larsen_skou(const BisimArgs& a, const Common& c, std::ostream& out) {
  Json j1 = io::read_file(a.sys1);
  Json j2 = io::read_file(a.sys2);
  PLTS f1 = io::plts_from(root(j1, a.sys1));
  PLTS f2 = io::plts_from(root(j2, a.sys2));
  Partition e;
  if (!a.classes.empty()) {
    Json jc = io::read_file(a.classes);
    e = io::partition_from(root(jc, a.classes));
  } else if (!a.rel.empty()) {
    e = generated_partition(*optional_rel(a.rel));
  } else {
    throw Error("larsen-skou needs --classes or --rel");
  }
  LarsenSkouResult r = larsen_skou_check(f1, f2, e);
  if (c.json) {
    Json j = header("larsen-skou", c);
    j["holds"] = r.holds;
    j["classes"] = io::to_json(e);
    if (r.failure) {
      const auto& f = *r.failure;
      j["failure"] = Json{{"a", f.a.str()},
                          {"b", f.b.str()},
                          {"label", f.label.str()},
                          {"class", f.target_class},
                          {"mass_a", format_rational(f.mass_a)},
                          {"mass_b", format_rational(f.mass_b)}};
    }
    out << io::dump(j);
  } else if (r.holds) {
    out << "Larsen-Skou condition holds for " << e.size() << " classes\n";
  } else {
    const auto& f = *r.failure;
    const auto& cls = e[f.target_class];
    std::vector<Atom> members;
    for (const Atom& x : cls.left) members.push_back(tag_left(x));
    for (const Atom& x : cls.right) members.push_back(tag_right(x));
    out << "Larsen-Skou condition fails\n"
        << "  states " << f.a.str() << " and " << f.b.str() << " under " << f.label.str() << "\n"
        << "  class " << f.target_class << " = " << join(members) << ": "
        << format_rational(f.mass_a) << " vs " << format_rational(f.mass_b) << "\n";
  }
  return r.holds ? 0 : 1;
}

// ------------------------------------------------------------ metalanguage

std::map<std::string, Rel> diagonal_rels(const ml::Model& m1, const ml::Model& m2) {
  std::map<std::string, Rel> out;
  for (const auto& [name, a] : m1.base) {
    auto it = m2.base.find(name);
    if (it == m2.base.end() || it->second != a) {
      throw Error("--rels is required: base " + name + " differs between the models");
    }
    out.emplace(name, Rel::diagonal(a));
  }
  return out;
}

int cmd_logrel(const std::string& p1, const std::string& p2, const std::string& type,
               const std::string& rels, const Common& c, std::ostream& out) {
  Json j1 = io::read_file(p1), j2 = io::read_file(p2);
  ml::Model m1 = io::model_from(root(j1, p1));
  ml::Model m2 = io::model_from(root(j2, p2));
  ml::TypeP ty = ml::parse_type(type);
  std::map<std::string, Rel> base;
  if (!rels.empty()) {
    Json jr = io::read_file(rels);
    base = io::rels_from(root(jr, rels));
  } else {
    base = diagonal_rels(m1, m2);
  }
  Rel r = ml::logical_relation(m1, m2, base, ty);
  if (c.json) {
    Json j = header("logrel", c);
    j["type"] = ml::show(ty);
    j["relation"] = io::to_json(r);
    out << io::dump(j);
  } else {
    out << "logical relation at " << ml::show(ty) << ": " << r.size() << " pairs over "
        << r.left().size() << " x " << r.right().size() << "\n";
    print_pairs(out, r);
  }
  return 0;
}

void term_bases(const ml::TermP& t, std::vector<std::string>& out) {
  if (!t) return;
  if (t->annot) ml::collect_bases(t->annot, out);
  term_bases(t->a, out);
  term_bases(t->b, out);
}

struct LemmaArgs {
  std::string term;
  std::string judgment;
  std::string monad = "powerset";
  std::string sizes = "2";
  std::string model1;
  std::string model2;
  std::string rels;
};

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v > 8) {
      throw Error("--sizes expects N or N1,N2 with N <= 8, got \"" + text + "\"");
    }
    return static_cast<std::size_t>(v);
  };
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    auto n = num(text);
    return {n, n};
  }
  return {num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

int cmd_basic_lemma(const LemmaArgs& a, const Common& c, std::ostream& out) {
  std::string src;
  if (!a.term.empty()) src = io::read_text(a.term);
  else if (!a.judgment.empty()) src = a.judgment;
  else throw Error("basic-lemma needs --term or --judgment");
  ml::Judgment jd = ml::parse_judgment(src);
  ml::TypeP ty = ml::typecheck(jd.context, jd.term);

  ml::Model m1, m2;
  std::vector<std::map<std::string, Rel>> choices;
  std::string mode;
  if (!a.model1.empty() || !a.model2.empty()) {
    if (a.model1.empty() || a.model2.empty()) throw Error("--model1 and --model2 go together");
    Json j1 = io::read_file(a.model1), j2 = io::read_file(a.model2);
    m1 = io::model_from(root(j1, a.model1));
    m2 = io::model_from(root(j2, a.model2));
    if (!a.rels.empty()) {
      Json jr = io::read_file(a.rels);
      choices.push_back(io::rels_from(root(jr, a.rels)));
    } else {
      choices.push_back(diagonal_rels(m1, m2));
    }
    mode = "given";
  } else {
    MonadInstance t = monad_named(a.monad);
    if (!t.enumerable) throw Error("basic-lemma needs an enumerable monad");
    auto [n1, n2] = parse_sizes(a.sizes);
    std::vector<std::string> bases;
    for (const auto& [x, xt] : jd.context) ml::collect_bases(xt, bases);
    ml::collect_bases(ty, bases);
    term_bases(jd.term, bases);
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    m1 = ml::Model{t, {}};
    m2 = ml::Model{t, {}};
    for (const auto& b : bases) {
      m1.base[b] = letters(n1);
      m2.base[b] = numerals(n2);
    }
    // every combination of base relations when there are at most 256
    std::size_t bits = n1 * n2 * bases.size();
    if (bits <= 8) {
      mode = "exhaustive";
      for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
        std::map<std::string, Rel> rels;
        std::size_t bit = 0;
        for (const auto& b : bases) {
          std::vector<std::pair<Atom, Atom>> ps;
          for (const Atom& x : m1.base[b].elements()) {
            for (const Atom& y : m2.base[b].elements()) {
              if (mask >> bit++ & 1U) ps.emplace_back(x, y);
            }
          }
          rels.emplace(b, Rel(m1.base[b], m2.base[b], ps));
        }
        choices.push_back(std::move(rels));
      }
    } else {
      mode = "sampled";
      Rng rng(c.seed);
      for (std::size_t k = 0; k < c.samples; ++k) {
        std::map<std::string, Rel> rels;
        for (const auto& b : bases) {
          std::vector<std::pair<Atom, Atom>> ps;
          for (const Atom& x : m1.base[b].elements()) {
            for (const Atom& y : m2.base[b].elements()) {
              if (rng.coin()) ps.emplace_back(x, y);
            }
          }
          rels.emplace(b, Rel(m1.base[b], m2.base[b], ps));
        }
        choices.push_back(std::move(rels));
      }
    }
  }

  std::size_t cases = 0;
  std::optional<std::pair<std::map<std::string, Rel>, Counterexample>> failure;
  for (const auto& rels : choices) {
    ml::LogicalRelation lr(m1, m2, rels);
    LawReport r = ml::basic_lemma_check(lr, jd, 20000, c.seed);
    cases += r.cases();
    if (const LawResult* f = r.first_failure()) {
      failure.emplace(rels, *f->counterexample);
      break;
    }
  }

  std::string shown = ml::show(jd.term);
  if (c.json) {
    Json j = header("basic-lemma", c);
    j["judgment"] = shown;
    j["type"] = ml::show(ty);
    j["monad"] = m1.monad.name;
    j["relations"] = choices.size();
    j["relation_mode"] = mode;
    j["cases"] = cases;
    j["passed"] = !failure;
    if (failure) {
      Json rels = Json::object();
      for (const auto& [b, r] : failure->first) rels[b] = io::to_json(r);
      j["counterexample"] = Json{{"relations", rels},
                                 {"input", failure->second.input},
                                 {"lhs", failure->second.lhs},
                                 {"rhs", failure->second.rhs}};
    }
    out << io::dump(j);
  } else {
    out << shown << " : " << ml::show(ty) << "\n"
        << "monad " << m1.monad.name << ", " << choices.size() << " base relation choices ("
        << mode << "), " << cases << " environment pairs\n";
    if (!failure) {
      out << "Basic Lemma holds\n";
    } else {
      out << "Basic Lemma FAILS\n";
      for (const auto& [b, r] : failure->first) out << "  " << b << " = " << r.str() << "\n";
      out << "  environments " << failure->second.input << "\n"
          << "  denotations  " << failure->second.lhs << " vs " << failure->second.rhs << "\n";
    }
  }
  return failure ? 1 : 0;
}

// ------------------------------------------------------------ posets

struct PosetArgs {
  std::string a1;
  std::string a2;
  std::string s;
  std::string order;
  std::string system = "both";
};

int cmd_poset_lift(const PosetArgs& a, const Common& c, std::ostream& out) {
  Json j1 = io::read_file(a.a1), j2 = io::read_file(a.a2), js = io::read_file(a.s);
  FinPoset p1 = io::poset_from(root(j1, a.a1));
  FinPoset p2 = io::poset_from(root(j2, a.a2));
  Rel s = io::rel_from(root(js, a.s));
  OrderedRel os = inherited_order(s, p1, p2);
  if (!a.order.empty()) {
    Json jo = io::read_file(a.order);
    os = ordered_rel(s, p1, p2, io::poset_from(root(jo, a.order)));
  }
  std::vector<OrdSystem> systems;
  if (a.system == "both") systems = {OrdSystem::inherited, OrdSystem::generated};
  else systems = {parse_ord_system(a.system)};

  std::vector<OrderedRel> lifts;
  for (OrdSystem sys : systems) lifts.push_back(lift_relation_ord(os, p1, p2, sys));
  bool same_pairs = true, same_order = true;
  if (lifts.size() == 2) {
    same_pairs = lifts[0].rel == lifts[1].rel;
    same_order = same_pairs && lifts[0].order == lifts[1].order;
  }

  if (c.json) {
    Json j = header("poset-lift", c);
    j["systems"] = Json::array();
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      Json order = Json::array();
      for (const auto& [x, y] : lifts[i].order.strict_pairs()) {
        order.push_back(Json::array({x.str(), y.str()}));
      }
      j["systems"].push_back(
          Json{{"system", to_string(systems[i])}, {"pairs", io::to_json(lifts[i].rel)}, {"order", order}});
    }
    j["same_pairs"] = same_pairs;
    j["same_order"] = same_order;
    out << io::dump(j);
  } else {
    for (std::size_t i = 0; i < lifts.size(); ++i) {
      out << to_string(systems[i]) << ": " << lifts[i].rel.size() << " pairs, "
          << lifts[i].order.strict_pairs().size() << " strict order pairs\n";
      print_pairs(out, lifts[i].rel);
      for (const auto& [x, y] : lifts[i].order.strict_pairs()) {
        out << "  " << x.str() << "  <  " << y.str() << "\n";
      }
    }
    if (lifts.size() == 2) {
      out << "pair sets " << (same_pairs ? "agree" : "DIFFER") << ", orderings "
          << (same_order ? "agree" : "differ") << "\n";
    }
  }
  return same_pairs ? 0 : 1;
}

// ------------------------------------------------------------ driver

struct App {
  CLI::App app{"Monad liftings to relations: law checks, lifted relations, logical relations "
               "and bisimulations over finite data.",
               "monarel"};
  Common common;
  LawArgs laws;
  std::string lift_monad, lift_s;
  MemberArgs member;
  BisimArgs bisim, prob, maxb, ls;
  std::string lr_m1, lr_m2, lr_type, lr_rels;
  LemmaArgs lemma;
  PosetArgs poset;

  CLI::App* s_laws;
  CLI::App* s_lift;
  CLI::App* s_member;
  CLI::App* s_bisim;
  CLI::App* s_prob;
  CLI::App* s_max;
  CLI::App* s_ls;
  CLI::App* s_logrel;
  CLI::App* s_lemma;
  CLI::App* s_poset;

  App() {
    app.footer(kSchemas);
    app.require_subcommand(1);

    s_laws = app.add_subcommand("check-laws", "Check the coherence laws of a monad");
    s_laws->add_option("--monad", laws.monad, "Monad name")->required();
    s_laws->add_option("--check", laws.checks,
                       "Check to run (repeatable): monad, strength, mediator, commutative, "
                       "cartesian, derived, morphism, strong-morphism, monoidal-morphism; "
                       "default: all that apply except cartesian");
    s_laws->add_option("--mutant", laws.mutant,
                       "Corrupt the monad first: intersection-mult, unweighted-mult, "
                       "swapped-strength, least-point-strength, left-biased-mediator, "
                       "right-biased-mediator");
    add_common(s_laws, common);

    s_lift = app.add_subcommand("lift", "Enumerate the lifted relation of S");
    s_lift->add_option("--monad", lift_monad, "Enumerable monad")->required();
    s_lift->add_option("--S", lift_s, "Relation file")->required();
    add_common(s_lift, common);

    s_member = app.add_subcommand("member", "Decide membership in the lifted relation");
    s_member->add_option("--monad", member.monad, "Monad (overrides the query)");
    s_member->add_option("--query", member.query, "Query file");
    s_member->add_option("--S", member.s, "Relation file");
    s_member->add_option("--nu1", member.nu1, "Value file for the left side");
    s_member->add_option("--nu2", member.nu2, "Value file for the right side");
    add_common(s_member, common);

    auto systems = [&](CLI::App* sub, BisimArgs& b, bool rel) {
      sub->add_option("--sys1", b.sys1, "First system (lts or plts)")->required();
      sub->add_option("--sys2", b.sys2, "Second system")->required();
      if (rel) sub->add_option("--rel", b.rel, "Relation between the states (default: diagonal)");
      sub->add_option("--labels", b.labels, "Relation between the labels (default: diagonal)");
      add_common(sub, common);
    };
    s_bisim = app.add_subcommand("bisim", "Check that S is a strong bisimulation");
    systems(s_bisim, bisim, true);
    s_prob = app.add_subcommand("prob-bisim", "Check that S is a probabilistic bisimulation");
    systems(s_prob, prob, true);
    s_max = app.add_subcommand("max-bisim", "Compute the largest bisimulation");
    systems(s_max, maxb, false);

    s_ls = app.add_subcommand("larsen-skou", "Check the Larsen-Skou condition for a partition");
    s_ls->add_option("--sys1", ls.sys1, "First plts")->required();
    s_ls->add_option("--sys2", ls.sys2, "Second plts")->required();
    s_ls->add_option("--classes", ls.classes, "Partition of A1 + A2");
    s_ls->add_option("--rel", ls.rel, "Relation; its generated equivalence is checked");
    add_common(s_ls, common);

    s_logrel = app.add_subcommand("logrel", "Logical relation at a type");
    s_logrel->add_option("--model1", lr_m1, "First model")->required();
    s_logrel->add_option("--model2", lr_m2, "Second model")->required();
    s_logrel->add_option("--type", lr_type, "Type, e.g. \"T (b -> b)\"")->required();
    s_logrel->add_option("--rels", lr_rels, "Base relations (default: diagonal)");
    add_common(s_logrel, common);

    s_lemma = app.add_subcommand("basic-lemma", "Check the Basic Lemma for a judgment");
    s_lemma->add_option("--term", lemma.term, "File holding a judgment");
    s_lemma->add_option("--judgment", lemma.judgment, "Judgment text");
    s_lemma->add_option("--monad", lemma.monad, "Monad of the generated models")
        ->capture_default_str();
    s_lemma->add_option("--sizes", lemma.sizes,
                        "Base carrier sizes N or N1,N2; every base relation is tried when "
                        "there are at most 256 choices, otherwise --samples are drawn")
        ->capture_default_str();
    s_lemma->add_option("--model1", lemma.model1, "First model (instead of --sizes)");
    s_lemma->add_option("--model2", lemma.model2, "Second model");
    s_lemma->add_option("--rels", lemma.rels, "Base relations for the given models");
    add_common(s_lemma, common);

    s_poset = app.add_subcommand("poset-lift", "Lift an ordered relation to upper sets");
    s_poset->add_option("--a1", poset.a1, "First poset")->required();
    s_poset->add_option("--a2", poset.a2, "Second poset")->required();
    s_poset->add_option("--S", poset.s, "Relation file")->required();
    s_poset->add_option("--order", poset.order, "Order on the pairs of S (default: inherited)");
    s_poset->add_option("--system", poset.system, "inherited, generated or both")
        ->capture_default_str();
    add_common(s_poset, common);
  }

  int dispatch(std::ostream& out) {
    if (s_laws->parsed()) return cmd_check_laws(laws, common, out);
    if (s_lift->parsed()) return cmd_lift(lift_monad, lift_s, common, out);
    if (s_member->parsed()) return cmd_member(member, common, out);
    if (s_bisim->parsed()) return cmd_bisim(bisim, false, common, out);
    if (s_prob->parsed()) return cmd_bisim(prob, true, common, out);
    if (s_max->parsed()) return cmd_max_bisim(maxb, common, out);
    if (s_ls->parsed()) return cmd_larsen_skou(ls, common, out);
    if (s_logrel->parsed()) return cmd_logrel(lr_m1, lr_m2, lr_type, lr_rels, common, out);
    if (s_lemma->parsed()) return cmd_basic_lemma(lemma, common, out);
    if (s_poset->parsed()) return cmd_poset_lift(poset, common, out);
    return 2;
  }
};

}  // namespace

std::string help_text() {
  App a;
  return a.app.help();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  App a;
  std::vector<const char*> argv{"monarel"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    a.app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = a.app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return a.dispatch(out);
  } catch (const std::exception& e) {
    err << "monarel: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace monarel::cli
