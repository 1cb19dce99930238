#include "monarel/io.hpp"

#include <fstream>
#include <sstream>

#include "monarel/error.hpp"
#include "monarel/rational.hpp"

namespace monarel::io {

namespace {

std::string escape_pointer(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

const char* type_name(const Json& j) { return j.type_name(); }

template <typename F>
auto located(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

}  // namespace

Node Node::at(std::string_view key) const {
  const Json& obj = object();
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing key \"" + std::string(key) + "\"");
  return Node{*it, source, path + "/" + escape_pointer(key)};
}

Node Node::at(std::size_t index) const {
  const Json& arr = array();
  if (index >= arr.size()) fail("index " + std::to_string(index) + " out of range");
  return Node{arr[index], source, path + "/" + std::to_string(index)};
}

bool Node::has(std::string_view key) const { return value.is_object() && value.contains(key); }

void Node::fail(const std::string& message) const {
  throw Error(source + ": at " + (path.empty() ? std::string("/") : path) + ": " + message);
}

const std::string& Node::string() const {
  if (!value.is_string()) fail(std::string("expected a string, got ") + type_name(value));
  return value.get_ref<const std::string&>();
}

const Json& Node::object() const {
  if (!value.is_object()) fail(std::string("expected an object, got ") + type_name(value));
  return value;
}

const Json& Node::array() const {
  if (!value.is_array()) fail(std::string("expected an array, got ") + type_name(value));
  return value;
}

Json parse(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    // drop nlohmann's "[json.exception.parse_error.101] " prefix
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    throw Error(source + ": byte " + std::to_string(e.byte) + ": " + msg);
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_file(const std::string& path) { return parse(read_text(path), path); }

// ------------------------------------------------------------ decoding

Atom atom_from(const Node& n) {
  const std::string& s = n.string();
  return located(n, [&] { return Atom::parse(s); });
}

FinSet finset_from(const Node& n) {
  std::vector<Atom> xs;
  for (std::size_t i = 0; i < n.array().size(); ++i) xs.push_back(atom_from(n.at(i)));
  return located(n, [&] { return FinSet(std::move(xs)); });
}

FinFun finfun_from(const Node& n) {
  FinSet dom = finset_from(n.at("dom"));
  FinSet cod = finset_from(n.at("cod"));
  Node map = n.at("map");
  std::map<Atom, Atom> images;
  for (auto& [k, v] : map.object().items()) {
    Node entry = map.at(k);
    Atom key = located(entry, [&] { return Atom::parse(k); });
    images[key] = atom_from(entry);
  }
  std::vector<Atom> out;
  for (const Atom& x : dom.elements()) {
    auto it = images.find(x);
    if (it == images.end()) map.fail("no image for " + x.str());
    out.push_back(it->second);
  }
  if (images.size() != dom.size()) map.fail("keys outside the domain");
  return located(map, [&] { return FinFun(dom, cod, out); });
}

Rel rel_from(const Node& n) {
  FinSet left = finset_from(n.at("left"));
  FinSet right = finset_from(n.at("right"));
  Node pairs = n.at("pairs");
  std::vector<std::pair<Atom, Atom>> ps;
  for (std::size_t i = 0; i < pairs.array().size(); ++i) {
    Node p = pairs.at(i);
    if (p.array().size() != 2) p.fail("expected a pair [a, b]");
    ps.emplace_back(atom_from(p.at(0)), atom_from(p.at(1)));
  }
  return located(pairs, [&] { return Rel(left, right, ps); });
}

RatDist ratdist_from(const Node& n, const FinSet& carrier) {
  n.object();
  DistMode mode = DistMode::probability;
  if (n.has("mode")) {
    Node m = n.at("mode");
    mode = located(m, [&] { return parse_dist_mode(m.string()); });
  }
  FinSet c = n.has("carrier") ? finset_from(n.at("carrier")) : carrier;
  Node w = n.at("weights");
  std::map<Atom, Rational> weights;
  for (auto& [k, v] : w.object().items()) {
    Node entry = w.at(k);
    Atom key = located(entry, [&] { return Atom::parse(k); });
    Rational r;
    if (v.is_number_integer()) r = Rational(v.get<long long>());
    else r = located(entry, [&] { return parse_rational(entry.string()); });
    weights[key] = r;
  }
  return located(n, [&] { return RatDist(c, std::move(weights), mode); });
}

namespace {

StepKey step_key(const Node& entry, const std::string& key) {
  auto bar = key.rfind('|');
  if (bar == std::string::npos) entry.fail("step key must be \"state|label\"");
  return located(entry, [&] {
    return StepKey{Atom::parse(key.substr(0, bar)), Atom::parse(key.substr(bar + 1))};
  });
}

}  // namespace

bool is_probabilistic(const Node& n) {
  if (!n.has("step") || !n.value["step"].is_object()) return false;
  for (auto& [k, v] : n.value["step"].items()) {
    if (v.is_object()) return true;
  }
  return false;
}

LTS lts_from(const Node& n) {
  FinSet states = finset_from(n.at("states"));
  FinSet labels = finset_from(n.at("labels"));
  Node step = n.at("step");
  std::map<StepKey, FinSet> steps;
  for (auto& [k, v] : step.object().items()) {
    Node entry = step.at(k);
    steps[step_key(entry, k)] = finset_from(entry);
  }
  return located(n, [&] { return LTS(states, labels, std::move(steps)); });
}

PLTS plts_from(const Node& n) {
  FinSet states = finset_from(n.at("states"));
  FinSet labels = finset_from(n.at("labels"));
  DistMode mode = DistMode::probability;
  if (n.has("mode")) {
    Node m = n.at("mode");
    mode = located(m, [&] { return parse_dist_mode(m.string()); });
  }
  Node step = n.at("step");
  std::map<StepKey, RatDist> steps;
  for (auto& [k, v] : step.object().items()) {
    Node entry = step.at(k);
    RatDist d = ratdist_from(entry, states);
    if (!n.has("mode")) mode = d.mode();
    steps.emplace(step_key(entry, k), std::move(d));
  }
  return located(n, [&] { return PLTS(states, labels, mode, std::move(steps)); });
}

FinPoset poset_from(const Node& n) {
  FinSet carrier = finset_from(n.at("carrier"));
  std::vector<std::pair<Atom, Atom>> leq;
  if (n.has("leq")) {
    Node l = n.at("leq");
    for (std::size_t i = 0; i < l.array().size(); ++i) {
      Node p = l.at(i);
      if (p.array().size() != 2) p.fail("expected a pair [a, b]");
      leq.emplace_back(atom_from(p.at(0)), atom_from(p.at(1)));
    }
  }
  return located(n, [&] { return FinPoset(carrier, leq); });
}

ml::Model model_from(const Node& n) {
  Node m = n.at("monad");
  MonadInstance t = located(m, [&] {
    return m.string() == "upper" ? upper_monad() : monad_by_name(m.string());
  });
  if (!t.enumerable) m.fail("monad " + t.name + " has no finite carriers");
  ml::Model model{t, {}};
  Node base = n.at("base");
  for (auto& [k, v] : base.object().items()) model.base[k] = finset_from(base.at(k));
  return model;
}

std::map<std::string, Rel> rels_from(const Node& n) {
  std::map<std::string, Rel> out;
  for (auto& [k, v] : n.object().items()) out.emplace(k, rel_from(n.at(k)));
  return out;
}

Partition partition_from(const Node& n) {
  Partition out;
  for (std::size_t i = 0; i < n.array().size(); ++i) {
    Node c = n.at(i);
    Saturation::Class cls;
    if (c.has("left")) {
      FinSet l = finset_from(c.at("left"));
      cls.left.assign(l.elements().begin(), l.elements().end());
    }
    if (c.has("right")) {
      FinSet r = finset_from(c.at("right"));
      cls.right.assign(r.elements().begin(), r.elements().end());
    }
    out.push_back(std::move(cls));
  }
  return out;
}

Atom monad_value_from(const MonadInstance& t, const Node& n, const FinSet& carrier) {
  Atom v;
  if (t.family == MonadFamily::distribution) {
    if (!n.value.is_object()) n.fail("expected a distribution object");
    v = ratdist_from(n, carrier).to_atom();
  } else if (n.value.is_array()) {
    FinSet s = finset_from(n);
    v = Atom::set(std::vector<Atom>(s.elements().begin(), s.elements().end()));
  } else {
    v = atom_from(n);
  }
  if (!t.is_element(v, carrier)) n.fail(v.str() + " is not an element of " + t.name + " " + carrier.str());
  return v;
}

// ------------------------------------------------------------ encoding

Json to_json(const FinSet& a) {
  Json out = Json::array();
  for (const Atom& x : a.elements()) out.push_back(x.str());
  return out;
}

Json to_json(const FinFun& f) {
  Json map = Json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) map[f.dom()[i].str()] = f.images()[i].str();
  return Json{{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"map", map}};
}

Json to_json(const Rel& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs()) pairs.push_back(Json::array({a.str(), b.str()}));
  return Json{{"left", to_json(r.left())}, {"right", to_json(r.right())}, {"pairs", pairs}};
}

Json to_json(const RatDist& d) {
  Json w = Json::object();
  for (const auto& [x, p] : d.weights()) w[x.str()] = format_rational(p);
  return Json{{"mode", to_string(d.mode())}, {"weights", w}};
}

Json to_json(const FinPoset& p) {
  Json leq = Json::array();
  for (const auto& [a, b] : p.strict_pairs()) leq.push_back(Json::array({a.str(), b.str()}));
  return Json{{"carrier", to_json(p.carrier())}, {"leq", leq}};
}

Json to_json(const Partition& e) {
  Json out = Json::array();
  for (const auto& c : e) {
    Json l = Json::array(), r = Json::array();
    for (const Atom& x : c.left) l.push_back(x.str());
    for (const Atom& x : c.right) r.push_back(x.str());
    out.push_back(Json{{"left", l}, {"right", r}});
  }
  return out;
}

Json to_json(const Counterexample& c) {
  return Json{{"diagram", c.diagram}, {"input", c.input}, {"lhs", c.lhs}, {"rhs", c.rhs},
              {"sizes", c.sizes}};
}

Json to_json(const LawReport& r) {
  Json laws = Json::array();
  for (const LawResult& l : r.laws) {
    Json j{{"id", l.id},
           {"passed", l.passed},
           {"exhaustive_cases", l.exhaustive_cases},
           {"sampled_cases", l.sampled_cases}};
    if (l.counterexample) j["counterexample"] = to_json(*l.counterexample);
    laws.push_back(std::move(j));
  }
  return Json{{"check", r.check},
              {"monad", r.monad},
              {"config",
               {{"max_size", r.config.max_size},
                {"samples", r.config.samples},
                {"seed", r.config.seed},
                {"exhaustive_limit", r.config.exhaustive_limit}}},
              {"passed", r.passed()},
              {"cases", r.cases()},
              {"laws", laws}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace monarel::io
