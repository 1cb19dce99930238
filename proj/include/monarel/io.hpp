#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "monarel/bisim.hpp"
#include "monarel/finset.hpp"
#include "monarel/lawcheck.hpp"
#include "monarel/lifting.hpp"
#include "monarel/metalang.hpp"
#include "monarel/monad.hpp"
#include "monarel/poset.hpp"

namespace monarel::io {

using Json = nlohmann::ordered_json;

/// A JSON value together with where it came from. Decoders report errors as
/// "<source>: at <json pointer>: message".
struct Node {
  const Json& value;
  std::string source;
  std::string path;

  Node at(std::string_view key) const;
  Node at(std::size_t index) const;
  bool has(std::string_view key) const;
  [[noreturn]] void fail(const std::string& message) const;
  const std::string& string() const;
  const Json& object() const;
  const Json& array() const;
};

/// Throws Error "<source>: byte N: ..." on malformed input.
Json parse(std::string_view text, const std::string& source);
/// Reads and parses a file; Error when it cannot be opened.
Json read_file(const std::string& path);
std::string read_text(const std::string& path);

// ------------------------------------------------------------ decoding

Atom atom_from(const Node& n);
FinSet finset_from(const Node& n);
FinFun finfun_from(const Node& n);
Rel rel_from(const Node& n);
/// {"mode":..., "weights":{...}} with an optional "carrier"; without one the
/// carrier is `carrier`. Weights are "p/q" strings or integers.
RatDist ratdist_from(const Node& n, const FinSet& carrier);
LTS lts_from(const Node& n);
PLTS plts_from(const Node& n);
/// True when some step value is an object (a distribution).
bool is_probabilistic(const Node& n);
FinPoset poset_from(const Node& n);
ml::Model model_from(const Node& n);
std::map<std::string, Rel> rels_from(const Node& n);
Partition partition_from(const Node& n);
/// A value of T(carrier): an array (a subset) for the powersets, a RatDist
/// object for dist, otherwise an atom string.
Atom monad_value_from(const MonadInstance& t, const Node& n, const FinSet& carrier);

// ------------------------------------------------------------ encoding

Json to_json(const FinSet& a);
Json to_json(const FinFun& f);
Json to_json(const Rel& r);
Json to_json(const RatDist& d);
Json to_json(const FinPoset& p);
Json to_json(const Partition& e);
Json to_json(const Counterexample& c);
Json to_json(const LawReport& r);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace monarel::io
