#include "monarel/atom.hpp"

#include <algorithm>
#include <cctype>

#include "monarel/error.hpp"

namespace monarel {

struct Atom::Node {
  Kind kind = Kind::unit;
  std::string text;
  std::vector<Atom> members;  // pair: 2 entries; set/dist/graph: sorted keys
  std::vector<Rational> weights;
  std::vector<Atom> values;
};

namespace {

bool is_reserved(char c) {
  switch (c) {
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '<': case '>': case ',': case ':':
      return true;
    default:
      return std::isspace(static_cast<unsigned char>(c)) != 0;
  }
}

}  // namespace

const std::shared_ptr<const Atom::Node>& Atom::unit_node() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::unit;
    n->text = "()";
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return node;
}

Atom::Atom() : node_(unit_node()) {}

Atom Atom::leaf(std::string name) {
  if (name.empty()) throw Error("atom name must not be empty");
  for (char c : name) {
    if (is_reserved(c)) {
      throw Error("atom name '" + name + "' contains reserved character '" +
                  std::string(1, c) + "'");
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::leaf;
  n->text = std::move(name);
  return Atom(std::move(n));
}

Atom Atom::unit() { return Atom(); }

Atom Atom::pair(const Atom& first, const Atom& second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pair;
  n->text.reserve(first.str().size() + second.str().size() + 3);
  n->text += '(';
  n->text += first.str();
  n->text += ',';
  n->text += second.str();
  n->text += ')';
  n->members = {first, second};
  return Atom(std::move(n));
}

Atom Atom::set(std::vector<Atom> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::set;
  std::size_t len = 2;
  for (const auto& m : members) len += m.str().size() + 1;
  n->text.reserve(len);
  n->text += '{';
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) n->text += ',';
    n->text += members[i].str();
  }
  n->text += '}';
  n->members = std::move(members);
  return Atom(std::move(n));
}

Atom Atom::dist(std::vector<std::pair<Atom, Rational>> weights) {
  std::sort(weights.begin(), weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::dist;
  for (std::size_t i = 0; i < weights.size();) {
    Rational total = 0;
    std::size_t j = i;
    for (; j < weights.size() && weights[j].first == weights[i].first; ++j) {
      if (weights[j].second < 0) {
        throw Error("negative weight for " + weights[j].first.str());
      }
      total += weights[j].second;
    }
    if (total != 0) {
      n->members.push_back(weights[i].first);
      n->weights.push_back(total);
    }
    i = j;
  }
  n->text += '[';
  for (std::size_t i = 0; i < n->members.size(); ++i) {
    if (i) n->text += ',';
    n->text += format_rational(n->weights[i]);
    n->text += ':';
    n->text += n->members[i].str();
  }
  n->text += ']';
  return Atom(std::move(n));
}

Atom Atom::graph(std::vector<std::pair<Atom, Atom>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::graph;
  n->text += '<';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i && entries[i].first == entries[i - 1].first) {
      throw Error("graph has two entries for " + entries[i].first.str());
    }
    if (i) n->text += ',';
    n->text += entries[i].first.str();
    n->text += ':';
    n->text += entries[i].second.str();
    n->members.push_back(entries[i].first);
    n->values.push_back(entries[i].second);
  }
  n->text += '>';
  return Atom(std::move(n));
}

Atom::Kind Atom::kind() const { return node_->kind; }
const std::string& Atom::str() const { return node_->text; }

const Atom& Atom::first() const {
  if (kind() != Kind::pair) throw Error("not a pair: " + str());
  return node_->members[0];
}

const Atom& Atom::second() const {
  if (kind() != Kind::pair) throw Error("not a pair: " + str());
  return node_->members[1];
}

std::span<const Atom> Atom::members() const { return node_->members; }
std::span<const Rational> Atom::weights() const { return node_->weights; }
std::span<const Atom> Atom::values() const { return node_->values; }

namespace {

std::ptrdiff_t find_sorted(std::span<const Atom> keys, const Atom& x) {
  auto it = std::lower_bound(keys.begin(), keys.end(), x);
  if (it == keys.end() || *it != x) return -1;
  return it - keys.begin();
}

}  // namespace

Rational Atom::weight_of(const Atom& x) const {
  if (kind() != Kind::dist) throw Error("not a distribution: " + str());
  auto i = find_sorted(members(), x);
  return i < 0 ? Rational(0) : node_->weights[static_cast<std::size_t>(i)];
}

Rational Atom::mass() const {
  if (kind() != Kind::dist) throw Error("not a distribution: " + str());
  Rational total = 0;
  for (const auto& w : node_->weights) total += w;
  return total;
}

const Atom& Atom::apply(const Atom& x) const {
  if (kind() != Kind::graph) throw Error("not a function graph: " + str());
  auto i = find_sorted(members(), x);
  if (i < 0) throw Error("function graph " + str() + " undefined at " + x.str());
  return node_->values[static_cast<std::size_t>(i)];
}

bool Atom::contains(const Atom& x) const {
  if (kind() != Kind::set) throw Error("not a set: " + str());
  return find_sorted(members(), x) >= 0;
}

namespace {

class AtomParser {
 public:
  explicit AtomParser(std::string_view text) : text_(text) {}

  Atom parse_all() {
    Atom a = parse_atom();
    if (pos_ != text_.size()) fail("trailing characters");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("cannot parse atom '" + std::string(text_) + "' at offset " +
                std::to_string(pos_) + ": " + what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view take_until_reserved() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_reserved(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Atom parse_atom() {
    switch (peek()) {
      case '(': {
        ++pos_;
        if (peek() == ')') {
          ++pos_;
          return Atom::unit();
        }
        Atom a = parse_atom();
        expect(',');
        Atom b = parse_atom();
        expect(')');
        return Atom::pair(a, b);
      }
      case '{': {
        ++pos_;
        std::vector<Atom> items;
        if (peek() != '}') {
          items.push_back(parse_atom());
          while (peek() == ',') {
            ++pos_;
            items.push_back(parse_atom());
          }
        }
        expect('}');
        return Atom::set(std::move(items));
      }
      case '[': {
        ++pos_;
        std::vector<std::pair<Atom, Rational>> items;
        if (peek() != ']') {
          do {
            if (peek() == ',') ++pos_;
            auto w = take_until_reserved();
            Rational r;
            try {
              r = parse_rational(w);
            } catch (const Error& e) {
              fail(e.what());
            }
            expect(':');
            items.emplace_back(parse_atom(), r);
          } while (peek() == ',');
        }
        expect(']');
        return Atom::dist(std::move(items));
      }
      case '<': {
        ++pos_;
        std::vector<std::pair<Atom, Atom>> items;
        if (peek() != '>') {
          do {
            if (peek() == ',') ++pos_;
            Atom k = parse_atom();
            expect(':');
            items.emplace_back(k, parse_atom());
          } while (peek() == ',');
        }
        expect('>');
        return Atom::graph(std::move(items));
      }
      default: {
        auto name = take_until_reserved();
        if (name.empty()) fail("expected an atom");
        return Atom::leaf(std::string(name));
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Atom Atom::parse(std::string_view text) { return AtomParser(text).parse_all(); }

}  // namespace monarel
