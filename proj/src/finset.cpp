#include "monarel/finset.hpp"

#include <algorithm>

#include "monarel/error.hpp"

namespace monarel {

// ---------------------------------------------------------------- FinSet

FinSet::FinSet(std::vector<Atom> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end()) throw Error("duplicate element " + dup->str());
}

FinSet FinSet::of(std::initializer_list<std::string_view> names) {
  std::vector<Atom> out;
  out.reserve(names.size());
  for (auto n : names) out.push_back(Atom::leaf(std::string(n)));
  return FinSet(std::move(out));
}

FinSet FinSet::from_range(std::vector<Atom> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FinSet s;
  s.elements_ = std::move(elements);
  return s;
}

bool FinSet::contains(const Atom& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::optional<std::size_t> FinSet::index_of(const Atom& x) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool FinSet::is_subset_of(const FinSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(),
                       elements_.begin(), elements_.end());
}

std::string FinSet::str() const { return Atom::set(elements_).str(); }

// ---------------------------------------------------------------- FinFun

FinFun::FinFun(FinSet dom, FinSet cod, std::vector<Atom> images)
    : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
  if (images_.size() != dom_.size()) {
    throw Error("function is not total: " + std::to_string(images_.size()) +
                " images for a domain of size " + std::to_string(dom_.size()));
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!cod_.contains(images_[i])) {
      throw Error("image " + images_[i].str() + " of " + dom_[i].str() +
                  " is not in the codomain " + cod_.str());
    }
  }
}

FinFun FinFun::from(FinSet dom, FinSet cod,
                    const std::function<Atom(const Atom&)>& rule) {
  std::vector<Atom> images;
  images.reserve(dom.size());
  for (const auto& x : dom) images.push_back(rule(x));
  return FinFun(std::move(dom), std::move(cod), std::move(images));
}

FinFun FinFun::identity(const FinSet& a) {
  return FinFun(a, a, std::vector<Atom>(a.begin(), a.end()));
}

const Atom& FinFun::operator()(const Atom& x) const {
  auto i = dom_.index_of(x);
  if (!i) throw Error(x.str() + " is outside the domain " + dom_.str());
  return images_[*i];
}

bool FinFun::is_injective() const {
  std::vector<Atom> sorted = images_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool FinFun::is_surjective() const {
  return FinSet::from_range(images_).size() == cod_.size();
}

std::string FinFun::str() const {
  std::vector<std::pair<Atom, Atom>> entries;
  for (std::size_t i = 0; i < dom_.size(); ++i) entries.emplace_back(dom_[i], images_[i]);
  return Atom::graph(std::move(entries)).str();
}

// ---------------------------------------------------------------- Rel

Rel::Rel(FinSet left, FinSet right, std::vector<std::pair<Atom, Atom>> pairs)
    : left_(std::move(left)), right_(std::move(right)) {
  std::vector<Atom> atoms;
  atoms.reserve(pairs.size());
  for (auto& [a, b] : pairs) {
    if (!left_.contains(a)) throw Error("relation pair has " + a.str() + " outside " + left_.str());
    if (!right_.contains(b)) throw Error("relation pair has " + b.str() + " outside " + right_.str());
    atoms.push_back(Atom::pair(a, b));
  }
  pairs_ = FinSet::from_range(std::move(atoms));
}

Rel Rel::diagonal(const FinSet& a) {
  std::vector<std::pair<Atom, Atom>> ps;
  for (const auto& x : a) ps.emplace_back(x, x);
  return Rel(a, a, std::move(ps));
}

Rel Rel::full(const FinSet& left, const FinSet& right) {
  std::vector<std::pair<Atom, Atom>> ps;
  for (const auto& x : left)
    for (const auto& y : right) ps.emplace_back(x, y);
  return Rel(left, right, std::move(ps));
}

Rel Rel::empty(const FinSet& left, const FinSet& right) { return Rel(left, right, {}); }

Rel Rel::graph_of(const FinFun& f) {
  std::vector<std::pair<Atom, Atom>> ps;
  for (std::size_t i = 0; i < f.dom().size(); ++i) ps.emplace_back(f.dom()[i], f.images()[i]);
  return Rel(f.dom(), f.cod(), std::move(ps));
}

std::vector<std::pair<Atom, Atom>> Rel::pairs() const {
  std::vector<std::pair<Atom, Atom>> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.emplace_back(p.first(), p.second());
  return out;
}

bool Rel::contains(const Atom& a1, const Atom& a2) const {
  return pairs_.contains(Atom::pair(a1, a2));
}

bool Rel::is_subset_of(const Rel& other) const {
  return left_ == other.left_ && right_ == other.right_ && pairs_.is_subset_of(other.pairs_);
}

std::vector<Atom> Rel::successors(const Atom& a1) const {
  std::vector<Atom> out;
  for (const auto& p : pairs_)
    if (p.first() == a1) out.push_back(p.second());
  return out;
}

FinFun Rel::inclusion() const {
  return FinFun(pairs_, product_set(left_, right_),
                std::vector<Atom>(pairs_.begin(), pairs_.end()));
}

FinFun Rel::proj1() const {
  return FinFun::from(pairs_, left_, [](const Atom& p) { return p.first(); });
}

FinFun Rel::proj2() const {
  return FinFun::from(pairs_, right_, [](const Atom& p) { return p.second(); });
}

std::string Rel::str() const { return pairs_.str(); }

// ---------------------------------------------------------------- operations

FinFun compose(const FinFun& g, const FinFun& f) {
  if (f.cod() != g.dom()) {
    throw Error("cannot compose: codomain " + f.cod().str() + " differs from domain " +
                g.dom().str());
  }
  std::vector<Atom> images;
  images.reserve(f.dom().size());
  for (const auto& y : f.images()) images.push_back(g(y));
  return FinFun(f.dom(), g.cod(), std::move(images));
}

Factorization factorize(const FinFun& f) {
  FinSet mid = FinSet::from_range(std::vector<Atom>(f.images().begin(), f.images().end()));
  FinFun epi(f.dom(), mid, std::vector<Atom>(f.images().begin(), f.images().end()));
  FinFun mono(mid, f.cod(), std::vector<Atom>(mid.begin(), mid.end()));
  return {std::move(epi), std::move(mid), std::move(mono)};
}

FinFun diagonal_fill_in(const FinFun& e, const FinFun& m, const FinFun& l,
                        const FinFun& r) {
  if (!e.is_surjective()) throw Error("diagonal fill-in: top map is not surjective");
  if (!m.is_injective()) throw Error("diagonal fill-in: bottom map is not injective");
  if (l.dom() != e.dom() || l.cod() != m.dom() || r.dom() != e.cod() || r.cod() != m.cod()) {
    throw Error("diagonal fill-in: square has mismatched objects");
  }
  if (compose(m, l) != compose(r, e)) throw Error("diagonal fill-in: square does not commute");
  // d(e(x)) = l(x); well defined because m is injective and the square commutes.
  std::vector<std::optional<Atom>> image(e.cod().size());
  for (std::size_t i = 0; i < e.dom().size(); ++i) {
    auto y = *e.cod().index_of(e.images()[i]);
    image[y] = l.images()[i];
  }
  std::vector<Atom> out;
  out.reserve(image.size());
  for (auto& v : image) out.push_back(*v);
  return FinFun(e.cod(), m.dom(), std::move(out));
}

FinSet product_set(const FinSet& a, const FinSet& b) {
  std::vector<Atom> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(Atom::pair(x, y));
  return FinSet::from_range(std::move(out));
}

Product product(const FinSet& a, const FinSet& b) {
  FinSet c = product_set(a, b);
  FinFun p1 = FinFun::from(c, a, [](const Atom& p) { return p.first(); });
  FinFun p2 = FinFun::from(c, b, [](const Atom& p) { return p.second(); });
  return {std::move(c), std::move(p1), std::move(p2)};
}

FinFun pairing(const FinFun& f1, const FinFun& f2) {
  if (f1.dom() != f2.dom()) throw Error("pairing: functions have different domains");
  std::vector<Atom> images;
  for (std::size_t i = 0; i < f1.dom().size(); ++i)
    images.push_back(Atom::pair(f1.images()[i], f2.images()[i]));
  return FinFun(f1.dom(), product_set(f1.cod(), f2.cod()), std::move(images));
}

FinFun tensor(const FinFun& f, const FinFun& g) {
  return FinFun::from(product_set(f.dom(), g.dom()), product_set(f.cod(), g.cod()),
                      [&](const Atom& p) { return Atom::pair(f(p.first()), g(p.second())); });
}

FinSet unit_set() { return FinSet(std::vector<Atom>{Atom::unit()}); }

Atom assoc_value(const Atom& abc) {
  const Atom& ab = abc.first();
  return Atom::pair(ab.first(), Atom::pair(ab.second(), abc.second()));
}

Atom assoc_inverse_value(const Atom& abc) {
  const Atom& bc = abc.second();
  return Atom::pair(Atom::pair(abc.first(), bc.first()), bc.second());
}

Atom swap_value(const Atom& ab) { return Atom::pair(ab.second(), ab.first()); }

Atom interchange_value(const Atom& x) {
  const Atom& a = x.first();
  const Atom& b = x.second();
  return Atom::pair(Atom::pair(a.first(), b.first()), Atom::pair(a.second(), b.second()));
}

FinFun assoc(const FinSet& a, const FinSet& b, const FinSet& c) {
  return FinFun::from(product_set(product_set(a, b), c), product_set(a, product_set(b, c)),
                      assoc_value);
}

FinFun left_unitor(const FinSet& b) {
  return FinFun::from(product_set(unit_set(), b), b, [](const Atom& p) { return p.second(); });
}

FinFun right_unitor(const FinSet& a) {
  return FinFun::from(product_set(a, unit_set()), a, [](const Atom& p) { return p.first(); });
}

FinFun swap(const FinSet& a, const FinSet& b) {
  return FinFun::from(product_set(a, b), product_set(b, a), swap_value);
}

FinFun interchange(const FinSet& a1, const FinSet& a2, const FinSet& b1, const FinSet& b2) {
  return FinFun::from(product_set(product_set(a1, a2), product_set(b1, b2)),
                      product_set(product_set(a1, b1), product_set(a2, b2)), interchange_value);
}

std::vector<FinFun> all_functions(const FinSet& dom, const FinSet& cod) {
  std::vector<FinFun> out;
  if (cod.empty() && !dom.empty()) return out;
  std::vector<std::size_t> digits(dom.size(), 0);
  while (true) {
    std::vector<Atom> images;
    images.reserve(dom.size());
    for (auto d : digits) images.push_back(cod[d]);
    out.emplace_back(dom, cod, std::move(images));
    std::size_t i = dom.size();
    while (i > 0) {
      --i;
      if (++digits[i] < cod.size()) break;
      digits[i] = 0;
      if (i == 0) return out;
    }
    if (dom.empty()) return out;
  }
}

std::vector<FinSet> all_subsets(const FinSet& s) {
  if (s.size() >= 24) throw Error("refusing to enumerate subsets of a set of size " +
                                  std::to_string(s.size()));
  std::vector<FinSet> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Atom> items;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) items.push_back(s[i]);
    out.push_back(FinSet::from_range(std::move(items)));
  }
  return out;
}

std::vector<Rel> all_relations(const FinSet& left, const FinSet& right) {
  std::vector<Rel> out;
  for (const auto& sub : all_subsets(product_set(left, right))) {
    std::vector<std::pair<Atom, Atom>> ps;
    for (const auto& p : sub) ps.emplace_back(p.first(), p.second());
    out.emplace_back(left, right, std::move(ps));
  }
  return out;
}

FinSet letters(std::size_t n) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Atom::leaf(std::string(1, char('a' + i))));
  return FinSet(std::move(out));
}

FinSet numerals(std::size_t n) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Atom::leaf(std::to_string(i)));
  return FinSet(std::move(out));
}

}  // namespace monarel
