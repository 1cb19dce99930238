#include "monarel/metalang.hpp"

#include <algorithm>
#include <cctype>

#include "monarel/error.hpp"
#include "monarel/lifting.hpp"

namespace monarel::ml {

// ------------------------------------------------------------ constructors

TypeP base_type(std::string name) {
  return std::make_shared<const Type>(Type{Type::Kind::base, std::move(name), nullptr, nullptr});
}
TypeP unit_type() { return std::make_shared<const Type>(Type{Type::Kind::unit, "", nullptr, nullptr}); }
TypeP prod_type(TypeP a, TypeP b) {
  return std::make_shared<const Type>(Type{Type::Kind::prod, "", std::move(a), std::move(b)});
}
TypeP arrow_type(TypeP a, TypeP b) {
  return std::make_shared<const Type>(Type{Type::Kind::arrow, "", std::move(a), std::move(b)});
}
TypeP monad_type(TypeP a) {
  return std::make_shared<const Type>(Type{Type::Kind::monad, "", std::move(a), nullptr});
}

namespace {

TermP make(Term::Kind k, std::string name, TypeP annot, TermP a, TermP b, std::size_t pos = 0) {
  return std::make_shared<const Term>(
      Term{k, std::move(name), std::move(annot), std::move(a), std::move(b), pos});
}

}  // namespace

TermP var_term(std::string name) { return make(Term::Kind::var, std::move(name), nullptr, nullptr, nullptr); }
TermP unit_term() { return make(Term::Kind::unit, "", nullptr, nullptr, nullptr); }
TermP pair_term(TermP a, TermP b) { return make(Term::Kind::pair, "", nullptr, std::move(a), std::move(b)); }
TermP fst_term(TermP a) { return make(Term::Kind::fst, "", nullptr, std::move(a), nullptr); }
TermP snd_term(TermP a) { return make(Term::Kind::snd, "", nullptr, std::move(a), nullptr); }
TermP lam_term(std::string x, TypeP ty, TermP body) {
  return make(Term::Kind::lam, std::move(x), std::move(ty), std::move(body), nullptr);
}
TermP app_term(TermP f, TermP x) { return make(Term::Kind::app, "", nullptr, std::move(f), std::move(x)); }
TermP val_term(TermP a) { return make(Term::Kind::val, "", nullptr, std::move(a), nullptr); }
TermP let_term(std::string x, TermP bound, TermP body) {
  return make(Term::Kind::let, std::move(x), nullptr, std::move(bound), std::move(body));
}

// ------------------------------------------------------------ printing

std::string show(const TypeP& t) {
  auto wrap = [](const TypeP& u, bool paren) { return paren ? "(" + show(u) + ")" : show(u); };
  switch (t->kind) {
    case Type::Kind::base: return t->name;
    case Type::Kind::unit: return "Unit";
    case Type::Kind::arrow:
      return wrap(t->left, t->left->kind == Type::Kind::arrow) + " -> " + show(t->right);
    case Type::Kind::prod:
      return wrap(t->left, t->left->kind == Type::Kind::arrow) + " * " +
             wrap(t->right, t->right->kind == Type::Kind::arrow || t->right->kind == Type::Kind::prod);
    case Type::Kind::monad:
      return "T " + wrap(t->left, t->left->kind == Type::Kind::arrow || t->left->kind == Type::Kind::prod);
  }
  return "?";
}

bool same_type(const TypeP& a, const TypeP& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Type::Kind::base: return a->name == b->name;
    case Type::Kind::unit: return true;
    case Type::Kind::monad: return same_type(a->left, b->left);
    default: return same_type(a->left, b->left) && same_type(a->right, b->right);
  }
}

void collect_bases(const TypeP& t, std::vector<std::string>& out) {
  switch (t->kind) {
    case Type::Kind::base:
      if (std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
      return;
    case Type::Kind::unit: return;
    case Type::Kind::monad: collect_bases(t->left, out); return;
    default:
      collect_bases(t->left, out);
      collect_bases(t->right, out);
  }
}

namespace {

bool atomic(const TermP& t) {
  return t->kind == Term::Kind::var || t->kind == Term::Kind::unit || t->kind == Term::Kind::pair;
}

std::string show_atomic(const TermP& t) { return atomic(t) ? show(t) : "(" + show(t) + ")"; }

}  // namespace

std::string show(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::var: return t->name;
    case Term::Kind::unit: return "()";
    case Term::Kind::pair: return "(" + show(t->a) + ", " + show(t->b) + ")";
    case Term::Kind::fst: return "fst " + show_atomic(t->a);
    case Term::Kind::snd: return "snd " + show_atomic(t->a);
    case Term::Kind::val: return "val " + show_atomic(t->a);
    case Term::Kind::lam: return "\\" + t->name + ":" + show(t->annot) + ". " + show(t->a);
    case Term::Kind::let:
      return "let val " + t->name + " = " + show(t->a) + " in " + show(t->b);
    case Term::Kind::app: {
      bool head_paren = t->a->kind == Term::Kind::lam || t->a->kind == Term::Kind::let;
      return (head_paren ? "(" + show(t->a) + ")" : show(t->a)) + " " + show_atomic(t->b);
    }
  }
  return "?";
}

std::size_t term_size(const TermP& t) {
  std::size_t n = 1;
  if (t->a) n += term_size(t->a);
  if (t->b) n += term_size(t->b);
  return n;
}

// ------------------------------------------------------------ lexing

namespace {

struct Token {
  enum class Kind { ident, keyword, symbol, end };
  Kind kind;
  std::string text;
  std::size_t pos;
};

bool is_keyword(const std::string& s) {
  return s == "let" || s == "val" || s == "in" || s == "fst" || s == "snd" || s == "T" || s == "Unit";
}

[[noreturn]] void fail_at(std::size_t pos, const std::string& msg) {
  throw Error("position " + std::to_string(pos) + ": " + msg);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                src[j] == '\'')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      out.push_back({is_keyword(word) ? Token::Kind::keyword : Token::Kind::ident, word, i});
      i = j;
      continue;
    }
    if (src.substr(i, 2) == "->" || src.substr(i, 2) == "|-") {
      out.push_back({Token::Kind::symbol, std::string(src.substr(i, 2)), i});
      i += 2;
      continue;
    }
    if (src.substr(i, 2) == "\xCE\xBB") {  // UTF-8 lambda
      out.push_back({Token::Kind::symbol, "\\", i});
      i += 2;
      continue;
    }
    if (std::string_view("(),:.\\*=").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::symbol, std::string(1, c), i});
      ++i;
      continue;
    }
    fail_at(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::end, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  TypeP type() {
    TypeP left = prod();
    if (is_symbol("->")) {
      advance();
      return arrow_type(left, type());
    }
    return left;
  }

  TermP term() {
    const Token& t = peek();
    if (is_symbol("\\")) {
      advance();
      std::string x = ident("a variable after lambda");
      expect(":");
      TypeP ty = type();
      expect(".");
      TermP body = term();
      return make(Term::Kind::lam, x, ty, body, nullptr, t.pos);
    }
    if (is_keyword("let")) {
      advance();
      if (!is_keyword("val")) fail_at(peek().pos, "expected 'val' after 'let'");
      advance();
      std::string x = ident("a variable after 'let val'");
      expect("=");
      TermP bound = term();
      if (!is_keyword("in")) fail_at(peek().pos, "expected 'in'");
      advance();
      TermP body = term();
      return make(Term::Kind::let, x, nullptr, bound, body, t.pos);
    }
    TermP head = unary();
    while (starts_atomic()) {
      std::size_t pos = peek().pos;
      head = make(Term::Kind::app, "", nullptr, head, atom(), pos);
    }
    return head;
  }

  std::vector<Token>& tokens() { return toks_; }
  std::size_t& cursor() { return i_; }

  void finish() {
    if (peek().kind != Token::Kind::end) fail_at(peek().pos, "unexpected '" + peek().text + "'");
  }

  const Token& peek() const { return toks_[i_]; }
  void advance() {
    if (toks_[i_].kind != Token::Kind::end) ++i_;
  }
  bool is_symbol(const char* s) const { return peek().kind == Token::Kind::symbol && peek().text == s; }
  bool is_keyword(const char* s) const { return peek().kind == Token::Kind::keyword && peek().text == s; }

  void expect(const char* s) {
    if (!is_symbol(s)) fail_at(peek().pos, std::string("expected '") + s + "'" + found());
    advance();
  }

  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::ident) fail_at(peek().pos, std::string("expected ") + what + found());
    std::string s = peek().text;
    advance();
    return s;
  }

 private:
  std::string found() const {
    return peek().kind == Token::Kind::end ? ", found end of input" : ", found '" + peek().text + "'";
  }

  TypeP prod() {
    TypeP left = prefix();
    while (is_symbol("*")) {
      advance();
      left = prod_type(left, prefix());
    }
    return left;
  }

  TypeP prefix() {
    if (is_keyword("T")) {
      advance();
      return monad_type(prefix());
    }
    if (is_keyword("Unit")) {
      advance();
      return unit_type();
    }
    if (peek().kind == Token::Kind::ident) return base_type(ident("a type"));
    if (is_symbol("(")) {
      advance();
      TypeP t = type();
      expect(")");
      return t;
    }
    fail_at(peek().pos, "expected a type" + found());
  }

  bool starts_atomic() const {
    return peek().kind == Token::Kind::ident || is_symbol("(");
  }

  TermP unary() {
    const Token& t = peek();
    for (auto [word, kind] : {std::pair{"fst", Term::Kind::fst}, std::pair{"snd", Term::Kind::snd},
                              std::pair{"val", Term::Kind::val}}) {
      if (is_keyword(word)) {
        advance();
        if (!starts_atomic())
          fail_at(peek().pos, std::string("'") + word + "' needs an argument" + found());
        return make(kind, "", nullptr, atom(), nullptr, t.pos);
      }
    }
    if (!starts_atomic()) fail_at(peek().pos, "expected a term" + found());
    return atom();
  }

  TermP atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::ident) {
      advance();
      return make(Term::Kind::var, t.text, nullptr, nullptr, nullptr, t.pos);
    }
    expect("(");
    if (is_symbol(")")) {
      advance();
      return make(Term::Kind::unit, "", nullptr, nullptr, nullptr, t.pos);
    }
    TermP first = term();
    if (is_symbol(",")) {
      advance();
      TermP second = term();
      expect(")");
      return make(Term::Kind::pair, "", nullptr, first, second, t.pos);
    }
    expect(")");
    return first;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

TypeP parse_type(std::string_view src) {
  Parser p(src);
  TypeP t = p.type();
  p.finish();
  return t;
}

TermP parse_term(std::string_view src) {
  Parser p(src);
  TermP t = p.term();
  p.finish();
  return t;
}

Judgment parse_judgment(std::string_view src) {
  Parser p(src);
  Judgment j;
  // the context is present when the source contains the turnstile
  bool has_context = std::any_of(p.tokens().begin(), p.tokens().end(), [](const Token& t) {
    return t.kind == Token::Kind::symbol && t.text == "|-";
  });
  if (has_context) {
    if (!p.is_symbol("|-")) {
      while (true) {
        std::string x = p.ident("a variable in the context");
        p.expect(":");
        j.context.emplace_back(x, p.type());
        if (p.is_symbol(",")) {
          p.advance();
          continue;
        }
        break;
      }
    }
    p.expect("|-");
  }
  j.term = p.term();
  p.finish();
  return j;
}

// ------------------------------------------------------------ typing

TypeP typecheck(const Context& ctx, const TermP& t) {
  auto fail = [&](const std::string& msg) -> TypeP { fail_at(t->pos, msg); };
  switch (t->kind) {
    case Term::Kind::var:
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == t->name) return it->second;
      return fail("unbound variable '" + t->name + "'");
    case Term::Kind::unit: return unit_type();
    case Term::Kind::pair: return prod_type(typecheck(ctx, t->a), typecheck(ctx, t->b));
    case Term::Kind::fst:
    case Term::Kind::snd: {
      TypeP a = typecheck(ctx, t->a);
      if (a->kind != Type::Kind::prod)
        return fail(std::string(t->kind == Term::Kind::fst ? "fst" : "snd") +
                    " expects a pair, got " + show(a));
      return t->kind == Term::Kind::fst ? a->left : a->right;
    }
    case Term::Kind::lam: {
      Context inner = ctx;
      inner.emplace_back(t->name, t->annot);
      return arrow_type(t->annot, typecheck(inner, t->a));
    }
    case Term::Kind::app: {
      TypeP f = typecheck(ctx, t->a);
      if (f->kind != Type::Kind::arrow) return fail("applying a non-function of type " + show(f));
      TypeP x = typecheck(ctx, t->b);
      if (!same_type(f->left, x))
        return fail("argument has type " + show(x) + ", expected " + show(f->left));
      return f->right;
    }
    case Term::Kind::val: return monad_type(typecheck(ctx, t->a));
    case Term::Kind::let: {
      TypeP m = typecheck(ctx, t->a);
      if (m->kind != Type::Kind::monad)
        return fail("'let val' binds a computation, got " + show(m));
      Context inner = ctx;
      inner.emplace_back(t->name, m->left);
      TypeP body = typecheck(inner, t->b);
      if (body->kind != Type::Kind::monad)
        return fail("body of 'let val' must be a computation, got " + show(body));
      return body;
    }
  }
  return fail("unknown term");
}

// ------------------------------------------------------------ evaluation

Interpreter::Interpreter(Model model) : model_(std::move(model)) {
  if (!model_.monad.enumerable)
    throw Error("models need an enumerable monad; '" + model_.monad.name + "' is not");
}

std::optional<std::size_t> Interpreter::denote_size(const TypeP& t) const {
  auto mul = [](std::optional<std::size_t> a, std::optional<std::size_t> b) -> std::optional<std::size_t> {
    if (!a || !b) return std::nullopt;
    if (*a != 0 && *b > cap * 16 / *a) return std::nullopt;
    return *a * *b;
  };
  switch (t->kind) {
    case Type::Kind::base: {
      auto it = model_.base.find(t->name);
      if (it == model_.base.end()) throw Error("unknown base type '" + t->name + "'");
      return it->second.size();
    }
    case Type::Kind::unit: return 1;
    case Type::Kind::prod: return mul(denote_size(t->left), denote_size(t->right));
    case Type::Kind::arrow: {
      auto d = denote_size(t->left);
      auto c = denote_size(t->right);
      if (!d || !c) return std::nullopt;
      std::optional<std::size_t> out = 1;
      for (std::size_t i = 0; i < *d && out; ++i) out = mul(out, c);
      return out;
    }
    case Type::Kind::monad: {
      auto n = denote_size(t->left);
      if (!n) return std::nullopt;
      return model_.monad.apply_size(*n);
    }
  }
  return std::nullopt;
}

const FinSet& Interpreter::denote(const TypeP& t) {
  std::string key = show(t);
  if (auto it = denotations_.find(key); it != denotations_.end()) return it->second;
  auto n = denote_size(t);
  if (!n || *n > cap) throw Error("the denotation of " + key + " is too large to enumerate");
  FinSet out;
  switch (t->kind) {
    case Type::Kind::base: out = model_.base.at(t->name); break;
    case Type::Kind::unit: out = unit_set(); break;
    case Type::Kind::prod: {
      FinSet l = denote(t->left);
      out = product_set(l, denote(t->right));
      break;
    }
    case Type::Kind::arrow: {
      FinSet dom = denote(t->left);
      FinSet cod = denote(t->right);
      std::vector<Atom> graphs;
      for (const auto& f : all_functions(dom, cod)) {
        std::vector<std::pair<Atom, Atom>> entries;
        for (std::size_t i = 0; i < dom.size(); ++i) entries.emplace_back(dom[i], f.images()[i]);
        graphs.push_back(Atom::graph(std::move(entries)));
      }
      out = FinSet(std::move(graphs));
      break;
    }
    case Type::Kind::monad: out = model_.monad.apply(denote(t->left)); break;
  }
  return denotations_.emplace(key, std::move(out)).first->second;
}

namespace {

// Environments are threaded through the strength as left-nested pairs
// ((((), v1), v2), ...).
Atom pack(const std::vector<Atom>& env) {
  Atom out = Atom::unit();
  for (const auto& v : env) out = Atom::pair(out, v);
  return out;
}

std::vector<Atom> unpack(Atom packed, std::size_t n) {
  std::vector<Atom> out(n);
  for (std::size_t i = n; i > 0; --i) {
    out[i - 1] = packed.second();
    packed = packed.first();
  }
  return out;
}

struct Evaluator {
  Interpreter& in;
  const MonadInstance& t;

  Atom eval(std::vector<std::string>& names, std::vector<Atom>& env, const TermP& e) {
    switch (e->kind) {
      case Term::Kind::var:
        for (std::size_t i = names.size(); i > 0; --i)
          if (names[i - 1] == e->name) return env[i - 1];
        fail_at(e->pos, "unbound variable '" + e->name + "'");
      case Term::Kind::unit: return Atom::unit();
      case Term::Kind::pair: {
        Atom a = eval(names, env, e->a);
        return Atom::pair(a, eval(names, env, e->b));
      }
      case Term::Kind::fst: return eval(names, env, e->a).first();
      case Term::Kind::snd: return eval(names, env, e->a).second();
      case Term::Kind::app: {
        Atom f = eval(names, env, e->a);
        return f.apply(eval(names, env, e->b));
      }
      case Term::Kind::val: return t.unit(eval(names, env, e->a));
      case Term::Kind::lam: {
        const FinSet& dom = in.denote(e->annot);
        std::vector<std::pair<Atom, Atom>> entries;
        entries.reserve(dom.size());
        names.push_back(e->name);
        for (const auto& v : dom) {
          env.push_back(v);
          entries.emplace_back(v, eval(names, env, e->a));
          env.pop_back();
        }
        names.pop_back();
        return Atom::graph(std::move(entries));
      }
      case Term::Kind::let: {
        // mu . T(body) . t_{Env,A} (env, bound)
        Atom bound = eval(names, env, e->a);
        Atom threaded = t.strength(pack(env), bound);
        const std::size_t n = env.size();
        Atom inner = t.map(
            [&](const Atom& p) {
              std::vector<Atom> env2 = unpack(p.first(), n);
              env2.push_back(p.second());
              names.push_back(e->name);
              Atom v = eval(names, env2, e->b);
              names.pop_back();
              return v;
            },
            threaded);
        return t.mult(inner);
      }
    }
    fail_at(e->pos, "unknown term");
  }
};

}  // namespace

Atom Interpreter::eval(const Context& ctx, const std::vector<Atom>& env, const TermP& t) {
  if (ctx.size() != env.size()) throw Error("environment does not match the context");
  std::vector<std::string> names;
  for (const auto& [x, ty] : ctx) names.push_back(x);
  std::vector<Atom> values = env;
  Evaluator ev{*this, model_.monad};
  return ev.eval(names, values, t);
}

// ------------------------------------------------------------ logical relations

LogicalRelation::LogicalRelation(Model m1, Model m2, std::map<std::string, Rel> base_rels)
    : i1_(std::move(m1)), i2_(std::move(m2)), base_(std::move(base_rels)) {
  if (i1_.model().monad.name != i2_.model().monad.name)
    throw Error("models use different monads: " + i1_.model().monad.name + " and " +
                i2_.model().monad.name);
  for (const auto& [name, r] : base_) {
    auto l = i1_.model().base.find(name);
    auto rr = i2_.model().base.find(name);
    if (l == i1_.model().base.end() || rr == i2_.model().base.end())
      throw Error("relation given for unknown base type '" + name + "'");
    if (r.left() != l->second || r.right() != rr->second)
      throw Error("relation for '" + name + "' does not match the base interpretations");
  }
}

const Rel& LogicalRelation::at(const TypeP& t) {
  std::string key = show(t);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const MonadInstance& m = i1_.model().monad;
  std::optional<Rel> out;
  switch (t->kind) {
    case Type::Kind::base: {
      auto it = base_.find(t->name);
      if (it == base_.end()) throw Error("no relation given for base type '" + t->name + "'");
      out = it->second;
      break;
    }
    case Type::Kind::unit:
      out = Rel::diagonal(unit_set());
      break;
    case Type::Kind::prod: {
      Rel l = at(t->left);
      out = product_rel(l, at(t->right));
      break;
    }
    case Type::Kind::arrow: {
      const FinSet& f1 = i1_.denote(t);
      const FinSet& f2 = i2_.denote(t);
      if (f1.size() * f2.size() > pair_cap)
        throw Error("the relation at " + key + " has too many candidate pairs");
      Rel dom = at(t->left);
      std::vector<std::pair<Atom, Atom>> pairs;
      for (const auto& g1 : f1) {
        for (const auto& g2 : f2) {
          bool ok = true;
          for (const auto& p : dom.carrier()) {
            if (!related(t->right, g1.apply(p.first()), g2.apply(p.second()))) {
              ok = false;
              break;
            }
          }
          if (ok) pairs.emplace_back(g1, g2);
        }
      }
      out = Rel(f1, f2, std::move(pairs));
      break;
    }
    case Type::Kind::monad: {
      Rel inner = at(t->left);
      const FinSet& t1 = i1_.denote(t);
      const FinSet& t2 = i2_.denote(t);
      auto through_subsets = m.apply_size(inner.size());
      bool decidable = m.family == MonadFamily::powerset || m.family == MonadFamily::nonempty_powerset;
      if (!decidable || (through_subsets && *through_subsets <= t1.size() * t2.size())) {
        out = lift_enumerate(m, inner);
      } else {
        std::vector<std::pair<Atom, Atom>> pairs;
        for (const auto& v1 : t1)
          for (const auto& v2 : t2)
            if (lift_member(m, v1, v2, inner)) pairs.emplace_back(v1, v2);
        out = Rel(t1, t2, std::move(pairs));
      }
      break;
    }
  }
  return cache_.emplace(key, std::move(*out)).first->second;
}

bool LogicalRelation::related(const TypeP& t, const Atom& v1, const Atom& v2) {
  switch (t->kind) {
    case Type::Kind::base: return at(t).contains(v1, v2);
    case Type::Kind::unit: return v1 == Atom::unit() && v2 == Atom::unit();
    case Type::Kind::prod:
      return related(t->left, v1.first(), v2.first()) && related(t->right, v1.second(), v2.second());
    case Type::Kind::arrow: {
      const Rel& dom = at(t->left);
      for (const auto& p : dom.carrier())
        if (!related(t->right, v1.apply(p.first()), v2.apply(p.second()))) return false;
      return true;
    }
    case Type::Kind::monad: {
      const MonadInstance& m = i1_.model().monad;
      if (m.family == MonadFamily::powerset || m.family == MonadFamily::nonempty_powerset)
        return lift_member(m, v1, v2, at(t->left));
      return at(t).contains(v1, v2);
    }
  }
  return false;
}

Rel logical_relation(const Model& m1, const Model& m2, const std::map<std::string, Rel>& base_rels,
                     const TypeP& t) {
  LogicalRelation r(m1, m2, base_rels);
  return r.at(t);
}

// ------------------------------------------------------------ Basic Lemma

namespace {

std::string show_env(const Context& ctx, const std::vector<Atom>& env) {
  std::string out = "[";
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].first + "=" + env[i].str();
  }
  return out + "]";
}

std::string show_judgment(const Judgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.context.size(); ++i) {
    if (i) out += ", ";
    out += j.context[i].first + " : " + show(j.context[i].second);
  }
  return out + (out.empty() ? "|- " : " |- ") + show(j.term);
}

}  // namespace

LawReport basic_lemma_check(LogicalRelation& rel, const Judgment& j, std::size_t env_limit,
                            std::uint64_t seed) {
  TypeP ty = typecheck(j.context, j.term);
  LawReport report;
  report.check = "basic-lemma";
  report.monad = rel.left().model().monad.name;
  report.config.seed = seed;
  report.config.samples = env_limit;
  LawResult res;
  res.id = show_judgment(j) + " : " + show(ty);

  std::vector<std::vector<std::pair<Atom, Atom>>> choices;
  std::size_t total = 1;
  bool overflow = false;
  for (const auto& [x, t] : j.context) {
    choices.push_back(rel.at(t).pairs());
    std::size_t n = choices.back().size();
    if (n != 0 && total > SIZE_MAX / n) overflow = true;
    else total *= n;
  }
  bool empty = std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); });

  auto check = [&](const std::vector<std::size_t>& idx) {
    std::vector<Atom> env1;
    std::vector<Atom> env2;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      env1.push_back(choices[k][idx[k]].first);
      env2.push_back(choices[k][idx[k]].second);
    }
    Atom v1 = rel.left().eval(j.context, env1, j.term);
    Atom v2 = rel.right().eval(j.context, env2, j.term);
    if (rel.related(ty, v1, v2)) return true;
    res.passed = false;
    res.counterexample = Counterexample{show_judgment(j), show_env(j.context, env1) + " ~ " +
                                                              show_env(j.context, env2),
                                        v1.str(), v2.str(), {}};
    return false;
  };

  if (!empty) {
    std::vector<std::size_t> idx(choices.size(), 0);
    if (!overflow && total <= env_limit) {
      bool done = false;
      while (!done) {
        ++res.exhaustive_cases;
        if (!check(idx)) break;
        std::size_t k = idx.size();
        while (true) {
          if (k == 0) {
            done = true;
            break;
          }
          --k;
          if (++idx[k] < choices[k].size()) break;
          idx[k] = 0;
        }
      }
    } else {
      Rng rng(seed);
      for (std::size_t n = 0; n < env_limit; ++n) {
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = rng.below(choices[k].size());
        ++res.sampled_cases;
        if (!check(idx)) break;
      }
    }
  }
  report.laws.push_back(std::move(res));
  return report;
}

LawReport basic_lemma_check(const Model& m1, const Model& m2,
                            const std::map<std::string, Rel>& base_rels, const Judgment& j) {
  LogicalRelation rel(m1, m2, base_rels);
  return basic_lemma_check(rel, j);
}

// ------------------------------------------------------------ generation

TermGenerator::TermGenerator(std::uint64_t seed, GeneratorConfig cfg) : rng_(seed), cfg_(cfg) {
  TypeP b = base_type("b");
  TypeP tb = monad_type(b);
  small_ = {b,
            b,
            unit_type(),
            prod_type(b, b),
            tb,
            tb,
            arrow_type(b, b),
            arrow_type(b, tb),
            monad_type(prod_type(b, b)),
            monad_type(unit_type()),
            monad_type(tb),
            prod_type(b, tb)};
}

std::string TermGenerator::fresh() { return "v" + std::to_string(counter_++); }

TypeP TermGenerator::pick_type(bool allow_arrow) {
  while (true) {
    TypeP t = small_[rng_.below(small_.size())];
    if (allow_arrow || t->kind != Type::Kind::arrow) return t;
  }
}

TermP TermGenerator::minimal(Context& ctx, const TypeP& t) {
  std::vector<std::string> vars;
  for (const auto& [x, ty] : ctx)
    if (same_type(ty, t)) vars.push_back(x);
  if (!vars.empty()) return var_term(vars[rng_.below(vars.size())]);
  switch (t->kind) {
    case Type::Kind::base:
      throw Error("generator: no variable of base type " + t->name + " in scope");
    case Type::Kind::unit: return unit_term();
    case Type::Kind::prod: return pair_term(minimal(ctx, t->left), minimal(ctx, t->right));
    case Type::Kind::arrow: {
      std::string x = fresh();
      ctx.emplace_back(x, t->left);
      TermP body = minimal(ctx, t->right);
      ctx.pop_back();
      return lam_term(x, t->left, body);
    }
    case Type::Kind::monad: return val_term(minimal(ctx, t->left));
  }
  return unit_term();
}

TermP TermGenerator::gen(Context& ctx, const TypeP& t, std::size_t budget) {
  if (budget <= 1) return minimal(ctx, t);
  std::vector<std::string> vars;
  for (const auto& [x, ty] : ctx)
    if (same_type(ty, t)) vars.push_back(x);

  enum Choice { variable, intro, let, fst, snd, app };
  std::vector<Choice> options;
  if (!vars.empty()) options.push_back(variable);
  if (t->kind != Type::Kind::base) options.push_back(intro);
  if (t->kind == Type::Kind::monad) options.insert(options.end(), {let, let});
  if (budget >= 3) options.insert(options.end(), {fst, snd, app});
  if (options.empty()) return minimal(ctx, t);

  switch (options[rng_.below(options.size())]) {
    case variable: return var_term(vars[rng_.below(vars.size())]);
    case intro:
      switch (t->kind) {
        case Type::Kind::unit: return unit_term();
        case Type::Kind::prod: {
          TermP a = gen(ctx, t->left, (budget - 1) / 2);
          return pair_term(a, gen(ctx, t->right, budget - 1 - std::min(budget - 1, term_size(a))));
        }
        case Type::Kind::arrow: {
          std::string x = fresh();
          ctx.emplace_back(x, t->left);
          TermP body = gen(ctx, t->right, budget - 1);
          ctx.pop_back();
          return lam_term(x, t->left, body);
        }
        case Type::Kind::monad: return val_term(gen(ctx, t->left, budget - 1));
        default: return minimal(ctx, t);
      }
    case let: {
      TypeP s = pick_type(false);
      TermP bound = gen(ctx, monad_type(s), (budget - 1) / 2);
      std::string x = fresh();
      ctx.emplace_back(x, s);
      TermP body = gen(ctx, t, budget - 1 - std::min(budget - 1, term_size(bound)));
      ctx.pop_back();
      return let_term(x, bound, body);
    }
    case fst: return fst_term(gen(ctx, prod_type(t, pick_type(false)), budget - 1));
    case snd: return snd_term(gen(ctx, prod_type(pick_type(false), t), budget - 1));
    case app: {
      TypeP s = pick_type(false);
      TermP f = gen(ctx, arrow_type(s, t), (budget - 1) / 2);
      return app_term(f, gen(ctx, s, budget - 1 - std::min(budget - 1, term_size(f))));
    }
  }
  return minimal(ctx, t);
}

Judgment TermGenerator::next() {
  while (true) {
    counter_ = 0;
    Context ctx{{"x", base_type("b")}};
    std::size_t extra = rng_.below(cfg_.max_context);
    static const char* names[] = {"y", "z", "w"};
    for (std::size_t i = 0; i < extra && i < 3; ++i) ctx.emplace_back(names[i], pick_type(true));
    TypeP goal = pick_type(true);
    if (rng_.below(3) == 0) goal = arrow_type(pick_type(false), goal);
    Context scratch = ctx;
    TermP term = gen(scratch, goal, cfg_.max_size);
    if (term_size(term) > cfg_.max_size) continue;
    typecheck(ctx, term);  // generator invariant
    return Judgment{ctx, term};
  }
}

}  // namespace monarel::ml
