#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "monarel/finset.hpp"
#include "monarel/lawcheck.hpp"
#include "monarel/monad.hpp"
#include "monarel/random.hpp"

namespace monarel::ml {

// ------------------------------------------------------------ syntax

struct Type;
using TypeP = std::shared_ptr<const Type>;

struct Type {
  enum class Kind { base, unit, prod, arrow, monad };
  Kind kind;
  std::string name;  // base only
  TypeP left;        // prod, arrow, monad (the argument)
  TypeP right;       // prod, arrow
};

TypeP base_type(std::string name);
TypeP unit_type();
TypeP prod_type(TypeP a, TypeP b);
TypeP arrow_type(TypeP a, TypeP b);
TypeP monad_type(TypeP a);

/// Fully parenthesized only where needed; parse_type(show(t)) == t.
std::string show(const TypeP& t);
bool same_type(const TypeP& a, const TypeP& b);
/// Base type names occurring in t.
void collect_bases(const TypeP& t, std::vector<std::string>& out);

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { var, unit, pair, fst, snd, lam, app, val, let };
  Kind kind;
  std::string name;  // var; bound variable of lam/let
  TypeP annot;       // lam
  TermP a;           // pair.1, fst/snd/val arg, lam body, app fun, let bound term
  TermP b;           // pair.2, app arg, let body
  std::size_t pos = 0;  // offset in the source text
};

TermP var_term(std::string name);
TermP unit_term();
TermP pair_term(TermP a, TermP b);
TermP fst_term(TermP a);
TermP snd_term(TermP a);
TermP lam_term(std::string x, TypeP ty, TermP body);
TermP app_term(TermP f, TermP x);
TermP val_term(TermP a);
TermP let_term(std::string x, TermP bound, TermP body);

std::string show(const TermP& t);
std::size_t term_size(const TermP& t);

/// Throws Error with "position N: ..." on lexical or syntax errors.
TypeP parse_type(std::string_view src);
TermP parse_term(std::string_view src);

using Context = std::vector<std::pair<std::string, TypeP>>;

struct Judgment {
  Context context;
  TermP term;
};

/// "x : b, f : b -> T b |- term"; the context part may be empty.
Judgment parse_judgment(std::string_view src);

/// Principal type of t in ctx (later entries shadow earlier ones). Throws
/// Error with the position of the offending subterm.
TypeP typecheck(const Context& ctx, const TermP& t);

// ------------------------------------------------------------ semantics

/// Interpretation of base types in an enumerable monad.
struct Model {
  MonadInstance monad;
  std::map<std::string, FinSet> base;
};

/// Evaluates terms and materializes denotations of types, with caches.
/// Function values are graph atoms over the materialized domain.
class Interpreter {
 public:
  /// Throws Error for non-enumerable monads.
  explicit Interpreter(Model model);

  const Model& model() const { return model_; }
  /// The set denoted by t. Throws Error when it is larger than `cap`.
  const FinSet& denote(const TypeP& t);
  std::optional<std::size_t> denote_size(const TypeP& t) const;

  /// env aligned with ctx. The term must typecheck in ctx.
  Atom eval(const Context& ctx, const std::vector<Atom>& env, const TermP& t);

  static constexpr std::size_t cap = std::size_t{1} << 16;

 private:
  Model model_;
  std::unordered_map<std::string, FinSet> denotations_;
};

/// The type-indexed logical relation between two models of the same monad.
class LogicalRelation {
 public:
  /// base_rels[name] relates model1.base[name] with model2.base[name].
  LogicalRelation(Model m1, Model m2, std::map<std::string, Rel> base_rels);

  /// The relation at t, over (denotation in model 1, denotation in model 2).
  const Rel& at(const TypeP& t);
  /// Membership without materializing the relation at t itself.
  bool related(const TypeP& t, const Atom& v1, const Atom& v2);

  Interpreter& left() { return i1_; }
  Interpreter& right() { return i2_; }

  static constexpr std::size_t pair_cap = std::size_t{1} << 20;

 private:
  Interpreter i1_;
  Interpreter i2_;
  std::map<std::string, Rel> base_;
  std::unordered_map<std::string, Rel> cache_;
};

Rel logical_relation(const Model& m1, const Model& m2, const std::map<std::string, Rel>& base_rels,
                     const TypeP& t);

/// Checks that related environments give related denotations. Environment
/// pairs are enumerated when at most `env_limit`, otherwise `env_limit`
/// of them are sampled with `seed`.
LawReport basic_lemma_check(LogicalRelation& rel, const Judgment& j, std::size_t env_limit = 20000,
                            std::uint64_t seed = 1);
LawReport basic_lemma_check(const Model& m1, const Model& m2,
                            const std::map<std::string, Rel>& base_rels, const Judgment& j);

// ------------------------------------------------------------ generation

struct GeneratorConfig {
  std::size_t max_size = 8;
  std::size_t max_context = 3;
};

/// Seeded generator of well-typed judgments over the single base type "b",
/// restricted to types whose denotations stay small when |b| <= 2.
class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, GeneratorConfig cfg = {});
  Judgment next();

 private:
  TermP gen(Context& ctx, const TypeP& t, std::size_t budget);
  TermP minimal(Context& ctx, const TypeP& t);
  TypeP pick_type(bool allow_arrow);
  std::string fresh();

  Rng rng_;
  GeneratorConfig cfg_;
  std::vector<TypeP> small_;
  std::size_t counter_ = 0;
};

}  // namespace monarel::ml
