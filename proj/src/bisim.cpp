#include "monarel/bisim.hpp"

#include <algorithm>

#include "monarel/error.hpp"

namespace monarel {

namespace {

void validate_key(const FinSet& states, const FinSet& labels, const StepKey& key) {
  if (!states.contains(key.first)) throw Error("step from unknown state " + key.first.str());
  if (!labels.contains(key.second)) throw Error("step under unknown label " + key.second.str());
}

}  // namespace

LTS::LTS(FinSet states, FinSet labels, std::map<StepKey, FinSet> step)
    : states_(std::move(states)), labels_(std::move(labels)), step_(std::move(step)) {
  for (const auto& [key, succ] : step_) {
    validate_key(states_, labels_, key);
    if (!succ.is_subset_of(states_))
      throw Error("successors of " + key.first.str() + " under " + key.second.str() +
                  " leave the state set");
  }
}

FinSet LTS::successors(const Atom& s, const Atom& label) const {
  auto it = step_.find({s, label});
  return it == step_.end() ? FinSet() : it->second;
}

PLTS::PLTS(FinSet states, FinSet labels, DistMode mode, std::map<StepKey, RatDist> step)
    : states_(std::move(states)), labels_(std::move(labels)), mode_(mode), step_(std::move(step)) {
  for (const auto& [key, nu] : step_) {
    validate_key(states_, labels_, key);
    if (nu.carrier() != states_)
      throw Error("step of " + key.first.str() + " under " + key.second.str() +
                  " is not a distribution over the states");
    if (nu.mode() != mode_)
      throw Error("step of " + key.first.str() + " under " + key.second.str() + " has mode " +
                  to_string(nu.mode()) + ", expected " + to_string(mode_));
  }
}

const RatDist* PLTS::step(const Atom& s, const Atom& label) const {
  auto it = step_.find({s, label});
  return it == step_.end() ? nullptr : &it->second;
}

Rational PLTS::mass_into(const Atom& s, const Atom& label, std::span<const Atom> targets) const {
  const RatDist* nu = step(s, label);
  return nu ? nu->measure(targets) : Rational(0);
}

// ------------------------------------------------------------ checks

namespace {

Rel label_relation(const FinSet& l1, const FinSet& l2, const std::optional<Rel>& labels) {
  if (labels) {
    if (labels->left() != l1 || labels->right() != l2)
      throw Error("label relation does not match the label sets");
    return *labels;
  }
  if (l1 != l2) throw Error("label sets differ; give a label relation");
  return Rel::diagonal(l1);
}

void check_carriers(const Rel& s, const FinSet& a1, const FinSet& a2) {
  if (s.left() != a1) throw Error("relation's left carrier is not the first system's state set");
  if (s.right() != a2) throw Error("relation's right carrier is not the second system's state set");
}

std::optional<std::string> egli_milner_reason(const FinSet& b1, const FinSet& b2, const Rel& s) {
  for (const auto& x : b1) {
    auto succ = s.successors(x);
    if (std::none_of(succ.begin(), succ.end(), [&](const Atom& y) { return b2.contains(y); }))
      return "successor " + x.str() + " of the first state has no related successor";
  }
  for (const auto& y : b2) {
    if (std::none_of(b1.begin(), b1.end(), [&](const Atom& x) { return s.contains(x, y); }))
      return "successor " + y.str() + " of the second state has no related successor";
  }
  return std::nullopt;
}

template <class Step>
BisimResult run_steps(const Rel& s, const Rel& rl, Step&& step) {
  BisimResult out;
  for (const auto& p : s.carrier()) {
    for (const auto& lp : rl.carrier()) {
      ++out.checked;
      if (auto failure = step(p.first(), p.second(), lp.first(), lp.second())) {
        out.holds = false;
        out.failure = std::move(failure);
        return out;
      }
    }
  }
  return out;
}

std::optional<BisimFailure> lts_step(const Rel& s, const LTS& f1, const LTS& f2, const Atom& a1,
                                     const Atom& a2, const Atom& l1, const Atom& l2) {
  FinSet b1 = f1.successors(a1, l1);
  FinSet b2 = f2.successors(a2, l2);
  auto reason = egli_milner_reason(b1, b2, s);
  if (!reason) return std::nullopt;
  return BisimFailure{a1, a2, l1, l2, Atom::set(std::vector<Atom>(b1.begin(), b1.end())).str(),
                      Atom::set(std::vector<Atom>(b2.begin(), b2.end())).str(), *reason,
                      std::nullopt, 0, 0};
}

std::optional<BisimFailure> plts_step(const Rel& s, const PLTS& f1, const PLTS& f2, const Atom& a1,
                                      const Atom& a2, const Atom& l1, const Atom& l2) {
  const RatDist* nu1 = f1.step(a1, l1);
  const RatDist* nu2 = f2.step(a2, l2);
  Rational m1 = nu1 ? nu1->mass() : Rational(0);
  Rational m2 = nu2 ? nu2->mass() : Rational(0);
  auto failure = [&](std::string reason) {
    return BisimFailure{a1, a2, l1, l2, nu1 ? nu1->to_atom().str() : "none",
                        nu2 ? nu2->to_atom().str() : "none", std::move(reason), std::nullopt, m1, m2};
  };
  if (m1 != m2) return failure("total masses differ");
  if (m1 == 0) return std::nullopt;
  CouplingResult c = lift_member_dist(*nu1, *nu2, s, false);
  if (c.member) return std::nullopt;
  BisimFailure f = failure("no coupling supported on the relation");
  f.violated_subset = c.violated_subset;
  f.lhs = c.violated_lhs;
  f.rhs = c.violated_rhs;
  return f;
}

}  // namespace

BisimResult check_bisimulation(const Rel& s, const LTS& f1, const LTS& f2,
                               const std::optional<Rel>& labels) {
  check_carriers(s, f1.states(), f2.states());
  Rel rl = label_relation(f1.labels(), f2.labels(), labels);
  return run_steps(s, rl, [&](const Atom& a1, const Atom& a2, const Atom& l1, const Atom& l2) {
    return lts_step(s, f1, f2, a1, a2, l1, l2);
  });
}

BisimResult check_prob_bisimulation(const Rel& s, const PLTS& f1, const PLTS& f2,
                                    const std::optional<Rel>& labels) {
  check_carriers(s, f1.states(), f2.states());
  if (f1.mode() != f2.mode()) throw Error("systems have different distribution modes");
  Rel rl = label_relation(f1.labels(), f2.labels(), labels);
  return run_steps(s, rl, [&](const Atom& a1, const Atom& a2, const Atom& l1, const Atom& l2) {
    return plts_step(s, f1, f2, a1, a2, l1, l2);
  });
}

namespace {

template <class Step>
Rel prune(const FinSet& a1, const FinSet& a2, const Rel& rl, Step&& step) {
  Rel s = Rel::full(a1, a2);
  while (true) {
    std::vector<std::pair<Atom, Atom>> keep;
    for (const auto& p : s.carrier()) {
      bool ok = true;
      for (const auto& lp : rl.carrier()) {
        if (step(s, p.first(), p.second(), lp.first(), lp.second())) {
          ok = false;
          break;
        }
      }
      if (ok) keep.emplace_back(p.first(), p.second());
    }
    if (keep.size() == s.size()) return s;
    s = Rel(a1, a2, std::move(keep));
  }
}

}  // namespace

Rel largest_bisimulation(const LTS& f1, const LTS& f2, const std::optional<Rel>& labels) {
  Rel rl = label_relation(f1.labels(), f2.labels(), labels);
  return prune(f1.states(), f2.states(), rl,
               [&](const Rel& s, const Atom& a1, const Atom& a2, const Atom& l1, const Atom& l2) {
                 return lts_step(s, f1, f2, a1, a2, l1, l2).has_value();
               });
}

Rel largest_bisimulation(const PLTS& f1, const PLTS& f2, const std::optional<Rel>& labels) {
  if (f1.mode() != f2.mode()) throw Error("systems have different distribution modes");
  Rel rl = label_relation(f1.labels(), f2.labels(), labels);
  return prune(f1.states(), f2.states(), rl,
               [&](const Rel& s, const Atom& a1, const Atom& a2, const Atom& l1, const Atom& l2) {
                 return plts_step(s, f1, f2, a1, a2, l1, l2).has_value();
               });
}

// ------------------------------------------------------------ Larsen-Skou

Atom tag_left(const Atom& s) { return Atom::pair(Atom::leaf("1"), s); }
Atom tag_right(const Atom& t) { return Atom::pair(Atom::leaf("2"), t); }

PLTS disjoint_union(const PLTS& f1, const PLTS& f2) {
  if (f1.labels() != f2.labels()) throw Error("systems have different label sets");
  if (f1.mode() != f2.mode()) throw Error("systems have different distribution modes");
  std::vector<Atom> states;
  for (const auto& s : f1.states()) states.push_back(tag_left(s));
  for (const auto& t : f2.states()) states.push_back(tag_right(t));
  FinSet all(std::move(states));
  std::map<StepKey, RatDist> step;
  auto add = [&](const PLTS& f, Atom (*tag)(const Atom&)) {
    for (const auto& [key, nu] : f.steps()) {
      std::map<Atom, Rational> w;
      for (const auto& [x, p] : nu.weights()) w[tag(x)] = p;
      step.emplace(StepKey{tag(key.first), key.second}, RatDist(all, std::move(w), f.mode()));
    }
  };
  add(f1, tag_left);
  add(f2, tag_right);
  return PLTS(all, f1.labels(), f1.mode(), std::move(step));
}

Partition generated_partition(const Rel& s) { return saturate(s).classes; }

Rel cross_relation(const Partition& e, const FinSet& a1, const FinSet& a2) {
  std::vector<std::pair<Atom, Atom>> pairs;
  for (const auto& cls : e)
    for (const auto& x : cls.left)
      for (const auto& y : cls.right) pairs.emplace_back(x, y);
  return Rel(a1, a2, std::move(pairs));
}

LarsenSkouResult larsen_skou_check(const PLTS& f1, const PLTS& f2, const Partition& e) {
  PLTS u = disjoint_union(f1, f2);
  std::map<Atom, std::size_t> owner;
  std::vector<std::vector<Atom>> classes;
  for (const auto& cls : e) {
    std::vector<Atom> tagged;
    for (const auto& x : cls.left) {
      if (!f1.states().contains(x)) throw Error("class member " + x.str() + " is not a state of the first system");
      tagged.push_back(tag_left(x));
    }
    for (const auto& y : cls.right) {
      if (!f2.states().contains(y)) throw Error("class member " + y.str() + " is not a state of the second system");
      tagged.push_back(tag_right(y));
    }
    if (tagged.empty()) throw Error("empty equivalence class");
    for (const auto& x : tagged)
      if (!owner.emplace(x, classes.size()).second)
        throw Error("state " + x.str() + " lies in two classes");
    classes.push_back(std::move(tagged));
  }
  if (owner.size() != u.states().size()) {
    for (const auto& x : u.states())
      if (!owner.count(x)) throw Error("state " + x.str() + " lies in no class");
  }

  LarsenSkouResult out;
  for (const auto& cls : classes) {
    const Atom& rep = cls.front();
    for (std::size_t i = 1; i < cls.size(); ++i) {
      for (const auto& label : u.labels()) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
          Rational ma = u.mass_into(rep, label, classes[c]);
          Rational mb = u.mass_into(cls[i], label, classes[c]);
          if (ma != mb) {
            out.holds = false;
            out.failure = LarsenSkouFailure{rep, cls[i], label, c, ma, mb};
            return out;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace monarel
