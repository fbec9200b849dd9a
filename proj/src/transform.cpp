#include "tlcga/transform.hpp"

#include <functional>
#include <unordered_map>

namespace tlcga {

namespace {

bool is_bottom(const Formula& f) {
  return f->op == Op::False || (f->op == Op::Not && f->left->op == Op::True);
}

Formula iff(const Formula& a, const Formula& b) { return conj(implies(a, b), implies(b, a)); }

}  // namespace

Formula conjunction_simplified(const std::vector<Formula>& fs) {
  std::vector<Formula> kept;
  for (const auto& f : fs)
    if (f->op != Op::True) kept.push_back(f);
  return conjunction(kept);
}

Formula disjunction_simplified(const std::vector<Formula>& fs) {
  std::vector<Formula> kept;
  for (const auto& f : fs)
    if (!is_bottom(f)) kept.push_back(f);
  return disjunction(kept);
}

GoalAssignment nexttime_extension(const GoalAssignment& g) {
  const auto support = g.support();
  std::set<Coalition> unions(support.begin(), support.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Coalition> cur(unions.begin(), unions.end());
    for (const auto& a : cur)
      for (const auto& b : support)
        if (unions.insert(coalition_union(a, b)).second) grew = true;
  }
  GoalAssignment out;
  for (const auto& c : unions) {
    std::vector<Formula> parts;
    for (const auto& [c2, p] : g.entries()) {
      if (!is_subset(c2, c)) continue;
      for (const auto& q : path_conjuncts(p))
        if (q->op == PathOp::Next) parts.push_back(q->left);
    }
    parts.push_back(brak(split_lfor_xfor(g.restricted(c)).first));
    out = out.updated(c, next(conjunction_simplified(parts)));
  }
  return out;
}

GoalAssignment gamma_of(const GoalAssignment& g, const Formula& f) {
  if (g.empty()) throw InputError("gamma_of: goal assignment has empty support");
  return nexttime_extension(g).updated(g.support_union(), next(f));
}

namespace {

std::pair<Formula, UnfoldParts> assemble(const GoalAssignment& g, const Formula& step) {
  UnfoldParts parts;
  for (const auto& [c, p] : g.entries()) {
    auto cs = path_conjuncts(p);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const auto& q = cs[i];
      if (q->op == PathOp::Until) {
        std::vector<Path> rest;
        for (std::size_t j = 0; j < cs.size(); ++j)
          if (j != i) rest.push_back(cs[j]);
        GoalAssignment reduced = rest.empty() ? g.without(c) : g.updated(c, path_conjunction(rest));
        parts.finish.push_back(conjunction_simplified({q->right, brak(reduced)}));
        parts.uholds.push_back(q->left);
      } else if (q->op == PathOp::Globally) {
        parts.gholds.push_back(q->left);
      }
    }
  }
  std::vector<Formula> holds = parts.uholds;
  holds.insert(holds.end(), parts.gholds.begin(), parts.gholds.end());
  holds.push_back(step);
  std::vector<Formula> disjuncts = parts.finish;
  disjuncts.push_back(conjunction_simplified(holds));
  return {disjunction_simplified(disjuncts), parts};
}

}  // namespace

std::pair<Formula, UnfoldParts> unfold(const GoalAssignment& g) {
  return assemble(g, brak(nexttime_extension(g)));
}

Formula unfold_formula(const GoalAssignment& g) { return unfold(g).first; }

Formula induction_formula(const GoalAssignment& g, const Formula& f) {
  if (!is_long_term(g))
    throw InputError("induction formula needs a long-term goal assignment, got " + to_string(g));
  return assemble(g, brak(gamma_of(g, f))).first;
}

namespace {

Path map_bodies(const Path& p, const std::function<Formula(const Formula&)>& fn) {
  switch (p->op) {
    case PathOp::Next: return next(fn(p->left));
    case PathOp::Globally: return globally(fn(p->left));
    case PathOp::Until: return until(fn(p->left), fn(p->right));
    case PathOp::And: return path_and(map_bodies(p->pleft, fn), map_bodies(p->pright, fn));
  }
  return p;
}

GoalAssignment map_goal_bodies(const GoalAssignment& g,
                               const std::function<Formula(const Formula&)>& fn) {
  GoalAssignment out;
  for (const auto& [c, p] : g.entries()) out = out.updated(c, map_bodies(p, fn));
  return out;
}

Formula rebuild(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  switch (f->op) {
    case Op::Not: return neg(fn(f->left));
    case Op::And: return conj(fn(f->left), fn(f->right));
    case Op::Or: return disj(fn(f->left), fn(f->right));
    case Op::Implies: return implies(fn(f->left), fn(f->right));
    case Op::Mu: return mu(f->name, fn(f->left));
    case Op::Nu: return nu(f->name, fn(f->left));
    case Op::Brak: return brak(map_goal_bodies(f->goals, fn));
    default: return f;
  }
}

Formula nf(const Formula& f) {
  if (f->op == Op::Mu || f->op == Op::Nu || f->op == Op::Var)
    throw InputError("normal form is defined for formulas without fixpoint operators");
  if (f->op != Op::Brak) return rebuild(f, nf);
  auto g = map_goal_bodies(f->goals, nf);
  if (classify(g) == GoalType::Mixed) return nf(unfold_formula(g));
  return brak(g);
}

bool nf_ok(const Formula& f) {
  if (f->op == Op::Brak) {
    if (classify(f->goals) == GoalType::Mixed) return false;
    for (const auto& [c, p] : f->goals.entries())
      for (const auto& q : path_conjuncts(p)) {
        if (!nf_ok(q->left)) return false;
        if (q->right && !nf_ok(q->right)) return false;
      }
    return true;
  }
  if (f->left && !nf_ok(f->left)) return false;
  if (f->right && !nf_ok(f->right)) return false;
  return true;
}

class Translator {
 public:
  explicit Translator(const Formula& f) : used_(identifiers(f)) {}

  Formula t(const Formula& f) {
    bool closed = free_vars(f).empty();
    if (closed) {
      auto it = memo_.find(f);
      if (it != memo_.end()) return it->second;
    }
    Formula out = translate(f);
    if (closed) memo_.emplace(f, out);
    return out;
  }

 private:
  Formula translate(const Formula& f) {
    if (f->op != Op::Brak) return rebuild(f, [this](const Formula& g) { return t(g); });
    const auto& g = f->goals;
    switch (classify(g)) {
      case GoalType::Nexttime:
        return brak(map_goal_bodies(g, [this](const Formula& h) { return t(h); }));
      case GoalType::LongTermTypeU: {
        auto z = fresh();
        return mu(z, t(induction_formula(g, var(z))));
      }
      case GoalType::LongTermTypeG: {
        auto z = fresh();
        return nu(z, t(induction_formula(g, var(z))));
      }
      case GoalType::Mixed: return t(unfold_formula(g));
    }
    return f;
  }

  std::string fresh() {
    while (true) {
      auto name = "_z" + std::to_string(counter_++);
      if (!used_.count(name)) {
        used_.insert(name);
        return name;
      }
    }
  }

  std::set<std::string> used_;
  int counter_ = 0;
  std::unordered_map<Formula, Formula, FormulaHash, FormulaEq> memo_;
};

}  // namespace

Formula normal_form(const Formula& f) { return nf(f); }

bool in_normal_form(const Formula& f) { return nf_ok(f); }

Formula to_mu(const Formula& f) {
  auto d = desugar(f);
  Translator tr(d);
  return tr.t(d);
}

GoalAssignment monotone_closure(const GoalAssignment& g) {
  GoalAssignment out;
  for (const auto& [c, p] : g.entries()) {
    auto cs = path_conjuncts(p);
    for (const auto& [c2, p2] : g.entries()) {
      if (c2 == c || !is_subset(c2, c)) continue;
      for (const auto& q : path_conjuncts(p2)) {
        bool present = false;
        for (const auto& e : cs) present = present || equal(e, q);
        if (!present) cs.push_back(q);
      }
    }
    out = out.updated(c, path_conjunction(cs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axiom schemes

const std::vector<std::string>& axiom_schemes() {
  static const std::vector<std::string> names = {
      "Triv", "Safe", "Merge", "GrandCoalition", "Case", "Con",
      "Fix", "FP(G)", "FP(U)", "Superadditivity", "Agt-Maximality"};
  return names;
}

namespace {

Formula next_body(const GoalAssignment& g, const Coalition& c, const std::string& scheme) {
  auto p = g.at(c);
  if (p->op != PathOp::Next)
    throw InputError(scheme + ": goal of " + to_string(c) + " must be a nexttime goal");
  return p->left;
}

Formula require(const Formula& f, const char* what, const std::string& scheme) {
  if (!f) throw InputError(scheme + ": missing metavariable " + what);
  return f;
}

}  // namespace

Formula axiom_instance(const std::string& scheme, const AxiomSubst& s) {
  const Coalition agt = make_coalition(s.agents);
  if (scheme == "Triv") return brak(GoalAssignment{});
  if (scheme == "Safe") return neg(brak({{agt, next(f_false())}}));
  if (scheme == "Merge") {
    std::vector<Formula> lhs;
    GoalAssignment merged;
    for (std::size_t i = 0; i < s.parts.size(); ++i) {
      const auto& [ci, ti] = s.parts[i];
      for (std::size_t j = 0; j < i; ++j)
        if (!disjoint(ci, s.parts[j].first) || make_coalition(ci) == make_coalition(s.parts[j].first))
          throw InputError("Merge: coalitions must be pairwise disjoint and distinct");
      lhs.push_back(brak({{ci, ti}}));
      merged = merged.updated(ci, ti);
    }
    return implies(conjunction(lhs), brak(merged));
  }
  if (scheme == "GrandCoalition") {
    auto phi = next_body(s.gamma, agt, scheme);
    auto psi = require(s.psi, "psi", scheme);
    auto a = brak(s.gamma.updated(agt, next(conj(phi, psi))));
    auto b = brak(s.gamma.updated(agt, next(conj(phi, neg(psi)))));
    return implies(brak(s.gamma), disj(a, b));
  }
  if (scheme == "Case") {
    auto phi = next_body(s.gamma, s.c, scheme);
    auto psi = require(s.psi, "psi", scheme);
    auto a = brak(s.gamma.updated(s.c, next(conj(phi, psi))));
    auto b = brak(s.gamma.restricted(s.c).updated(agt, next(neg(psi))));
    return implies(brak(s.gamma), disj(a, b));
  }
  if (scheme == "Con") {
    if (!is_subset(s.c2, s.c)) throw InputError("Con: C' must be a subset of C");
    auto phi = next_body(s.gamma, s.c, scheme);
    auto psi = next_body(s.gamma, s.c2, scheme);
    return implies(brak(s.gamma), brak(s.gamma.updated(s.c, next(conj(phi, psi)))));
  }
  if (scheme == "Fix") return iff(unfold_formula(s.gamma), brak(s.gamma));
  if (scheme == "FP(G)") {
    auto chi = require(s.chi, "chi", scheme);
    auto box = brak({{s.c, globally(chi)}});
    return iff(box, conj(chi, brak({{s.c, next(box)}})));
  }
  if (scheme == "FP(U)") {
    auto alpha = require(s.alpha, "alpha", scheme);
    auto beta = require(s.beta, "beta", scheme);
    auto dia = brak({{s.c, until(alpha, beta)}});
    return iff(dia, disj(beta, conj(alpha, brak({{s.c, next(dia)}}))));
  }
  if (scheme == "Superadditivity") {
    if (!disjoint(s.c, s.c2) || make_coalition(s.c) == make_coalition(s.c2))
      throw InputError("Superadditivity: coalitions must be disjoint and distinct");
    auto phi = require(s.phi, "phi", scheme);
    auto psi = require(s.psi, "psi", scheme);
    GoalAssignment rhs;
    rhs = rhs.updated(s.c, next(phi));
    rhs = rhs.updated(s.c2, next(psi));
    rhs = rhs.updated(coalition_union(s.c, s.c2), next(conj(phi, psi)));
    return implies(conj(brak({{s.c, next(phi)}}), brak({{s.c2, next(psi)}})), brak(rhs));
  }
  if (scheme == "Agt-Maximality") {
    auto phi = require(s.phi, "phi", scheme);
    return disj(brak({{Coalition{}, next(phi)}}), brak({{agt, next(neg(phi))}}));
  }
  throw InputError("unknown axiom scheme '" + scheme + "'");
}

}  // namespace tlcga
