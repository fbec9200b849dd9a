#include <deque>

#include "tlcga/syntax.hpp"
#include "tlcga/transform.hpp"

namespace tlcga {

namespace {

std::vector<Formula> x_bodies(const GoalAssignment& g) {
  std::vector<Formula> out;
  for (const auto& [c, p] : g.entries())
    for (const auto& q : path_conjuncts(p))
      if (q->op == PathOp::Next) out.push_back(q->left);
  return out;
}

std::vector<Formula> components(const Formula& f) {
  switch (f->op) {
    case Op::And:
    case Op::Or: return {f->left, f->right};
    case Op::Brak:
      if (classify(f->goals) == GoalType::Nexttime) return x_bodies(f->goals);
      return {unfold_formula(f->goals)};
    case Op::Not: {
      const auto& g = f->left;
      switch (g->op) {
        case Op::Not: return {g->left};
        case Op::And:
        case Op::Or: return {neg(g->left), neg(g->right)};
        case Op::Brak: {
          if (classify(g->goals) != GoalType::Nexttime) return {neg(unfold_formula(g->goals))};
          std::vector<Formula> out;
          for (const auto& b : x_bodies(g->goals)) out.push_back(neg(b));
          return out;
        }
        default: return {};
      }
    }
    default: return {};
  }
}

}  // namespace

FormulaSet ecl(const FormulaSet& fs) {
  FormulaSet out;
  std::deque<Formula> work;
  auto add = [&](const Formula& f) {
    if (out.insert(f).second) work.push_back(f);
    auto o = overline(f);
    if (out.insert(o).second) work.push_back(o);
  };
  for (const auto& f : fs) {
    auto d = desugar(f);
    if (!free_vars(d).empty() || !in_normal_form(d))
      throw InputError("ecl: formula is not in normal form: " + to_string(f));
    add(d);
  }
  while (!work.empty()) {
    auto f = work.front();
    work.pop_front();
    for (const auto& c : components(f)) add(c);
  }
  return out;
}

FormulaSet ecl(const Formula& f) { return ecl(FormulaSet{f}); }

}  // namespace tlcga
