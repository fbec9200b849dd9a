#include "tlcga/gametheory.hpp"

#include "tlcga/checker.hpp"

namespace tlcga {

OutcomePartition partition_outcomes(const Model& m, int w, const FiniteStrategyProfile& sigma,
                                    const GoalAssignment& g) {
  Lasso lasso = play_lasso(m, w, sigma);
  OutcomePartition part;
  bool individual = false;
  Coalition losers;
  for (const auto& [c, p] : g.entries()) {
    bool won = eval_on_lasso(m, lasso, p);
    (won ? part.winning : part.losing).push_back(c);
    if (c.size() == 1) {
      individual = true;
      if (!won) losers.push_back(c[0]);
    }
  }
  if (individual) {
    part.losers = make_coalition(losers);
    part.winners = coalition_difference(m.agents(), part.losers);
  }
  return part;
}

Path merged_conjunction(const std::vector<Path>& goals) {
  std::vector<Path> parts;
  for (const auto& g : goals)
    for (const auto& q : path_conjuncts(g))
      if (!is_trivial(q)) parts.push_back(q);
  if (parts.empty()) return next(f_true());
  if (parts.size() == 1) return parts[0];
  bool all_next = true;
  bool all_globally = true;
  std::vector<Formula> bodies;
  for (const auto& q : parts) {
    all_next = all_next && q->op == PathOp::Next;
    all_globally = all_globally && q->op == PathOp::Globally;
    bodies.push_back(q->left);
  }
  if (all_next) return next(conjunction(bodies));
  if (all_globally) return globally(conjunction(bodies));
  return path_conjunction(parts);
}

Path negated_goal(const Path& goal) {
  Path merged = merged_conjunction({goal});
  switch (merged->op) {
    case PathOp::Next: return next(neg(merged->left));
    case PathOp::Globally: return until(f_true(), neg(merged->left));
    default: break;
  }
  throw InputError("the negation of " + to_string(goal) + " is not a path formula");
}

Path individual_goal(const GoalAssignment& g, const std::string& agent) { return g.at({agent}); }

void require_individual(const GoalAssignment& g) {
  for (const auto& [c, p] : g.entries())
    if (c.size() != 1) throw InputError("goal of " + to_string(c) + " is not an individual goal");
}

namespace {

void add_entry(GoalAssignment& out, const Coalition& c, const Path& p) {
  if (is_trivial(p)) return;
  // Two requirements for one coalition are conjoined.
  if (out.supports(c))
    out = out.updated(c, merged_conjunction({out.at(c), p}));
  else
    out = out.updated(c, p);
}

std::vector<Coalition> subsets(const Coalition& set) {
  std::vector<Coalition> out;
  const std::size_t n = set.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Coalition c;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) c.push_back(set[i]);
    out.push_back(c);
  }
  return out;
}

}  // namespace

GoalAssignment nash_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part) {
  require_individual(g);
  GoalAssignment out;
  std::vector<Path> won;
  for (const auto& a : part.winners) won.push_back(individual_goal(g, a));
  // With nexttime goals the grand coalition also states the losers' failure,
  // which the blocking entries imply anyway.
  bool nexttime = classify(g) == GoalType::Nexttime;
  if (nexttime)
    for (const auto& a : part.losers) won.push_back(negated_goal(individual_goal(g, a)));
  add_entry(out, agents, merged_conjunction(won));
  for (const auto& a : part.losers)
    add_entry(out, coalition_difference(agents, {a}), negated_goal(individual_goal(g, a)));
  return out;
}

GoalAssignment strong_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part) {
  require_individual(g);
  GoalAssignment out;
  std::vector<Path> won;
  for (const auto& a : part.winners) won.push_back(individual_goal(g, a));
  add_entry(out, agents, merged_conjunction(won));
  for (const auto& comp : subsets(part.losers)) {
    if (comp.empty()) continue;
    std::vector<Path> goals;
    for (const auto& a : comp) goals.push_back(individual_goal(g, a));
    add_entry(out, coalition_difference(agents, comp), negated_goal(merged_conjunction(goals)));
  }
  return out;
}

GoalAssignment coalitional_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part) {
  GoalAssignment out;
  std::vector<Path> won;
  for (const auto& c : part.winning) won.push_back(g.at(c));
  add_entry(out, agents, merged_conjunction(won));
  for (const auto& comp : part.losing) add_entry(out, coalition_difference(agents, comp), negated_goal(g.at(comp)));
  return out;
}

GoalAssignment coequilibrium_ga(const Coalition& agents, const GoalAssignment& g) {
  GoalAssignment out;
  for (const auto& [c, p] : g.entries())
    if (c.size() == 1 || c == agents) out = out.updated(c, p);
  return out;
}

bool check_coequilibrium(const Model& m, int w, const GoalAssignment& g) {
  return check(m, w, brak(coequilibrium_ga(m.agents(), g)));
}

namespace {

Formula deviation_formula(const GoalAssignment& g, const Coalition& c) {
  std::vector<Path> goals;
  for (const auto& a : c) goals.push_back(individual_goal(g, a));
  return brak({{c, merged_conjunction(goals)}});
}

}  // namespace

Formula core_nonempty_formula(const GoalAssignment& g, const Coalition& losers) {
  require_individual(g);
  std::vector<Formula> parts;
  for (const auto& c : subsets(make_coalition(losers)))
    if (!c.empty()) parts.push_back(neg(deviation_formula(g, c)));
  return conjunction(parts);
}

bool has_beneficial_deviation(const Model& m, int w, const GoalAssignment& g, const Coalition& c) {
  require_individual(g);
  return check(m, w, deviation_formula(g, make_coalition(c)));
}

Notion parse_notion(const std::string& s) {
  if (s == "nash") return Notion::nash;
  if (s == "strong") return Notion::strong;
  if (s == "coalitional") return Notion::coalitional;
  if (s == "coeq") return Notion::coeq;
  if (s == "core") return Notion::core;
  throw InputError("unknown notion '" + s + "'");
}

std::string to_string(Notion n) {
  switch (n) {
    case Notion::nash: return "nash";
    case Notion::strong: return "strong";
    case Notion::coalitional: return "coalitional";
    case Notion::coeq: return "coeq";
    case Notion::core: return "core";
  }
  return "?";
}

}  // namespace tlcga
