#include "tlcga/random.hpp"

#include <algorithm>

namespace tlcga {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Coalition agents_coalition(const Model& m) { return m.agents(); }

Model random_model(Rng& rng, const RandomModelSpec& spec) {
  int n = uniform(rng, spec.min_states, spec.max_states);
  int k = uniform(rng, spec.min_agents, spec.max_agents);
  std::vector<std::string> agents, states;
  for (int i = 0; i < k; ++i) agents.push_back(std::string(1, static_cast<char>('a' + i)));
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  Model m(agents, states);
  for (int s = 0; s < n; ++s) {
    for (const auto& p : spec.props)
      if (coin(rng)) m.add_label(s, p);
    for (int a = 0; a < k; ++a) {
      int na = uniform(rng, 1, spec.max_actions);
      std::vector<std::string> acts;
      for (int i = 0; i < na; ++i) acts.push_back("x" + std::to_string(i));
      m.set_actions(s, a, acts);
    }
    for (std::size_t i = 0; i < m.num_profiles(s); ++i) m.set_outcome(s, i, uniform(rng, 0, n - 1));
  }
  return m;
}

Coalition random_coalition(Rng& rng, const Coalition& agents, bool allow_empty) {
  while (true) {
    Coalition c;
    for (const auto& a : agents)
      if (coin(rng)) c.push_back(a);
    if (allow_empty || !c.empty() || agents.empty()) return c;
  }
}

namespace {

Formula leaf(Rng& rng, const RandomFormulaSpec& spec) {
  int r = uniform(rng, 0, static_cast<int>(spec.props.size()) + 1);
  if (r < static_cast<int>(spec.props.size())) return prop(spec.props[r]);
  return r == static_cast<int>(spec.props.size()) ? f_true() : f_false();
}

Path path_atom(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec, int depth) {
  RandomFormulaSpec sub = spec;
  sub.depth = depth;
  int kind = spec.nexttime_only ? 0 : uniform(rng, 0, 2);
  if (kind == 0) return next(random_state_formula(rng, agents, sub));
  if (kind == 1) return globally(random_state_formula(rng, agents, sub));
  return until(random_state_formula(rng, agents, sub), random_state_formula(rng, agents, sub));
}

}  // namespace

Path random_path_formula(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec) {
  int depth = std::max(0, spec.depth - 1);
  Path p = path_atom(rng, agents, spec, depth);
  if (spec.plus && coin(rng, 0.3)) p = path_and(p, path_atom(rng, agents, spec, depth));
  return p;
}

GoalAssignment random_goal_assignment(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec) {
  while (true) {
    GoalAssignment g;
    int k = uniform(rng, 1, std::max(1, spec.max_coalitions));
    for (int i = 0; i < k; ++i) g = g.updated(random_coalition(rng, agents), random_path_formula(rng, agents, spec));
    if (!g.empty()) return g;
  }
}

Formula random_state_formula(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec) {
  if (spec.depth <= 0) return leaf(rng, spec);
  RandomFormulaSpec sub = spec;
  sub.depth = spec.depth - 1;
  switch (uniform(rng, 0, 5)) {
    case 0: return leaf(rng, spec);
    case 1: return neg(random_state_formula(rng, agents, sub));
    case 2: return conj(random_state_formula(rng, agents, sub), random_state_formula(rng, agents, sub));
    case 3: return disj(random_state_formula(rng, agents, sub), random_state_formula(rng, agents, sub));
    default: return brak(random_goal_assignment(rng, agents, spec));
  }
}

AxiomSubst random_axiom_subst(Rng& rng, const std::string& scheme, const Coalition& agents,
                              const RandomFormulaSpec& spec) {
  AxiomSubst s;
  s.agents = agents;
  RandomFormulaSpec state = spec;
  state.depth = std::max(0, spec.depth - 1);
  RandomFormulaSpec nexttime = spec;
  nexttime.nexttime_only = true;
  nexttime.plus = false;
  auto formula = [&] { return random_state_formula(rng, agents, state); };
  s.phi = formula();
  s.psi = formula();
  s.alpha = formula();
  s.beta = formula();
  s.chi = formula();
  s.c = random_coalition(rng, agents);
  s.c2 = random_coalition(rng, agents);
  if (scheme == "GrandCoalition" || scheme == "Case" || scheme == "Con") {
    s.gamma = random_goal_assignment(rng, agents, nexttime);
    if (scheme == "Con") {
      Coalition sub;
      for (const auto& a : s.c)
        if (coin(rng)) sub.push_back(a);
      s.c2 = sub;
    }
  } else {
    s.gamma = random_goal_assignment(rng, agents, spec);
  }
  if (scheme == "Superadditivity") {
    // Split a random coalition into two disjoint, distinct parts.
    while (true) {
      Coalition a, b;
      for (const auto& ag : agents) {
        int r = uniform(rng, 0, 2);
        if (r == 0) a.push_back(ag);
        if (r == 1) b.push_back(ag);
      }
      if (a != b) {
        s.c = a;
        s.c2 = b;
        break;
      }
    }
  }
  if (scheme == "Merge") {
    Coalition left = agents;
    int parts = uniform(rng, 1, 3);
    for (int i = 0; i < parts; ++i) {
      Coalition c;
      Coalition rest;
      for (const auto& ag : left) (coin(rng) ? c : rest).push_back(ag);
      bool taken = false;
      for (const auto& [d, p] : s.parts) taken = taken || d == c;
      if (taken) continue;
      s.parts.emplace_back(c, random_path_formula(rng, agents, spec));
      left = rest;
    }
  }
  return s;
}

std::optional<Counterexample> falsify_scheme(const std::string& scheme, std::size_t samples, std::uint64_t seed) {
  const auto& names = axiom_schemes();
  auto it = std::find(names.begin(), names.end(), scheme);
  if (it == names.end()) throw InputError("unknown axiom scheme '" + scheme + "'");
  const auto index = static_cast<std::uint64_t>(it - names.begin());
  return falsify(samples, [&](std::size_t i) {
    std::seed_seq seq{seed, index, static_cast<std::uint64_t>(i)};
    Rng rng(seq);
    RandomModelSpec ms;
    ms.max_states = 5;
    Model m = random_model(rng, ms);
    RandomFormulaSpec fs;
    fs.depth = 2;
    fs.max_coalitions = 2;
    return std::make_pair(m, axiom_instance(scheme, random_axiom_subst(rng, scheme, m.agents(), fs)));
  });
}

}  // namespace tlcga
