#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tlcga/checker.hpp"
#include "tlcga/model.hpp"
#include "tlcga/syntax.hpp"
#include "tlcga/transform.hpp"

namespace tlcga {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 20240611;

struct RandomModelSpec {
  int min_states = 1;
  int max_states = 6;
  int min_agents = 1;
  int max_agents = 3;
  int max_actions = 2;
  std::vector<std::string> props = {"p", "q", "r"};
};

struct RandomFormulaSpec {
  int depth = 3;
  int max_coalitions = 3;
  bool plus = false;        // allow path conjunctions
  bool nexttime_only = false;
  std::vector<std::string> props = {"p", "q", "r"};
};

int uniform(Rng& rng, int lo, int hi);  // inclusive bounds
bool coin(Rng& rng, double p = 0.5);

Model random_model(Rng& rng, const RandomModelSpec& spec = {});
Coalition random_coalition(Rng& rng, const Coalition& agents, bool allow_empty = true);
Formula random_state_formula(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec);
Path random_path_formula(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec);
// Non-empty support of at most spec.max_coalitions distinct coalitions.
GoalAssignment random_goal_assignment(Rng& rng, const Coalition& agents, const RandomFormulaSpec& spec);

Coalition agents_coalition(const Model& m);

// Metavariables satisfying the side conditions of the named scheme.
AxiomSubst random_axiom_subst(Rng& rng, const std::string& scheme, const Coalition& agents,
                              const RandomFormulaSpec& spec);

// Instantiates the scheme on `samples` random models and metavariables and
// returns the first instance that is not valid. Sample i depends only on
// (seed, scheme, i).
std::optional<Counterexample> falsify_scheme(const std::string& scheme, std::size_t samples,
                                             std::uint64_t seed = kDefaultSeed);

}  // namespace tlcga
