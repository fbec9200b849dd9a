#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlcga/syntax.hpp"

namespace tlcga {

// Subset of the sequent's variables, bit i for vars[i].
using VarSet = std::uint32_t;

// Coalition -> variable index. For positive assignments the goal is X p, for
// negative ones X !p.
using VarAssignment = std::map<std::uint32_t, int>;

struct OneStepSequent {
  Coalition agents;               // the agent universe
  std::vector<std::string> vars;  // sorted
  std::vector<VarAssignment> positives;
  std::vector<VarAssignment> negatives;

  std::uint32_t all_agents() const { return (std::uint32_t{1} << agents.size()) - 1; }
  std::uint32_t mask_of(const Coalition& c) const;
  VarSet var_set(const std::vector<std::string>& names) const;
  std::string var_set_string(VarSet s) const;
  std::string coalition_string(std::uint32_t mask) const;
};

// Builds a sequent from atoms <<g>> (goals X p) and !<<g>> (goals X !p).
// Variables and agents not listed are rejected.
OneStepSequent make_sequent(const Coalition& agents, const std::vector<std::string>& vars,
                            const std::vector<Formula>& atoms);
Formula sequent_formula(const OneStepSequent& s);  // conjunction of the atoms

using SatConstraint = std::vector<VarSet>;

SatConstraint make_constraint(const OneStepSequent& s, const std::vector<std::vector<std::string>>& family);
std::string constraint_string(const OneStepSequent& s, const SatConstraint& c);

// Pairwise disjoint coalitions, each backed by a positive assignment.
struct Redistribution {
  std::vector<std::pair<std::uint32_t, int>> pairs;  // (coalition mask, positive index), by mask
};

std::string redistribution_string(const OneStepSequent& s, const Redistribution& r);

// Maps from coalitions to positives or *, skipping overlapping non-* entries,
// in lexicographic order over the coalition masks with * before positives.
std::vector<Redistribution> redistributions(const OneStepSequent& s);

VarSet forced(const OneStepSequent& s, const Redistribution& r);
// Throws InputError when c is not in the support of the negative assignment.
VarSet forced_against(const OneStepSequent& s, const Redistribution& r, int negative, std::uint32_t c);

struct SatOptions {
  // The default conditions are exact: for every redistribution R some member
  // contains F(R) plus the grand-coalition variable of each negative that no
  // smaller coalition can block, and every member does when R forms no
  // non-empty coalition. The literal variant instead accepts a grand-coalition
  // block only when its variable lies in every member; it rejects satisfiable
  // sequents such as <<{a} -> X p>> & <<{a} -> X r>> & !<<{a} -> X !r; {a,b} -> X !p>>
  // under {{p},{r}} and accepts unsatisfiable ones such as <<{} -> X p>>
  // under {{p},{q}}.
  bool literal = false;
  int jobs = 1;  // >1 checks redistributions in parallel
};

struct SatResult {
  bool satisfiable = false;
  std::size_t redistributions = 0;
  // On rejection: the failing redistribution and the condition it breaks.
  std::optional<Redistribution> redistribution;
  std::optional<int> negative;        // set when a negative assignment cannot be blocked
  std::string explanation;
};

SatResult sequent_satisfiable(const OneStepSequent& s, const SatConstraint& c, const SatOptions& opts = {});

// Disjunctive normal form over one-step atoms; throws InputError on anything
// other than atoms, conjunction and disjunction.
std::vector<std::vector<Formula>> one_step_dnf(const Formula& f);
bool formula_satisfiable(const Formula& f, const Coalition& agents, const std::vector<std::string>& vars,
                         const SatConstraint& c, const SatOptions& opts = {});

// Explicit game form over outcomes that are subsets of the variables.
struct GameForm {
  Coalition agents;
  std::vector<std::vector<std::string>> actions;  // per agent
  std::vector<VarSet> outcome;                    // per profile, first agent most significant

  std::size_t num_profiles() const;
  std::vector<int> decode(std::size_t profile) const;
};

// Direct check of the four satisfaction clauses. Empty iff all hold.
std::vector<std::string> validate_game_form(const GameForm& g, const OneStepSequent& s, const SatConstraint& c);

// Voting and betting construction; throws InputError when the sequent is not
// satisfiable and LimitError when the form would exceed max_profiles.
GameForm witness_game_form(const OneStepSequent& s, const SatConstraint& c, std::size_t max_profiles = 4'000'000);

}  // namespace tlcga
