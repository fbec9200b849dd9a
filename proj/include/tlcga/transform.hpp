#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlcga/syntax.hpp"

namespace tlcga {

struct UnfoldParts {
  std::vector<Formula> finish;
  std::vector<Formula> uholds;
  std::vector<Formula> gholds;
};

// Conjunction / disjunction that drop literal true conjuncts / false disjuncts.
Formula conjunction_simplified(const std::vector<Formula>& fs);
Formula disjunction_simplified(const std::vector<Formula>& fs);

GoalAssignment nexttime_extension(const GoalAssignment& g);

// nexttime_extension(g) with the union of the support mapped to X f.
GoalAssignment gamma_of(const GoalAssignment& g, const Formula& f);

std::pair<Formula, UnfoldParts> unfold(const GoalAssignment& g);
Formula unfold_formula(const GoalAssignment& g);

// Requires a long-term assignment.
Formula induction_formula(const GoalAssignment& g, const Formula& f);

// Replaces mixed modalities by their unfolding until every modality is
// nexttime or long-term.
Formula normal_form(const Formula& f);
bool in_normal_form(const Formula& f);

// Translation into the fixpoint language; the result only has nexttime
// modalities. Fresh variables are named with the reserved prefix "_z".
Formula to_mu(const Formula& f);

GoalAssignment monotone_closure(const GoalAssignment& g);

// Metavariables for axiom schemes. Only the fields a scheme uses are read.
struct AxiomSubst {
  Coalition agents;  // Agt
  GoalAssignment gamma;
  Coalition c;
  Coalition c2;
  Formula phi;
  Formula psi;
  Formula alpha;
  Formula beta;
  Formula chi;
  std::vector<std::pair<Coalition, Path>> parts;  // Merge operands
};

const std::vector<std::string>& axiom_schemes();

// Throws InputError when a side condition fails.
Formula axiom_instance(const std::string& scheme, const AxiomSubst& s);

}  // namespace tlcga
