#pragma once

#include <string>
#include <vector>

#include "tlcga/model.hpp"
#include "tlcga/strategies.hpp"
#include "tlcga/syntax.hpp"

namespace tlcga {

// Classification of the supported coalitions of a goal assignment by whether
// their goal holds on the play induced by a profile. Agents are classified
// only when some singleton goal exists; agents without one count as winners.
struct OutcomePartition {
  std::vector<Coalition> winning;
  std::vector<Coalition> losing;
  Coalition winners;
  Coalition losers;
};

OutcomePartition partition_outcomes(const Model& m, int w, const FiniteStrategyProfile& sigma,
                                    const GoalAssignment& g);

// Conjunction of path goals: merged under X or G when all conjuncts share it,
// a path conjunction otherwise.
Path merged_conjunction(const std::vector<Path>& goals);

// Path formula equivalent to the negation of the goal. Supported for X goals,
// G goals and merged conjunctions of either; throws InputError otherwise.
Path negated_goal(const Path& goal);

// Goal of a single agent, X true when absent.
Path individual_goal(const GoalAssignment& g, const std::string& agent);

// Throws InputError when g supports a coalition other than a singleton.
void require_individual(const GoalAssignment& g);

GoalAssignment nash_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part);
GoalAssignment strong_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part);
GoalAssignment coalitional_ga(const Coalition& agents, const GoalAssignment& g, const OutcomePartition& part);

// Restriction of g to the grand coalition and the singletons.
GoalAssignment coequilibrium_ga(const Coalition& agents, const GoalAssignment& g);
bool check_coequilibrium(const Model& m, int w, const GoalAssignment& g);

// Conjunction over the non-empty sets of losers C of !<<C -> conjunction of
// their goals>>.
Formula core_nonempty_formula(const GoalAssignment& g, const Coalition& losers);
bool has_beneficial_deviation(const Model& m, int w, const GoalAssignment& g, const Coalition& c);

enum class Notion { nash, strong, coalitional, coeq, core };
Notion parse_notion(const std::string& s);
std::string to_string(Notion n);

}  // namespace tlcga
