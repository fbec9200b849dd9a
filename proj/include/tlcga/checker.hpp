#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tlcga/model.hpp"
#include "tlcga/syntax.hpp"

namespace tlcga {

// Bit s set iff state s belongs to the set.
using Extension = boost::dynamic_bitset<>;
using Environment = std::map<std::string, Extension>;

Extension empty_extension(const Model& m);
Extension full_extension(const Model& m);
std::vector<std::string> state_names(const Model& m, const Extension& e);

struct EvalStats {
  std::size_t iterations = 0;  // fixpoint rounds, summed over all binders
};

// One coalition's nexttime requirement: every outcome compatible with the
// coalition's part of the chosen profile must lie in target.
struct StepGoal {
  AgentMask coalition = 0;
  Extension target;
};

// States at which a single action profile meets all goals at once.
Extension one_step(const Model& m, const std::vector<StepGoal>& goals);
bool one_step_at(const Model& m, int s, const std::vector<StepGoal>& goals);

// Evaluates a formula whose modalities are all nexttime (mu dialect).
Extension eval(const Model& m, const Formula& f, const Environment& env = {},
               EvalStats* stats = nullptr);

// Semantic extension of any formula (translated with to_mu first).
Extension extension(const Model& m, const Formula& f, EvalStats* stats = nullptr);
bool check(const Model& m, int s, const Formula& f, EvalStats* stats = nullptr);
bool valid_on(const Model& m, const Formula& f);

struct Counterexample {
  std::size_t sample = 0;
  Model model;
  int state = 0;
  Formula formula;
};

// Draws `samples` (model, formula) pairs and returns the first instance that
// fails at some state.
std::optional<Counterexample> falsify(
    std::size_t samples,
    const std::function<std::pair<Model, Formula>(std::size_t sample)>& draw);

}  // namespace tlcga
