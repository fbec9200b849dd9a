#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tlcga/checker.hpp"
#include "tlcga/model.hpp"
#include "tlcga/syntax.hpp"

namespace tlcga {

struct MemoryMode {
  enum class Kind { Positional, PathSuffix, PlaySuffix };
  Kind kind = Kind::Positional;
  int k = 1;

  static MemoryMode positional() { return {Kind::Positional, 1}; }
  static MemoryMode path(int k) { return {Kind::PathSuffix, k}; }
  static MemoryMode play(int k) { return {Kind::PlaySuffix, k}; }
  // "positional", "path:K" or "play:K".
  static MemoryMode parse(const std::string& text);
  std::string to_string() const;
};

constexpr int kMaxMemory = 16;

// States, interleaved with profile indices in play mode: s0 [p0 s1 [p1 s2 ...]].
// The last element is always the current state.
using Memory = std::vector<int>;

Memory initial_memory(int s);
Memory extend_memory(const MemoryMode& mode, const Memory& m, std::size_t profile, int next);
std::string memory_string(const Model& model, const MemoryMode& mode, const Memory& m);

struct FiniteStrategyProfile {
  MemoryMode mode;
  std::vector<std::map<Memory, int>> tables;  // per agent: memory -> action index

  std::optional<int> action(int agent, const Memory& m) const;
};

FiniteStrategyProfile empty_profile(const Model& m, const MemoryMode& mode);

// Product-based check that the profile witnesses g at s. Throws Error when a
// table misses an entry the check needs.
bool verify_witness(const Model& m, int s, const FiniteStrategyProfile& sigma, const GoalAssignment& g);

struct WitnessSearch {
  std::optional<FiniteStrategyProfile> witness;
  bool exact = false;               // absence is a refutation for the mode's strategy class
  std::size_t nodes = 0;            // backtracking nodes visited
  double candidate_tables = 0;      // upper bound on the number of candidate profiles
};

struct SearchOptions {
  std::size_t limit = 2'000'000;  // backtracking nodes before LimitError
  int jobs = 1;                   // >1 splits the first decision across OpenMP threads
};

WitnessSearch find_witness(const Model& m, int s, const GoalAssignment& g, const MemoryMode& mode,
                           const SearchOptions& opts = {});

// Lifts a profile to a mode with at least as much memory.
FiniteStrategyProfile lift_profile(const Model& m, int s, const FiniteStrategyProfile& sigma,
                                   const MemoryMode& target);

struct LassoStep {
  int state;
  std::size_t profile;
};

struct Lasso {
  std::vector<LassoStep> prefix;
  std::vector<LassoStep> cycle;
};

Lasso play_lasso(const Model& m, int s, const FiniteStrategyProfile& sigma);
bool eval_on_lasso(const Model& m, const Lasso& lasso, const Path& theta);
std::string lasso_string(const Model& m, const Lasso& lasso);

// Classic forcing-based ATL evaluation of <<C>>theta (no path conjunctions).
Extension atl_check(const Model& m, const Coalition& c, const Path& theta);

std::string profile_table(const Model& m, const FiniteStrategyProfile& sigma);

}  // namespace tlcga
