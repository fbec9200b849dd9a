#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlcga/checker.hpp"
#include "tlcga/model.hpp"
#include "tlcga/syntax.hpp"

namespace tlcga {

// Binary relation over the states of one model, stored as adjacency rows.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n);

  static Relation identity(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  bool contains(int a, int b) const { return rows_[a][b]; }
  void set(int a, int b, bool on = true) { rows_[a][b] = on; }
  const Extension& row(int a) const { return rows_[a]; }
  std::size_t count() const;
  std::vector<std::pair<int, int>> pairs() const;
  bool is_equivalence() const;
  bool operator==(const Relation& o) const { return rows_ == o.rows_; }

 private:
  std::vector<Extension> rows_;
};

// Per state and coalition, the partition of the profiles by their restriction
// to the coalition together with the outcome set of each block.
class OutcomeBlocks {
 public:
  explicit OutcomeBlocks(const Model& m);

  const Model& model() const { return *m_; }
  std::size_t num_masks() const { return std::size_t{1} << m_->num_agents(); }
  int block(int s, AgentMask c, std::size_t profile) const { return block_of_[s][c][profile]; }
  const Extension& outcomes(int s, AgentMask c, int block) const { return outcomes_[s][c][block]; }

 private:
  const Model* m_;
  std::vector<std::vector<std::vector<int>>> block_of_;
  std::vector<std::vector<std::vector<Extension>>> outcomes_;
};

Relation atom_equivalence(const Model& m);

// The forth clause for (s1, s2) against R, reading row u as the states related
// to u (exact for symmetric R): a profile at s1 the second state
// cannot match, or nullopt if the clause holds.
std::optional<std::size_t> forth_failure(const OutcomeBlocks& t, const Relation& r, int s1, int s2);

// One refinement round over an immutable snapshot.
Relation refine_round_serial(const OutcomeBlocks& t, const Relation& r);
Relation refine_round_parallel(const OutcomeBlocks& t, const Relation& r, int jobs);

struct BisimOptions {
  int jobs = 1;  // >1 checks the pairs of a round in parallel
};

struct BisimResult {
  Relation relation;
  std::size_t rounds = 0;
};

BisimResult greatest_bisimulation(const Model& m, const BisimOptions& opts = {});

// Forth and back for every pair of r, checked against r itself.
bool is_bisimulation(const Model& m, const Relation& r);

// Throws InputError when the agent sets differ or a state name is unknown.
bool are_bisimilar(const Model& m1, const std::string& s1, const Model& m2, const std::string& s2,
                   const BisimOptions& opts = {});

struct Disagreement {
  int s1 = 0;
  int s2 = 0;
  Formula formula;
};

std::optional<Disagreement> hm_agreement(const Model& m, const Relation& r, const std::vector<Formula>& corpus);

// Nexttime formulas, one per state, each true exactly on the state's class of
// the greatest bisimulation. Built by the usual round-by-round separation.
std::vector<Formula> characteristic_formulas(const Model& m);

// Checks that every unrelated pair is separated by its characteristic
// formula; returns the first pair that is not.
std::optional<std::pair<int, int>> hm_converse_failure(const Model& m, const Relation& r,
                                                       const std::vector<Formula>& chars);

}  // namespace tlcga
