#pragma once

#include <string>
#include <vector>

#include "tlcga/model.hpp"
#include "tlcga/syntax.hpp"

namespace tlcga {

struct CorpusQuery {
  std::string name;
  std::string state;
  Formula formula;
  Dialect dialect = Dialect::tlcga;
};

struct CorpusEntry {
  std::string name;
  Model model;
  std::vector<CorpusQuery> queries;
};

Model example_a();
Model example_b();
GoalAssignment gamma_a();
GoalAssignment gamma_b();
GoalAssignment gamma_b_prime();

// Names accepted by corpus_entry; parameterized entries list their syntax.
std::vector<std::string> corpus_names();

// name is one of exampleA, exampleB, exampleB-gamma-prime, password,
// sheep-wolves; params only apply to sheep-wolves (n, m, mode).
CorpusEntry corpus_entry(const std::string& name, int n = 3, int m = 3,
                         CrossingMode mode = CrossingMode::simultaneous);

// Every fixed entry plus small river-crossing instances.
std::vector<CorpusEntry> standard_corpus();

CrossingMode parse_crossing_mode(const std::string& s);
std::string to_string(CrossingMode mode);

}  // namespace tlcga
