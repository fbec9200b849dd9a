#include <doctest.h>

#include "helpers.hpp"
#include "tlcga/bisim.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/random.hpp"

using namespace tlcga;
using test_helpers::f;

namespace {

Model single(const std::string& label) {
  Model m({"a"}, {"s"});
  m.set_actions(0, 0, {"x"});
  m.set_outcome(0, std::size_t{0}, 0);
  if (!label.empty()) m.add_label(0, label);
  return m;
}

std::vector<Formula> corpus_formulas() {
  std::vector<Formula> out;
  for (const auto& e : standard_corpus())
    for (const auto& q : e.queries) out.push_back(q.formula);
  return out;
}

}  // namespace

TEST_CASE("scos copies are bisimilar to their originals") {
  Model m = example_b();
  auto r = scos(m);
  Model u = disjoint_union(m, r.model);
  auto rel = greatest_bisimulation(u).relation;
  int s2 = u.state_index("1:s2");
  for (int k : r.copies[m.state_index("s2")]) CHECK(rel.contains(s2, u.state_index("2:" + r.model.state_name(k))));
  CHECK(rel.contains(u.state_index("1:s"), u.state_index("2:" + r.model.state_name(r.copies[0][0]))));
  CHECK(is_bisimulation(u, rel));
  CHECK(rel.is_equivalence());
}

TEST_CASE("atom sets separate states") {
  Model m = example_b();
  auto rel = greatest_bisimulation(m).relation;
  CHECK_FALSE(rel.contains(m.state_index("s31"), m.state_index("s32")));
  for (std::size_t s = 0; s < m.num_states(); ++s) CHECK(rel.contains(static_cast<int>(s), static_cast<int>(s)));
  CHECK(is_bisimulation(m, Relation::identity(m.num_states())));
}

TEST_CASE("bisimilarity across models") {
  CHECK_FALSE(are_bisimilar(single("p"), "s", single("q"), "s"));
  CHECK(are_bisimilar(single("p"), "s", single("p"), "s"));
  for (const auto& e : standard_corpus()) {
    auto r = scos(e.model);
    for (std::size_t s = 0; s < e.model.num_states(); ++s) {
      const auto& name = e.model.state_name(static_cast<int>(s));
      CHECK(are_bisimilar(e.model, name, r.model, r.model.state_name(r.copies[s][0])));
    }
  }
  Model other({"z"}, {"s"});
  CHECK_THROWS_AS(are_bisimilar(single("p"), "s", other, "s"), InputError);
  CHECK_THROWS_AS(are_bisimilar(single("p"), "t", single("p"), "s"), InputError);
}

TEST_CASE("bisimilar states agree on the corpus formulas") {
  auto formulas = corpus_formulas();
  for (const auto& e : standard_corpus()) {
    auto rel = greatest_bisimulation(e.model).relation;
    std::vector<Formula> usable;
    for (const auto& phi : formulas) {
      auto agents = agents_of(phi);
      bool ok = true;
      for (const auto& a : agents) ok = ok && e.model.agent_index(a) >= 0;
      if (ok) usable.push_back(phi);
    }
    CHECK_FALSE(hm_agreement(e.model, rel, usable).has_value());
    CHECK_FALSE(hm_agreement(e.model, Relation(e.model.num_states()), usable).has_value());
  }
}

TEST_CASE("characteristic formulas separate unrelated states") {
  Rng rng(kDefaultSeed + 3);
  RandomModelSpec ms;
  ms.max_states = 6;
  for (int i = 0; i < 30; ++i) {
    Model m = random_model(rng, ms);
    auto rel = greatest_bisimulation(m).relation;
    auto chars = characteristic_formulas(m);
    CHECK_FALSE(hm_converse_failure(m, rel, chars).has_value());
    for (std::size_t s = 0; s < m.num_states(); ++s) CHECK(check(m, static_cast<int>(s), chars[s]));
  }
}

TEST_CASE("parallel refinement agrees with serial refinement") {
  Rng rng(kDefaultSeed + 4);
  RandomModelSpec ms;
  ms.max_states = 8;
  for (int i = 0; i < 30; ++i) {
    Model m = random_model(rng, ms);
    OutcomeBlocks t(m);
    Relation r = atom_equivalence(m);
    for (int round = 0; round < 3; ++round) {
      auto a = refine_round_serial(t, r);
      CHECK(a == refine_round_parallel(t, r, 4));
      r = a;
    }
    BisimOptions par;
    par.jobs = 4;
    CHECK(greatest_bisimulation(m).relation == greatest_bisimulation(m, par).relation);
  }
}

TEST_CASE("a missing transition breaks forth") {
  Model m({"a"}, {"s", "t", "u"});
  m.set_actions(0, 0, {"x", "y"});
  m.set_outcome(0, std::size_t{0}, 0);
  m.set_outcome(0, std::size_t{1}, 2);
  m.set_actions(1, 0, {"x"});
  m.set_outcome(1, std::size_t{0}, 1);
  m.set_actions(2, 0, {"x"});
  m.set_outcome(2, std::size_t{0}, 2);
  m.add_label(2, "p");
  OutcomeBlocks t(m);
  auto r = atom_equivalence(m);
  CHECK(forth_failure(t, r, 0, 1).has_value());
  CHECK_FALSE(greatest_bisimulation(m).relation.contains(0, 1));
  CHECK(check(m, 0, f("<<{a} -> X p>>")));
  CHECK_FALSE(check(m, 1, f("<<{a} -> X p>>")));
}
