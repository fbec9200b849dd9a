#include <doctest.h>

#include "helpers.hpp"
#include "tlcga/checker.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/random.hpp"
#include "tlcga/strategies.hpp"
#include "tlcga/transform.hpp"

using namespace tlcga;
using test_helpers::f;

namespace {

Model chain() {
  Model m({"a"}, {"s0", "s1", "s2"});
  for (int s = 0; s < 3; ++s) {
    m.set_actions(s, 0, {"go"});
    m.set_outcome(s, std::size_t{0}, s < 2 ? s + 1 : 2);
  }
  m.add_label(2, "q");
  return m;
}

bool holds_at(const CorpusEntry& e, const std::string& query) {
  for (const auto& q : e.queries)
    if (q.name == query) return check(e.model, e.model.state_index(q.state), q.formula);
  FAIL("unknown query " << query);
  return false;
}

}  // namespace

TEST_CASE("nexttime evaluation") {
  Model m = chain();
  CHECK(eval(m, f("<<{a} -> X p>>")).none());
  EvalStats stats;
  auto e = eval(m, parse_state_formula("mu z . q | <<{a} -> X z>>", Dialect::mu), {}, &stats);
  CHECK(e.all());
  CHECK(stats.iterations >= 3);
}

TEST_CASE("empty coalition quantifies over every successor") {
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 40; ++i) {
    Model m = random_model(rng);
    auto e = eval(m, f("<<{} -> X p>>"));
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      JointAction none{0, std::vector<int>(m.num_agents(), -1)};
      bool all = true;
      for (int t : out_set(m, static_cast<int>(s), none)) all = all && m.holds(t, "p");
      CHECK(e[s] == all);
    }
  }
}

TEST_CASE("corpus goldens") {
  auto a = corpus_entry("exampleA");
  CHECK(holds_at(a, "gamma_A"));
  CHECK(holds_at(a, "a_reaches_neither"));
  CHECK(holds_at(a, "grand_p_until_q"));
  auto b = corpus_entry("exampleB");
  CHECK(holds_at(b, "gamma_B"));
  CHECK(holds_at(b, "one_always_p_at_s31"));
  CHECK_FALSE(holds_at(b, "one_always_p_at_s32"));
  CHECK(holds_at(corpus_entry("exampleB-gamma-prime"), "gamma_B_prime"));
}

TEST_CASE("password scenario goldens") {
  auto pw = corpus_entry("password");
  CHECK(holds_at(pw, "common_goal"));
  CHECK_FALSE(holds_at(pw, "guarded_common_goal"));
  CHECK_FALSE(holds_at(pw, "protected_common_goal"));
}

TEST_CASE("river crossing goldens") {
  auto sim = corpus_entry("sheep-wolves", 3, 3, CrossingMode::simultaneous);
  auto seq = corpus_entry("sheep-wolves", 3, 3, CrossingMode::wolves_then_sheep);
  CHECK_FALSE(holds_at(sim, "alliance"));
  CHECK(holds_at(seq, "alliance"));
  CHECK(holds_at(sim, "all_cross_safely"));
  CHECK(holds_at(corpus_entry("sheep-wolves", 1, 0, CrossingMode::simultaneous), "sheep_cross"));
}

TEST_CASE("check rejects open formulas and bad states") {
  Model m = chain();
  CHECK_THROWS_AS(eval(m, parse_state_formula("<<{a} -> X z>>", Dialect::mu, {"z"})), InputError);
}

TEST_CASE("validity sweep") {
  Model m = example_a();
  CHECK(valid_on(m, f("p | !p")));
  CHECK_FALSE(valid_on(m, f("p")));
  CHECK(valid_on(m, f("!<<{a,b} -> X false>>")));
}

TEST_CASE("forcing-based evaluation agrees on singleton supports") {
  Model a = example_a();
  CHECK(atl_check(a, {"a"}, parse_path_formula("(true U !(p | q))", Dialect::tlcga))[0]);
  Rng rng(kDefaultSeed + 1);
  RandomFormulaSpec fs;
  fs.depth = 2;
  for (int i = 0; i < 60; ++i) {
    Model m = random_model(rng);
    auto c = random_coalition(rng, m.agents());
    auto theta = random_path_formula(rng, m.agents(), fs);
    CHECK(atl_check(m, c, theta) == extension(m, brak({{c, theta}})));
  }
}
