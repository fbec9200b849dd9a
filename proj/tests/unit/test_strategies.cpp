#include <doctest.h>

#include <deque>
#include <functional>
#include <set>

#include "helpers.hpp"
#include "tlcga/checker.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/random.hpp"
#include "tlcga/strategies.hpp"

using namespace tlcga;
using test_helpers::f;

namespace {

// Complete profile over every memory reachable from s, with actions chosen by fn.
FiniteStrategyProfile fill(const Model& m, int s, const MemoryMode& mode,
                           const std::function<int(int agent, const Memory&)>& fn) {
  auto sigma = empty_profile(m, mode);
  std::set<Memory> seen{initial_memory(s)};
  std::deque<Memory> todo{initial_memory(s)};
  while (!todo.empty()) {
    Memory mem = todo.front();
    todo.pop_front();
    int st = mem.back();
    for (std::size_t a = 0; a < m.num_agents(); ++a) sigma.tables[a][mem] = fn(static_cast<int>(a), mem);
    for (std::size_t i = 0; i < m.num_profiles(st); ++i) {
      Memory next = extend_memory(mode, mem, i, m.outcome(st, i));
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return sigma;
}

}  // namespace

TEST_CASE("memory modes") {
  CHECK(MemoryMode::parse("positional").kind == MemoryMode::Kind::Positional);
  CHECK(MemoryMode::parse("play:3").k == 3);
  CHECK(MemoryMode::parse("path:2").to_string() == "path:2");
  CHECK_THROWS_AS(MemoryMode::parse("path:0"), InputError);
  CHECK_THROWS_AS(MemoryMode::parse("path:17"), LimitError);
  CHECK_THROWS_AS(MemoryMode::parse("history"), InputError);
  auto mode = MemoryMode::path(2);
  CHECK(extend_memory(mode, extend_memory(mode, {0}, 0, 1), 0, 2) == Memory{1, 2});
  auto play = MemoryMode::play(2);
  CHECK(extend_memory(play, extend_memory(play, {0}, 3, 1), 4, 2) == Memory{1, 4, 2});
}

TEST_CASE("hand-written witness for the memory example") {
  Model m = example_a();
  int s = m.state_index("s");
  auto mode = MemoryMode::path(3);
  // a plays a1 first and a2 after having seen s1.
  auto sigma = fill(m, s, mode, [&](int agent, const Memory& mem) {
    if (agent != 0 || mem.back() != s) return 0;
    return mem == Memory{s, 1, s} ? 1 : 0;
  });
  CHECK(verify_witness(m, s, sigma, gamma_a()));
  auto lasso = play_lasso(m, s, sigma);
  CHECK(lasso_string(m, lasso) == "s s1 (s s2 s s1)^w");
  CHECK(eval_on_lasso(m, lasso, until(prop("p"), prop("q"))));
  CHECK(eval_on_lasso(m, lasso, until(f_true(), neg(disj(prop("p"), prop("q"))))));
  CHECK(verify_witness(m, s, sigma, GoalAssignment{}));

  auto positional = fill(m, s, MemoryMode::positional(), [](int, const Memory&) { return 0; });
  CHECK_FALSE(verify_witness(m, s, positional, gamma_a()));
  CHECK_THROWS_AS(verify_witness(m, s, empty_profile(m, mode), gamma_a()), Error);
}

TEST_CASE("witness search on the memory example") {
  Model m = example_a();
  int s = m.state_index("s");
  auto pos = find_witness(m, s, gamma_a(), MemoryMode::positional());
  CHECK_FALSE(pos.witness.has_value());
  CHECK(pos.exact);
  for (const char* mode : {"play:3", "path:3"}) {
    auto r = find_witness(m, s, gamma_a(), MemoryMode::parse(mode));
    REQUIRE(r.witness.has_value());
    CHECK(verify_witness(m, s, *r.witness, gamma_a()));
  }
}

TEST_CASE("play versus path memory") {
  Model m = example_b();
  int s = m.state_index("s");
  auto path = find_witness(m, s, gamma_b(), MemoryMode::path(2));
  CHECK_FALSE(path.witness.has_value());
  CHECK(path.exact);
  auto play = find_witness(m, s, gamma_b(), MemoryMode::play(2));
  REQUIRE(play.witness.has_value());
  CHECK(verify_witness(m, s, *play.witness, gamma_b()));
  CHECK_THROWS_AS(lift_profile(m, s, *play.witness, MemoryMode::path(3)), Error);
  auto prime = find_witness(m, s, gamma_b_prime(), MemoryMode::path(2));
  REQUIRE(prime.witness.has_value());
  CHECK(verify_witness(m, s, *prime.witness, gamma_b_prime()));
}

TEST_CASE("lifting keeps witnesses") {
  Model m = example_a();
  int s = m.state_index("s");
  auto r = find_witness(m, s, gamma_a(), MemoryMode::path(3));
  REQUIRE(r.witness);
  for (const char* target : {"path:4", "play:3", "play:5"}) {
    auto lifted = lift_profile(m, s, *r.witness, MemoryMode::parse(target));
    CHECK(verify_witness(m, s, lifted, gamma_a()));
  }
}

TEST_CASE("lasso evaluation") {
  Model loop({"a"}, {"s"});
  loop.set_actions(0, 0, {"x"});
  loop.set_outcome(0, std::size_t{0}, 0);
  loop.add_label(0, "c");
  auto sigma = fill(loop, 0, MemoryMode::positional(), [](int, const Memory&) { return 0; });
  auto lasso = play_lasso(loop, 0, sigma);
  CHECK(eval_on_lasso(loop, lasso, globally(prop("c"))));
  CHECK(eval_on_lasso(loop, lasso, until(prop("z"), prop("c"))));
  CHECK_FALSE(eval_on_lasso(loop, lasso, until(f_true(), prop("z"))));
}

TEST_CASE("search limits and parallel search agree") {
  Model m = example_a();
  SearchOptions tiny;
  tiny.limit = 1;
  CHECK_THROWS_AS(find_witness(m, 0, gamma_a(), MemoryMode::play(3), tiny), LimitError);
  Rng rng(kDefaultSeed + 7);
  RandomFormulaSpec fs;
  fs.depth = 1;
  for (int i = 0; i < 40; ++i) {
    Model r = random_model(rng);
    auto g = random_goal_assignment(rng, r.agents(), fs);
    SearchOptions par;
    par.jobs = 4;
    auto a = find_witness(r, 0, g, MemoryMode::path(2));
    auto b = find_witness(r, 0, g, MemoryMode::path(2), par);
    CHECK(a.witness.has_value() == b.witness.has_value());
    if (a.witness) {
      CHECK(a.witness->tables == b.witness->tables);
      CHECK(verify_witness(r, 0, *a.witness, g));
      CHECK(check(r, 0, brak(g)));
    }
  }
}

TEST_CASE("profile tables print one line per memory") {
  Model m = example_a();
  auto r = find_witness(m, 0, gamma_a(), MemoryMode::path(3));
  REQUIRE(r.witness);
  auto text = profile_table(m, *r.witness);
  CHECK(text.find("[s] -> a=a1 b=b") != std::string::npos);
}
