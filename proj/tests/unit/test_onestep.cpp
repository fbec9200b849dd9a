#include <doctest.h>

#include "../oracles/onestep_grid.hpp"
#include "helpers.hpp"
#include "tlcga/onestep.hpp"

using namespace tlcga;
using test_helpers::f;

namespace {

OneStepSequent golden_sequent() {
  return make_sequent({"a", "b"}, {"p", "q", "r"},
                      {f("<<{a} -> X p>>"), f("<<{b} -> X q>>"), f("!<<{b} -> X !r>>")});
}

Redistribution a_and_b() { return Redistribution{{{1u, 0}, {2u, 1}}}; }

}  // namespace

TEST_CASE("forced variables") {
  auto s = golden_sequent();
  CHECK(s.var_set_string(forced(s, a_and_b())) == "{p,q}");
  CHECK(s.var_set_string(forced_against(s, a_and_b(), 0, 2u)) == "{q,r}");
  CHECK(forced(s, Redistribution{}) == 0u);
  CHECK_THROWS_AS(forced_against(s, a_and_b(), 0, 1u), InputError);
}

TEST_CASE("redistribution count") {
  for (int np = 0; np <= 3; ++np) {
    std::vector<Formula> atoms;
    for (int i = 0; i < np; ++i) atoms.push_back(f("<<{a} -> X p>>"));
    auto s = make_sequent({"a", "b"}, {"p"}, atoms);
    // The empty coalition takes any value; {a,b} either backs a positive
    // (forcing {a},{b} to *) or not (leaving both free).
    std::size_t expected = (np + 1) * (np + (np + 1) * (np + 1));
    CHECK(redistributions(s).size() == expected);
  }
}

TEST_CASE("satisfiability goldens") {
  auto s = golden_sequent();
  auto yes = sequent_satisfiable(s, make_constraint(s, {{"p", "q"}, {"q", "r"}}));
  CHECK(yes.satisfiable);
  CHECK(yes.redistributions == 33);
  auto no = sequent_satisfiable(s, make_constraint(s, {{"p", "q"}, {"p", "r"}}));
  CHECK_FALSE(no.satisfiable);
  REQUIRE(no.redistribution);
  CHECK(redistribution_string(s, *no.redistribution) == "({a} behind positive #1, {b} behind positive #2)");
  CHECK(no.negative == 0);
  CHECK(no.explanation.find("F(R,{b}) = {q,r}") != std::string::npos);

  auto empty = make_sequent({"a"}, {"p"}, {});
  CHECK(sequent_satisfiable(empty, {0u}).satisfiable);
}

TEST_CASE("empty coalition goals need every member") {
  auto s = make_sequent({"a"}, {"p", "q"}, {f("<<{} -> X p>>")});
  auto c = make_constraint(s, {{"p"}, {"q"}});
  CHECK_FALSE(sequent_satisfiable(s, c).satisfiable);
  SatOptions literal;
  literal.literal = true;
  CHECK(sequent_satisfiable(s, c, literal).satisfiable);
  CHECK_FALSE(onestep_oracle::satisfiable(1, {{true, {{0u, 0}}}}, {1u, 2u}, 2, 3));
}

TEST_CASE("grand coalition blocks need only one member") {
  auto s = make_sequent({"a", "b"}, {"p", "r"},
                        {f("<<{a} -> X p>>"), f("<<{a} -> X r>>"), f("!<<{a} -> X !r; {a,b} -> X !p>>")});
  auto c = make_constraint(s, {{"p"}, {"r"}});
  auto exact = sequent_satisfiable(s, c);
  CHECK(exact.satisfiable);
  auto g = witness_game_form(s, c);
  CHECK(validate_game_form(g, s, c).empty());
  SatOptions literal;
  literal.literal = true;
  CHECK_FALSE(sequent_satisfiable(s, c, literal).satisfiable);
}

TEST_CASE("positive one-step formulas") {
  Coalition a{"a"};
  std::vector<std::string> v{"p", "q"};
  auto s = make_sequent(a, v, {});
  CHECK(formula_satisfiable(f("<<{a} -> X p>> | <<{a} -> X q>>"), a, v, make_constraint(s, {{"q"}})));
  CHECK(formula_satisfiable(f("<<{a} -> X p>> & !<<{a} -> X !p>>"), a, v, make_constraint(s, {{"p"}})));
  CHECK(formula_satisfiable(f("<<{a} -> X p>> & <<{a} -> X q>>"), a, v, make_constraint(s, {{"p"}, {"q"}})));
  CHECK_FALSE(formula_satisfiable(f("<<{a} -> X p>> & <<{a} -> X q>>"), a, v, make_constraint(s, {{"p"}})));
  CHECK_THROWS_AS(one_step_dnf(f("!(<<{a} -> X p>> | p)")), InputError);
  CHECK(one_step_dnf(f("(<<{a} -> X p>> | <<{a} -> X q>>) & !<<{a} -> X !p>>")).size() == 2);
}

TEST_CASE("witness game forms validate") {
  auto s = golden_sequent();
  auto c = make_constraint(s, {{"p", "q"}, {"q", "r"}});
  auto g = witness_game_form(s, c);
  CHECK(validate_game_form(g, s, c).empty());
  CHECK_THROWS_AS(witness_game_form(s, make_constraint(s, {{"p", "q"}, {"p", "r"}})), InputError);

  auto single = make_sequent({"a", "b"}, {"p", "q"}, {f("<<{a} -> X p>>")});
  auto sc = make_constraint(single, {{"p", "q"}});
  auto gs = witness_game_form(single, sc);
  CHECK(validate_game_form(gs, single, sc).empty());

  // Negative control: an outcome outside every member is reported.
  auto broken = g;
  broken.outcome[0] = s.var_set({"p", "r"});
  CHECK_FALSE(validate_game_form(broken, s, c).empty());
}

TEST_CASE("agreement with exhaustive search, one agent") {
  auto res = onestep_grid::run(1);
  CHECK(res.instances > 1000);
  CHECK(res.satisfiable > 0);
  for (std::size_t i = 0; i < res.disagreements.size() && i < 5; ++i) MESSAGE(res.disagreements[i]);
  CHECK(res.disagreements.empty());
}

TEST_CASE("parallel checks agree with serial ones") {
  auto s = golden_sequent();
  SatOptions par;
  par.jobs = 4;
  for (auto fam : std::vector<std::vector<std::vector<std::string>>>{{{"p", "q"}, {"q", "r"}}, {{"p", "q"}, {"p", "r"}}}) {
    auto c = make_constraint(s, fam);
    auto a = sequent_satisfiable(s, c);
    auto b = sequent_satisfiable(s, c, par);
    CHECK(a.satisfiable == b.satisfiable);
    CHECK(a.explanation == b.explanation);
  }
}
