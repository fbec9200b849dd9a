#include <doctest.h>

#include "tlcga/bisim.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/model.hpp"

using namespace tlcga;

TEST_CASE("corpus models are valid") {
  for (const auto& e : standard_corpus()) CHECK(validate(e.model).empty());
  CHECK(validate(corpus_entry("sheep-wolves", 3, 3, CrossingMode::simultaneous).model).empty());
}

TEST_CASE("validation names each violation") {
  Model m = example_a();
  Model missing({"a"}, {"s", "t"});
  missing.set_actions(0, 0, {"x", "y"});
  missing.set_outcome(0, std::size_t{0}, 1);
  missing.set_actions(1, 0, {"x"});
  missing.set_outcome(1, std::size_t{0}, 1);
  auto v = validate(missing);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("s") != std::string::npos);

  Model empty_actions({"a"}, {"s"});
  empty_actions.set_actions(0, 0, {});
  CHECK(validate(empty_actions).size() == 1);
  CHECK_THROWS_AS(require_valid(empty_actions), InputError);
}

TEST_CASE("json round trip") {
  for (const auto& e : standard_corpus()) {
    auto text = save_model_json(e.model);
    CHECK(save_model_json(load_model_json(text)) == text);
  }
  CHECK_THROWS_AS(load_model_json("{"), InputError);
  CHECK_THROWS_AS(load_model_json(R"({"agents":["a"]})"), InputError);
}

TEST_CASE("outcome sets of joint actions") {
  Model m = example_b();
  int s = m.state_index("s");
  JointAction one{m.mask_of({"1"}), {0, -1, -1}};
  CHECK(out_set(m, s, one) == std::set<int>{1, 2});
  JointAction all{m.all_agents(), {0, 0, 0}};
  CHECK(out_set(m, s, all) == std::set<int>{1});
  JointAction none{0, {-1, -1, -1}};
  CHECK(out_set(m, s, none) == std::set<int>{1, 2});
  CHECK(restrict(Profile{0, 1, 1}, m.mask_of({"1", "3"})).actions == std::vector<int>{0, -1, 1});
}

TEST_CASE("state copying and outcome splitting") {
  Model m = example_b();
  CHECK_FALSE(is_injective(m));
  auto r = scos(m);
  CHECK(is_injective(r.model));
  CHECK(validate(r.model).empty());
  for (std::size_t s = 0; s < m.num_states(); ++s)
    CHECK(r.copies[s].size() == (m.state_name(static_cast<int>(s)) == "s2" ? 3u : 1u));
  CHECK(are_bisimilar(m, "s", r.model, r.model.state_name(r.copies[0][0])));

  Model a = example_a();
  CHECK(is_injective(a));
  auto ra = scos(a);
  CHECK(ra.model.num_states() == a.num_states());

  Model loop({"a"}, {"s"});
  loop.set_actions(0, 0, {"x"});
  loop.set_outcome(0, std::size_t{0}, 0);
  CHECK(is_injective(loop));
}

TEST_CASE("river crossing models") {
  auto rc = build_river_crossing(1, 0, CrossingMode::simultaneous);
  CHECK(validate(rc.model).empty());
  CHECK(rc.sheep.size() == 1);
  CHECK(rc.wolves.empty());
  auto big = build_river_crossing(3, 3, CrossingMode::simultaneous);
  CHECK(big.all.size() == 6);
  CHECK(big.model.num_states() == 16);
  CHECK(build_river_crossing(3, 3, CrossingMode::wolves_then_sheep).model.num_states() == 56);
}

TEST_CASE("password model") {
  Model m = build_password_model();
  int start = m.state_index("start");
  REQUIRE(start >= 0);
  CHECK(m.labels(start).empty());
  CHECK(validate(m).empty());
}
