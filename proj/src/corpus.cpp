#include "tlcga/corpus.hpp"

namespace tlcga {

Model example_a() {
  Model m({"a", "b"}, {"s", "s1", "s2"});
  m.add_label(0, "p");
  m.add_label(1, "q");
  m.set_actions(0, 0, {"a1", "a2"});
  m.set_actions(0, 1, {"b"});
  m.set_outcome(0, Profile{0, 0}, 1);
  m.set_outcome(0, Profile{1, 0}, 2);
  for (int s : {1, 2}) {
    m.set_actions(s, 0, {"a"});
    m.set_actions(s, 1, {"b"});
    m.set_outcome(s, Profile{0, 0}, 0);
  }
  return m;
}

Model example_b() {
  Model m({"1", "2", "3"}, {"s", "s1", "s2", "s31", "s32"});
  for (int s : {0, 1, 2}) {
    m.add_label(s, "p");
    m.add_label(s, "q");
  }
  m.add_label(3, "p");
  m.add_label(4, "q");
  m.set_actions(0, 0, {"a1"});
  m.set_actions(0, 1, {"a2", "b2"});
  m.set_actions(0, 2, {"a3", "b3"});
  for (std::size_t i = 0; i < m.num_profiles(0); ++i) m.set_outcome(0, i, i == 0 ? 1 : 2);
  m.set_actions(2, 0, {"ap", "aq"});
  m.set_actions(2, 1, {"c2"});
  m.set_actions(2, 2, {"c3"});
  m.set_outcome(2, Profile{0, 0, 0}, 3);
  m.set_outcome(2, Profile{1, 0, 0}, 4);
  for (int s : {1, 3, 4}) {
    m.set_actions(s, 0, {"c1"});
    m.set_actions(s, 1, {"c2"});
    m.set_actions(s, 2, {"c3"});
    m.set_outcome(s, std::size_t{0}, s);
  }
  return m;
}

GoalAssignment gamma_a() {
  return {{{"a", "b"}, until(prop("p"), prop("q"))},
          {{"a"}, until(f_true(), neg(disj(prop("p"), prop("q"))))}};
}

GoalAssignment gamma_b() {
  return {{{"1", "2"}, globally(prop("p"))}, {{"1", "3"}, globally(prop("q"))}};
}

GoalAssignment gamma_b_prime() {
  return {{{"1", "2"}, next(brak({{{"1"}, globally(prop("p"))}}))},
          {{"1", "3"}, next(brak({{{"1"}, globally(prop("q"))}}))},
          {{"1", "2", "3"}, globally(conj(prop("p"), prop("q")))}};
}

std::vector<std::string> corpus_names() {
  return {"exampleA", "exampleB", "exampleB-gamma-prime", "sheep-wolves(n,m,mode)", "password"};
}

CrossingMode parse_crossing_mode(const std::string& s) {
  if (s == "simultaneous") return CrossingMode::simultaneous;
  if (s == "wolves_then_sheep") return CrossingMode::wolves_then_sheep;
  throw InputError("unknown crossing mode '" + s + "'");
}

std::string to_string(CrossingMode mode) {
  return mode == CrossingMode::simultaneous ? "simultaneous" : "wolves_then_sheep";
}

namespace {

Formula parse(const std::string& text, Dialect d = Dialect::tlcga) {
  return parse_state_formula(text, d);
}

}  // namespace

CorpusEntry corpus_entry(const std::string& name, int n, int m, CrossingMode mode) {
  CorpusEntry e;
  e.name = name;
  if (name == "exampleA") {
    e.model = example_a();
    e.queries.push_back({"gamma_A", "s", brak(gamma_a())});
    e.queries.push_back({"a_reaches_neither", "s", parse("<<{a} -> (true U !(p | q))>>")});
    e.queries.push_back({"grand_p_until_q", "s", parse("<<{a,b} -> (p U q)>>")});
    e.queries.push_back({"empty_next_p", "s1", parse("<<{} -> X p>>")});
    e.queries.push_back({"a_always_p_or_q", "s", parse("<<{a} -> G (p | q)>>")});
  } else if (name == "exampleB") {
    e.model = example_b();
    e.queries.push_back({"gamma_B", "s", brak(gamma_b())});
    e.queries.push_back({"one_always_p_at_s31", "s31", parse("<<{1} -> G p>>")});
    e.queries.push_back({"one_always_p_at_s32", "s32", parse("<<{1} -> G p>>")});
    e.queries.push_back({"one_next_p", "s2", parse("<<{1} -> X p; {1,3} -> X !q>>")});
  } else if (name == "exampleB-gamma-prime") {
    e.model = example_b();
    e.queries.push_back({"gamma_B_prime", "s", brak(gamma_b_prime())});
    e.queries.push_back({"gamma_B", "s", brak(gamma_b())});
  } else if (name == "password") {
    e.model = build_password_model();
    e.queries.push_back({"common_goal", "start", parse("<<{A,B} -> (true U H_A & H_B)>>")});
    e.queries.push_back(
        {"guarded_common_goal", "start",
         parse("<<{A,B} -> ((H_A -> H_B) & (H_B -> H_A) U H_A & H_B); {A} -> G (H_B -> H_A); "
               "{B} -> G (H_A -> H_B)>>")});
    e.queries.push_back({"protected_common_goal", "start",
                         parse("<<{A,B} -> (true U H_A & H_B); {A} -> G (H_B -> H_A); "
                               "{B} -> G (H_A -> H_B)>>")});
  } else if (name == "sheep-wolves") {
    auto rc = build_river_crossing(n, m, mode);
    e.name = "sheep-wolves(" + std::to_string(n) + "," + std::to_string(m) + "," + to_string(mode) + ")";
    const auto start = rc.model.state_name(rc.start);
    GoalAssignment g{{rc.all, until(f_true(), prop("c"))}, {rc.sheep, globally(neg(prop("e")))}};
    e.queries.push_back({"alliance", start, brak(g)});
    e.queries.push_back({"all_cross_safely", start, brak({{rc.all, until(neg(prop("e")), prop("c"))}})});
    e.queries.push_back({"sheep_cross", start, brak({{rc.sheep, until(f_true(), prop("c"))}})});
    e.model = std::move(rc.model);
  } else {
    throw InputError("unknown corpus entry '" + name + "'");
  }
  return e;
}

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> out;
  for (const char* n : {"exampleA", "exampleB", "exampleB-gamma-prime", "password"})
    out.push_back(corpus_entry(n));
  out.push_back(corpus_entry("sheep-wolves", 1, 1, CrossingMode::simultaneous));
  out.push_back(corpus_entry("sheep-wolves", 2, 1, CrossingMode::wolves_then_sheep));
  out.push_back(corpus_entry("sheep-wolves", 1, 0, CrossingMode::simultaneous));
  return out;
}

}  // namespace tlcga
