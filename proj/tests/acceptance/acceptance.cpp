// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "../oracles/onestep_grid.hpp"
#include "tlcga/bisim.hpp"
#include "tlcga/checker.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/model.hpp"
#include "tlcga/onestep.hpp"
#include "tlcga/random.hpp"
#include "tlcga/strategies.hpp"
#include "tlcga/transform.hpp"

using namespace tlcga;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      failures += (pass ? "" : "; ") + ("failed: " + what);
      pass = false;
    }
  }

  std::string text() const {
    std::string d = detail.str();
    if (failures.empty()) return d;
    return d.empty() ? failures : d + "; " + failures;
  }
};

int query_state(const CorpusEntry& e, const std::string& name, Formula* out) {
  for (const auto& q : e.queries)
    if (q.name == name) {
      *out = q.formula;
      return e.model.state_index(q.state);
    }
  throw Error("missing query " + name);
}

// Formulas of the form <<g>> from the corpus.
std::vector<std::pair<const CorpusEntry*, CorpusQuery>> goal_queries(const std::vector<CorpusEntry>& corpus) {
  std::vector<std::pair<const CorpusEntry*, CorpusQuery>> out;
  for (const auto& e : corpus)
    for (const auto& q : e.queries)
      if (q.formula->op == Op::Brak) out.push_back({&e, q});
  return out;
}

bool uses_only_agents(const Formula& f, const Model& m) {
  for (const auto& a : agents_of(f))
    if (m.agent_index(a) < 0) return false;
  return true;
}

void memory_example(Outcome& o) {
  Model m = example_a();
  int s = m.state_index("s");
  o.expect(check(m, s, brak(gamma_a())), "check at s");
  auto pos = find_witness(m, s, gamma_a(), MemoryMode::positional());
  o.expect(!pos.witness && pos.exact, "positional search is none (exact)");
  for (const char* mode : {"play:3", "path:3"}) {
    auto r = find_witness(m, s, gamma_a(), MemoryMode::parse(mode));
    o.expect(r.witness && verify_witness(m, s, *r.witness, gamma_a()), std::string(mode) + " witness verified");
  }
  o.detail << "check=true positional=none(exact) play:3=witness path:3=witness";
}

void play_vs_path(Outcome& o) {
  Model m = example_b();
  int s = m.state_index("s");
  o.expect(check(m, s, brak(gamma_b())), "check gamma_B");
  auto path = find_witness(m, s, gamma_b(), MemoryMode::path(2));
  o.expect(!path.witness && path.exact, "path:2 none (exact)");
  auto play = find_witness(m, s, gamma_b(), MemoryMode::play(2));
  o.expect(play.witness && verify_witness(m, s, *play.witness, gamma_b()), "play:2 witness");
  o.expect(check(m, s, brak(gamma_b_prime())), "check gamma_B'");
  auto prime = find_witness(m, s, gamma_b_prime(), MemoryMode::path(2));
  o.expect(prime.witness && verify_witness(m, s, *prime.witness, gamma_b_prime()), "path:2 gamma_B' witness");
  o.detail << "gamma_B: check=true path:2=none(exact) play:2=witness; gamma_B': check=true path:2=witness";
}

void scos_chain(Outcome& o) {
  Model m = example_b();
  auto r = scos(m);
  o.expect(!is_injective(m), "original not injective");
  o.expect(is_injective(r.model), "scos injective");
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    std::size_t want = m.state_name(static_cast<int>(s)) == "s2" ? 3 : 1;
    o.expect(r.copies[s].size() == want, "copy count of " + m.state_name(static_cast<int>(s)));
  }
  o.expect(are_bisimilar(m, "s", r.model, r.model.state_name(r.copies[0][0])), "s bisimilar to its copy");
  for (const auto& g : {gamma_b(), gamma_b_prime()}) {
    auto before = extension(m, brak(g));
    auto after = extension(r.model, brak(g));
    for (std::size_t s = 0; s < m.num_states(); ++s)
      for (int k : r.copies[s]) o.expect(before[s] == after[k], "truth at copy of " + m.state_name(static_cast<int>(s)));
  }
  o.detail << r.model.num_states() << " states after splitting, copies of s2 = " << r.copies[2].size();
}

void oplus_golden(Outcome& o) {
  auto g = parse_state_formula("<<{a,b} -> (p U q); {c} -> G r; {b,c} -> X s>>", Dialect::tlcga)->goals;
  auto ab = brak({{{"a", "b"}, until(prop("p"), prop("q"))}});
  auto c = brak({{{"c"}, globally(prop("r"))}});
  auto abc = brak({{{"a", "b"}, until(prop("p"), prop("q"))}, {{"c"}, globally(prop("r"))}});
  GoalAssignment expected{{{"a", "b"}, next(ab)},
                          {{"c"}, next(c)},
                          {{"b", "c"}, next(conj(prop("s"), c))},
                          {{"a", "b", "c"}, next(conj(prop("s"), abc))}};
  auto got = nexttime_extension(g);
  o.expect(got == expected, "structural match");
  o.detail << to_string(got);
}

void fixpoint_suite(Outcome& o) {
  std::size_t pairs = 0;
  auto compare = [&](const Model& m, const GoalAssignment& g) {
    auto lhs = extension(m, brak(g));
    bool ok = lhs == extension(m, unfold_formula(g)) && lhs == eval(m, to_mu(brak(g)));
    o.expect(ok, "extensions differ for " + to_string(g));
    ++pairs;
  };
  auto corpus = standard_corpus();
  for (const auto& [e, q] : goal_queries(corpus)) compare(e->model, q.formula->goals);
  Rng rng(kDefaultSeed);
  RandomModelSpec ms;
  ms.max_states = 6;
  RandomFormulaSpec fs;
  fs.depth = 2;
  fs.max_coalitions = 3;
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(rng, ms);
    compare(m, random_goal_assignment(rng, m.agents(), fs));
  }
  o.detail << pairs << " (model, assignment) pairs";
}

void axiom_suite(Outcome& o) {
  for (const auto& scheme : axiom_schemes()) {
    auto cx = falsify_scheme(scheme, 500);
    if (cx) o.expect(false, scheme + " counterexample: " + to_string(cx->formula));
  }
  o.detail << axiom_schemes().size() << " schemes x 500 samples, seed " << kDefaultSeed;
}

void onestep_suite(Outcome& o) {
  auto s = make_sequent({"a", "b"}, {"p", "q", "r"},
                        {parse_state_formula("<<{a} -> X p>>", Dialect::tlcga),
                         parse_state_formula("<<{b} -> X q>>", Dialect::tlcga),
                         parse_state_formula("!<<{b} -> X !r>>", Dialect::tlcga)});
  auto yes = make_constraint(s, {{"p", "q"}, {"q", "r"}});
  o.expect(sequent_satisfiable(s, yes).satisfiable, "SAT golden");
  auto g = witness_game_form(s, yes);
  o.expect(validate_game_form(g, s, yes).empty(), "witness game form validates");
  auto no = sequent_satisfiable(s, make_constraint(s, {{"p", "q"}, {"p", "r"}}));
  o.expect(!no.satisfiable, "UNSAT golden");
  o.expect(no.redistribution && forced_against(s, *no.redistribution, 0, 2u) == s.var_set({"q", "r"}),
           "certificate forces {q,r} against {b}");
  std::size_t instances = 0, sat = 0, escalated = 0, witnesses = 0, bad = 0;
  for (int agents : {1, 2}) {
    auto res = onestep_grid::run(agents);
    instances += res.instances;
    sat += res.satisfiable;
    escalated += res.escalated;
    witnesses += res.witnesses;
    bad += res.disagreements.size();
    for (std::size_t i = 0; i < res.disagreements.size() && i < 3; ++i) o.expect(false, res.disagreements[i]);
  }
  o.detail << "grid " << instances << " instances (" << sat << " SAT, " << escalated << " rechecked with 4 actions, "
           << witnesses << " witness game forms validated), " << bad << " disagreements";
}

void atl_embedding(Outcome& o) {
  std::size_t queries = 0;
  auto compare = [&](const Model& m, const Coalition& c, const Path& theta) {
    o.expect(atl_check(m, c, theta) == extension(m, brak({{c, theta}})),
             "mismatch for " + to_string(c) + " " + to_string(theta));
    ++queries;
  };
  std::vector<Path> thetas;
  for (const char* t : {"X p", "G p", "(p U q)", "(true U !p)", "G (p | q)", "X <<{} -> X q>>"})
    thetas.push_back(parse_path_formula(t, Dialect::tlcga));
  auto corpus = standard_corpus();
  for (const auto& e : corpus) {
    for (const auto& q : e.queries)
      if (q.formula->op == Op::Brak && q.formula->goals.size() == 1) {
        const auto& [c, theta] = *q.formula->goals.entries().begin();
        compare(e.model, c, theta);
      }
    const std::size_t n = e.model.num_agents();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n) && mask < 64; ++mask)
      for (const auto& t : thetas) compare(e.model, e.model.coalition_of(static_cast<AgentMask>(mask)), t);
  }
  Rng rng(kDefaultSeed + 8);
  RandomFormulaSpec fs;
  fs.depth = 2;
  for (int i = 0; i < 300; ++i) {
    Model m = random_model(rng);
    auto c = random_coalition(rng, m.agents());
    compare(m, c, random_path_formula(rng, m.agents(), fs));
  }
  o.detail << queries << " queries";
}

void river_crossing(Outcome& o) {
  for (auto mode : {CrossingMode::simultaneous, CrossingMode::wolves_then_sheep}) {
    auto e = corpus_entry("sheep-wolves", 3, 3, mode);
    Formula f;
    int s = query_state(e, "alliance", &f);
    bool got = check(e.model, s, f);
    bool want = mode == CrossingMode::wolves_then_sheep;
    o.expect(got == want, "alliance in " + to_string(mode));
    o.detail << to_string(mode) << "=" << (got ? "true" : "false") << " ";
  }
}

void oracle_sweep(Outcome& o) {
  std::size_t searches = 0, witnesses = 0, limited = 0, unsound = 0;
  SearchOptions opts;
  opts.limit = 200000;
  auto probe = [&](const Model& m, int s, const GoalAssignment& g) {
    bool truth = check(m, s, brak(g));
    for (const char* mode : {"positional", "path:2", "play:2"}) {
      ++searches;
      try {
        auto r = find_witness(m, s, g, MemoryMode::parse(mode), opts);
        if (!r.witness) continue;
        ++witnesses;
        if (!verify_witness(m, s, *r.witness, g) || !truth) {
          ++unsound;
          o.expect(false, "witness for " + to_string(g) + " in " + mode);
        }
      } catch (const LimitError&) {
        ++limited;
      }
    }
  };
  auto corpus = standard_corpus();
  for (const auto& [e, q] : goal_queries(corpus)) probe(e->model, e->model.state_index(q.state), q.formula->goals);
  Rng rng(kDefaultSeed + 9);
  RandomModelSpec ms;
  ms.max_states = 5;
  RandomFormulaSpec fs;
  fs.depth = 1;
  fs.max_coalitions = 3;
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(rng, ms);
    probe(m, 0, random_goal_assignment(rng, m.agents(), fs));
  }
  o.detail << searches << " searches, " << witnesses << " witnesses, " << unsound << " unsound, " << limited
           << " hit the node limit";
}

void bisim_sweep(Outcome& o) {
  auto corpus = standard_corpus();
  corpus.push_back(corpus_entry("sheep-wolves", 3, 3, CrossingMode::simultaneous));
  std::vector<Formula> formulas;
  for (const auto& e : corpus)
    for (const auto& q : e.queries) formulas.push_back(q.formula);
  std::size_t pairs = 0, separated = 0;
  auto converse = [&](const Model& m, const Relation& r) {
    auto chars = characteristic_formulas(m);
    auto fail = hm_converse_failure(m, r, chars);
    o.expect(!fail, "unrelated states not separated");
    separated += m.num_states() * m.num_states() - r.count();
  };
  for (const auto& e : corpus) {
    auto r = greatest_bisimulation(e.model).relation;
    pairs += r.count();
    std::vector<Formula> usable;
    for (const auto& f : formulas)
      if (uses_only_agents(f, e.model)) usable.push_back(f);
    auto d = hm_agreement(e.model, r, usable);
    o.expect(!d, "bisimilar states disagree in " + e.name);
    if (e.model.num_states() <= 8) converse(e.model, r);
  }
  Rng rng(kDefaultSeed + 10);
  RandomModelSpec ms;
  ms.max_states = 8;
  for (int i = 0; i < 100; ++i) {
    Model m = random_model(rng, ms);
    converse(m, greatest_bisimulation(m).relation);
  }
  o.detail << pairs << " related pairs checked, " << separated << " unrelated pairs separated";
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "memory needed beyond positional strategies", 1, memory_example},
      {2, "play-based versus path-based memory", 2, play_vs_path},
      {3, "splitting yields a bisimilar injective model", 2, scos_chain},
      {4, "nexttime extension golden", 1, oplus_golden},
      {5, "fixpoint unfolding and translation agree", 60, fixpoint_suite},
      {6, "axiom schemes survive falsification", 300, axiom_suite},
      {7, "one-step satisfiability goldens and exhaustive grid", 300, onestep_suite},
      {8, "forcing-based evaluation embeds", 30, atl_embedding},
      {9, "river crossing alliance", 60, river_crossing},
      {10, "witness search soundness", 120, oracle_sweep},
      {11, "bisimulation invariance and separation", 120, bisim_sweep},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) o.expect(false, "time limit");
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << std::setw(2) << c.id << " " << c.name << " ["
              << std::fixed << std::setprecision(2) << secs << "s / " << std::setprecision(0) << c.limit_seconds
              << "s] " << o.text() << std::endl;
  }
  std::cout << (failures ? "FAILED: " : "ALL PASSED: ") << criteria.size() - failures << "/" << criteria.size()
            << " criteria" << std::endl;
  return failures ? 1 : 0;
}
