// Serial reference kernels against their OpenMP counterparts. The second
// argument of each benchmark is the thread count; 1 selects the serial path.
// Times are wall clock, since CPU time hides thread overhead.

#include <benchmark/benchmark.h>

#include "tlcga/bisim.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/onestep.hpp"
#include "tlcga/random.hpp"
#include "tlcga/strategies.hpp"

using namespace tlcga;

namespace {

Model bench_model(int states) {
  Rng rng(kDefaultSeed);
  RandomModelSpec spec;
  spec.min_states = spec.max_states = states;
  spec.min_agents = spec.max_agents = 2;
  spec.max_actions = 3;
  spec.props = {"p"};
  return random_model(rng, spec);
}

void bm_refine_round(benchmark::State& state) {
  Model m = bench_model(static_cast<int>(state.range(0)));
  OutcomeBlocks t(m);
  Relation r = atom_equivalence(m);
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    Relation next = jobs > 1 ? refine_round_parallel(t, r, jobs) : refine_round_serial(t, r);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(bm_refine_round)->Args({40, 1})->Args({40, 4})->Args({120, 1})->Args({120, 4})->UseRealTime();

OneStepSequent bench_sequent() {
  std::vector<Formula> atoms;
  for (const char* text : {"<<{a} -> X p>>", "<<{b} -> X q>>", "<<{c} -> X r>>", "<<{a,b} -> X q>>",
                           "!<<{b} -> X !r>>", "!<<{a} -> X !q; {c} -> X !p>>", "!<<{a,c} -> X !r>>"})
    atoms.push_back(parse_state_formula(text, Dialect::tlcga));
  return make_sequent({"a", "b", "c"}, {"p", "q", "r"}, atoms);
}

void bm_sequent_satisfiable(benchmark::State& state) {
  auto s = bench_sequent();
  auto c = make_constraint(s, {{"p", "q", "r"}});
  SatOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sequent_satisfiable(s, c, opts));
}
BENCHMARK(bm_sequent_satisfiable)->Arg(1)->Arg(4)->UseRealTime();

void bm_find_witness(benchmark::State& state) {
  Model m = example_a();
  int s = m.state_index("s");
  SearchOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_witness(m, s, gamma_a(), MemoryMode::parse("play:3"), opts));
}
BENCHMARK(bm_find_witness)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
