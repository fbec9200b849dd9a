// Command-line front end: flag parsing, file IO and report formatting.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlcga/bisim.hpp"
#include "tlcga/checker.hpp"
#include "tlcga/corpus.hpp"
#include "tlcga/gametheory.hpp"
#include "tlcga/model.hpp"
#include "tlcga/onestep.hpp"
#include "tlcga/random.hpp"
#include "tlcga/strategies.hpp"
#include "tlcga/syntax.hpp"
#include "tlcga/transform.hpp"

using json = nlohmann::ordered_json;
using namespace tlcga;

namespace {

enum ExitCode { kAnswered = 0, kUsage = 1, kInvalid = 2, kLimit = 3 };

struct Common {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string hex_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// "sheep-wolves(3,3,simultaneous)" or a plain corpus name.
CorpusEntry corpus_from_spec(const std::string& spec) {
  auto open = spec.find('(');
  if (open == std::string::npos) return corpus_entry(spec);
  if (spec.back() != ')') throw InputError("bad corpus spec '" + spec + "'");
  std::string name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<std::string> parts;
  std::stringstream ss(args);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() != 3) throw InputError("expected (n,m,mode) in '" + spec + "'");
  try {
    return corpus_entry(name, std::stoi(parts[0]), std::stoi(parts[1]), parse_crossing_mode(parts[2]));
  } catch (const std::invalid_argument&) {
    throw InputError("bad numbers in '" + spec + "'");
  }
}

struct ModelSource {
  std::string file;
  std::string corpus;

  void add(CLI::App* app, const std::string& suffix = "") {
    app->add_option("--model" + suffix, file, "model JSON file");
    app->add_option("--corpus" + suffix, corpus, "corpus entry, e.g. exampleA or sheep-wolves(3,3,simultaneous)");
  }

  bool given() const { return !file.empty() || !corpus.empty(); }

  CorpusEntry load() const {
    if (!file.empty() && !corpus.empty()) throw CLI::ValidationError("give either a model file or a corpus entry");
    if (!file.empty()) {
      CorpusEntry e;
      e.name = file;
      e.model = load_model_file(file);
      return e;
    }
    if (!corpus.empty()) return corpus_from_spec(corpus);
    throw CLI::RequiredError("--model or --corpus");
  }
};

int state_of(const Model& m, const std::string& name) {
  int s = m.state_index(name);
  if (s < 0) throw InputError("unknown state '" + name + "'");
  return s;
}

struct FormulaSource {
  std::string text;
  std::string file;
  std::string dialect = "tlcga_plus";

  void add(CLI::App* app) {
    app->add_option("--formula", text, "formula text");
    app->add_option("--formula-file", file, "file holding the formula");
    app->add_option("--dialect", dialect, "tlcga, tlcga_plus or mu")->capture_default_str();
  }

  std::string raw() const {
    if (!text.empty() && !file.empty()) throw CLI::ValidationError("give either --formula or --formula-file");
    if (!text.empty()) return text;
    if (!file.empty()) return read_file(file);
    throw CLI::RequiredError("--formula");
  }

  Formula parse(const std::vector<std::string>& free = {}) const {
    return parse_state_formula(raw(), parse_dialect(dialect), {free.begin(), free.end()});
  }
};

GoalAssignment top_goal_assignment(const Formula& f) {
  if (f->op != Op::Brak) throw InputError("expected a formula of the form <<goal assignment>>, got " + to_string(f));
  return f->goals;
}

void emit(const Common& c, const json& j, const std::string& human) {
  if (c.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

// --- strategy profile files ------------------------------------------------

json profile_to_json(const Model& m, const FiniteStrategyProfile& sigma, const std::string& state) {
  json j;
  j["mode"] = sigma.mode.to_string();
  j["state"] = state;
  json tables = json::object();
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    json rows = json::array();
    for (const auto& [mem, act] : sigma.tables[a]) {
      json memory = json::array();
      for (std::size_t i = 0; i < mem.size(); ++i) {
        bool is_profile = sigma.mode.kind == MemoryMode::Kind::PlaySuffix && i % 2 == 1;
        memory.push_back(is_profile ? m.profile_string(mem[i - 1], m.decode(mem[i - 1], mem[i]))
                                    : m.state_name(mem[i]));
      }
      rows.push_back({{"memory", memory}, {"action", m.actions(mem.back(), a)[act]}});
    }
    tables[m.agents()[a]] = rows;
  }
  j["tables"] = tables;
  return j;
}

FiniteStrategyProfile profile_from_json(const Model& m, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("profile file is not valid JSON: ") + e.what());
  }
  try {
    FiniteStrategyProfile sigma = empty_profile(m, MemoryMode::parse(j.at("mode").get<std::string>()));
    for (const auto& [agent, rows] : j.at("tables").items()) {
      int a = m.agent_index(agent);
      if (a < 0) throw InputError("profile names unknown agent '" + agent + "'");
      for (const auto& row : rows) {
        Memory mem;
        const auto& items = row.at("memory");
        for (std::size_t i = 0; i < items.size(); ++i) {
          auto name = items[i].get<std::string>();
          bool is_profile = sigma.mode.kind == MemoryMode::Kind::PlaySuffix && i % 2 == 1;
          if (!is_profile) {
            mem.push_back(state_of(m, name));
            continue;
          }
          int prev = mem.back();
          int found = -1;
          for (std::size_t z = 0; z < m.num_profiles(prev) && found < 0; ++z)
            if (m.profile_string(prev, m.decode(prev, z)) == name) found = static_cast<int>(z);
          if (found < 0) throw InputError("unknown profile " + name + " at state " + m.state_name(prev));
          mem.push_back(found);
        }
        if (mem.empty()) throw InputError("empty memory in profile file");
        const auto& acts = m.actions(mem.back(), a);
        auto act = row.at("action").get<std::string>();
        auto it = std::find(acts.begin(), acts.end(), act);
        if (it == acts.end()) throw InputError("action '" + act + "' unavailable for " + agent);
        sigma.tables[a][mem] = static_cast<int>(it - acts.begin());
      }
    }
    return sigma;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed profile file: ") + e.what());
  }
}

// --- subcommands -------------------------------------------------------------

struct CheckCmd {
  ModelSource model;
  FormulaSource formula;
  std::string state;
  std::string query;

  int run(const Common& c) const {
    auto entry = model.load();
    const Model& m = entry.model;
    require_valid(m);
    Formula f;
    std::string st = state;
    if (!query.empty()) {
      auto it = std::find_if(entry.queries.begin(), entry.queries.end(),
                             [&](const CorpusQuery& q) { return q.name == query; });
      if (it == entry.queries.end()) throw InputError("unknown query '" + query + "'");
      f = it->formula;
      if (st.empty()) st = it->state;
    } else {
      f = formula.parse();
    }
    if (!free_vars(f).empty()) throw InputError("formula has free variables");
    EvalStats stats;
    auto t0 = std::chrono::steady_clock::now();
    Extension e = extension(m, f, &stats);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json j;
    j["command"] = "check";
    j["model_hash"] = hex_hash(save_model_json(m));
    j["formula"] = to_string(f);
    j["seed"] = c.seed;
    std::ostringstream h;
    h << "model: " << entry.name << " (" << j["model_hash"].get<std::string>() << ")\n";
    h << "formula: " << to_string(f) << "\n";
    if (!st.empty()) {
      int s = state_of(m, st);
      j["state"] = st;
      j["holds"] = static_cast<bool>(e[s]);
      h << "state: " << st << "\nholds: " << (e[s] ? "true" : "false") << "\n";
    } else {
      j["extension"] = state_names(m, e);
      h << "extension: {";
      auto names = state_names(m, e);
      for (std::size_t i = 0; i < names.size(); ++i) h << (i ? ", " : "") << names[i];
      h << "}\n";
    }
    j["iterations"] = stats.iterations;
    h << "iterations: " << stats.iterations << "\n";
    if (c.timing) {
      j["seconds"] = secs;
      h << "seconds: " << secs << "\n";
    }
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct OracleCmd {
  ModelSource model;
  FormulaSource formula;
  std::string state;
  std::string mode = "positional";
  std::size_t limit = SearchOptions{}.limit;
  std::string save;

  int run(const Common& c) const {
    auto entry = model.load();
    const Model& m = entry.model;
    require_valid(m);
    int s = state_of(m, state);
    GoalAssignment g = top_goal_assignment(formula.parse());
    MemoryMode mm = MemoryMode::parse(mode);
    SearchOptions opts;
    opts.limit = limit;
    opts.jobs = c.jobs;
    auto res = find_witness(m, s, g, mm, opts);
    json j;
    j["command"] = "oracle";
    j["model_hash"] = hex_hash(save_model_json(m));
    j["formula"] = to_string(brak(g));
    j["state"] = state;
    j["mode"] = mm.to_string();
    j["candidate_tables"] = res.candidate_tables;
    j["nodes"] = res.nodes;
    j["seed"] = c.seed;
    std::ostringstream h;
    h << "formula: " << to_string(brak(g)) << "\nstate: " << state << "\nmode: " << mm.to_string() << "\n";
    h << "candidate tables: <= " << res.candidate_tables << "\nsearch nodes: " << res.nodes << "\n";
    if (res.witness) {
      bool verified = verify_witness(m, s, *res.witness, g);
      if (!verified) throw Error("internal error: witness failed verification");
      auto lasso = play_lasso(m, s, *res.witness);
      j["result"] = "witness";
      j["verified"] = verified;
      j["witness"] = profile_to_json(m, *res.witness, state);
      j["play"] = lasso_string(m, lasso);
      h << "result: witness (verified)\n" << profile_table(m, *res.witness) << "play: " << lasso_string(m, lasso) << "\n";
      if (!save.empty()) write_file(save, profile_to_json(m, *res.witness, state).dump(2) + "\n");
    } else {
      std::string r = res.exact ? "none (exact)" : "none (bounded)";
      j["result"] = r;
      h << "result: " << r << "\n";
    }
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct ValidateCmd {
  ModelSource model;

  int run(const Common& c) const {
    CorpusEntry entry;
    try {
      entry = model.load();
    } catch (const InputError& e) {
      json j{{"command", "validate"}, {"valid", false}, {"violations", {e.what()}}};
      emit(c, j, std::string("invalid\n  ") + e.what() + "\n");
      return kInvalid;
    }
    auto problems = validate(entry.model);
    json j{{"command", "validate"}, {"valid", problems.empty()}, {"violations", problems}};
    std::ostringstream h;
    if (problems.empty()) {
      h << "valid: " << entry.model.num_states() << " states, " << entry.model.num_agents() << " agents\n";
    } else {
      h << "invalid\n";
      for (const auto& p : problems) h << "  " << p << "\n";
    }
    emit(c, j, h.str());
    return problems.empty() ? kAnswered : kInvalid;
  }
};

struct ScosCmd {
  ModelSource model;
  std::string out;

  int run(const Common& c) const {
    auto entry = model.load();
    require_valid(entry.model);
    auto r = scos(entry.model);
    json j{{"command", "scos"},
           {"injective_before", is_injective(entry.model)},
           {"injective_after", is_injective(r.model)},
           {"states", r.model.num_states()}};
    std::ostringstream h;
    h << "injective before: " << (is_injective(entry.model) ? "true" : "false") << "\n";
    h << "injective after: " << (is_injective(r.model) ? "true" : "false") << "\n";
    json copies = json::object();
    for (std::size_t s = 0; s < r.copies.size(); ++s) {
      json names = json::array();
      h << entry.model.state_name(static_cast<int>(s)) << ":";
      for (int k : r.copies[s]) {
        names.push_back(r.model.state_name(k));
        h << " " << r.model.state_name(k);
      }
      h << "\n";
      copies[entry.model.state_name(static_cast<int>(s))] = names;
    }
    j["copies"] = copies;
    if (!out.empty())
      write_file(out, save_model_json(r.model) + "\n");
    else if (!c.json)
      h << save_model_json(r.model) << "\n";
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct BisimCmd {
  ModelSource first;
  ModelSource second;
  bool pairs = false;
  std::vector<std::string> query;

  int run(const Common& c) const {
    auto e1 = first.load();
    Model m = e1.model;
    std::string prefix1, prefix2;
    if (second.given()) {
      auto e2 = second.load();
      if (e1.model.agents() != e2.model.agents()) throw InputError("models have different agent sets");
      m = disjoint_union(e1.model, e2.model);
      prefix1 = "1:";
      prefix2 = "2:";
    }
    BisimOptions opts;
    opts.jobs = c.jobs;
    auto res = greatest_bisimulation(m, opts);
    json j{{"command", "bisim"}, {"rounds", res.rounds}};
    std::ostringstream h;
    h << "rounds: " << res.rounds << "\n";
    if (!query.empty()) {
      if (query.size() != 2) throw CLI::ValidationError("--query takes two states");
      int a = state_of(m, prefix1 + query[0]);
      int b = state_of(m, (second.given() ? prefix2 : prefix1) + query[1]);
      bool related = res.relation.contains(a, b);
      j["related"] = related;
      h << query[0] << " ~ " << query[1] << ": " << (related ? "true" : "false") << "\n";
    }
    if (pairs || query.empty()) {
      json list = json::array();
      for (auto [a, b] : res.relation.pairs()) {
        if (a >= b) continue;
        list.push_back({m.state_name(a), m.state_name(b)});
        h << m.state_name(a) << " ~ " << m.state_name(b) << "\n";
      }
      j["pairs"] = list;
    }
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct TransformCmd {
  std::string which;
  FormulaSource formula;
  std::string phi;
  std::vector<std::string> free;

  int run(const Common& c) const {
    Formula f = formula.parse(free);
    std::string out;
    if (which == "translate") {
      out = to_string(to_mu(f));
    } else if (which == "nf") {
      out = to_string(normal_form(f));
    } else if (which == "unfold") {
      out = to_string(unfold_formula(top_goal_assignment(f)));
    } else if (which == "ind") {
      if (phi.empty()) throw CLI::RequiredError("--phi");
      out = to_string(induction_formula(top_goal_assignment(f), parse_state_formula(phi, Dialect::mu, {free.begin(), free.end()})));
    } else if (which == "oplus") {
      out = to_string(brak(nexttime_extension(top_goal_assignment(f))));
    }
    json j{{"command", which}, {"input", to_string(f)}, {"output", out}};
    emit(c, j, out + "\n");
    return kAnswered;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct OneStepCmd {
  std::string sequent;
  std::string constraint;
  std::string agents;
  bool witness = false;
  bool literal = false;

  int run(const Common& c) const {
    // Sequent file: one formula per non-empty line, conjoined.
    std::vector<Formula> lines;
    std::stringstream ss(read_file(sequent));
    for (std::string line; std::getline(ss, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
      lines.push_back(parse_state_formula(line, Dialect::tlcga));
    }
    Formula f = conjunction(lines);
    // Constraint file: JSON array of variable lists.
    std::vector<std::vector<std::string>> family;
    try {
      family = json::parse(read_file(constraint)).get<std::vector<std::vector<std::string>>>();
    } catch (const json::exception& e) {
      throw InputError(std::string("constraint file must be a JSON array of variable lists: ") + e.what());
    }
    std::set<std::string> vars = propositions(f);
    for (const auto& z : family) vars.insert(z.begin(), z.end());
    auto mentioned = agents_of(f);
    Coalition agt = make_coalition(agents.empty() ? Coalition(mentioned.begin(), mentioned.end()) : split_list(agents));
    std::vector<std::string> var_list(vars.begin(), vars.end());
    SatOptions opts;
    opts.jobs = c.jobs;
    opts.literal = literal;
    json j{{"command", "onestep-sat"}, {"formula", to_string(f)}};
    std::ostringstream h;
    auto branches = one_step_dnf(f);
    bool sat = false;
    json results = json::array();
    for (std::size_t b = 0; b < branches.size() && !sat; ++b) {
      auto seq = make_sequent(agt, var_list, branches[b]);
      auto c_ = make_constraint(seq, family);
      auto r = sequent_satisfiable(seq, c_, opts);
      json jr{{"branch", to_string(sequent_formula(seq))}, {"satisfiable", r.satisfiable},
              {"redistributions", r.redistributions}};
      if (branches.size() > 1) h << "branch " << b + 1 << ": " << to_string(sequent_formula(seq)) << "\n";
      if (r.satisfiable) {
        sat = true;
        if (witness) {
          auto g = witness_game_form(seq, c_);
          auto problems = validate_game_form(g, seq, c_);
          jr["witness_profiles"] = g.num_profiles();
          jr["witness_valid"] = problems.empty();
          h << "witness game form: " << g.actions[0].size() << " actions per agent, " << g.num_profiles()
            << " profiles, validation " << (problems.empty() ? "passed" : "FAILED") << "\n";
        }
      } else {
        jr["certificate"] = r.explanation;
        h << "  certificate: " << r.explanation << "\n";
      }
      results.push_back(jr);
    }
    j["satisfiable"] = sat;
    j["branches"] = results;
    emit(c, j, h.str() + (sat ? "SAT\n" : "UNSAT\n"));
    return kAnswered;
  }
};

struct StabilityCmd {
  ModelSource model;
  std::string state;
  std::string notion;
  std::string profile;
  std::string goals;

  int run(const Common& c) const {
    auto entry = model.load();
    const Model& m = entry.model;
    require_valid(m);
    int w = state_of(m, state);
    Notion n = parse_notion(notion);
    GoalAssignment g = top_goal_assignment(parse_state_formula(read_file(goals), Dialect::tlcga_plus));
    json j{{"command", "stability"}, {"notion", to_string(n)}, {"goals", to_string(brak(g))}};
    std::ostringstream h;
    if (n == Notion::coeq) {
      auto star = coequilibrium_ga(m.agents(), g);
      bool exists = check(m, w, brak(star));
      j["assignment"] = to_string(brak(star));
      j["exists"] = exists;
      h << "assignment: " << to_string(brak(star)) << "\nexists: " << (exists ? "true" : "false") << "\n";
      if (!profile.empty()) {
        bool wit = verify_witness(m, w, profile_from_json(m, read_file(profile)), star);
        j["profile_witnesses"] = wit;
        h << "profile is a co-equilibrium: " << (wit ? "true" : "false") << "\n";
      }
      emit(c, j, h.str());
      return kAnswered;
    }
    if (profile.empty()) throw CLI::RequiredError("--profile");
    auto sigma = profile_from_json(m, read_file(profile));
    auto part = partition_outcomes(m, w, sigma, g);
    auto names = [](const std::vector<Coalition>& cs) {
      std::vector<std::string> out;
      for (const auto& x : cs) out.push_back(to_string(x));
      return out;
    };
    j["winning"] = names(part.winning);
    j["losing"] = names(part.losing);
    j["winners"] = part.winners;
    j["losers"] = part.losers;
    h << "play: " << lasso_string(m, play_lasso(m, w, sigma)) << "\n";
    h << "winners: " << to_string(part.winners) << "\nlosers: " << to_string(part.losers) << "\n";
    if (n == Notion::core) {
      Formula f = core_nonempty_formula(g, part.losers);
      bool in_core = check(m, w, f);
      j["formula"] = to_string(f);
      j["stable"] = in_core;
      h << "formula: " << to_string(f) << "\nin core: " << (in_core ? "true" : "false") << "\n";
    } else {
      GoalAssignment ga = n == Notion::nash     ? nash_ga(m.agents(), g, part)
                          : n == Notion::strong ? strong_ga(m.agents(), g, part)
                                                : coalitional_ga(m.agents(), g, part);
      bool stable = verify_witness(m, w, sigma, ga);
      j["assignment"] = to_string(brak(ga));
      j["stable"] = stable;
      h << "assignment: " << to_string(brak(ga)) << "\nprofile witnesses it: " << (stable ? "true" : "false")
        << "\n";
    }
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct AxiomsCmd {
  std::size_t samples = 500;
  std::string scheme;
  bool list = false;

  int run(const Common& c) const {
    json j{{"command", "axioms"}, {"seed", c.seed}, {"samples", samples}};
    std::ostringstream h;
    if (list) {
      for (const auto& s : axiom_schemes()) h << s << "\n";
      j["schemes"] = axiom_schemes();
      emit(c, j, h.str());
      return kAnswered;
    }
    std::vector<std::string> schemes = scheme.empty() ? axiom_schemes() : std::vector<std::string>{scheme};
    json results = json::array();
    std::size_t total = 0;
    for (const auto& s : schemes) {
      auto cx = falsify_scheme(s, samples, c.seed);
      json r{{"scheme", s}, {"counterexample", cx.has_value()}};
      h << s << ": ";
      if (cx) {
        ++total;
        r["sample"] = cx->sample;
        r["formula"] = to_string(cx->formula);
        r["state"] = cx->model.state_name(cx->state);
        r["model"] = json::parse(save_model_json(cx->model));
        h << "counterexample at sample " << cx->sample << ", state " << cx->model.state_name(cx->state) << ": "
          << to_string(cx->formula) << "\n";
      } else {
        h << "no counterexample in " << samples << " samples\n";
      }
      results.push_back(r);
    }
    j["results"] = results;
    j["counterexamples"] = total;
    emit(c, j, h.str());
    return kAnswered;
  }
};

struct CorpusCmd {
  bool list = false;
  std::string build;
  std::string out = ".";

  int run(const Common& c) const {
    if (list || build.empty()) {
      json j{{"command", "corpus"}, {"entries", corpus_names()}};
      std::string h;
      for (const auto& n : corpus_names()) h += n + "\n";
      emit(c, j, h);
      return kAnswered;
    }
    auto entry = corpus_from_spec(build);
    std::filesystem::create_directories(out);
    std::string stem;
    for (char ch : entry.name)
      if (ch == '(' || ch == ',') stem += '-';
      else if (ch != ')') stem += ch;
    std::string base = (std::filesystem::path(out) / stem).string();
    write_file(base + ".json", save_model_json(entry.model) + "\n");
    std::ostringstream q;
    for (const auto& query : entry.queries) q << query.name << "\t" << query.state << "\t" << to_string(query.formula) << "\n";
    write_file(base + ".queries", q.str());
    json j{{"command", "corpus"}, {"model", base + ".json"}, {"queries", base + ".queries"}};
    emit(c, j, "wrote " + base + ".json and " + base + ".queries\n");
    return kAnswered;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checker for coalitional goal assignments"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "machine-readable output");
  app.add_option("--seed", common.seed, "seed for randomized harnesses")->capture_default_str();
  app.add_option("--jobs", common.jobs, "worker threads for parallel kernels")->check(CLI::PositiveNumber);
  app.add_flag("--timing", common.timing, "report wall-clock time");
  app.fallthrough();

  std::function<int()> action;

  CheckCmd check_cmd;
  auto* check = app.add_subcommand("check", "evaluate a formula on a model");
  check_cmd.model.add(check);
  check_cmd.formula.add(check);
  check->add_option("--state", check_cmd.state, "state to query (omit for the whole extension)");
  check->add_option("--query", check_cmd.query, "named query of the corpus entry");
  check->callback([&] { action = [&] { return check_cmd.run(common); }; });

  OracleCmd oracle_cmd;
  auto* oracle = app.add_subcommand("oracle", "search for a finite-memory witness profile");
  oracle_cmd.model.add(oracle);
  oracle_cmd.formula.add(oracle);
  oracle->add_option("--state", oracle_cmd.state)->required();
  oracle->add_option("--mode", oracle_cmd.mode, "positional, path:K or play:K")->capture_default_str();
  oracle->add_option("--limit", oracle_cmd.limit, "search node limit")->capture_default_str();
  oracle->add_option("--save", oracle_cmd.save, "write the witness profile as JSON");
  oracle->callback([&] { action = [&] { return oracle_cmd.run(common); }; });

  ValidateCmd validate_cmd;
  auto* validate_sc = app.add_subcommand("validate", "check a model file");
  validate_cmd.model.add(validate_sc);
  validate_sc->callback([&] { action = [&] { return validate_cmd.run(common); }; });

  ScosCmd scos_cmd;
  auto* scos_sc = app.add_subcommand("scos", "state-copying and outcome-splitting transformation");
  scos_cmd.model.add(scos_sc);
  scos_sc->add_option("--out", scos_cmd.out, "write the transformed model here");
  scos_sc->callback([&] { action = [&] { return scos_cmd.run(common); }; });

  BisimCmd bisim_cmd;
  auto* bisim = app.add_subcommand("bisim", "greatest bisimulation");
  bisim_cmd.first.add(bisim);
  bisim_cmd.second.add(bisim, "2");
  bisim->add_flag("--pairs", bisim_cmd.pairs, "list related pairs");
  bisim->add_option("--query", bisim_cmd.query, "two states to compare")->expected(2);
  bisim->callback([&] { action = [&] { return bisim_cmd.run(common); }; });

  std::vector<std::unique_ptr<TransformCmd>> transforms;
  for (const char* name : {"translate", "nf", "unfold", "ind", "oplus"}) {
    transforms.push_back(std::make_unique<TransformCmd>());
    auto* cmd = transforms.back().get();
    cmd->which = name;
    auto* sc = app.add_subcommand(name, std::string("formula transformation: ") + name);
    cmd->formula.add(sc);
    sc->add_option("--free", cmd->free, "variables allowed free");
    if (cmd->which == "ind") sc->add_option("--phi", cmd->phi, "formula substituted for the recursion variable");
    sc->callback([&, cmd] { action = [&, cmd] { return cmd->run(common); }; });
  }

  OneStepCmd onestep_cmd;
  auto* onestep = app.add_subcommand("onestep-sat", "one-step satisfiability of a sequent under a constraint");
  onestep->add_option("--sequent", onestep_cmd.sequent, "file with one one-step formula per line")->required();
  onestep->add_option("--constraint", onestep_cmd.constraint, "JSON array of variable lists")->required();
  onestep->add_option("--agents", onestep_cmd.agents, "agent universe, comma separated");
  onestep->add_flag("--witness", onestep_cmd.witness, "build and validate a witness game form");
  onestep->add_flag("--literal", onestep_cmd.literal, "use the literal redistribution conditions, which are not exact");
  onestep->callback([&] { action = [&] { return onestep_cmd.run(common); }; });

  StabilityCmd stability_cmd;
  auto* stability = app.add_subcommand("stability", "solution concepts for a strategy profile");
  stability_cmd.model.add(stability);
  stability->add_option("--state", stability_cmd.state)->required();
  stability->add_option("--notion", stability_cmd.notion, "nash, strong, coalitional, coeq or core")->required();
  stability->add_option("--profile", stability_cmd.profile, "strategy profile JSON as written by oracle --save");
  stability->add_option("--goals", stability_cmd.goals, "file holding <<goal assignment>>")->required();
  stability->callback([&] { action = [&] { return stability_cmd.run(common); }; });

  AxiomsCmd axioms_cmd;
  auto* axioms = app.add_subcommand("axioms", "falsification search for the axiom schemes");
  axioms->add_option("--samples", axioms_cmd.samples)->capture_default_str();
  axioms->add_option("--scheme", axioms_cmd.scheme, "restrict to one scheme");
  axioms->add_flag("--list", axioms_cmd.list, "list scheme names");
  axioms->callback([&] { action = [&] { return axioms_cmd.run(common); }; });

  CorpusCmd corpus_cmd;
  auto* corpus = app.add_subcommand("corpus", "list or write corpus entries");
  corpus->add_flag("--list", corpus_cmd.list);
  corpus->add_option("--build", corpus_cmd.build, "entry to write, e.g. sheep-wolves(3,3,simultaneous)");
  corpus->add_option("--out", corpus_cmd.out, "output directory")->capture_default_str();
  corpus->callback([&] { action = [&] { return corpus_cmd.run(common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kAnswered : kUsage;
  }
  try {
    return action();
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const LimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  }
}
