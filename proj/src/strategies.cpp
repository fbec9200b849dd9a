#include "tlcga/strategies.hpp"

#include <cmath>
#include <deque>
#include <exception>
#include <functional>

#include "tlcga/transform.hpp"

namespace tlcga {

MemoryMode MemoryMode::parse(const std::string& text) {
  if (text == "positional") return positional();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("bad memory mode '" + text + "'");
  auto kind = text.substr(0, colon);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("bad memory depth in '" + text + "'");
  }
  if (k < 1) throw InputError("memory depth must be at least 1");
  if (k > kMaxMemory) throw LimitError("memory depth above " + std::to_string(kMaxMemory));
  if (kind == "path") return path(k);
  if (kind == "play") return play(k);
  throw InputError("bad memory mode '" + text + "'");
}

std::string MemoryMode::to_string() const {
  switch (kind) {
    case Kind::Positional: return "positional";
    case Kind::PathSuffix: return "path:" + std::to_string(k);
    case Kind::PlaySuffix: return "play:" + std::to_string(k);
  }
  return "?";
}

Memory initial_memory(int s) { return {s}; }

Memory extend_memory(const MemoryMode& mode, const Memory& m, std::size_t profile, int next) {
  switch (mode.kind) {
    case MemoryMode::Kind::Positional: return {next};
    case MemoryMode::Kind::PathSuffix: {
      Memory out = m;
      out.push_back(next);
      while (static_cast<int>(out.size()) > mode.k) out.erase(out.begin());
      return out;
    }
    case MemoryMode::Kind::PlaySuffix: {
      Memory out = m;
      out.push_back(static_cast<int>(profile));
      out.push_back(next);
      while (static_cast<int>((out.size() + 1) / 2) > mode.k) out.erase(out.begin(), out.begin() + 2);
      return out;
    }
  }
  return m;
}

std::string memory_string(const Model& model, const MemoryMode& mode, const Memory& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += " ";
    bool is_profile = mode.kind == MemoryMode::Kind::PlaySuffix && i % 2 == 1;
    if (is_profile)
      out += model.profile_string(m[i - 1], model.decode(m[i - 1], m[i]));
    else
      out += model.state_name(m[i]);
  }
  return out + "]";
}

std::optional<int> FiniteStrategyProfile::action(int agent, const Memory& m) const {
  const auto& t = tables[agent];
  auto it = t.find(m);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

FiniteStrategyProfile empty_profile(const Model& m, const MemoryMode& mode) {
  FiniteStrategyProfile p;
  p.mode = mode;
  p.tables.resize(m.num_agents());
  return p;
}

namespace {

struct ConjCheck {
  PathOp op;
  Extension a;
  Extension b;
};

struct CoalGoal {
  AgentMask mask;
  std::vector<ConjCheck> conjuncts;
};

std::vector<CoalGoal> prepare(const Model& m, const GoalAssignment& g) {
  std::vector<CoalGoal> out;
  for (const auto& [c, p] : g.entries()) {
    CoalGoal cg{m.mask_of(c), {}};
    for (const auto& q : path_conjuncts(p)) {
      ConjCheck cc{q->op, extension(m, q->left), {}};
      if (q->right) cc.b = extension(m, q->right);
      cg.conjuncts.push_back(std::move(cc));
    }
    out.push_back(std::move(cg));
  }
  return out;
}

using Lookup = std::function<std::optional<int>(int agent, const Memory& m)>;

struct Missing {
  int agent;
  Memory memory;
};

struct Product {
  std::vector<Memory> nodes;
  std::vector<std::vector<int>> succ;
  std::optional<Missing> missing;  // set when exploration stopped early
  bool root_expanded = false;
};

// Breadth-first construction of the product restricted to profiles that agree
// with the strategy on `mask`. Stops at the first node where a member of the
// coalition has no table entry.
Product build_product(const Model& m, int s, const MemoryMode& mode, AgentMask mask, const Lookup& lookup,
                      std::size_t node_limit = 0) {
  Product p;
  std::map<Memory, int> index;
  p.nodes.push_back(initial_memory(s));
  index[p.nodes[0]] = 0;
  const std::size_t na = m.num_agents();
  for (std::size_t cur = 0; cur < p.nodes.size(); ++cur) {
    Memory mem = p.nodes[cur];
    int st = mem.back();
    std::vector<int> fixed(na, -1);
    for (std::size_t a = 0; a < na; ++a) {
      if (!(mask >> a & 1u)) continue;
      auto act = lookup(static_cast<int>(a), mem);
      if (!act) {
        p.missing = Missing{static_cast<int>(a), mem};
        p.succ.resize(p.nodes.size());
        return p;
      }
      fixed[a] = *act;
    }
    std::vector<int> succ;
    for (std::size_t i = 0; i < m.num_profiles(st); ++i) {
      auto prof = m.decode(st, i);
      bool agrees = true;
      for (std::size_t a = 0; a < na && agrees; ++a) agrees = fixed[a] < 0 || prof[a] == fixed[a];
      if (!agrees) continue;
      Memory nm = extend_memory(mode, mem, i, m.outcome(st, i));
      auto [it, fresh] = index.emplace(nm, static_cast<int>(p.nodes.size()));
      if (fresh) p.nodes.push_back(nm);
      succ.push_back(it->second);
    }
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    p.succ.push_back(std::move(succ));
    if (cur == 0) p.root_expanded = true;
    if (node_limit && p.nodes.size() > node_limit) throw LimitError("product exceeds node limit");
  }
  return p;
}

// Checks that can be decided on a partial product: nodes reached so far stay
// reachable whatever the missing entries turn out to be.
bool partial_ok(const Product& p, const CoalGoal& g) {
  for (const auto& c : g.conjuncts) {
    if (c.op == PathOp::Globally) {
      for (const auto& n : p.nodes)
        if (!c.a[n.back()]) return false;
    } else if (c.op == PathOp::Next && p.root_expanded) {
      for (int t : p.succ[0])
        if (!c.a[p.nodes[t].back()]) return false;
    } else if (c.op == PathOp::Until) {
      if (!c.b[p.nodes[0].back()] && !c.a[p.nodes[0].back()]) return false;
    }
  }
  return true;
}

bool full_ok(const Product& p, const CoalGoal& g) {
  for (const auto& c : g.conjuncts) {
    switch (c.op) {
      case PathOp::Next:
        for (int t : p.succ[0])
          if (!c.a[p.nodes[t].back()]) return false;
        break;
      case PathOp::Globally:
        for (const auto& n : p.nodes)
          if (!c.a[n.back()]) return false;
        break;
      case PathOp::Until: {
        std::vector<char> in(p.nodes.size(), 0);
        for (std::size_t i = 0; i < p.nodes.size(); ++i) in[i] = c.b[p.nodes[i].back()];
        bool grew = true;
        while (grew) {
          grew = false;
          for (std::size_t i = 0; i < p.nodes.size(); ++i) {
            if (in[i] || !c.a[p.nodes[i].back()]) continue;
            bool all = true;
            for (int t : p.succ[i]) all = all && in[t];
            if (all) {
              in[i] = 1;
              grew = true;
            }
          }
        }
        if (!in[0]) return false;
        break;
      }
      case PathOp::And: break;
    }
  }
  return true;
}

Lookup table_lookup(const FiniteStrategyProfile& sigma) {
  return [&sigma](int a, const Memory& mem) { return sigma.action(a, mem); };
}

class Search {
 public:
  Search(const Model& m, int s, const MemoryMode& mode, std::vector<CoalGoal> goals, std::size_t limit)
      : m_(m), s_(s), goals_(std::move(goals)), sigma_(empty_profile(m, mode)), limit_(limit) {}

  enum class Status { Fail, Decide, Complete };

  Status explore(Missing& decision) {
    bool have_decision = false;
    auto lookup = table_lookup(sigma_);
    for (const auto& g : goals_) {
      Product p = build_product(m_, s_, sigma_.mode, g.mask, lookup);
      if (!partial_ok(p, g)) return Status::Fail;
      if (p.missing) {
        if (!have_decision) {
          decision = *p.missing;
          have_decision = true;
        }
        continue;
      }
      if (!full_ok(p, g)) return Status::Fail;
    }
    return have_decision ? Status::Decide : Status::Complete;
  }

  bool dfs() {
    if (++nodes_ > limit_) throw LimitError("witness search exceeded " + std::to_string(limit_) + " nodes");
    Missing d;
    switch (explore(d)) {
      case Status::Fail: return false;
      case Status::Complete: return true;
      case Status::Decide: break;
    }
    auto& table = sigma_.tables[d.agent];
    int options = static_cast<int>(m_.actions(d.memory.back(), d.agent).size());
    for (int act = 0; act < options; ++act) {
      table[d.memory] = act;
      if (dfs()) return true;
    }
    table.erase(d.memory);
    return false;
  }

  void assign(const Missing& d, int act) { sigma_.tables[d.agent][d.memory] = act; }
  const FiniteStrategyProfile& sigma() const { return sigma_; }
  std::size_t nodes() const { return nodes_; }

 private:
  const Model& m_;
  int s_;
  std::vector<CoalGoal> goals_;
  FiniteStrategyProfile sigma_;
  std::size_t limit_;
  std::size_t nodes_ = 0;
};

// Every decision node of the unrestricted product carries its full history.
bool search_is_exact(const Model& m, int s, const MemoryMode& mode, double& candidates) {
  candidates = 1;
  std::map<std::pair<Memory, bool>, int> seen;
  std::deque<std::pair<Memory, bool>> queue;
  queue.push_back({initial_memory(s), true});
  seen[queue.front()] = 0;
  std::set<Memory> memories;
  bool exact = true;
  while (!queue.empty()) {
    auto [mem, complete] = queue.front();
    queue.pop_front();
    int st = mem.back();
    bool decision = false;
    for (std::size_t a = 0; a < m.num_agents(); ++a) decision = decision || m.actions(st, a).size() > 1;
    if (memories.insert(mem).second)
      for (std::size_t a = 0; a < m.num_agents(); ++a) candidates *= static_cast<double>(m.actions(st, a).size());
    if (decision && !complete) exact = false;
    for (std::size_t i = 0; i < m.num_profiles(st); ++i) {
      Memory nm = extend_memory(mode, mem, i, m.outcome(st, i));
      std::size_t grown = mode.kind == MemoryMode::Kind::PlaySuffix ? mem.size() + 2 : mem.size() + 1;
      bool nc = complete && nm.size() == grown && mode.kind != MemoryMode::Kind::Positional;
      std::pair<Memory, bool> key{nm, nc};
      if (seen.emplace(key, 0).second) queue.push_back(key);
    }
    if (seen.size() > 200000) return false;
  }
  if (mode.kind == MemoryMode::Kind::Positional) return true;
  return exact;
}

}  // namespace

bool verify_witness(const Model& m, int s, const FiniteStrategyProfile& sigma, const GoalAssignment& g) {
  auto goals = prepare(m, g);
  auto lookup = table_lookup(sigma);
  for (const auto& cg : goals) {
    Product p = build_product(m, s, sigma.mode, cg.mask, lookup);
    if (p.missing)
      throw Error("strategy table of agent '" + m.agents()[p.missing->agent] + "' has no entry for " +
                  memory_string(m, sigma.mode, p.missing->memory));
    if (!full_ok(p, cg)) return false;
  }
  return true;
}

WitnessSearch find_witness(const Model& m, int s, const GoalAssignment& g, const MemoryMode& mode,
                           const SearchOptions& opts) {
  WitnessSearch result;
  result.exact = search_is_exact(m, s, mode, result.candidate_tables);
  auto goals = prepare(m, g);
  Search root(m, s, mode, goals, opts.limit);
  Missing first;
  auto status = root.explore(first);
  result.nodes = 1;
  if (status == Search::Status::Fail) return result;
  if (status == Search::Status::Complete) {
    result.witness = root.sigma();
    return result;
  }
  const int options = static_cast<int>(m.actions(first.memory.back(), first.agent).size());
  std::vector<std::optional<FiniteStrategyProfile>> found(options);
  std::vector<std::size_t> visited(options, 0);
  std::vector<std::exception_ptr> errors(options);
  auto run = [&](int act) {
    try {
      Search branch(m, s, mode, goals, opts.limit);
      branch.assign(first, act);
      if (branch.dfs()) found[act] = branch.sigma();
      visited[act] = branch.nodes();
    } catch (...) {
      errors[act] = std::current_exception();
    }
  };
  if (opts.jobs > 1) {
#pragma omp parallel for num_threads(opts.jobs) schedule(dynamic, 1)
    for (int act = 0; act < options; ++act) run(act);
  } else {
    for (int act = 0; act < options; ++act) {
      run(act);
      if (found[act] || errors[act]) break;
    }
  }
  for (int act = 0; act < options; ++act) {
    result.nodes += visited[act];
    if (errors[act]) std::rethrow_exception(errors[act]);
    if (found[act]) {
      result.witness = found[act];
      return result;
    }
  }
  return result;
}

FiniteStrategyProfile lift_profile(const Model& m, int s, const FiniteStrategyProfile& sigma,
                                   const MemoryMode& target) {
  auto project = [&](const Memory& mem) {
    std::vector<int> states;
    std::vector<int> profiles;
    if (target.kind == MemoryMode::Kind::PlaySuffix) {
      for (std::size_t i = 0; i < mem.size(); ++i) (i % 2 == 0 ? states : profiles).push_back(mem[i]);
    } else {
      states = mem;
    }
    const auto& src = sigma.mode;
    int keep = src.kind == MemoryMode::Kind::Positional ? 1 : src.k;
    if (src.kind == MemoryMode::Kind::PlaySuffix && target.kind != MemoryMode::Kind::PlaySuffix)
      throw InputError("cannot lift a play-suffix profile to a path-based mode");
    int first = std::max(0, static_cast<int>(states.size()) - keep);
    Memory out;
    for (int i = first; i < static_cast<int>(states.size()); ++i) {
      if (src.kind == MemoryMode::Kind::PlaySuffix && i > first) out.push_back(profiles[i - 1]);
      out.push_back(states[i]);
    }
    return out;
  };
  FiniteStrategyProfile out = empty_profile(m, target);
  std::set<Memory> seen{initial_memory(s)};
  std::deque<Memory> queue{initial_memory(s)};
  while (!queue.empty()) {
    Memory mem = queue.front();
    queue.pop_front();
    Memory src = project(mem);
    for (std::size_t a = 0; a < m.num_agents(); ++a)
      if (auto act = sigma.action(static_cast<int>(a), src)) out.tables[a][mem] = *act;
    int st = mem.back();
    for (std::size_t i = 0; i < m.num_profiles(st); ++i) {
      Memory nm = extend_memory(target, mem, i, m.outcome(st, i));
      if (seen.insert(nm).second) queue.push_back(nm);
    }
  }
  return out;
}

Lasso play_lasso(const Model& m, int s, const FiniteStrategyProfile& sigma) {
  std::map<Memory, std::size_t> position;
  std::vector<LassoStep> steps;
  Memory mem = initial_memory(s);
  while (!position.count(mem)) {
    position[mem] = steps.size();
    int st = mem.back();
    Profile prof(m.num_agents());
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      auto act = sigma.action(static_cast<int>(a), mem);
      if (!act)
        throw Error("strategy table of agent '" + m.agents()[a] + "' has no entry for " +
                    memory_string(m, sigma.mode, mem));
      prof[a] = *act;
    }
    std::size_t idx = m.encode(st, prof);
    steps.push_back({st, idx});
    mem = extend_memory(sigma.mode, mem, idx, m.outcome(st, idx));
  }
  std::size_t j = position[mem];
  Lasso l;
  l.prefix.assign(steps.begin(), steps.begin() + j);
  l.cycle.assign(steps.begin() + j, steps.end());
  return l;
}

bool eval_on_lasso(const Model& m, const Lasso& lasso, const Path& theta) {
  std::vector<int> states;
  for (const auto& st : lasso.prefix) states.push_back(st.state);
  for (const auto& st : lasso.cycle) states.push_back(st.state);
  auto at = [&](std::size_t i) {
    if (i < lasso.prefix.size()) return lasso.prefix[i].state;
    return lasso.cycle[(i - lasso.prefix.size()) % lasso.cycle.size()].state;
  };
  for (const auto& q : path_conjuncts(theta)) {
    auto a = extension(m, q->left);
    switch (q->op) {
      case PathOp::Next:
        if (!a[at(1)]) return false;
        break;
      case PathOp::Globally:
        for (int st : states)
          if (!a[st]) return false;
        break;
      case PathOp::Until: {
        auto b = extension(m, q->right);
        bool ok = false;
        for (int st : states) {
          if (b[st]) {
            ok = true;
            break;
          }
          if (!a[st]) break;
        }
        if (!ok) return false;
        break;
      }
      case PathOp::And: break;
    }
  }
  return true;
}

std::string lasso_string(const Model& m, const Lasso& lasso) {
  std::string out;
  for (const auto& st : lasso.prefix) out += m.state_name(st.state) + " ";
  out += "(";
  for (std::size_t i = 0; i < lasso.cycle.size(); ++i) {
    if (i) out += " ";
    out += m.state_name(lasso.cycle[i].state);
  }
  return out + ")^w";
}

Extension atl_check(const Model& m, const Coalition& c, const Path& theta) {
  if (theta->op == PathOp::And) throw InputError("atl_check: path conjunctions are not ATL");
  const AgentMask mask = m.mask_of(c);
  auto force = [&](const Extension& z) { return one_step(m, {StepGoal{mask, z}}); };
  auto a = extension(m, theta->left);
  switch (theta->op) {
    case PathOp::Next: return force(a);
    case PathOp::Until: {
      auto b = extension(m, theta->right);
      Extension z = empty_extension(m);
      while (true) {
        Extension nz = b | (a & force(z));
        if (nz == z) return z;
        z = nz;
      }
    }
    case PathOp::Globally: {
      Extension z = full_extension(m);
      while (true) {
        Extension nz = a & force(z);
        if (nz == z) return z;
        z = nz;
      }
    }
    case PathOp::And: break;
  }
  return empty_extension(m);
}

std::string profile_table(const Model& m, const FiniteStrategyProfile& sigma) {
  std::set<Memory> memories;
  for (const auto& t : sigma.tables)
    for (const auto& [mem, act] : t) memories.insert(mem);
  std::string out;
  for (const auto& mem : memories) {
    out += memory_string(m, sigma.mode, mem) + " ->";
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      auto act = sigma.action(static_cast<int>(a), mem);
      out += " " + m.agents()[a] + "=" + (act ? m.actions(mem.back(), a)[*act] : std::string("*"));
    }
    out += "\n";
  }
  return out;
}

}  // namespace tlcga
