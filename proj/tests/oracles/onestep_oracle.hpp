#pragma once

// Exhaustive game-form search for one-step sequents, written against the
// satisfaction clauses directly and sharing no code with the library.
//
// Two reductions keep the search finite and small:
//  * every outcome can be replaced by the intersection of the constraint
//    members containing it; this keeps outcomes inside members, keeps every
//    member reachable, and only adds variables, which cannot break a positive
//    atom or unblock a negative one;
//  * the first agent's actions can be taken in non-decreasing order of their
//    outcome rows, since permuting actions changes nothing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace onestep_oracle {

struct Goal {
  std::uint32_t coalition;  // bit 0 = first agent, bit 1 = second
  int var;
};

struct Atom {
  bool positive;  // <<C -> X p ...>> when true, !<<C -> X !p ...>> otherwise
  std::vector<Goal> goals;
};

using Outcome = std::uint32_t;  // bit i = variable i

struct Form {
  int agents;
  int n0;
  int n1;
  std::vector<Outcome> out;  // index a0 * n1 + a1
};

inline bool agrees(std::uint32_t coalition, int x0, int x1, int y0, int y1) {
  if ((coalition & 1u) && x0 != y0) return false;
  if ((coalition & 2u) && x1 != y1) return false;
  return true;
}

inline bool satisfies(const Form& g, const Atom& atom) {
  auto outcome = [&](int a0, int a1) { return g.out[a0 * g.n1 + a1]; };
  if (atom.positive) {
    for (int x0 = 0; x0 < g.n0; ++x0)
      for (int x1 = 0; x1 < g.n1; ++x1) {
        bool all = true;
        for (const auto& goal : atom.goals)
          for (int y0 = 0; y0 < g.n0 && all; ++y0)
            for (int y1 = 0; y1 < g.n1 && all; ++y1)
              if (agrees(goal.coalition, x0, x1, y0, y1) && !(outcome(y0, y1) >> goal.var & 1u)) all = false;
        if (all) return true;
      }
    return false;
  }
  for (int x0 = 0; x0 < g.n0; ++x0)
    for (int x1 = 0; x1 < g.n1; ++x1) {
      bool blocked = false;
      for (const auto& goal : atom.goals)
        for (int y0 = 0; y0 < g.n0 && !blocked; ++y0)
          for (int y1 = 0; y1 < g.n1 && !blocked; ++y1)
            if (agrees(goal.coalition, x0, x1, y0, y1) && (outcome(y0, y1) >> goal.var & 1u)) blocked = true;
      if (!blocked) return false;
    }
  return true;
}

inline bool admissible(const Form& g, const std::vector<Outcome>& family) {
  for (Outcome o : g.out)
    if (std::none_of(family.begin(), family.end(), [&](Outcome z) { return (o & ~z) == 0; })) return false;
  for (Outcome z : family)
    if (std::none_of(g.out.begin(), g.out.end(), [&](Outcome o) { return (o & ~z) == 0; })) return false;
  return true;
}

// Intersections of non-empty subfamilies.
inline std::vector<Outcome> outcome_values(const std::vector<Outcome>& family, int num_vars) {
  std::set<Outcome> vals;
  const std::size_t n = family.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Outcome o = (Outcome{1} << num_vars) - 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) o &= family[i];
    vals.insert(o);
  }
  return {vals.begin(), vals.end()};
}

// Calls visit on every admissible form with at most `budget` actions per
// agent; stops early when visit returns true.
inline bool for_each_form(int agents, const std::vector<Outcome>& family, int num_vars, int budget,
                          const std::function<bool(const Form&)>& visit) {
  auto vals = outcome_values(family, num_vars);
  if (vals.empty()) return false;
  const int v = static_cast<int>(vals.size());
  for (int n0 = 1; n0 <= budget; ++n0)
    for (int n1 = 1; n1 <= (agents == 2 ? budget : 1); ++n1) {
      // Rows are numbers in base v with n1 digits; choose them non-decreasing.
      int rows = 1;
      for (int i = 0; i < n1; ++i) rows *= v;
      std::vector<int> pick(n0, 0);
      while (true) {
        Form g{agents, n0, n1, std::vector<Outcome>(n0 * n1)};
        for (int a0 = 0; a0 < n0; ++a0) {
          int code = pick[a0];
          for (int a1 = 0; a1 < n1; ++a1) {
            g.out[a0 * n1 + a1] = vals[code % v];
            code /= v;
          }
        }
        if (admissible(g, family) && visit(g)) return true;
        int i = n0 - 1;
        while (i >= 0 && pick[i] == rows - 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n0; ++j) pick[j] = pick[i];
      }
    }
  return false;
}

inline bool satisfiable(int agents, const std::vector<Atom>& atoms, const std::vector<Outcome>& family, int num_vars,
                        int budget) {
  return for_each_form(agents, family, num_vars, budget, [&](const Form& g) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return satisfies(g, a); });
  });
}

// Text in the standard grammar, over agents a, b and variables p, q, r.
inline std::string atom_text(const Atom& atom) {
  static const char* vars[] = {"p", "q", "r"};
  std::string out = atom.positive ? "<<" : "!<<";
  for (std::size_t i = 0; i < atom.goals.size(); ++i) {
    const auto& g = atom.goals[i];
    out += i ? "; {" : "{";
    if (g.coalition & 1u) out += "a";
    if (g.coalition == 3u) out += ",";
    if (g.coalition & 2u) out += "b";
    out += std::string("} -> X ") + (atom.positive ? "" : "!") + vars[g.var];
  }
  return out + ">>";
}

// Atom pool for the grid: every single-goal atom plus a few two-goal ones.
inline std::vector<Atom> atom_pool(int agents) {
  std::vector<Atom> pool;
  const std::uint32_t masks = agents == 2 ? 4 : 2;
  for (int positive = 1; positive >= 0; --positive)
    for (std::uint32_t c = 0; c < masks; ++c)
      for (int v = 0; v < 3; ++v) pool.push_back({positive == 1, {{c, v}}});
  if (agents == 1) {
    pool.push_back({true, {{0, 0}, {1, 1}}});
    pool.push_back({false, {{0, 0}, {1, 1}}});
  } else {
    pool.push_back({true, {{1, 0}, {2, 1}}});
    pool.push_back({true, {{1, 0}, {2, 0}}});
    pool.push_back({true, {{1, 0}, {3, 1}}});
    pool.push_back({true, {{0, 2}, {1, 0}}});
    pool.push_back({false, {{1, 0}, {2, 1}}});
    pool.push_back({false, {{1, 2}, {3, 0}}});
    pool.push_back({false, {{0, 1}, {2, 2}}});
  }
  return pool;
}

// Constraint families over three variables with at most two members.
inline std::vector<std::vector<Outcome>> small_families() {
  std::vector<std::vector<Outcome>> out{{}};
  for (Outcome a = 0; a < 8; ++a) {
    out.push_back({a});
    for (Outcome b = a + 1; b < 8; ++b) out.push_back({a, b});
  }
  return out;
}

// Satisfied-atom masks of every admissible form, keeping only maximal ones.
inline std::vector<std::uint64_t> satisfiable_masks(int agents, const std::vector<Atom>& pool,
                                                    const std::vector<Outcome>& family, int budget) {
  std::set<std::uint64_t> seen;
  for_each_form(agents, family, 3, budget, [&](const Form& g) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (satisfies(g, pool[i])) m |= std::uint64_t{1} << i;
    seen.insert(m);
    return false;
  });
  std::vector<std::uint64_t> maximal;
  for (auto m : seen)
    if (std::none_of(seen.begin(), seen.end(), [&](std::uint64_t o) { return o != m && (m & ~o) == 0; }))
      maximal.push_back(m);
  return maximal;
}

}  // namespace onestep_oracle
