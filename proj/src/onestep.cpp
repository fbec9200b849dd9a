#include "tlcga/onestep.hpp"

#include <algorithm>
#include <set>

namespace tlcga {

std::uint32_t OneStepSequent::mask_of(const Coalition& c) const {
  std::uint32_t m = 0;
  for (const auto& a : c) {
    auto it = std::lower_bound(agents.begin(), agents.end(), a);
    if (it == agents.end() || *it != a) throw InputError("unknown agent '" + a + "'");
    m |= std::uint32_t{1} << (it - agents.begin());
  }
  return m;
}

VarSet OneStepSequent::var_set(const std::vector<std::string>& names) const {
  VarSet s = 0;
  for (const auto& n : names) {
    auto it = std::lower_bound(vars.begin(), vars.end(), n);
    if (it == vars.end() || *it != n) throw InputError("unknown variable '" + n + "'");
    s |= VarSet{1} << (it - vars.begin());
  }
  return s;
}

std::string OneStepSequent::var_set_string(VarSet s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (s >> i & 1u) {
      if (!first) out += ",";
      out += vars[i];
      first = false;
    }
  return out + "}";
}

std::string OneStepSequent::coalition_string(std::uint32_t mask) const {
  Coalition c;
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (mask >> i & 1u) c.push_back(agents[i]);
  return to_string(c);
}

namespace {

int var_index(const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::lower_bound(vars.begin(), vars.end(), name);
  if (it == vars.end() || *it != name) throw InputError("unknown variable '" + name + "'");
  return static_cast<int>(it - vars.begin());
}

VarAssignment read_assignment(const OneStepSequent& s, const GoalAssignment& g, bool negative,
                              const Formula& atom) {
  VarAssignment out;
  for (const auto& [c, p] : g.entries()) {
    Formula body = p->op == PathOp::Next ? p->left : nullptr;
    if (body && negative) body = body->op == Op::Not ? body->left : nullptr;
    if (!body || body->op != Op::Prop)
      throw InputError("not a one-step atom: " + to_string(atom));
    out[s.mask_of(c)] = var_index(s.vars, body->name);
  }
  return out;
}

bool is_subset_mask(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

}  // namespace

OneStepSequent make_sequent(const Coalition& agents, const std::vector<std::string>& vars,
                            const std::vector<Formula>& atoms) {
  OneStepSequent s;
  s.agents = make_coalition(agents);
  if (s.agents.empty()) throw InputError("one-step sequents need at least one agent");
  if (s.agents.size() > 16) throw LimitError("one-step sequents support at most 16 agents");
  s.vars = vars;
  std::sort(s.vars.begin(), s.vars.end());
  s.vars.erase(std::unique(s.vars.begin(), s.vars.end()), s.vars.end());
  if (s.vars.size() > 32) throw LimitError("one-step sequents support at most 32 variables");
  for (const auto& a : atoms) {
    if (a->op == Op::Brak)
      s.positives.push_back(read_assignment(s, a->goals, false, a));
    else if (a->op == Op::Not && a->left->op == Op::Brak)
      s.negatives.push_back(read_assignment(s, a->left->goals, true, a));
    else
      throw InputError("not a one-step atom: " + to_string(a));
  }
  return s;
}

Formula sequent_formula(const OneStepSequent& s) {
  auto rebuild = [&](const VarAssignment& va, bool negative) {
    GoalAssignment g;
    for (const auto& [mask, v] : va) {
      Coalition c;
      for (std::size_t i = 0; i < s.agents.size(); ++i)
        if (mask >> i & 1u) c.push_back(s.agents[i]);
      Formula body = prop(s.vars[v]);
      g = g.updated(c, next(negative ? neg(body) : body));
    }
    return negative ? neg(brak(g)) : brak(g);
  };
  std::vector<Formula> parts;
  for (const auto& p : s.positives) parts.push_back(rebuild(p, false));
  for (const auto& n : s.negatives) parts.push_back(rebuild(n, true));
  return conjunction(parts);
}

SatConstraint make_constraint(const OneStepSequent& s, const std::vector<std::vector<std::string>>& family) {
  SatConstraint c;
  for (const auto& z : family) c.push_back(s.var_set(z));
  return c;
}

std::string constraint_string(const OneStepSequent& s, const SatConstraint& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += s.var_set_string(c[i]);
  }
  return out + "}";
}

std::string redistribution_string(const OneStepSequent& s, const Redistribution& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    if (i) out += ", ";
    out += s.coalition_string(r.pairs[i].first) + " behind positive #" + std::to_string(r.pairs[i].second + 1);
  }
  return out + ")";
}

std::vector<Redistribution> redistributions(const OneStepSequent& s) {
  const std::uint32_t masks = s.all_agents() + 1;
  const int np = static_cast<int>(s.positives.size());
  std::vector<Redistribution> out;
  Redistribution cur;
  // used: union of the non-empty coalitions chosen so far
  auto rec = [&](auto&& self, std::uint32_t mask, std::uint32_t used) -> void {
    if (mask == masks) {
      out.push_back(cur);
      return;
    }
    self(self, mask + 1, used);
    if (mask & used) return;
    for (int i = 0; i < np; ++i) {
      cur.pairs.emplace_back(mask, i);
      self(self, mask + 1, used | mask);
      cur.pairs.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

VarSet forced(const OneStepSequent& s, const Redistribution& r) {
  VarSet f = 0;
  for (const auto& [c, i] : r.pairs)
    for (const auto& [b, v] : s.positives[i])
      if (is_subset_mask(b, c)) f |= VarSet{1} << v;
  return f;
}

VarSet forced_against(const OneStepSequent& s, const Redistribution& r, int negative, std::uint32_t c) {
  const auto& g = s.negatives.at(negative);
  auto it = g.find(c);
  if (it == g.end())
    throw InputError("coalition " + s.coalition_string(c) + " is not in the support of negative #" +
                     std::to_string(negative + 1));
  VarSet f = VarSet{1} << it->second;
  for (const auto& [ci, i] : r.pairs)
    for (const auto& [b, v] : s.positives[i])
      if (is_subset_mask(b, ci & c)) f |= VarSet{1} << v;
  return f;
}

namespace {

struct Failure {
  bool failed = false;
  std::optional<int> negative;  // unset: condition on F(R)
  VarSet need = 0;              // variables the outcome had to contain
};

bool some_superset(const SatConstraint& c, VarSet f) {
  for (VarSet z : c)
    if (is_subset_mask(f, z)) return true;
  return false;
}

bool in_every(const SatConstraint& c, int v) {
  for (VarSet z : c)
    if (!(z >> v & 1u)) return false;
  return true;
}

// Condition on one redistribution as stated: a negative is blocked by a
// coalition C' != Agt whose forced set fits some member, or by Agt when its
// variable lies in every member.
Failure check_literal(const OneStepSequent& s, const SatConstraint& c, const Redistribution& r) {
  if (!some_superset(c, forced(s, r))) return {true, std::nullopt};
  for (std::size_t j = 0; j < s.negatives.size(); ++j) {
    bool blocked = false;
    for (const auto& [cp, q] : s.negatives[j]) {
      if (cp == s.all_agents())
        blocked = in_every(c, q);
      else
        blocked = some_superset(c, forced_against(s, r, static_cast<int>(j), cp));
      if (blocked) break;
    }
    if (!blocked) return {true, static_cast<int>(j)};
  }
  return {false, std::nullopt};
}

std::size_t formed(const Redistribution& r) {
  std::size_t n = 0;
  for (const auto& pr : r.pairs) n += pr.first != 0;
  return n;
}

// Exact condition. A profile realizing r has an outcome containing F(r) and
// the grand-coalition variable of every negative that no smaller coalition
// can block, so some member must contain all of them. A redistribution
// without formed coalitions is realized by every profile, including one
// inside each member, so then every member must contain them.
Failure check_exact(const OneStepSequent& s, const SatConstraint& c, const Redistribution& r) {
  VarSet need = forced(s, r);
  const bool everywhere = formed(r) == 0;
  auto fits = [&](VarSet v) {
    if (!everywhere) return some_superset(c, v);
    if (c.empty()) return false;
    for (VarSet z : c)
      if (!is_subset_mask(v, z)) return false;
    return true;
  };
  if (!fits(need)) return {true, std::nullopt, need};
  for (std::size_t j = 0; j < s.negatives.size(); ++j) {
    bool blocked = false;
    std::optional<int> grand;
    for (const auto& [cp, q] : s.negatives[j]) {
      if (cp == s.all_agents())
        grand = q;
      else
        blocked = blocked || some_superset(c, forced_against(s, r, static_cast<int>(j), cp));
    }
    if (blocked) continue;
    if (!grand) return {true, static_cast<int>(j), need};
    need |= VarSet{1} << *grand;
    if (!fits(need)) return {true, static_cast<int>(j), need};
  }
  return {false, std::nullopt};
}

std::string explain(const OneStepSequent& s, const SatConstraint& c, const Redistribution& r, const Failure& f,
                    bool literal) {
  if (!literal && c.empty()) return "the constraint is empty, so no outcome is allowed";
  std::string out = "under redistribution " + redistribution_string(s, r) + ": ";
  const bool everywhere = !literal && formed(r) == 0;
  const std::string where = everywhere ? " is missing from some member of " : " lies in no member of ";
  if (!f.negative) return out + "F(R) = " + s.var_set_string(forced(s, r)) + where + constraint_string(s, c);
  out += "negative #" + std::to_string(*f.negative + 1) + " cannot be blocked;";
  for (const auto& [cp, q] : s.negatives[*f.negative]) {
    if (cp != s.all_agents())
      out += " F(R," + s.coalition_string(cp) + ") = " +
             s.var_set_string(forced_against(s, r, *f.negative, cp)) + " lies in no member;";
    else if (literal)
      out += " for " + s.coalition_string(cp) + " not every member contains " + s.vars[q] + ";";
    else
      out += " for " + s.coalition_string(cp) + " the outcome needs " +
             s.var_set_string(f.need | VarSet{1} << q) + ", which" + where.substr(3) + "members;";
  }
  out.pop_back();
  return out;
}

}  // namespace

SatResult sequent_satisfiable(const OneStepSequent& s, const SatConstraint& c, const SatOptions& opts) {
  SatResult res;
  auto all = redistributions(s);
  res.redistributions = all.size();
  auto check = opts.literal ? check_literal : check_exact;
  std::vector<Failure> failures(all.size());
  const long total = static_cast<long>(all.size());
  if (opts.jobs > 1) {
#pragma omp parallel for num_threads(opts.jobs) schedule(dynamic, 16)
    for (long i = 0; i < total; ++i) failures[i] = check(s, c, all[i]);
  } else {
    for (long i = 0; i < total; ++i) failures[i] = check(s, c, all[i]);
  }
  // Report the failing redistribution with the most formed coalitions, the
  // first one in enumeration order among those.
  long best = -1;
  for (long i = 0; i < total; ++i)
    if (failures[i].failed && (best < 0 || formed(all[i]) > formed(all[best]))) best = i;
  if (best < 0) {
    res.satisfiable = true;
    return res;
  }
  res.redistribution = all[best];
  res.negative = failures[best].negative;
  res.explanation = explain(s, c, all[best], failures[best], opts.literal);
  return res;
}

std::vector<std::vector<Formula>> one_step_dnf(const Formula& f) {
  switch (f->op) {
    case Op::True: return {{}};
    case Op::False: return {};
    case Op::Brak: return {{f}};
    case Op::Not:
      if (f->left->op == Op::Brak) return {{f}};
      break;
    case Op::Or: {
      auto a = one_step_dnf(f->left);
      auto b = one_step_dnf(f->right);
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case Op::And: {
      auto a = one_step_dnf(f->left);
      auto b = one_step_dnf(f->right);
      std::vector<std::vector<Formula>> out;
      for (const auto& x : a)
        for (const auto& y : b) {
          auto z = x;
          z.insert(z.end(), y.begin(), y.end());
          out.push_back(std::move(z));
        }
      return out;
    }
    default: break;
  }
  throw InputError("not a positive one-step formula: " + to_string(f));
}

bool formula_satisfiable(const Formula& f, const Coalition& agents, const std::vector<std::string>& vars,
                         const SatConstraint& c, const SatOptions& opts) {
  for (const auto& branch : one_step_dnf(f))
    if (sequent_satisfiable(make_sequent(agents, vars, branch), c, opts).satisfiable) return true;
  return false;
}

std::size_t GameForm::num_profiles() const {
  std::size_t n = 1;
  for (const auto& a : actions) n *= a.size();
  return n;
}

std::vector<int> GameForm::decode(std::size_t profile) const {
  std::vector<int> out(actions.size());
  for (std::size_t a = actions.size(); a-- > 0;) {
    out[a] = static_cast<int>(profile % actions[a].size());
    profile /= actions[a].size();
  }
  return out;
}

namespace {

// Per profile, the AND and OR of the outcomes over the profiles that agree
// with it on the coalition.
struct BlockSummary {
  std::vector<VarSet> all;
  std::vector<VarSet> any;
};

BlockSummary summarize(const GameForm& g, std::uint32_t mask) {
  const std::size_t np = g.num_profiles();
  const std::size_t na = g.actions.size();
  std::vector<std::size_t> weight(na, 1);
  for (std::size_t a = na; a-- > 1;) weight[a - 1] = weight[a] * g.actions[a].size();
  std::vector<std::size_t> key(np);
  std::vector<VarSet> all_by_key(np, ~VarSet{0});
  std::vector<VarSet> any_by_key(np, 0);
  for (std::size_t i = 0; i < np; ++i) {
    std::size_t k = i;
    std::size_t rest = i;
    for (std::size_t a = 0; a < na; ++a) {
      std::size_t digit = rest / weight[a];
      rest %= weight[a];
      if (!(mask >> a & 1u)) k -= digit * weight[a];
    }
    key[i] = k;
    all_by_key[k] &= g.outcome[i];
    any_by_key[k] |= g.outcome[i];
  }
  BlockSummary b{std::vector<VarSet>(np), std::vector<VarSet>(np)};
  for (std::size_t i = 0; i < np; ++i) {
    b.all[i] = all_by_key[key[i]];
    b.any[i] = any_by_key[key[i]];
  }
  return b;
}

}  // namespace

std::vector<std::string> validate_game_form(const GameForm& g, const OneStepSequent& s, const SatConstraint& c) {
  std::vector<std::string> errors;
  if (g.agents != s.agents) return {"game form agents differ from the sequent's"};
  for (const auto& acts : g.actions)
    if (acts.empty()) return {"empty action set"};
  const std::size_t np = g.num_profiles();
  if (g.outcome.size() != np) return {"outcome table size mismatch"};
  std::map<std::uint32_t, BlockSummary> cache;
  auto summary = [&](std::uint32_t mask) -> const BlockSummary& {
    auto it = cache.find(mask);
    if (it == cache.end()) it = cache.emplace(mask, summarize(g, mask)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < s.positives.size(); ++i) {
    bool witnessed = false;
    for (std::size_t z = 0; z < np && !witnessed; ++z) {
      bool ok = true;
      for (const auto& [mask, v] : s.positives[i]) ok = ok && (summary(mask).all[z] >> v & 1u);
      witnessed = ok;
    }
    if (!witnessed) errors.push_back("positive #" + std::to_string(i + 1) + " has no witnessing profile");
  }
  for (std::size_t j = 0; j < s.negatives.size(); ++j) {
    for (std::size_t z = 0; z < np; ++z) {
      bool blocked = false;
      for (const auto& [mask, q] : s.negatives[j]) blocked = blocked || (summary(mask).any[z] >> q & 1u);
      if (!blocked) {
        errors.push_back("negative #" + std::to_string(j + 1) + " is enforced by profile " + std::to_string(z));
        break;
      }
    }
  }
  for (std::size_t z = 0; z < np; ++z)
    if (!some_superset(c, g.outcome[z])) {
      errors.push_back("outcome " + s.var_set_string(g.outcome[z]) + " of profile " + std::to_string(z) +
                       " lies in no member of the constraint");
      break;
    }
  for (VarSet member : c) {
    bool reached = false;
    for (std::size_t z = 0; z < np && !reached; ++z) reached = is_subset_mask(g.outcome[z], member);
    if (!reached) errors.push_back("no outcome inside member " + s.var_set_string(member));
  }
  return errors;
}

GameForm witness_game_form(const OneStepSequent& s, const SatConstraint& c, std::size_t max_profiles) {
  auto sat = sequent_satisfiable(s, c);
  if (!sat.satisfiable) throw InputError("sequent is not satisfiable: " + sat.explanation);
  const int n = static_cast<int>(s.agents.size());
  const int np = static_cast<int>(s.positives.size());

  // Redistributions that can arise from a profile: non-empty coalitions
  // formed behind distinct positives.
  std::vector<Redistribution> reds;
  for (auto& r : redistributions(s)) {
    std::set<int> used;
    bool ok = true;
    for (const auto& [mask, i] : r.pairs) ok = ok && mask != 0 && used.insert(i).second;
    if (ok) reds.push_back(r);
  }
  auto key = [](const Redistribution& r) { return r.pairs; };
  std::map<std::vector<std::pair<std::uint32_t, int>>, int> default_choice;
  for (const auto& r : reds) {
    VarSet f = forced(s, r);
    for (std::size_t z = 0; z < c.size(); ++z)
      if (is_subset_mask(f, c[z])) {
        default_choice[key(r)] = static_cast<int>(z);
        break;
      }
  }
  // Function family: the default choice, plus one override per redistribution
  // and admissible member.
  struct Override {
    std::vector<std::pair<std::uint32_t, int>> red;
    int member;
  };
  std::vector<std::optional<Override>> family{std::nullopt};
  for (const auto& r : reds) {
    VarSet f = forced(s, r);
    for (std::size_t z = 0; z < c.size(); ++z)
      if (is_subset_mask(f, c[z]) && default_choice[key(r)] != static_cast<int>(z))
        family.push_back(Override{key(r), static_cast<int>(z)});
  }

  GameForm g;
  g.agents = s.agents;
  struct Triple {
    int goal;  // np stands for *
    int f;
    int k;
  };
  std::vector<Triple> triples;
  std::vector<std::string> names;
  for (int goal = 0; goal <= np; ++goal)
    for (int f = 0; f < static_cast<int>(family.size()); ++f)
      for (int k = 0; k < n; ++k) {
        triples.push_back({goal, f, k});
        names.push_back("(" + (goal == np ? std::string("*") : "g" + std::to_string(goal + 1)) + ",f" +
                        std::to_string(f) + "," + std::to_string(k) + ")");
      }
  double count = 1;
  for (int a = 0; a < n; ++a) count *= static_cast<double>(triples.size());
  if (count > static_cast<double>(max_profiles))
    throw LimitError("witness game form would have " + std::to_string(static_cast<long long>(count)) +
                     " profiles");
  g.actions.assign(n, names);
  const std::size_t total = g.num_profiles();
  g.outcome.resize(total);
  for (std::size_t z = 0; z < total; ++z) {
    auto prof = g.decode(z);
    std::vector<std::uint32_t> behind(np, 0);
    int bet = 0;
    for (int a = 0; a < n; ++a) {
      const auto& t = triples[prof[a]];
      if (t.goal < np) behind[t.goal] |= std::uint32_t{1} << a;
      bet += t.k;
    }
    Redistribution red;
    for (int i = 0; i < np; ++i)
      if (behind[i]) red.pairs.emplace_back(behind[i], i);
    std::sort(red.pairs.begin(), red.pairs.end());
    const auto& chosen = family[triples[prof[bet % n]].f];
    int member = chosen && chosen->red == key(red) ? chosen->member : default_choice.at(key(red));
    g.outcome[z] = c[member];
  }
  return g;
}

}  // namespace tlcga
