#include "tlcga/bisim.hpp"

#include <map>

#include "tlcga/transform.hpp"

namespace tlcga {

Relation::Relation(std::size_t n) : rows_(n, Extension(n)) {}

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(static_cast<int>(i), static_cast<int>(i));
  return r;
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (const auto& row : rows_) c += row.count();
  return c;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (auto j = rows_[i].find_first(); j != Extension::npos; j = rows_[i].find_next(j))
      out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

bool Relation::is_equivalence() const {
  const std::size_t n = rows_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows_[i][i]) return false;
    for (auto j = rows_[i].find_first(); j != Extension::npos; j = rows_[i].find_next(j)) {
      if (!rows_[j][i]) return false;
      if (!rows_[j].is_subset_of(rows_[i])) return false;
    }
  }
  return true;
}

OutcomeBlocks::OutcomeBlocks(const Model& m) : m_(&m) {
  const std::size_t n = m.num_states();
  const std::size_t masks = num_masks();
  block_of_.resize(n);
  outcomes_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const int st = static_cast<int>(s);
    const std::size_t np = m.num_profiles(st);
    std::vector<Profile> profiles(np);
    for (std::size_t i = 0; i < np; ++i) profiles[i] = m.decode(st, i);
    block_of_[s].resize(masks);
    outcomes_[s].resize(masks);
    for (std::size_t c = 0; c < masks; ++c) {
      std::map<std::vector<int>, int> ids;
      auto& blocks = block_of_[s][c];
      auto& outs = outcomes_[s][c];
      blocks.resize(np);
      for (std::size_t i = 0; i < np; ++i) {
        auto key = restrict(profiles[i], static_cast<AgentMask>(c)).actions;
        auto [it, fresh] = ids.emplace(key, static_cast<int>(outs.size()));
        if (fresh) outs.emplace_back(n);
        blocks[i] = it->second;
        outs[it->second].set(m.outcome(st, i));
      }
    }
  }
}

Relation atom_equivalence(const Model& m) {
  const std::size_t n = m.num_states();
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.labels(static_cast<int>(i)) == m.labels(static_cast<int>(j)))
        r.set(static_cast<int>(i), static_cast<int>(j));
  return r;
}

namespace {

// Every state of o2 is related to some state of o1.
bool covered(const Relation& r, const Extension& o1, const Extension& o2) {
  for (auto u = o2.find_first(); u != Extension::npos; u = o2.find_next(u))
    if (!r.row(static_cast<int>(u)).intersects(o1)) return false;
  return true;
}

bool matches(const OutcomeBlocks& t, const Relation& r, int s1, std::size_t z1, int s2, std::size_t z2) {
  for (std::size_t c = 0; c < t.num_masks(); ++c) {
    auto mask = static_cast<AgentMask>(c);
    if (!covered(r, t.outcomes(s1, mask, t.block(s1, mask, z1)), t.outcomes(s2, mask, t.block(s2, mask, z2))))
      return false;
  }
  return true;
}

bool keep_pair(const OutcomeBlocks& t, const Relation& r, int a, int b) {
  return !forth_failure(t, r, a, b) && !forth_failure(t, r, b, a);
}

}  // namespace

std::optional<std::size_t> forth_failure(const OutcomeBlocks& t, const Relation& r, int s1, int s2) {
  const Model& m = t.model();
  for (std::size_t z1 = 0; z1 < m.num_profiles(s1); ++z1) {
    bool found = false;
    for (std::size_t z2 = 0; z2 < m.num_profiles(s2) && !found; ++z2) found = matches(t, r, s1, z1, s2, z2);
    if (!found) return z1;
  }
  return std::nullopt;
}

Relation refine_round_serial(const OutcomeBlocks& t, const Relation& r) {
  const int n = static_cast<int>(r.size());
  Relation out(r.size());
  for (int a = 0; a < n; ++a) {
    out.set(a, a, r.contains(a, a));
    for (int b = a + 1; b < n; ++b) {
      if (!r.contains(a, b)) continue;
      if (keep_pair(t, r, a, b)) {
        out.set(a, b);
        out.set(b, a);
      }
    }
  }
  return out;
}

Relation refine_round_parallel(const OutcomeBlocks& t, const Relation& r, int jobs) {
  const int n = static_cast<int>(r.size());
  std::vector<std::pair<int, int>> work;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (r.contains(a, b)) work.emplace_back(a, b);
  std::vector<char> keep(work.size(), 0);
  const long total = static_cast<long>(work.size());
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 8)
  for (long i = 0; i < total; ++i) keep[i] = keep_pair(t, r, work[i].first, work[i].second);
  Relation out(r.size());
  for (int a = 0; a < n; ++a) out.set(a, a, r.contains(a, a));
  for (std::size_t i = 0; i < work.size(); ++i)
    if (keep[i]) {
      out.set(work[i].first, work[i].second);
      out.set(work[i].second, work[i].first);
    }
  return out;
}

BisimResult greatest_bisimulation(const Model& m, const BisimOptions& opts) {
  require_valid(m);
  OutcomeBlocks t(m);
  BisimResult res{atom_equivalence(m), 0};
  while (true) {
    Relation next = opts.jobs > 1 ? refine_round_parallel(t, res.relation, opts.jobs)
                                  : refine_round_serial(t, res.relation);
    ++res.rounds;
    if (next == res.relation) return res;
    res.relation = std::move(next);
  }
}

bool is_bisimulation(const Model& m, const Relation& r) {
  OutcomeBlocks t(m);
  // forth_failure reads rows as "related to"; the forth clause needs the
  // converse relation, the back clause the relation itself.
  Relation inv(r.size());
  for (auto [x, y] : r.pairs()) inv.set(y, x);
  for (auto [a, b] : r.pairs()) {
    if (m.labels(a) != m.labels(b)) return false;
    if (forth_failure(t, inv, a, b)) return false;
    if (forth_failure(t, r, b, a)) return false;
  }
  return true;
}

bool are_bisimilar(const Model& m1, const std::string& s1, const Model& m2, const std::string& s2,
                   const BisimOptions& opts) {
  if (m1.agents() != m2.agents()) throw InputError("models have different agent sets");
  int i1 = m1.state_index(s1);
  int i2 = m2.state_index(s2);
  if (i1 < 0) throw InputError("unknown state '" + s1 + "' in first model");
  if (i2 < 0) throw InputError("unknown state '" + s2 + "' in second model");
  Model u = disjoint_union(m1, m2);
  auto r = greatest_bisimulation(u, opts).relation;
  return r.contains(i1, static_cast<int>(m1.num_states()) + i2);
}

std::optional<Disagreement> hm_agreement(const Model& m, const Relation& r, const std::vector<Formula>& corpus) {
  for (const auto& f : corpus) {
    Extension e = extension(m, f);
    for (auto [a, b] : r.pairs())
      if (e[a] != e[b]) return Disagreement{a, b, f};
  }
  return std::nullopt;
}

namespace {

std::vector<int> block_representatives(const Relation& r) {
  std::vector<int> rep(r.size(), -1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (rep[i] >= 0) continue;
    for (auto j = r.row(static_cast<int>(i)).find_first(); j != Extension::npos; j = r.row(static_cast<int>(i)).find_next(j))
      rep[j] = static_cast<int>(i);
  }
  return rep;
}

// True at s (and its whole class in the next round), false at t. Requires the
// forth clause for (s, t) to fail against r, whose classes chi characterizes.
Formula separator(const OutcomeBlocks& tb, const Relation& r, const std::vector<Formula>& chi, int s,
                  std::size_t z1) {
  const Model& m = tb.model();
  auto rep = block_representatives(r);
  GoalAssignment g;
  for (std::size_t c = 0; c < tb.num_masks(); ++c) {
    auto mask = static_cast<AgentMask>(c);
    const Extension& outs = tb.outcomes(s, mask, tb.block(s, mask, z1));
    std::set<int> reps;
    for (auto u = outs.find_first(); u != Extension::npos; u = outs.find_next(u)) reps.insert(rep[u]);
    std::vector<Formula> ds;
    for (int b : reps) ds.push_back(chi[b]);
    g = g.updated(m.coalition_of(mask), next(disjunction(ds)));
  }
  return brak(g);
}

}  // namespace

std::vector<Formula> characteristic_formulas(const Model& m) {
  require_valid(m);
  OutcomeBlocks tb(m);
  const int n = static_cast<int>(m.num_states());
  auto props = m.propositions();
  Relation r = atom_equivalence(m);
  std::vector<Formula> chi(n);
  for (int s = 0; s < n; ++s) {
    std::vector<Formula> lits;
    for (const auto& p : props) lits.push_back(m.holds(s, p) ? prop(p) : neg(prop(p)));
    chi[s] = conjunction(lits);
  }
  while (true) {
    Relation next = refine_round_serial(tb, r);
    if (next == r) return chi;
    auto rep_next = block_representatives(next);
    std::vector<Formula> nchi(n);
    for (int s = 0; s < n; ++s) {
      if (rep_next[s] != s) continue;
      std::vector<Formula> parts{chi[s]};
      std::set<int> separated;
      for (int t = 0; t < n; ++t) {
        if (!r.contains(s, t) || next.contains(s, t) || separated.count(rep_next[t])) continue;
        separated.insert(rep_next[t]);
        if (auto z = forth_failure(tb, r, s, t)) {
          parts.push_back(separator(tb, r, chi, s, *z));
        } else {
          auto zt = forth_failure(tb, r, t, s);
          parts.push_back(neg(separator(tb, r, chi, t, *zt)));
        }
      }
      nchi[s] = conjunction(parts);
    }
    for (int s = 0; s < n; ++s) nchi[s] = nchi[rep_next[s]];
    chi = std::move(nchi);
    r = std::move(next);
  }
}

std::optional<std::pair<int, int>> hm_converse_failure(const Model& m, const Relation& r,
                                                       const std::vector<Formula>& chars) {
  const int n = static_cast<int>(m.num_states());
  std::vector<Extension> ext;
  for (const auto& f : chars) ext.push_back(extension(m, f));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!r.contains(a, b) && (!ext[a][a] || ext[a][b])) return std::make_pair(a, b);
  return std::nullopt;
}

}  // namespace tlcga
