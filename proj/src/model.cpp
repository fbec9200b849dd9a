#include "tlcga/model.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tlcga {

using nlohmann::json;

Model::Model(std::vector<std::string> agents, std::vector<std::string> states)
    : agents_(std::move(agents)), states_(std::move(states)) {
  std::sort(agents_.begin(), agents_.end());
  for (std::size_t i = 0; i < states_.size(); ++i) state_index_.emplace(states_[i], static_cast<int>(i));
  actions_.assign(states_.size(), std::vector<std::vector<std::string>>(agents_.size()));
  outcome_.assign(states_.size(), {});
  labels_.assign(states_.size(), {});
}

int Model::state_index(const std::string& name) const {
  auto it = state_index_.find(name);
  return it == state_index_.end() ? -1 : it->second;
}

int Model::agent_index(const std::string& name) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), name);
  if (it == agents_.end() || *it != name) return -1;
  return static_cast<int>(it - agents_.begin());
}

AgentMask Model::mask_of(const Coalition& c) const {
  AgentMask m = 0;
  for (const auto& a : c) {
    int i = agent_index(a);
    if (i < 0) throw InputError("unknown agent '" + a + "'");
    m |= 1u << i;
  }
  return m;
}

Coalition Model::coalition_of(AgentMask m) const {
  Coalition c;
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (m >> i & 1u) c.push_back(agents_[i]);
  return c;
}

void Model::set_actions(int s, int a, std::vector<std::string> acts) {
  actions_[s][a] = std::move(acts);
  resize_outcomes(s);
}

void Model::resize_outcomes(int s) { outcome_[s].assign(num_profiles(s), -1); }

std::size_t Model::num_profiles(int s) const {
  std::size_t n = 1;
  for (const auto& acts : actions_[s]) n *= acts.size();
  return n;
}

Profile Model::decode(int s, std::size_t index) const {
  Profile p(agents_.size());
  for (std::size_t a = agents_.size(); a-- > 0;) {
    std::size_t r = actions_[s][a].size();
    p[a] = static_cast<int>(index % r);
    index /= r;
  }
  return p;
}

std::size_t Model::encode(int s, const Profile& p) const {
  std::size_t index = 0;
  for (std::size_t a = 0; a < agents_.size(); ++a) index = index * actions_[s][a].size() + p[a];
  return index;
}

std::string Model::profile_string(int s, const Profile& p) const {
  std::string out = "(";
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (a) out += ",";
    out += actions_[s][a][p[a]];
  }
  return out + ")";
}

void Model::set_outcome(int s, std::size_t profile, int target) { outcome_[s][profile] = target; }

std::set<std::string> Model::propositions() const {
  std::set<std::string> out;
  for (const auto& l : labels_) out.insert(l.begin(), l.end());
  return out;
}

std::vector<std::string> validate(const Model& m) {
  std::vector<std::string> v;
  if (m.num_agents() == 0) v.push_back("model has no agents");
  if (m.num_agents() > 31) v.push_back("more than 31 agents");
  if (m.num_states() == 0) v.push_back("model has no states");
  for (std::size_t i = 1; i < m.agents().size(); ++i)
    if (m.agents()[i] == m.agents()[i - 1]) v.push_back("duplicate agent '" + m.agents()[i] + "'");
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (m.state_index(m.state_name(s)) != static_cast<int>(s))
      v.push_back("duplicate state '" + m.state_name(s) + "'");
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    const auto& name = m.state_name(s);
    bool complete = true;
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      const auto& acts = m.actions(s, a);
      if (acts.empty()) {
        v.push_back("state '" + name + "': empty action set for agent '" + m.agents()[a] + "'");
        complete = false;
      }
      auto sorted = acts;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        v.push_back("state '" + name + "': duplicate action for agent '" + m.agents()[a] + "'");
    }
    if (!complete) continue;
    for (std::size_t i = 0; i < m.num_profiles(s); ++i) {
      int t = m.outcome(s, i);
      if (t < 0)
        v.push_back("state '" + name + "': outcome not total, missing profile " +
                    m.profile_string(s, m.decode(s, i)));
      else if (t >= static_cast<int>(m.num_states()))
        v.push_back("state '" + name + "': outcome of " + m.profile_string(s, m.decode(s, i)) +
                    " is not a state");
    }
  }
  return v;
}

void require_valid(const Model& m) {
  auto v = validate(m);
  if (v.empty()) return;
  std::string msg = "invalid model:";
  for (const auto& e : v) msg += "\n  " + e;
  throw InputError(msg);
}

// ---------------------------------------------------------------------------
// JSON

Model load_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("model: malformed JSON: ") + e.what());
  }
  try {
    std::vector<std::string> agents = doc.at("agents").get<std::vector<std::string>>();
    std::vector<std::string> states;
    for (const auto& st : doc.at("states")) states.push_back(st.at("id").get<std::string>());
    Model m(agents, states);
    for (const auto& st : doc.at("states")) {
      int s = m.state_index(st.at("id").get<std::string>());
      if (st.contains("props"))
        for (const auto& p : st.at("props")) m.add_label(s, p.get<std::string>());
    }
    const auto& acts = doc.at("actions");
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      const auto& name = m.state_name(s);
      if (!acts.contains(name)) throw InputError("model: no actions for state '" + name + "'");
      const auto& per = acts.at(name);
      for (auto it = per.begin(); it != per.end(); ++it)
        if (m.agent_index(it.key()) < 0)
          throw InputError("model: state '" + name + "': unknown agent '" + it.key() + "'");
      for (std::size_t a = 0; a < m.num_agents(); ++a) {
        const auto& agent = m.agents()[a];
        if (!per.contains(agent))
          throw InputError("model: state '" + name + "': no actions for agent '" + agent + "'");
        m.set_actions(s, a, per.at(agent).get<std::vector<std::string>>());
      }
    }
    const auto& trans = doc.at("transitions");
    for (std::size_t s = 0; s < m.num_states(); ++s) {
      const auto& name = m.state_name(s);
      if (!trans.contains(name)) {
        if (m.num_profiles(s) > 0)
          throw InputError("model: no transitions for state '" + name + "'");
        continue;
      }
      for (const auto& t : trans.at(name)) {
        Profile p(m.num_agents());
        const auto& prof = t.at("profile");
        for (auto it = prof.begin(); it != prof.end(); ++it)
          if (m.agent_index(it.key()) < 0)
            throw InputError("model: state '" + name + "': unknown agent '" + it.key() + "' in profile");
        for (std::size_t a = 0; a < m.num_agents(); ++a) {
          const auto& agent = m.agents()[a];
          if (!prof.contains(agent))
            throw InputError("model: state '" + name + "': profile misses agent '" + agent + "'");
          auto act = prof.at(agent).get<std::string>();
          const auto& avail = m.actions(s, a);
          auto pos = std::find(avail.begin(), avail.end(), act);
          if (pos == avail.end())
            throw InputError("model: state '" + name + "': action '" + act +
                             "' not available to agent '" + agent + "'");
          p[a] = static_cast<int>(pos - avail.begin());
        }
        auto to = t.at("to").get<std::string>();
        int target = m.state_index(to);
        if (target < 0)
          throw InputError("model: state '" + name + "': unknown target state '" + to + "'");
        std::size_t idx = m.encode(s, p);
        if (m.outcome(s, idx) >= 0)
          throw InputError("model: state '" + name + "': duplicate transition for profile " +
                           m.profile_string(s, p));
        m.set_outcome(s, idx, target);
      }
      for (std::size_t i = 0; i < m.num_profiles(s); ++i)
        if (m.outcome(s, i) < 0)
          throw InputError("model: state '" + name + "': missing transition for profile " +
                           m.profile_string(s, m.decode(s, i)));
    }
    require_valid(m);
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("model: ") + e.what());
  }
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_json(ss.str());
}

std::string save_model_json(const Model& m) {
  json doc;
  doc["agents"] = m.agents();
  doc["states"] = json::array();
  for (std::size_t s = 0; s < m.num_states(); ++s)
    doc["states"].push_back({{"id", m.state_name(s)},
                             {"props", std::vector<std::string>(m.labels(s).begin(), m.labels(s).end())}});
  json acts = json::object();
  json trans = json::object();
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    json per = json::object();
    for (std::size_t a = 0; a < m.num_agents(); ++a) per[m.agents()[a]] = m.actions(s, a);
    acts[m.state_name(s)] = per;
    json list = json::array();
    for (std::size_t i = 0; i < m.num_profiles(s); ++i) {
      auto p = m.decode(s, i);
      json prof = json::object();
      for (std::size_t a = 0; a < m.num_agents(); ++a) prof[m.agents()[a]] = m.actions(s, a)[p[a]];
      list.push_back({{"profile", prof}, {"to", m.state_name(m.outcome(s, i))}});
    }
    trans[m.state_name(s)] = list;
  }
  doc["actions"] = acts;
  doc["transitions"] = trans;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Structure

JointAction restrict(const Profile& p, AgentMask c) {
  JointAction j;
  j.coalition = c;
  j.actions.assign(p.size(), -1);
  for (std::size_t a = 0; a < p.size(); ++a)
    if (c >> a & 1u) j.actions[a] = p[a];
  return j;
}

std::set<int> out_set(const Model& m, int s, const JointAction& j) {
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    if (!(j.coalition >> a & 1u)) continue;
    if (a >= j.actions.size() || j.actions[a] < 0 ||
        j.actions[a] >= static_cast<int>(m.actions(s, a).size()))
      throw InputError("joint action not available at state '" + m.state_name(s) + "'");
  }
  std::set<int> out;
  for (std::size_t i = 0; i < m.num_profiles(s); ++i) {
    auto p = m.decode(s, i);
    bool agrees = true;
    for (std::size_t a = 0; a < m.num_agents() && agrees; ++a)
      if (j.coalition >> a & 1u) agrees = p[a] == j.actions[a];
    if (agrees) out.insert(m.outcome(s, i));
  }
  return out;
}

bool is_injective(const Model& m) {
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    std::set<int> seen;
    for (int t : m.outcomes(s))
      if (!seen.insert(t).second) return false;
  }
  return true;
}

ScosResult scos(const Model& m) {
  require_valid(m);
  const int n = static_cast<int>(m.num_states());
  std::vector<int> copies(n, 1);
  for (int u = 0; u < n; ++u) {
    std::map<int, int> count;
    for (int t : m.outcomes(u)) ++count[t];
    for (const auto& [t, k] : count) copies[t] = std::max(copies[t], k);
  }
  ScosResult r;
  std::vector<std::string> names;
  r.copies.resize(n);
  for (int w = 0; w < n; ++w) {
    for (int i = 0; i < copies[w]; ++i) {
      r.copies[w].push_back(static_cast<int>(names.size()));
      names.push_back(copies[w] == 1 ? m.state_name(w) : m.state_name(w) + "#" + std::to_string(i));
    }
  }
  Model out(m.agents(), names);
  for (int u = 0; u < n; ++u) {
    for (int cu : r.copies[u]) {
      for (const auto& l : m.labels(u)) out.add_label(cu, l);
      for (std::size_t a = 0; a < m.num_agents(); ++a) out.set_actions(cu, static_cast<int>(a), m.actions(u, a));
      std::map<int, int> used;
      for (std::size_t i = 0; i < m.num_profiles(u); ++i) {
        int w = m.outcome(u, i);
        out.set_outcome(cu, i, r.copies[w][used[w]++]);
      }
    }
  }
  r.model = std::move(out);
  return r;
}

Model disjoint_union(const Model& a, const Model& b) {
  if (a.agents() != b.agents()) throw InputError("disjoint union: agent lists differ");
  std::vector<std::string> names;
  for (const auto& s : a.states()) names.push_back("1:" + s);
  for (const auto& s : b.states()) names.push_back("2:" + s);
  Model out(a.agents(), names);
  auto copy = [&](const Model& src, int offset) {
    for (std::size_t s = 0; s < src.num_states(); ++s) {
      int d = static_cast<int>(s) + offset;
      for (const auto& l : src.labels(s)) out.add_label(d, l);
      for (std::size_t ag = 0; ag < src.num_agents(); ++ag)
        out.set_actions(d, static_cast<int>(ag), src.actions(s, ag));
      for (std::size_t i = 0; i < src.num_profiles(s); ++i) out.set_outcome(d, i, src.outcome(s, i) + offset);
    }
  };
  copy(a, 0);
  copy(b, static_cast<int>(a.num_states()));
  return out;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

struct Conf {
  int sl, wl, boat;  // boat 0 = left bank, 1 = right bank
  int wolves_boarding;  // -1 outside the sheep half-round
  bool operator<(const Conf& o) const {
    return std::tie(sl, wl, boat, wolves_boarding) < std::tie(o.sl, o.wl, o.boat, o.wolves_boarding);
  }
};

bool outnumbered(int sheep, int wolves) { return sheep > 0 && wolves > sheep; }

}  // namespace

RiverCrossing build_river_crossing(int n_sheep, int n_wolves, CrossingMode mode) {
  if (n_sheep < 1 || n_wolves < 0) throw InputError("river crossing needs at least one sheep");
  if (n_sheep > 9 || n_wolves > 9) throw LimitError("river crossing is limited to 9 animals of each kind");

  std::vector<std::string> agents;
  for (int i = 1; i <= n_sheep; ++i) agents.push_back("sheep" + std::to_string(i));
  for (int i = 1; i <= n_wolves; ++i) agents.push_back("wolf" + std::to_string(i));
  const bool split = mode == CrossingMode::wolves_then_sheep;

  // Animal i of a kind stands on the left bank iff i <= count on the left.
  auto on_boat_side = [&](const Conf& c, bool sheep, int i) {
    bool left = i <= (sheep ? c.sl : c.wl);
    return left == (c.boat == 0);
  };
  enum Target { kEaten = -2, kCrossed = -3 };
  auto resolve = [&](const Conf& c, int bs, int bw) -> std::pair<int, Conf> {
    int total = bs + bw;
    Conf same{c.sl, c.wl, c.boat, -1};
    if (total < 1 || total > 2) return {0, same};
    int dir = c.boat == 0 ? -1 : 1;
    Conf nc{c.sl + dir * bs, c.wl + dir * bw, 1 - c.boat, -1};
    if (outnumbered(bs, bw) || outnumbered(nc.sl, nc.wl) ||
        outnumbered(n_sheep - nc.sl, n_wolves - nc.wl))
      return {kEaten, nc};
    if (nc.sl == 0 && nc.wl == 0) return {kCrossed, nc};
    return {0, nc};
  };
  auto conf_name = [](const Conf& c) {
    std::string s = "S" + std::to_string(c.sl) + "W" + std::to_string(c.wl) + (c.boat == 0 ? "L" : "R");
    if (c.wolves_boarding >= 0) s += "+w" + std::to_string(c.wolves_boarding);
    return s;
  };

  Conf start{n_sheep, n_wolves, 0, -1};
  std::map<Conf, int> index;
  std::vector<Conf> confs;
  std::deque<Conf> queue;
  auto visit = [&](const Conf& c) {
    if (index.count(c)) return;
    index[c] = -1;
    confs.push_back(c);
    queue.push_back(c);
  };
  bool start_safe = !outnumbered(n_sheep, n_wolves);
  if (start_safe) visit(start);

  // Per state: action lists and, per profile, either a configuration or a sink.
  struct Edge {
    int sink;
    Conf to;
  };
  std::map<Conf, std::vector<std::vector<std::string>>> acts;
  std::map<Conf, std::vector<Edge>> edges;
  const std::size_t na = agents.size();
  while (!queue.empty()) {
    Conf c = queue.front();
    queue.pop_front();
    std::vector<std::vector<std::string>> a(na, std::vector<std::string>{"stay"});
    for (int i = 1; i <= n_sheep; ++i) {
      bool may = on_boat_side(c, true, i) && (!split || c.wolves_boarding >= 0);
      if (may) a[i - 1].push_back("board");
    }
    for (int i = 1; i <= n_wolves; ++i) {
      bool may = on_boat_side(c, false, i) && (!split || c.wolves_boarding < 0);
      if (may) a[n_sheep + i - 1].push_back("board");
    }
    std::size_t np = 1;
    for (const auto& l : a) np *= l.size();
    std::vector<Edge> es;
    for (std::size_t idx = 0; idx < np; ++idx) {
      std::size_t rest = idx;
      std::vector<int> choice(na);
      for (std::size_t ag = na; ag-- > 0;) {
        choice[ag] = static_cast<int>(rest % a[ag].size());
        rest /= a[ag].size();
      }
      int bs = 0, bw = 0;
      for (int i = 0; i < n_sheep; ++i) bs += choice[i];
      for (int i = 0; i < n_wolves; ++i) bw += choice[n_sheep + i];
      Edge e{0, c};
      if (split && c.wolves_boarding < 0) {
        e.to = Conf{c.sl, c.wl, c.boat, bw};
      } else {
        if (split) bw = c.wolves_boarding;
        auto [sink, nc] = resolve(c, bs, bw);
        e.sink = sink;
        e.to = nc;
      }
      if (e.sink == 0) visit(e.to);
      es.push_back(e);
    }
    acts[c] = a;
    edges[c] = es;
  }

  std::vector<std::string> names;
  for (std::size_t i = 0; i < confs.size(); ++i) {
    index[confs[i]] = static_cast<int>(i);
    names.push_back(conf_name(confs[i]));
  }
  const int eaten = static_cast<int>(names.size());
  names.push_back("eaten");
  const int crossed = static_cast<int>(names.size());
  names.push_back("crossed");

  RiverCrossing rc;
  rc.model = Model(agents, names);
  Model& m = rc.model;
  for (std::size_t i = 0; i < confs.size(); ++i) {
    int s = static_cast<int>(i);
    const auto& a = acts[confs[i]];
    for (std::size_t ag = 0; ag < na; ++ag) m.set_actions(s, static_cast<int>(ag), a[ag]);
    const auto& es = edges[confs[i]];
    for (std::size_t p = 0; p < es.size(); ++p) {
      int t = es[p].sink == kEaten ? eaten : es[p].sink == kCrossed ? crossed : index[es[p].to];
      m.set_outcome(s, p, t);
    }
  }
  for (int sink : {eaten, crossed}) {
    for (std::size_t ag = 0; ag < na; ++ag) m.set_actions(sink, static_cast<int>(ag), {"stay"});
    m.set_outcome(sink, std::size_t{0}, sink);
  }
  m.add_label(eaten, "e");
  m.add_label(crossed, "c");
  rc.start = start_safe ? index[start] : eaten;
  for (int i = 1; i <= n_sheep; ++i) rc.sheep.push_back("sheep" + std::to_string(i));
  for (int i = 1; i <= n_wolves; ++i) rc.wolves.push_back("wolf" + std::to_string(i));
  rc.sheep = make_coalition(rc.sheep);
  rc.wolves = make_coalition(rc.wolves);
  rc.all = coalition_union(rc.sheep, rc.wolves);
  require_valid(m);
  return rc;
}

Model build_password_model() {
  // State index bit 0: H_A (Alice reads Bob's data), bit 1: H_B.
  Model m({"A", "B"}, {"start", "hasA", "hasB", "both"});
  for (int s = 0; s < 4; ++s) {
    if (s & 1) m.add_label(s, "H_A");
    if (s & 2) m.add_label(s, "H_B");
    m.set_actions(s, 0, {"send", "withhold"});
    m.set_actions(s, 1, {"send", "withhold"});
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int t = s;
        if (a == 0) t |= 2;  // Alice's password lets Bob in
        if (b == 0) t |= 1;
        m.set_outcome(s, Profile{a, b}, t);
      }
  }
  return m;
}

}  // namespace tlcga
