#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tlcga/syntax.hpp"

namespace tlcga {

// Bit i stands for the i-th agent in the model's canonical order.
using AgentMask = std::uint32_t;

// Action indices in agent order.
using Profile = std::vector<int>;

// Finite concurrent game model. Agents are kept sorted by name; profiles at a
// state are numbered in lexicographic order of their action indices with the
// first agent most significant.
class Model {
 public:
  Model() = default;
  Model(std::vector<std::string> agents, std::vector<std::string> states);

  std::size_t num_agents() const { return agents_.size(); }
  std::size_t num_states() const { return states_.size(); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int s) const { return states_[s]; }
  int state_index(const std::string& name) const;  // -1 if absent
  int agent_index(const std::string& name) const;  // -1 if absent
  AgentMask all_agents() const { return num_agents() >= 32 ? ~0u : (1u << num_agents()) - 1; }
  AgentMask mask_of(const Coalition& c) const;  // throws InputError on unknown agents
  Coalition coalition_of(AgentMask m) const;

  const std::vector<std::string>& actions(int s, int a) const { return actions_[s][a]; }
  void set_actions(int s, int a, std::vector<std::string> acts);

  // Product of the action-set sizes at s (0 if some set is empty).
  std::size_t num_profiles(int s) const;
  Profile decode(int s, std::size_t index) const;
  std::size_t encode(int s, const Profile& p) const;
  std::string profile_string(int s, const Profile& p) const;

  // -1 when unset.
  int outcome(int s, std::size_t profile) const { return outcome_[s][profile]; }
  const std::vector<int>& outcomes(int s) const { return outcome_[s]; }
  void set_outcome(int s, std::size_t profile, int target);
  void set_outcome(int s, const Profile& p, int target) { set_outcome(s, encode(s, p), target); }

  const std::set<std::string>& labels(int s) const { return labels_[s]; }
  void add_label(int s, const std::string& p) { labels_[s].insert(p); }
  bool holds(int s, const std::string& p) const { return labels_[s].count(p) > 0; }
  std::set<std::string> propositions() const;

 private:
  void resize_outcomes(int s);

  std::vector<std::string> agents_;
  std::vector<std::string> states_;
  std::map<std::string, int> state_index_;
  std::vector<std::vector<std::vector<std::string>>> actions_;
  std::vector<std::vector<int>> outcome_;
  std::vector<std::set<std::string>> labels_;
};

// Empty iff the model is well formed. Each entry names the offending item.
std::vector<std::string> validate(const Model& m);
void require_valid(const Model& m);  // throws InputError listing the violations

Model load_model_json(const std::string& text);
Model load_model_file(const std::string& path);
std::string save_model_json(const Model& m);

// Joint action: per agent an action index, or -1 for non-members.
struct JointAction {
  AgentMask coalition = 0;
  std::vector<int> actions;
};

JointAction restrict(const Profile& p, AgentMask c);
std::set<int> out_set(const Model& m, int s, const JointAction& j);

bool is_injective(const Model& m);

struct ScosResult {
  Model model;
  std::vector<std::vector<int>> copies;  // original state -> copy indices, copy 0 first
};

ScosResult scos(const Model& m);

// Disjoint union; state names get the prefixes "1:" and "2:".
Model disjoint_union(const Model& a, const Model& b);

enum class CrossingMode { simultaneous, wolves_then_sheep };

struct RiverCrossing {
  Model model;
  int start = 0;
  Coalition sheep;
  Coalition wolves;
  Coalition all;
};

RiverCrossing build_river_crossing(int n_sheep, int n_wolves, CrossingMode mode);
Model build_password_model();

}  // namespace tlcga
