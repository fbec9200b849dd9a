#include "tlcga/checker.hpp"

#include <unordered_map>

#include "tlcga/transform.hpp"

namespace tlcga {

Extension empty_extension(const Model& m) { return Extension(m.num_states()); }

Extension full_extension(const Model& m) {
  Extension e(m.num_states());
  e.set();
  return e;
}

std::vector<std::string> state_names(const Model& m, const Extension& e) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < e.size(); ++s)
    if (e[s]) out.push_back(m.state_name(s));
  return out;
}

bool one_step_at(const Model& m, int s, const std::vector<StepGoal>& goals) {
  const std::size_t np = m.num_profiles(s);
  const std::size_t na = m.num_agents();
  if (goals.empty()) return np > 0;
  std::vector<std::size_t> radix(na);
  for (std::size_t a = 0; a < na; ++a) radix[a] = m.actions(s, a).size();

  // Per goal: block of each profile under the coalition's restriction, and
  // whether every outcome in that block lies in the target.
  std::vector<std::vector<std::size_t>> block(goals.size(), std::vector<std::size_t>(np));
  std::vector<std::vector<char>> good(goals.size());
  for (std::size_t g = 0; g < goals.size(); ++g) {
    std::size_t nblocks = 1;
    for (std::size_t a = 0; a < na; ++a)
      if (goals[g].coalition >> a & 1u) nblocks *= radix[a];
    good[g].assign(nblocks, 1);
  }
  std::vector<int> digits(na);
  for (std::size_t i = 0; i < np; ++i) {
    std::size_t rest = i;
    for (std::size_t a = na; a-- > 0;) {
      digits[a] = static_cast<int>(rest % radix[a]);
      rest /= radix[a];
    }
    int t = m.outcome(s, i);
    for (std::size_t g = 0; g < goals.size(); ++g) {
      std::size_t b = 0;
      for (std::size_t a = 0; a < na; ++a)
        if (goals[g].coalition >> a & 1u) b = b * radix[a] + digits[a];
      block[g][i] = b;
      if (!goals[g].target[t]) good[g][b] = 0;
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    bool ok = true;
    for (std::size_t g = 0; g < goals.size() && ok; ++g) ok = good[g][block[g][i]];
    if (ok) return true;
  }
  return false;
}

Extension one_step(const Model& m, const std::vector<StepGoal>& goals) {
  Extension out(m.num_states());
  for (std::size_t s = 0; s < m.num_states(); ++s)
    if (one_step_at(m, static_cast<int>(s), goals)) out.set(s);
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const Model& m, EvalStats* stats) : m_(m), stats_(stats) {}

  Extension ev(const Formula& f, Environment& env) {
    switch (f->op) {
      case Op::True: return full_extension(m_);
      case Op::False: return empty_extension(m_);
      case Op::Prop: {
        Extension e(m_.num_states());
        for (std::size_t s = 0; s < m_.num_states(); ++s)
          if (m_.holds(static_cast<int>(s), f->name)) e.set(s);
        return e;
      }
      case Op::Var: {
        auto it = env.find(f->name);
        if (it == env.end()) throw InputError("unbound variable '" + f->name + "'");
        return it->second;
      }
      case Op::Not: return ~ev(f->left, env);
      case Op::And: return ev(f->left, env) & ev(f->right, env);
      case Op::Or: return ev(f->left, env) | ev(f->right, env);
      case Op::Implies: return ~ev(f->left, env) | ev(f->right, env);
      case Op::Brak:
      case Op::Mu:
      case Op::Nu: return cached(f, env);
    }
    return empty_extension(m_);
  }

 private:
  using Key = std::vector<Extension>;

  const std::vector<std::string>& fv(const Formula& f) {
    auto it = fv_.find(f.get());
    if (it != fv_.end()) return it->second;
    auto s = free_vars(f);
    return fv_.emplace(f.get(), std::vector<std::string>(s.begin(), s.end())).first->second;
  }

  Extension cached(const Formula& f, Environment& env) {
    Key key;
    for (const auto& v : fv(f)) {
      auto it = env.find(v);
      if (it == env.end()) throw InputError("unbound variable '" + v + "'");
      key.push_back(it->second);
    }
    auto& slot = cache_[f.get()];
    for (const auto& [k, e] : slot)
      if (k == key) return e;
    Extension e = f->op == Op::Brak ? modality(f, env) : fixpoint(f, env);
    slot.emplace_back(std::move(key), e);
    return e;
  }

  Extension modality(const Formula& f, Environment& env) {
    std::vector<StepGoal> goals;
    for (const auto& [c, p] : f->goals.entries()) {
      StepGoal g;
      g.coalition = m_.mask_of(c);
      g.target = full_extension(m_);
      for (const auto& q : path_conjuncts(p)) {
        if (q->op != PathOp::Next)
          throw InputError("eval: modality with a long-term goal; translate the formula first");
        g.target &= ev(q->left, env);
      }
      goals.push_back(std::move(g));
    }
    return one_step(m_, goals);
  }

  Extension fixpoint(const Formula& f, Environment& env) {
    const bool least = f->op == Op::Mu;
    Extension x = least ? empty_extension(m_) : full_extension(m_);
    std::optional<Extension> saved;
    auto it = env.find(f->name);
    if (it != env.end()) saved = it->second;
    while (true) {
      env[f->name] = x;
      if (stats_) ++stats_->iterations;
      Extension y = ev(f->left, env);
      if (y == x) break;
      x = std::move(y);
    }
    if (saved)
      env[f->name] = *saved;
    else
      env.erase(f->name);
    return x;
  }

  const Model& m_;
  EvalStats* stats_;
  std::unordered_map<const StateNode*, std::vector<std::string>> fv_;
  std::unordered_map<const StateNode*, std::vector<std::pair<Key, Extension>>> cache_;
};

}  // namespace

Extension eval(const Model& m, const Formula& f, const Environment& env, EvalStats* stats) {
  Evaluator ev(m, stats);
  Environment e = env;
  for (const auto& [k, v] : e)
    if (v.size() != m.num_states()) throw InputError("environment extension has the wrong size");
  return ev.ev(f, e);
}

Extension extension(const Model& m, const Formula& f, EvalStats* stats) {
  return eval(m, to_mu(f), {}, stats);
}

bool check(const Model& m, int s, const Formula& f, EvalStats* stats) {
  if (s < 0 || s >= static_cast<int>(m.num_states())) throw InputError("state out of range");
  return extension(m, f, stats)[s];
}

bool valid_on(const Model& m, const Formula& f) { return extension(m, f).all(); }

std::optional<Counterexample> falsify(
    std::size_t samples,
    const std::function<std::pair<Model, Formula>(std::size_t sample)>& draw) {
  for (std::size_t i = 0; i < samples; ++i) {
    auto [model, formula] = draw(i);
    auto e = extension(model, formula);
    if (e.all()) continue;
    int s = 0;
    while (e[s]) ++s;
    return Counterexample{i, std::move(model), s, formula};
  }
  return std::nullopt;
}

}  // namespace tlcga
