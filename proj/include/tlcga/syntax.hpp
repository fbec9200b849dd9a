#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tlcga {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: formula text, model files, sequent files.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t pos);
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// A configured size or search limit was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

// Sorted, duplicate-free member list. May be empty.
using Coalition = std::vector<std::string>;

Coalition make_coalition(std::vector<std::string> members);
Coalition coalition_union(const Coalition& a, const Coalition& b);
Coalition coalition_intersection(const Coalition& a, const Coalition& b);
Coalition coalition_difference(const Coalition& a, const Coalition& b);
bool is_subset(const Coalition& a, const Coalition& b);
bool disjoint(const Coalition& a, const Coalition& b);
std::string to_string(const Coalition& c);

enum class Dialect { tlcga, tlcga_plus, mu };

Dialect parse_dialect(const std::string& name);
std::string to_string(Dialect d);

struct StateNode;
struct PathNode;
using Formula = std::shared_ptr<const StateNode>;
using Path = std::shared_ptr<const PathNode>;

// Finite map Coalition -> PathFormula. Trivial goals (X true) are never stored,
// so the key set is exactly the support.
class GoalAssignment {
 public:
  GoalAssignment() = default;
  GoalAssignment(std::initializer_list<std::pair<Coalition, Path>> entries);

  const std::map<Coalition, Path>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool supports(const Coalition& c) const { return entries_.count(c) > 0; }
  std::vector<Coalition> support() const;
  Coalition support_union() const;

  // Goal of c; X true when c is unsupported.
  Path at(const Coalition& c) const;

  GoalAssignment updated(const Coalition& c, const Path& goal) const;
  GoalAssignment without(const Coalition& c) const;
  GoalAssignment restricted(const Coalition& c) const;

  bool operator==(const GoalAssignment& o) const;
  bool operator!=(const GoalAssignment& o) const { return !(*this == o); }

 private:
  std::map<Coalition, Path> entries_;
};

enum class Op { True, False, Prop, Var, Not, And, Or, Implies, Brak, Mu, Nu };
enum class PathOp { Next, Until, Globally, And };

struct StateNode {
  Op op;
  std::string name;  // Prop/Var name, bound variable for Mu/Nu
  Formula left;      // Not operand, binary left, binder body
  Formula right;
  GoalAssignment goals;
  std::size_t hash = 0;
};

struct PathNode {
  PathOp op;
  Formula left;  // Next/Globally body, Until left
  Formula right; // Until right
  Path pleft;    // And
  Path pright;
  std::size_t hash = 0;
};

// Constructors. brak of the empty assignment yields true.
Formula f_true();
Formula f_false();
Formula prop(const std::string& name);
Formula var(const std::string& name);
Formula neg(const Formula& f);
Formula conj(const Formula& a, const Formula& b);
Formula disj(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula brak(const GoalAssignment& g);
Formula mu(const std::string& v, const Formula& body);
Formula nu(const std::string& v, const Formula& body);

Path next(const Formula& f);
Path until(const Formula& a, const Formula& b);
Path globally(const Formula& f);
// Kept left-nested so printing and parsing agree.
Path path_and(const Path& a, const Path& b);

// Left-nested folds; the empty conjunction is true, the empty disjunction false.
Formula conjunction(const std::vector<Formula>& fs);
Formula disjunction(const std::vector<Formula>& fs);
Path path_conjunction(const std::vector<Path>& ps);
std::vector<Path> path_conjuncts(const Path& p);

bool is_trivial(const Path& p);

int compare(const Formula& a, const Formula& b);
int compare(const Path& a, const Path& b);
int compare(const GoalAssignment& a, const GoalAssignment& b);
bool equal(const Formula& a, const Formula& b);
bool equal(const Path& a, const Path& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};
using FormulaSet = std::set<Formula, FormulaLess>;

std::string to_string(const Formula& f);
std::string to_string(const Path& p);
std::string to_string(const GoalAssignment& g);

// Identifiers in scope of `free_vars` parse as variables even without a binder.
Formula parse_state_formula(const std::string& text, Dialect dialect,
                            const std::set<std::string>& free_vars = {});
Path parse_path_formula(const std::string& text, Dialect dialect,
                        const std::set<std::string>& free_vars = {});

// Throws InputError when f uses constructs outside the dialect.
void check_dialect(const Formula& f, Dialect dialect);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> propositions(const Formula& f);
std::set<std::string> agents_of(const Formula& f);
// Every identifier used as a proposition, variable or binder.
std::set<std::string> identifiers(const Formula& f);
std::size_t formula_size(const Formula& f);

// Removes Implies and False.
Formula desugar(const Formula& f);
Path desugar(const Path& p);
GoalAssignment desugar(const GoalAssignment& g);

Formula substitute(const Formula& f, const std::string& v, const Formula& by);

// Strips one leading negation if present, otherwise prepends one.
Formula overline(const Formula& f);

enum class GoalType { Nexttime, LongTermTypeU, LongTermTypeG, Mixed };
std::string to_string(GoalType t);
GoalType classify(const GoalAssignment& g);
bool is_long_term(const GoalAssignment& g);

// (U/G part, X part). In the plus dialect a coalition can appear in both.
std::pair<GoalAssignment, GoalAssignment> split_lfor_xfor(const GoalAssignment& g);

// Extended closure of a formula in normal form.
FormulaSet ecl(const Formula& f);
FormulaSet ecl(const FormulaSet& fs);

}  // namespace tlcga
