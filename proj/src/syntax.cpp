#include "tlcga/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace tlcga {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}

Coalition make_coalition(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Coalition coalition_union(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Coalition coalition_intersection(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Coalition coalition_difference(const Coalition& a, const Coalition& b) {
  Coalition out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const Coalition& a, const Coalition& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool disjoint(const Coalition& a, const Coalition& b) {
  return coalition_intersection(a, b).empty();
}

std::string to_string(const Coalition& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i];
  }
  return s + "}";
}

Dialect parse_dialect(const std::string& name) {
  if (name == "tlcga") return Dialect::tlcga;
  if (name == "tlcga_plus" || name == "tlcga+") return Dialect::tlcga_plus;
  if (name == "mu") return Dialect::mu;
  throw InputError("unknown dialect '" + name + "'");
}

std::string to_string(Dialect d) {
  switch (d) {
    case Dialect::tlcga: return "tlcga";
    case Dialect::tlcga_plus: return "tlcga_plus";
    case Dialect::mu: return "mu";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t goals_hash(const GoalAssignment& g) {
  std::size_t h = 0x51ed27;
  for (const auto& [c, p] : g.entries()) {
    for (const auto& a : c) h = mix(h, std::hash<std::string>{}(a));
    h = mix(h, c.size());
    h = mix(h, p->hash);
  }
  return h;
}

Formula make(Op op, std::string name, Formula l, Formula r, GoalAssignment g = {}) {
  auto n = std::make_shared<StateNode>();
  n->op = op;
  n->name = std::move(name);
  n->left = std::move(l);
  n->right = std::move(r);
  n->goals = std::move(g);
  std::size_t h = mix(0xabcdef, static_cast<std::size_t>(op));
  if (!n->name.empty()) h = mix(h, std::hash<std::string>{}(n->name));
  if (n->left) h = mix(h, n->left->hash);
  if (n->right) h = mix(h, n->right->hash);
  if (op == Op::Brak) h = mix(h, goals_hash(n->goals));
  n->hash = h;
  return n;
}

Path make_path(PathOp op, Formula l, Formula r, Path pl, Path pr) {
  auto n = std::make_shared<PathNode>();
  n->op = op;
  n->left = std::move(l);
  n->right = std::move(r);
  n->pleft = std::move(pl);
  n->pright = std::move(pr);
  std::size_t h = mix(0x123457, static_cast<std::size_t>(op));
  if (n->left) h = mix(h, n->left->hash);
  if (n->right) h = mix(h, n->right->hash);
  if (n->pleft) h = mix(h, n->pleft->hash);
  if (n->pright) h = mix(h, n->pright->hash);
  n->hash = h;
  return n;
}

}  // namespace

Formula f_true() {
  static const Formula t = make(Op::True, "", nullptr, nullptr);
  return t;
}

Formula f_false() {
  static const Formula f = make(Op::False, "", nullptr, nullptr);
  return f;
}

Formula prop(const std::string& name) { return make(Op::Prop, name, nullptr, nullptr); }
Formula var(const std::string& name) { return make(Op::Var, name, nullptr, nullptr); }
Formula neg(const Formula& f) { return make(Op::Not, "", f, nullptr); }
Formula conj(const Formula& a, const Formula& b) { return make(Op::And, "", a, b); }
Formula disj(const Formula& a, const Formula& b) { return make(Op::Or, "", a, b); }
Formula implies(const Formula& a, const Formula& b) { return make(Op::Implies, "", a, b); }

Formula brak(const GoalAssignment& g) {
  if (g.empty()) return f_true();
  return make(Op::Brak, "", nullptr, nullptr, g);
}

Formula mu(const std::string& v, const Formula& body) { return make(Op::Mu, v, body, nullptr); }
Formula nu(const std::string& v, const Formula& body) { return make(Op::Nu, v, body, nullptr); }

Path next(const Formula& f) { return make_path(PathOp::Next, f, nullptr, nullptr, nullptr); }
Path until(const Formula& a, const Formula& b) {
  return make_path(PathOp::Until, a, b, nullptr, nullptr);
}
Path globally(const Formula& f) { return make_path(PathOp::Globally, f, nullptr, nullptr, nullptr); }

Path path_and(const Path& a, const Path& b) {
  if (b->op == PathOp::And) return path_and(path_and(a, b->pleft), b->pright);
  return make_path(PathOp::And, nullptr, nullptr, a, b);
}

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Path path_conjunction(const std::vector<Path>& ps) {
  if (ps.empty()) return next(f_true());
  Path acc = ps[0];
  for (std::size_t i = 1; i < ps.size(); ++i) acc = path_and(acc, ps[i]);
  return acc;
}

std::vector<Path> path_conjuncts(const Path& p) {
  if (p->op != PathOp::And) return {p};
  auto out = path_conjuncts(p->pleft);
  auto r = path_conjuncts(p->pright);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

bool is_trivial(const Path& p) { return p->op == PathOp::Next && p->left->op == Op::True; }

// ---------------------------------------------------------------------------
// Goal assignments

GoalAssignment::GoalAssignment(std::initializer_list<std::pair<Coalition, Path>> entries) {
  for (const auto& [c, p] : entries) {
    auto key = make_coalition(c);
    if (!is_trivial(p)) entries_[key] = p;
  }
}

std::vector<Coalition> GoalAssignment::support() const {
  std::vector<Coalition> out;
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

Coalition GoalAssignment::support_union() const {
  Coalition u;
  for (const auto& e : entries_) u = coalition_union(u, e.first);
  return u;
}

Path GoalAssignment::at(const Coalition& c) const {
  auto it = entries_.find(c);
  if (it == entries_.end()) return next(f_true());
  return it->second;
}

GoalAssignment GoalAssignment::updated(const Coalition& c, const Path& goal) const {
  GoalAssignment g = *this;
  auto key = make_coalition(c);
  if (is_trivial(goal))
    g.entries_.erase(key);
  else
    g.entries_[key] = goal;
  return g;
}

GoalAssignment GoalAssignment::without(const Coalition& c) const {
  GoalAssignment g = *this;
  g.entries_.erase(make_coalition(c));
  return g;
}

GoalAssignment GoalAssignment::restricted(const Coalition& c) const {
  GoalAssignment g;
  for (const auto& [k, p] : entries_)
    if (is_subset(k, c)) g.entries_[k] = p;
  return g;
}

bool GoalAssignment::operator==(const GoalAssignment& o) const { return compare(*this, o) == 0; }

// ---------------------------------------------------------------------------
// Structural order

int compare(const GoalAssignment& a, const GoalAssignment& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  for (; ia != a.entries().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = compare(ia->second, ib->second);
    if (c) return c;
  }
  return 0;
}

namespace {

int cmp_ptr(const Formula& a, const Formula& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  return compare(a, b);
}

int cmp_path_ptr(const Path& a, const Path& b) {
  if (!a || !b) return (a ? 1 : 0) - (b ? 1 : 0);
  return compare(a, b);
}

}  // namespace

int compare(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->name != b->name) return a->name < b->name ? -1 : 1;
  if (int c = cmp_ptr(a->left, b->left)) return c;
  if (int c = cmp_ptr(a->right, b->right)) return c;
  if (a->op == Op::Brak) return compare(a->goals, b->goals);
  return 0;
}

int compare(const Path& a, const Path& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (int c = cmp_ptr(a->left, b->left)) return c;
  if (int c = cmp_ptr(a->right, b->right)) return c;
  if (int c = cmp_path_ptr(a->pleft, b->pleft)) return c;
  return cmp_path_ptr(a->pright, b->pright);
}

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

bool equal(const Path& a, const Path& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int level(const Formula& f) {
  switch (f->op) {
    case Op::Mu:
    case Op::Nu: return 0;
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not: return 4;
    default: return 5;
  }
}

void print(const Formula& f, int min_level, std::string& out);
void print_path(const Path& p, std::string& out);

void print_goals(const GoalAssignment& g, std::string& out) {
  out += "<<";
  bool first = true;
  for (const auto& [c, p] : g.entries()) {
    if (!first) out += "; ";
    first = false;
    out += to_string(c);
    out += " -> ";
    print_path(p, out);
  }
  out += ">>";
}

void print_path(const Path& p, std::string& out) {
  switch (p->op) {
    case PathOp::Next:
      out += "X ";
      print(p->left, 0, out);
      break;
    case PathOp::Globally:
      out += "G ";
      print(p->left, 0, out);
      break;
    case PathOp::Until:
      out += "(";
      print(p->left, 0, out);
      out += " U ";
      print(p->right, 0, out);
      out += ")";
      break;
    case PathOp::And:
      print_path(p->pleft, out);
      out += " && ";
      print_path(p->pright, out);
      break;
  }
}

void print(const Formula& f, int min_level, std::string& out) {
  if (level(f) < min_level) {
    out += "(";
    print(f, 0, out);
    out += ")";
    return;
  }
  switch (f->op) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Prop:
    case Op::Var: out += f->name; break;
    case Op::Not:
      out += "!";
      print(f->left, 4, out);
      break;
    case Op::And:
      print(f->left, 3, out);
      out += " & ";
      print(f->right, 4, out);
      break;
    case Op::Or:
      print(f->left, 2, out);
      out += " | ";
      print(f->right, 3, out);
      break;
    case Op::Implies:
      print(f->left, 2, out);
      out += " -> ";
      print(f->right, 1, out);
      break;
    case Op::Brak: print_goals(f->goals, out); break;
    case Op::Mu:
    case Op::Nu:
      out += f->op == Op::Mu ? "mu " : "nu ";
      out += f->name;
      out += " . ";
      print(f->left, 0, out);
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string to_string(const Path& p) {
  std::string out;
  print_path(p, out);
  return out;
}

std::string to_string(const GoalAssignment& g) {
  std::string out;
  print_goals(g, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok {
  Ident, Not, And, Or, Arrow, LParen, RParen, LBrak, RBrak, LBrace, RBrace, Comma, Semi,
  PathAnd, Dot, True, False, Mu, Nu, X, G, U, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto two = s.substr(i, 2);
    if (two == "->") { out.push_back({Tok::Arrow, two, start}); i += 2; continue; }
    if (two == "<<") { out.push_back({Tok::LBrak, two, start}); i += 2; continue; }
    if (two == ">>") { out.push_back({Tok::RBrak, two, start}); i += 2; continue; }
    if (two == "&&") { out.push_back({Tok::PathAnd, two, start}); i += 2; continue; }
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '{': out.push_back({Tok::LBrace, "{", start}); ++i; continue;
      case '}': out.push_back({Tok::RBrace, "}", start}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; continue;
      case ';': out.push_back({Tok::Semi, ";", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      default: break;
    }
    if (ident_char(c) && c != '\'') {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string word = s.substr(start, i - start);
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "mu") k = Tok::Mu;
      else if (word == "nu") k = Tok::Nu;
      else if (word == "X") k = Tok::X;
      else if (word == "G") k = Tok::G;
      else if (word == "U") k = Tok::U;
      out.push_back({k, word, start});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrak: return "'<<'";
    case Tok::RBrak: return "'>>'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::PathAnd: return "'&&'";
    case Tok::Dot: return "'.'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Mu: return "'mu'";
    case Tok::Nu: return "'nu'";
    case Tok::X: return "'X'";
    case Tok::G: return "'G'";
    case Tok::U: return "'U'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& text, Dialect d, const std::set<std::string>& free)
      : toks_(lex(text)), dialect_(d) {
    for (const auto& v : free) scope_.push_back(v);
  }

  Formula parse_top() {
    auto f = expr();
    expect(Tok::End);
    return f;
  }

  Path parse_path_top() {
    auto p = path();
    expect(Tok::End);
    return p;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[i_++]; }

  Token expect(Tok k) {
    if (!at(k))
      throw ParseError(std::string("expected ") + describe(k) + ", found " + describe(peek().kind),
                       peek().pos);
    return take();
  }

  bool bound(const std::string& name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  Formula expr() {
    if (at(Tok::Mu) || at(Tok::Nu)) {
      Token b = take();
      if (dialect_ != Dialect::mu) throw ParseError("fixpoint binder outside the mu dialect", b.pos);
      Token v = expect(Tok::Ident);
      expect(Tok::Dot);
      scope_.push_back(v.text);
      auto body = expr();
      scope_.pop_back();
      return b.kind == Tok::Mu ? mu(v.text, body) : nu(v.text, body);
    }
    return impl();
  }

  Formula impl() {
    auto l = disj_level();
    if (at(Tok::Arrow)) {
      take();
      return implies(l, impl());
    }
    return l;
  }

  Formula disj_level() {
    auto l = conj_level();
    while (at(Tok::Or)) {
      take();
      l = disj(l, conj_level());
    }
    return l;
  }

  Formula conj_level() {
    auto l = unary();
    while (at(Tok::And)) {
      take();
      l = conj(l, unary());
    }
    return l;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return neg(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True: take(); return f_true();
      case Tok::False: take(); return f_false();
      case Tok::Ident: {
        take();
        return bound(t.text) ? var(t.text) : prop(t.text);
      }
      case Tok::LParen: {
        take();
        auto f = expr();
        expect(Tok::RParen);
        return f;
      }
      case Tok::LBrak: return goals();
      default:
        throw ParseError(std::string("unexpected ") + describe(t.kind), t.pos);
    }
  }

  Formula goals() {
    expect(Tok::LBrak);
    std::map<Coalition, Path> entries;
    if (!at(Tok::RBrak)) {
      while (true) {
        std::size_t pos = peek().pos;
        auto c = coalition();
        expect(Tok::Arrow);
        auto p = path();
        if (entries.count(c)) throw ParseError("duplicate coalition " + to_string(c), pos);
        entries[c] = p;
        if (!at(Tok::Semi)) break;
        take();
      }
    }
    expect(Tok::RBrak);
    GoalAssignment g;
    for (const auto& [c, p] : entries) g = g.updated(c, p);
    return brak(g);
  }

  Coalition coalition() {
    expect(Tok::LBrace);
    std::vector<std::string> members;
    if (!at(Tok::RBrace)) {
      members.push_back(expect(Tok::Ident).text);
      while (at(Tok::Comma)) {
        take();
        members.push_back(expect(Tok::Ident).text);
      }
    }
    expect(Tok::RBrace);
    return make_coalition(members);
  }

  Path path() {
    auto p = path_atom();
    while (at(Tok::PathAnd)) {
      Token t = take();
      if (dialect_ == Dialect::tlcga) throw ParseError("'&&' requires the tlcga_plus dialect", t.pos);
      p = path_and(p, path_atom());
    }
    return p;
  }

  Path path_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::X: take(); return next(expr());
      case Tok::G: take(); return globally(expr());
      case Tok::LParen: {
        take();
        auto a = expr();
        expect(Tok::U);
        auto b = expr();
        expect(Tok::RParen);
        return until(a, b);
      }
      default:
        throw ParseError(std::string("expected path formula, found ") + describe(t.kind), t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Dialect dialect_;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse_state_formula(const std::string& text, Dialect dialect,
                            const std::set<std::string>& free) {
  return Parser(text, dialect, free).parse_top();
}

Path parse_path_formula(const std::string& text, Dialect dialect,
                        const std::set<std::string>& free) {
  return Parser(text, dialect, free).parse_path_top();
}

// ---------------------------------------------------------------------------
// Traversals

namespace {

void check_dialect_path(const Path& p, Dialect d);

void check_dialect_rec(const Formula& f, Dialect d) {
  switch (f->op) {
    case Op::Mu:
    case Op::Nu:
      if (d != Dialect::mu) throw InputError("fixpoint binder outside the mu dialect");
      break;
    case Op::Brak:
      for (const auto& [c, p] : f->goals.entries()) check_dialect_path(p, d);
      return;
    default: break;
  }
  if (f->left) check_dialect_rec(f->left, d);
  if (f->right) check_dialect_rec(f->right, d);
}

void check_dialect_path(const Path& p, Dialect d) {
  if (p->op == PathOp::And) {
    if (d == Dialect::tlcga) throw InputError("path conjunction requires the tlcga_plus dialect");
    check_dialect_path(p->pleft, d);
    check_dialect_path(p->pright, d);
    return;
  }
  check_dialect_rec(p->left, d);
  if (p->right) check_dialect_rec(p->right, d);
}

template <class Fn>
void for_each_path_state(const Path& p, Fn&& fn) {
  if (p->op == PathOp::And) {
    for_each_path_state(p->pleft, fn);
    for_each_path_state(p->pright, fn);
    return;
  }
  fn(p->left);
  if (p->right) fn(p->right);
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f->op) {
    case Op::Var:
      if (std::find(bound.begin(), bound.end(), f->name) == bound.end()) out.insert(f->name);
      return;
    case Op::Mu:
    case Op::Nu:
      bound.push_back(f->name);
      collect_free(f->left, bound, out);
      bound.pop_back();
      return;
    case Op::Brak:
      for (const auto& [c, p] : f->goals.entries())
        for_each_path_state(p, [&](const Formula& g) { collect_free(g, bound, out); });
      return;
    default:
      if (f->left) collect_free(f->left, bound, out);
      if (f->right) collect_free(f->right, bound, out);
  }
}

template <class Fn>
void walk(const Formula& f, Fn& fn) {
  fn(f);
  if (f->op == Op::Brak) {
    for (const auto& [c, p] : f->goals.entries())
      for_each_path_state(p, [&](const Formula& g) { walk(g, fn); });
    return;
  }
  if (f->left) walk(f->left, fn);
  if (f->right) walk(f->right, fn);
}

}  // namespace

void check_dialect(const Formula& f, Dialect dialect) { check_dialect_rec(f, dialect); }

std::set<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  auto fn = [&](const Formula& g) {
    if (g->op == Op::Prop) out.insert(g->name);
  };
  walk(f, fn);
  return out;
}

std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> out;
  auto fn = [&](const Formula& g) {
    if (g->op == Op::Brak)
      for (const auto& [c, p] : g->goals.entries()) out.insert(c.begin(), c.end());
  };
  walk(f, fn);
  return out;
}

std::set<std::string> identifiers(const Formula& f) {
  std::set<std::string> out;
  auto fn = [&](const Formula& g) {
    if (!g->name.empty()) out.insert(g->name);
  };
  walk(f, fn);
  return out;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 0;
  auto fn = [&](const Formula&) { ++n; };
  walk(f, fn);
  return n;
}

namespace {

template <class Fn>
Path map_path(const Path& p, Fn&& fn) {
  switch (p->op) {
    case PathOp::Next: return next(fn(p->left));
    case PathOp::Globally: return globally(fn(p->left));
    case PathOp::Until: return until(fn(p->left), fn(p->right));
    case PathOp::And: return path_and(map_path(p->pleft, fn), map_path(p->pright, fn));
  }
  return p;
}

template <class Fn>
GoalAssignment map_goals(const GoalAssignment& g, Fn&& fn) {
  GoalAssignment out;
  for (const auto& [c, p] : g.entries()) out = out.updated(c, map_path(p, fn));
  return out;
}

}  // namespace

Formula desugar(const Formula& f) {
  switch (f->op) {
    case Op::True:
    case Op::Prop:
    case Op::Var: return f;
    case Op::False: return neg(f_true());
    case Op::Not: return neg(desugar(f->left));
    case Op::And: return conj(desugar(f->left), desugar(f->right));
    case Op::Or: return disj(desugar(f->left), desugar(f->right));
    case Op::Implies: return disj(neg(desugar(f->left)), desugar(f->right));
    case Op::Brak: return brak(desugar(f->goals));
    case Op::Mu: return mu(f->name, desugar(f->left));
    case Op::Nu: return nu(f->name, desugar(f->left));
  }
  return f;
}

Path desugar(const Path& p) {
  return map_path(p, [](const Formula& g) { return desugar(g); });
}

GoalAssignment desugar(const GoalAssignment& g) {
  return map_goals(g, [](const Formula& h) { return desugar(h); });
}

Formula substitute(const Formula& f, const std::string& v, const Formula& by) {
  switch (f->op) {
    case Op::Var: return f->name == v ? by : f;
    case Op::True:
    case Op::False:
    case Op::Prop: return f;
    case Op::Not: return neg(substitute(f->left, v, by));
    case Op::And: return conj(substitute(f->left, v, by), substitute(f->right, v, by));
    case Op::Or: return disj(substitute(f->left, v, by), substitute(f->right, v, by));
    case Op::Implies: return implies(substitute(f->left, v, by), substitute(f->right, v, by));
    case Op::Brak:
      return brak(map_goals(f->goals, [&](const Formula& g) { return substitute(g, v, by); }));
    case Op::Mu:
    case Op::Nu: {
      if (f->name == v) return f;
      auto body = substitute(f->left, v, by);
      return f->op == Op::Mu ? mu(f->name, body) : nu(f->name, body);
    }
  }
  return f;
}

Formula overline(const Formula& f) {
  if (f->op == Op::Not) return f->left;
  return neg(f);
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(GoalType t) {
  switch (t) {
    case GoalType::Nexttime: return "nexttime";
    case GoalType::LongTermTypeU: return "long-term-U";
    case GoalType::LongTermTypeG: return "long-term-G";
    case GoalType::Mixed: return "mixed";
  }
  return "?";
}

GoalType classify(const GoalAssignment& g) {
  bool has_x = false, has_u = false, has_g = false;
  for (const auto& [c, p] : g.entries()) {
    for (const auto& q : path_conjuncts(p)) {
      if (q->op == PathOp::Next) has_x = true;
      if (q->op == PathOp::Until) has_u = true;
      if (q->op == PathOp::Globally) has_g = true;
    }
  }
  if (!has_u && !has_g) return GoalType::Nexttime;
  if (has_x) return GoalType::Mixed;
  return has_u ? GoalType::LongTermTypeU : GoalType::LongTermTypeG;
}

bool is_long_term(const GoalAssignment& g) {
  auto t = classify(g);
  return t == GoalType::LongTermTypeU || t == GoalType::LongTermTypeG;
}

std::pair<GoalAssignment, GoalAssignment> split_lfor_xfor(const GoalAssignment& g) {
  GoalAssignment lfor, xfor;
  for (const auto& [c, p] : g.entries()) {
    std::vector<Path> lt, xs;
    for (const auto& q : path_conjuncts(p)) (q->op == PathOp::Next ? xs : lt).push_back(q);
    if (!lt.empty()) lfor = lfor.updated(c, path_conjunction(lt));
    if (!xs.empty()) xfor = xfor.updated(c, path_conjunction(xs));
  }
  return {lfor, xfor};
}

}  // namespace tlcga
