#pragma once

// Propositional formulas over the connectives &, |, !, top, bot.
//
// Formulas are immutable trees with shared_ptr structure sharing, so the
// syntactic transforms below (nnf, freshen, restrict) produce DAGs whose
// shared subterms are evaluated once by the valuation layer. All functions
// here are pure; Formula values are safe to copy and share across threads.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qlog {

enum class Kind : std::uint8_t { var, top, bot, neg, conj, disj };

class Formula {
 public:
  struct Node {
    Kind kind;
    std::string name;                    // var only
    std::shared_ptr<const Node> lhs;     // neg: child, conj/disj: left
    std::shared_ptr<const Node> rhs;     // conj/disj: right
  };
  using NodePtr = std::shared_ptr<const Node>;

  // Default-constructed formula is top.
  Formula() : node_(top_node()) {}

  static Formula var(std::string name);
  static Formula top() { return Formula(top_node()); }
  static Formula bot() { return Formula(bot_node()); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }

  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }
  Formula child() const { return Formula(node_->lhs); }

  // Stable identity of the underlying node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  friend Formula operator!(const Formula& f) {
    return Formula(make(Kind::neg, f.node_, nullptr));
  }
  friend Formula operator&(const Formula& a, const Formula& b) {
    return Formula(make(Kind::conj, a.node_, b.node_));
  }
  friend Formula operator|(const Formula& a, const Formula& b) {
    return Formula(make(Kind::disj, a.node_, b.node_));
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    return structurally_equal(a, b);
  }
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !structurally_equal(a, b);
  }

  static bool structurally_equal(const Formula& a, const Formula& b);

 private:
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static NodePtr make(Kind k, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }
  static const NodePtr& top_node() {
    static const NodePtr n = make(Kind::top, nullptr, nullptr);
    return n;
  }
  static const NodePtr& bot_node() {
    static const NodePtr n = make(Kind::bot, nullptr, nullptr);
    return n;
  }

  NodePtr node_;
};

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t offset)
      : std::runtime_error(std::move(msg) + " (byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

struct VariableOverlapError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}

inline bool valid_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return s != "top" && s != "bot";
}

inline Formula Formula::var(std::string name) {
  if (!valid_identifier(name))
    throw std::invalid_argument("invalid variable name: '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::var;
  n->name = std::move(name);
  return Formula(NodePtr(n));
}

inline bool Formula::structurally_equal(const Formula& a, const Formula& b) {
  // Pairs already proven equal; keeps shared-subterm comparisons linear.
  struct PairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const {
      auto h = std::hash<const void*>{};
      return h(p.first) * 1000003u ^ h(p.second);
    }
  };
  std::unordered_set<std::pair<const void*, const void*>, PairHash> proven;

  struct Rec {
    decltype(proven)& memo;
    bool eq(const NodePtr& x, const NodePtr& y) {
      if (x == y) return true;
      if (!x || !y) return false;
      if (x->kind != y->kind) return false;
      auto key = std::make_pair<const void*, const void*>(x.get(), y.get());
      if (memo.count(key)) return true;
      bool ok = false;
      switch (x->kind) {
        case Kind::var: ok = x->name == y->name; break;
        case Kind::top:
        case Kind::bot: ok = true; break;
        case Kind::neg: ok = eq(x->lhs, y->lhs); break;
        case Kind::conj:
        case Kind::disj: ok = eq(x->lhs, y->lhs) && eq(x->rhs, y->rhs); break;
      }
      if (ok) memo.insert(key);
      return ok;
    }
  } rec{proven};
  return rec.eq(a.node_, b.node_);
}

// ---------------------------------------------------------------------------
// Traversal helpers

namespace detail {

template <typename F>
void visit_dag(const Formula& f, std::unordered_set<const void*>& seen, F&& fn) {
  if (seen.count(f.id())) return;
  seen.insert(f.id());
  fn(f);
  switch (f.kind()) {
    case Kind::neg:
      visit_dag(f.child(), seen, fn);
      break;
    case Kind::conj:
    case Kind::disj:
      visit_dag(f.left(), seen, fn);
      visit_dag(f.right(), seen, fn);
      break;
    default:
      break;
  }
}

}  // namespace detail

// Variable names in first-occurrence order. Revisiting a shared subterm
// cannot introduce a first occurrence, so the DAG shortcut is order-safe.
inline std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> have;
  std::unordered_set<const void*> seen;
  detail::visit_dag(f, seen, [&](const Formula& g) {
    if (g.is(Kind::var) && have.insert(g.name()).second) out.push_back(g.name());
  });
  return out;
}

// Size of the formula as a tree (shared subterms counted each time).
inline std::uint64_t node_count(const Formula& f) {
  std::unordered_map<const void*, std::uint64_t> memo;
  struct Rec {
    std::unordered_map<const void*, std::uint64_t>& memo;
    std::uint64_t count(const Formula& g) {
      auto it = memo.find(g.id());
      if (it != memo.end()) return it->second;
      std::uint64_t c = 1;
      switch (g.kind()) {
        case Kind::neg: c += count(g.child()); break;
        case Kind::conj:
        case Kind::disj: c += count(g.left()) + count(g.right()); break;
        default: break;
      }
      memo.emplace(g.id(), c);
      return c;
    }
  } rec{memo};
  return rec.count(f);
}

// ---------------------------------------------------------------------------
// Parser
//
// formula := or ; or := and { ("|" | "∨") and } ; and := not { ("&" | "∧") not }
// not := ("!" | "¬") not | atom
// atom := ident | "top" | "⊤" | "1" | "bot" | "⊥" | "0" | "(" formula ")"
// ident := letter { letter | digit | "_" }
// Whitespace is insignificant. Binary operators are left-associative.

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty input", pos_);
    Formula f = parse_or();
    skip_ws();
    if (pos_ < text_.size())
      throw ParseError("trailing input after formula", pos_);
    return f;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        ++pos_;
      else
        break;
    }
  }

  bool eat(std::string_view tok) {
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  Formula parse_or() {
    Formula f = parse_and();
    for (;;) {
      skip_ws();
      if (eat("|") || eat("∨"))
        f = f | parse_and();
      else
        return f;
    }
  }

  Formula parse_and() {
    Formula f = parse_not();
    for (;;) {
      skip_ws();
      if (eat("&") || eat("∧"))
        f = f & parse_not();
      else
        return f;
    }
  }

  Formula parse_not() {
    skip_ws();
    if (eat("!") || eat("¬")) return !parse_not();
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("formula expected", pos_);
    std::size_t start = pos_;
    if (eat("(")) {
      Formula f = parse_or();
      skip_ws();
      if (!eat(")")) throw ParseError("unbalanced parenthesis: ')' expected", pos_);
      return f;
    }
    if (eat("⊤") || eat("1")) return Formula::top();
    if (eat("⊥") || eat("0")) return Formula::bot();
    char c = text_[pos_];
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < text_.size() && is_ident_char(text_[end])) ++end;
      std::string ident(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (ident == "top") return Formula::top();
      if (ident == "bot") return Formula::bot();
      return Formula::var(std::move(ident));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer. Canonical ASCII output with minimal parentheses under the
// precedence ! > & > |, binary operators left-associative. parse(print(f))
// reproduces f structurally.

namespace detail {

inline int precedence(Kind k) {
  switch (k) {
    case Kind::disj: return 0;
    case Kind::conj: return 1;
    case Kind::neg: return 2;
    default: return 3;
  }
}

inline void print_rec(const Formula& f, int min_level, std::string& out) {
  int level = precedence(f.kind());
  bool parens = level < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case Kind::var: out += f.name(); break;
    case Kind::top: out += "top"; break;
    case Kind::bot: out += "bot"; break;
    case Kind::neg:
      out += '!';
      print_rec(f.child(), 2, out);
      break;
    case Kind::conj:
      print_rec(f.left(), 1, out);
      out += " & ";
      print_rec(f.right(), 2, out);
      break;
    case Kind::disj:
      print_rec(f.left(), 0, out);
      out += " | ";
      print_rec(f.right(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Negation normal form: negations pushed to variables via De Morgan,
// !top -> bot, !bot -> top, double negations removed. No other rewriting.

inline Formula nnf(const Formula& f) {
  using Key = std::pair<const void*, bool>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.first) * 2u + (k.second ? 1u : 0u);
    }
  };
  std::unordered_map<Key, Formula, KeyHash> memo;

  struct Rec {
    std::unordered_map<Key, Formula, KeyHash>& memo;
    Formula go(const Formula& g, bool negated) {
      Key key{g.id(), negated};
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      Formula out;
      switch (g.kind()) {
        case Kind::var: out = negated ? !g : g; break;
        case Kind::top: out = negated ? Formula::bot() : Formula::top(); break;
        case Kind::bot: out = negated ? Formula::top() : Formula::bot(); break;
        case Kind::neg: out = go(g.child(), !negated); break;
        case Kind::conj:
          out = negated ? (go(g.left(), true) | go(g.right(), true))
                        : (go(g.left(), false) & go(g.right(), false));
          break;
        case Kind::disj:
          out = negated ? (go(g.left(), true) & go(g.right(), true))
                        : (go(g.left(), false) | go(g.right(), false));
          break;
      }
      memo.emplace(key, out);
      return out;
    }
  } rec{memo};
  return rec.go(f, false);
}

// ---------------------------------------------------------------------------
// Renaming: appends a suffix to every variable name.

inline Formula freshen(const Formula& f, const std::string& suffix) {
  if (suffix.empty()) throw std::invalid_argument("freshen: empty suffix");
  for (char c : suffix)
    if (!is_ident_char(c))
      throw std::invalid_argument("freshen: suffix must be letters, digits or '_'");
  std::unordered_map<const void*, Formula> memo;
  struct Rec {
    const std::string& suffix;
    std::unordered_map<const void*, Formula>& memo;
    Formula go(const Formula& g) {
      auto it = memo.find(g.id());
      if (it != memo.end()) return it->second;
      Formula out;
      switch (g.kind()) {
        case Kind::var: out = Formula::var(g.name() + suffix); break;
        case Kind::top: out = Formula::top(); break;
        case Kind::bot: out = Formula::bot(); break;
        case Kind::neg: out = !go(g.child()); break;
        case Kind::conj: out = go(g.left()) & go(g.right()); break;
        case Kind::disj: out = go(g.left()) | go(g.right()); break;
      }
      memo.emplace(g.id(), out);
      return out;
    }
  } rec{suffix, memo};
  return rec.go(f);
}

// ---------------------------------------------------------------------------
// Restriction, the relativization of alpha to the subspace computed by beta.
//
// alpha is first brought to negation normal form. Then each positive leaf
// u is replaced by (u & beta), each leaf !u by (!(u & beta) & beta), top
// leaves by beta (the relative top) and bot leaves stay bot. Restricting to
// the literal top formula returns nnf(alpha) unchanged: the relative top is
// the whole space and the construction degenerates to the identity.
//
// The variable sets of alpha and beta must be disjoint; callers rename with
// freshen() before restricting.

inline Formula restrict_to(const Formula& alpha, const Formula& beta) {
  {
    std::unordered_set<std::string> beta_vars;
    for (const auto& v : variables(beta)) beta_vars.insert(v);
    for (const auto& v : variables(alpha))
      if (beta_vars.count(v))
        throw VariableOverlapError("restrict: variable '" + v +
                                   "' occurs in both formulas");
  }
  if (beta.is(Kind::top)) return nnf(alpha);

  Formula a = nnf(alpha);
  std::unordered_map<const void*, Formula> memo;
  struct Rec {
    const Formula& beta;
    std::unordered_map<const void*, Formula>& memo;
    Formula go(const Formula& g) {
      auto it = memo.find(g.id());
      if (it != memo.end()) return it->second;
      Formula out;
      switch (g.kind()) {
        case Kind::var: out = g & beta; break;
        case Kind::neg: out = !(g.child() & beta) & beta; break;  // child is a var
        case Kind::top: out = beta; break;
        case Kind::bot: out = Formula::bot(); break;
        case Kind::conj: out = go(g.left()) & go(g.right()); break;
        case Kind::disj: out = go(g.left()) | go(g.right()); break;
      }
      memo.emplace(g.id(), out);
      return out;
    }
  } rec{beta, memo};
  return rec.go(a);
}

// ---------------------------------------------------------------------------
// Named formulas.

// P(a,b) = (a | !b) & b, the image of the projection onto b composed with
// the projection onto a.
inline Formula mk_P(const std::string& a, const std::string& b) {
  return (Formula::var(a) | !Formula::var(b)) & Formula::var(b);
}

// alpha(a,b) = P(b,a) & !(a & b). Distributively a tautology; on subspace
// lattices its top dimension is floor(n/2).
inline Formula mk_alpha(const std::string& a, const std::string& b) {
  return mk_P(b, a) & !(Formula::var(a) & Formula::var(b));
}

}  // namespace qlog
