#include "phplab/formula.hpp"

#include "phplab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

namespace phplab {

struct Formula::Node {
  FormulaKind kind;
  std::optional<Term> pigeon;
  std::optional<Term> hole;
  std::string var;
  int bound = 0;
  std::vector<Formula> kids;
};

std::string Term::to_string() const {
  return is_variable() ? name() : std::to_string(value());
}

Formula Formula::atom(Term pigeon, Term hole) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Atom, std::move(pigeon), std::move(hole), {}, 0, {}}));
}

Formula Formula::neg_atom(Term pigeon, Term hole) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::NegAtom, std::move(pigeon), std::move(hole), {}, 0, {}}));
}

Formula Formula::conj(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::And, std::nullopt, std::nullopt, {}, 0, {std::move(left), std::move(right)}}));
}

Formula Formula::disj(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Or, std::nullopt, std::nullopt, {}, 0, {std::move(left), std::move(right)}}));
}

Formula Formula::negation(Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Not, std::nullopt, std::nullopt, {}, 0, {std::move(body)}}));
}

Formula Formula::forall_le(std::string var, int bound, Formula body) {
  if (bound < 0) throw DomainError("negative quantifier bound");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::ForallLe, std::nullopt, std::nullopt, std::move(var), bound, {std::move(body)}}));
}

Formula Formula::exists_le(std::string var, int bound, Formula body) {
  if (bound < 0) throw DomainError("negative quantifier bound");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::ExistsLe, std::nullopt, std::nullopt, std::move(var), bound, {std::move(body)}}));
}

FormulaKind Formula::kind() const { return node_->kind; }
const Term& Formula::pigeon() const { return *node_->pigeon; }
const Term& Formula::hole() const { return *node_->hole; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const Formula& Formula::body() const { return node_->kids.at(0); }
const std::string& Formula::var() const { return node_->var; }
int Formula::bound() const { return node_->bound; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.pigeon == y.pigeon && x.hole == y.hole && x.var == y.var &&
         x.bound == y.bound && x.kids == y.kids;
}

namespace {

bool is_unary(const Formula& f) {
  return f.kind() != FormulaKind::And && f.kind() != FormulaKind::Or;
}

std::string atom_text(const Formula& f) {
  return "R(" + f.pigeon().to_string() + "," + f.hole().to_string() + ")";
}

std::string wrap_unless_unary(const Formula& f) {
  return is_unary(f) ? to_string(f) : "(" + to_string(f) + ")";
}

}  // namespace

std::string to_string(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return atom_text(f);
    case FormulaKind::NegAtom:
      return "!" + atom_text(f);
    case FormulaKind::Not:
      // `!R(...)` is reserved for negated atoms.
      if (f.body().kind() == FormulaKind::Atom) return "!(" + atom_text(f.body()) + ")";
      return "!" + wrap_unless_unary(f.body());
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe:
      return std::string(f.kind() == FormulaKind::ForallLe ? "A " : "E ") + f.var() +
             " <= " + std::to_string(f.bound()) + " . " + wrap_unless_unary(f.body());
    case FormulaKind::And: {
      std::string l = f.left().kind() == FormulaKind::Or ? "(" + to_string(f.left()) + ")"
                                                          : to_string(f.left());
      return l + " & " + wrap_unless_unary(f.right());
    }
    case FormulaKind::Or: {
      std::string r = f.right().kind() == FormulaKind::Or ? "(" + to_string(f.right()) + ")"
                                                           : to_string(f.right());
      return to_string(f.left()) + " | " + r;
    }
  }
  return {};
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok { Int, Ident, LParen, RParen, Comma, Amp, Bar, Bang, Dot, Le, End };

struct Token {
  Tok kind;
  std::string text;
  long value = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::End, {}, 0, line, column};
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      if (t.text.size() > 9) throw ParseError("integer literal too large", line, column);
      t.value = std::stol(t.text);
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '<' && i + 1 < src.size() && src[i + 1] == '=') {
      t.kind = Tok::Le;
      t.text = "<=";
      advance(2);
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case ',': t.kind = Tok::Comma; break;
        case '&': t.kind = Tok::Amp; break;
        case '|': t.kind = Tok::Bar; break;
        case '!': t.kind = Tok::Bang; break;
        case '.': t.kind = Tok::Dot; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, column);
      }
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "end of input", 0, line, column});
  return out;
}

bool is_keyword(const std::string& s) { return s == "A" || s == "E" || s == "R"; }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<std::string>& free_vars)
      : tokens_(std::move(tokens)), scope_(free_vars.begin(), free_vars.end()) {}

  Formula parse() {
    Formula f = disj();
    if (peek().kind != Tok::End) fail("expected end of input, found '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return take();
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Bar) {
      take();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().kind == Tok::Amp) {
      take();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang:
        take();
        if (peek().kind == Tok::Ident && peek().text == "R") {
          auto [p, h] = atom_terms();
          return Formula::neg_atom(p, h);
        }
        return Formula::negation(unary());
      case Tok::LParen: {
        take();
        Formula f = disj();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        if (t.text == "R") {
          auto [p, h] = atom_terms();
          return Formula::atom(p, h);
        }
        if (t.text == "A" || t.text == "E") return quantifier();
        fail("expected formula, found identifier '" + t.text + "'");
      default:
        fail("expected formula, found '" + t.text + "'");
    }
  }

  Formula quantifier() {
    const bool universal = take().text == "A";
    const Token& v = expect(Tok::Ident, "variable");
    if (is_keyword(v.text)) {
      throw ParseError("'" + v.text + "' cannot be a variable", v.line, v.column);
    }
    const std::string name = v.text;
    expect(Tok::Le, "'<='");
    const Token& b = expect(Tok::Int, "integer bound");
    if (b.value < 0) throw ParseError("negative quantifier bound", b.line, b.column);
    const int bound = static_cast<int>(b.value);
    expect(Tok::Dot, "'.'");
    scope_.push_back(name);
    Formula body = unary();
    scope_.pop_back();
    return universal ? Formula::forall_le(name, bound, body) : Formula::exists_le(name, bound, body);
  }

  std::pair<Term, Term> atom_terms() {
    take();  // R
    expect(Tok::LParen, "'('");
    Term p = term();
    expect(Tok::Comma, "','");
    Term h = term();
    expect(Tok::RParen, "')'");
    return {p, h};
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      if (t.value < 0) fail("negative index in atom");
      take();
      return Term::constant(static_cast<int>(t.value));
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      if (std::find(scope_.begin(), scope_.end(), t.text) == scope_.end()) {
        fail("unbound variable '" + t.text + "'");
      }
      take();
      return Term::variable(t.text);
    }
    fail("expected integer or variable, found '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::vector<std::string>& free_vars) {
  return Parser(tokenize(text), free_vars).parse();
}

// --- structure --------------------------------------------------------------

std::string to_string(FormulaShape shape) {
  switch (shape) {
    case FormulaShape::Atomic: return "atomic";
    case FormulaShape::SharplyBounded: return "sharply-bounded";
    case FormulaShape::ExistentialPrefix: return "existential-prefix";
    case FormulaShape::General: return "general";
  }
  return {};
}

namespace {

struct ShapeScan {
  bool has_existential = false;
  bool existential_under_universal = false;
};

void scan(const Formula& f, bool negated, bool under_universal, ShapeScan& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      scan(f.left(), negated, under_universal, out);
      scan(f.right(), negated, under_universal, out);
      return;
    case FormulaKind::Not:
      scan(f.body(), !negated, under_universal, out);
      return;
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe: {
      const bool existential = (f.kind() == FormulaKind::ExistsLe) != negated;
      if (existential) {
        out.has_existential = true;
        if (under_universal) out.existential_under_universal = true;
      }
      scan(f.body(), negated, under_universal || !existential, out);
      return;
    }
  }
}

}  // namespace

FormulaShape classify(const Formula& f) {
  if (f.is_atomic_node() ||
      (f.kind() == FormulaKind::Not && f.body().kind() == FormulaKind::Atom)) {
    return FormulaShape::Atomic;
  }
  ShapeScan s;
  scan(f, false, false, s);
  if (!s.has_existential) return FormulaShape::SharplyBounded;
  if (!s.existential_under_universal) return FormulaShape::ExistentialPrefix;
  return FormulaShape::General;
}

namespace {

Term substitute_term(const Term& t, const std::string& var, int value) {
  return (t.is_variable() && t.name() == var) ? Term::constant(value) : t;
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, int value) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return Formula::atom(substitute_term(f.pigeon(), var, value),
                           substitute_term(f.hole(), var, value));
    case FormulaKind::NegAtom:
      return Formula::neg_atom(substitute_term(f.pigeon(), var, value),
                               substitute_term(f.hole(), var, value));
    case FormulaKind::And:
      return Formula::conj(substitute(f.left(), var, value), substitute(f.right(), var, value));
    case FormulaKind::Or:
      return Formula::disj(substitute(f.left(), var, value), substitute(f.right(), var, value));
    case FormulaKind::Not:
      return Formula::negation(substitute(f.body(), var, value));
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe:
      if (f.var() == var) return f;  // shadowed
      return f.kind() == FormulaKind::ForallLe
                 ? Formula::forall_le(f.var(), f.bound(), substitute(f.body(), var, value))
                 : Formula::exists_le(f.var(), f.bound(), substitute(f.body(), var, value));
  }
  return f;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto term = [&](const Term& t) {
    if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name()) == bound.end()) {
      out.insert(t.name());
    }
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      term(f.pigeon());
      term(f.hole());
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case FormulaKind::Not:
      collect_free(f.body(), bound, out);
      return;
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const Formula& f) { return free_variables(f).empty(); }

int formula_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return 0;
    case FormulaKind::And:
    case FormulaKind::Or:
      return 1 + std::max(formula_depth(f.left()), formula_depth(f.right()));
    default:
      return 1 + formula_depth(f.body());
  }
}

std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return 1;
    case FormulaKind::And:
    case FormulaKind::Or:
      return 1 + node_count(f.left()) + node_count(f.right());
    default:
      return 1 + node_count(f.body());
  }
}

// --- pigeonhole instances ---------------------------------------------------

namespace {

// ∃ v < count, or the lone instance when count == 1.
Formula exists_below(const std::string& v, int count, const Formula& body) {
  return count == 1 ? substitute(body, v, 0) : Formula::exists_le(v, count - 1, body);
}

Formula forall_below(const std::string& v, int count, const Formula& body) {
  return count == 1 ? substitute(body, v, 0) : Formula::forall_le(v, count - 1, body);
}

std::optional<Formula> or_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return std::nullopt;
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

Term var(const char* name) { return Term::variable(name); }
Term num(int v) { return Term::constant(v); }

}  // namespace

Formula make_php_instance(PhpKind kind, int n_pigeons, int n_holes, std::size_t budget) {
  if (kind == PhpKind::Weak) {
    if (n_pigeons != 0 && n_pigeons != 2 * n_holes) {
      throw DomainError("weak instance has 2m pigeons for m holes");
    }
    n_pigeons = 2 * n_holes;
  }
  if (n_pigeons < 1 || n_holes < 1) throw DomainError("pigeon and hole counts must be >= 1");
  // Rough size check before building: the pair expansions dominate.
  const double estimate = 8.0 * (static_cast<double>(n_pigeons) * n_pigeons +
                                 static_cast<double>(n_pigeons) * n_holes * n_holes);
  if (estimate > static_cast<double>(budget) * 4) {
    throw BudgetError("pigeonhole instance too large for the node budget");
  }

  std::vector<Formula> clauses;
  // some pigeon has no hole
  clauses.push_back(exists_below(
      "a", n_pigeons, forall_below("b", n_holes, Formula::neg_atom(var("a"), var("b")))));
  // two pigeons share a hole
  std::vector<Formula> collisions;
  for (int a = 0; a < n_pigeons; ++a) {
    for (int a2 = a + 1; a2 < n_pigeons; ++a2) {
      collisions.push_back(exists_below(
          "b", n_holes,
          Formula::conj(Formula::atom(num(a), var("b")), Formula::atom(num(a2), var("b")))));
    }
  }
  if (auto c = or_all(collisions)) clauses.push_back(*c);
  // a pigeon takes two holes
  std::vector<Formula> splits;
  for (int b = 0; b < n_holes; ++b) {
    for (int b2 = b + 1; b2 < n_holes; ++b2) {
      splits.push_back(
          Formula::conj(Formula::atom(var("a"), num(b)), Formula::atom(var("a"), num(b2))));
    }
  }
  if (auto s = or_all(splits)) clauses.push_back(exists_below("a", n_pigeons, *s));
  if (kind == PhpKind::Onto) {
    clauses.push_back(exists_below(
        "b", n_holes, forall_below("a", n_pigeons, Formula::neg_atom(var("a"), var("b")))));
  }
  Formula result = *or_all(clauses);
  if (node_count(result) > budget) {
    throw BudgetError("pigeonhole instance has " + std::to_string(node_count(result)) +
                      " nodes, budget is " + std::to_string(budget));
  }
  return result;
}

}  // namespace phplab
