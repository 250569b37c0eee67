#ifndef PHPLAB_FORMULA_HPP
#define PHPLAB_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phplab {

/// An integer constant or a bound variable.
class Term {
 public:
  static Term constant(int value) { return Term(value); }
  static Term variable(std::string name) { return Term(std::move(name)); }

  bool is_variable() const { return std::holds_alternative<std::string>(value_); }
  int value() const { return std::get<int>(value_); }
  const std::string& name() const { return std::get<std::string>(value_); }

  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  explicit Term(int v) : value_(v) {}
  explicit Term(std::string v) : value_(std::move(v)) {}
  std::variant<int, std::string> value_;
};

enum class FormulaKind { Atom, NegAtom, And, Or, Not, ForallLe, ExistsLe };

/// Immutable AST of a bounded relational formula over atoms R(pigeon, hole).
/// Quantifier bounds are inclusive: `A u <= 2 . φ` ranges over u = 0, 1, 2.
class Formula {
 public:
  static Formula atom(Term pigeon, Term hole);
  static Formula neg_atom(Term pigeon, Term hole);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula negation(Formula body);
  static Formula forall_le(std::string var, int bound, Formula body);
  static Formula exists_le(std::string var, int bound, Formula body);

  // Convenience for constant atoms.
  static Formula atom(int pigeon, int hole) {
    return atom(Term::constant(pigeon), Term::constant(hole));
  }
  static Formula neg_atom(int pigeon, int hole) {
    return neg_atom(Term::constant(pigeon), Term::constant(hole));
  }

  FormulaKind kind() const;
  bool is_atomic_node() const {
    return kind() == FormulaKind::Atom || kind() == FormulaKind::NegAtom;
  }
  bool is_quantifier() const {
    return kind() == FormulaKind::ForallLe || kind() == FormulaKind::ExistsLe;
  }

  // Atom / NegAtom
  const Term& pigeon() const;
  const Term& hole() const;
  // And / Or
  const Formula& left() const;
  const Formula& right() const;
  // Not / ForallLe / ExistsLe
  const Formula& body() const;
  // ForallLe / ExistsLe
  const std::string& var() const;
  int bound() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Canonical text; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Parses the surface grammar
///
///   formula := disj
///   disj    := conj ("|" conj)*
///   conj    := unary ("&" unary)*
///   unary   := "!" unary | ("A" | "E") var "<=" int "." unary
///            | "R(" term "," term ")" | "(" formula ")"
///   term    := int | var
///
/// `!R(a,b)` yields a negated atom; `!(R(a,b))` yields Not over an atom.
/// Variables not bound by a quantifier must appear in `free_vars`.
/// Throws ParseError with line and column.
Formula parse_formula(std::string_view text, const std::vector<std::string>& free_vars = {});

enum class FormulaShape { Atomic, SharplyBounded, ExistentialPrefix, General };

std::string to_string(FormulaShape shape);

/// Most specific class among atomic ⊂ sharply-bounded ⊂ existential-prefix ⊂
/// general. A quantifier is read as existential when it is an `E` under an
/// even number of negations or an `A` under an odd number. Formulas without
/// existential quantifiers are sharply bounded; formulas whose existential
/// quantifiers can all be pulled to the front (none sits inside a universal
/// one) are existential-prefix; the rest are general.
FormulaShape classify(const Formula& f);

Formula substitute(const Formula& f, const std::string& var, int value);
std::set<std::string> free_variables(const Formula& f);
bool is_closed(const Formula& f);

/// Nesting depth; atoms have depth 0.
int formula_depth(const Formula& f);
std::size_t node_count(const Formula& f);

enum class PhpKind { Plain, Onto, Weak };

constexpr std::size_t kDefaultInstanceBudget = 200'000;

/// The pigeonhole disjunction for R on n_pigeons × n_holes. Pairs a != a'
/// (and b != b') are expanded into explicit disjunctions; a quantifier over a
/// single value is replaced by its instance. For PhpKind::Weak, n_holes is m
/// and n_pigeons must be 0 or 2m. Throws BudgetError past `budget` AST nodes.
Formula make_php_instance(PhpKind kind, int n_pigeons, int n_holes,
                          std::size_t budget = kDefaultInstanceBudget);

}  // namespace phplab

#endif  // PHPLAB_FORMULA_HPP
