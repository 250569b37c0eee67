#include "phplab/tree_compiler.hpp"

#include "phplab/errors.hpp"

#include <map>

namespace phplab {

namespace {

enum class Tri { False, True, Unknown };

struct Value {
  Tri truth = Tri::Unknown;
  int query = -1;  // pigeon of the first unknown atom when truth is Unknown
};

using Env = std::map<std::string, int>;

int resolve(const Term& t, const Env& env) {
  if (!t.is_variable()) return t.value();
  return env.at(t.name());
}

Value atom_value(int a, int b, const Condition& used, const Scale& s) {
  if (a > s.n || b >= s.n) return {Tri::False};
  if (used.contains({a, b})) return {Tri::True};
  if (used.has_pigeon(a) || used.has_hole(b)) return {Tri::False};
  return {Tri::Unknown, a};
}

Value flip(Value v) {
  if (v.truth == Tri::True) v.truth = Tri::False;
  else if (v.truth == Tri::False) v.truth = Tri::True;
  return v;
}

// Folds operands left to right. `absorbing` decides the result outright;
// an unknown result reports the first unknown operand's query.
template <typename Next>
Value fold(Tri absorbing, int count, Next next) {
  Value first_unknown;
  bool any_unknown = false;
  for (int i = 0; i < count; ++i) {
    const Value v = next(i);
    if (v.truth == absorbing) return v;
    if (v.truth == Tri::Unknown && !any_unknown) {
      first_unknown = v;
      any_unknown = true;
    }
  }
  if (any_unknown) return first_unknown;
  return {absorbing == Tri::True ? Tri::False : Tri::True};
}

Value evaluate(const Formula& f, Env& env, const Condition& used, const Scale& s) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return atom_value(resolve(f.pigeon(), env), resolve(f.hole(), env), used, s);
    case FormulaKind::NegAtom:
      return flip(atom_value(resolve(f.pigeon(), env), resolve(f.hole(), env), used, s));
    case FormulaKind::Not:
      return flip(evaluate(f.body(), env, used, s));
    case FormulaKind::And:
    case FormulaKind::Or: {
      const Tri absorbing = f.kind() == FormulaKind::And ? Tri::False : Tri::True;
      return fold(absorbing, 2, [&](int i) {
        return evaluate(i == 0 ? f.left() : f.right(), env, used, s);
      });
    }
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe: {
      const Tri absorbing = f.kind() == FormulaKind::ForallLe ? Tri::False : Tri::True;
      auto saved = env.find(f.var()) == env.end() ? std::optional<int>()
                                                  : std::optional<int>(env.at(f.var()));
      const Value v = fold(absorbing, f.bound() + 1, [&](int i) {
        env[f.var()] = i;
        return evaluate(f.body(), env, used, s);
      });
      if (saved) env[f.var()] = *saved;
      else env.erase(f.var());
      return v;
    }
  }
  return {};
}

NodePtr compile_node(const Formula& phi, const Condition& used, int depth, const Scale& s,
                     const CompileOptions& options) {
  Env env;
  const Value v = evaluate(phi, env, used, s);
  if (v.truth != Tri::Unknown) return make_leaf(v.truth == Tri::True);
  if (options.max_depth && depth >= *options.max_depth) {
    throw RegimeError("compiled tree exceeds depth " + std::to_string(*options.max_depth));
  }
  std::map<int, NodePtr> children;
  for (int h = 0; h < s.holes(); ++h) {
    if (used.has_hole(h)) continue;
    children.emplace(h, compile_node(phi, used.with({v.query, h}), depth + 1, s, options));
  }
  return make_pigeon_query(v.query, std::move(children));
}

}  // namespace

PhpTree compile(const Formula& phi, const Condition& sigma, const Scale& s,
                const CompileOptions& options) {
  if (!is_closed(phi)) throw ShapeError("compile needs a closed formula: " + to_string(phi));
  if (classify(phi) == FormulaShape::General) {
    throw ShapeError("compile supports atomic, sharply-bounded and existential-prefix "
                     "formulas; got " + to_string(phi));
  }
  if (!in_range(sigma, s)) throw PreconditionError("base " + sigma.to_string() + " out of range");
  return PhpTree(s, sigma, compile_node(phi, sigma, 0, s, options));
}

LeafFamily accepting_leaves(const PhpTree& t) {
  LeafFamily out{t.base(), {}};
  for (const LabeledLeaf& l : labeled_leaves(t)) {
    if (l.mark.value_or(false)) out.leaves.push_back(l.label);
  }
  std::sort(out.leaves.begin(), out.leaves.end());
  return out;
}

WArray build_array_from_formula(const Formula& phi, int m, const Condition& sigma,
                                const Scale& s, const std::string& x, const std::string& y,
                                const CompileOptions& options) {
  for (const std::string& v : free_variables(phi)) {
    if (v != x && v != y) throw ShapeError("unexpected free variable " + v);
  }
  WArray A = WArray::empty(m, 1, sigma, s);
  std::size_t widest = 1;
  for (int a = 0; a < A.rows(); ++a) {
    for (int b = 0; b < A.cols(); ++b) {
      const Formula inst = substitute(substitute(phi, x, a), y, b);
      A.cell(a, b) = accepting_leaves(compile(inst, sigma, s, options)).leaves;
      for (const Condition& c : A.cell(a, b)) widest = std::max(widest, c.size());
    }
  }
  A.k = static_cast<int>(widest);
  return A;
}

ViolationReport find_forced_violation(const Condition& sigma, const Formula& phi, int m,
                                      ForcingContext& ctx, const std::string& x,
                                      const std::string& y) {
  if (m < 1) throw DomainError("violation check needs m >= 1");
  auto inst = [&](int a, int b) { return substitute(substitute(phi, x, a), y, b); };
  const int rows = 2 * m;
  for (int b = 0; b < m; ++b) {
    for (int a = 0; a < rows; ++a) {
      for (int a2 = a + 1; a2 < rows; ++a2) {
        if (ctx.forces(sigma, Formula::conj(inst(a, b), inst(a2, b)))) {
          return {true, "column-collision", a, a2, b, b};
        }
      }
    }
  }
  for (int a = 0; a < rows; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int b2 = b + 1; b2 < m; ++b2) {
        if (ctx.forces(sigma, Formula::conj(inst(a, b), inst(a, b2)))) {
          return {true, "row-collision", a, a, b, b2};
        }
      }
    }
  }
  for (int a = 0; a < rows; ++a) {
    bool empty = true;
    for (int b = 0; b < m && empty; ++b) empty = ctx.forces(sigma, Formula::negation(inst(a, b)));
    if (empty) return {true, "empty-row", a, -1, -1, -1};
  }
  return {};
}

bool violation_forced(const Condition& sigma, const Formula& phi, int m, ForcingContext& ctx,
                      const std::string& x, const std::string& y) {
  return find_forced_violation(sigma, phi, m, ctx, x, y).forced;
}

}  // namespace phplab
