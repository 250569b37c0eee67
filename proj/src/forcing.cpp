#include "phplab/forcing.hpp"

#include "phplab/errors.hpp"

namespace phplab {

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::NegAtom:
      return f;
    case FormulaKind::And:
      return Formula::conj(normalize(f.left()), normalize(f.right()));
    case FormulaKind::Or:
      return Formula::disj(normalize(f.left()), normalize(f.right()));
    case FormulaKind::ForallLe:
      return Formula::forall_le(f.var(), f.bound(), normalize(f.body()));
    case FormulaKind::ExistsLe:
      return Formula::exists_le(f.var(), f.bound(), normalize(f.body()));
    case FormulaKind::Not:
      break;
  }
  const Formula& g = f.body();
  if (g.kind() == FormulaKind::Atom) return Formula::neg_atom(g.pigeon(), g.hole());
  const FormulaShape shape = classify(g);
  if (shape == FormulaShape::Atomic || shape == FormulaShape::SharplyBounded) {
    return Formula::negation(normalize(g));
  }
  switch (g.kind()) {
    case FormulaKind::And:
      return Formula::disj(normalize(Formula::negation(g.left())),
                           normalize(Formula::negation(g.right())));
    case FormulaKind::Or:
      return Formula::conj(normalize(Formula::negation(g.left())),
                           normalize(Formula::negation(g.right())));
    case FormulaKind::ForallLe:
      return Formula::exists_le(g.var(), g.bound(), normalize(Formula::negation(g.body())));
    case FormulaKind::ExistsLe:
      return Formula::forall_le(g.var(), g.bound(), normalize(Formula::negation(g.body())));
    case FormulaKind::Not:
      return normalize(g.body());
    default:
      break;
  }
  throw ShapeError("cannot normalize " + to_string(f));
}

ForcingContext::ForcingContext(Scale scale, ForcingOptions options)
    : scale_(scale),
      options_(options),
      poset_(std::make_shared<const ConditionIndex>(
          scale.n, options.range == ExtensionRange::Full ? scale.n : scale.k_cap)) {}

bool ForcingContext::forces(const Condition& sigma, const Formula& phi) {
  if (!is_valid(sigma, scale_)) {
    throw PreconditionError("condition " + sigma.to_string() + " is not in P(" +
                            std::to_string(scale_.n) + "," + std::to_string(scale_.k_cap) + ")");
  }
  if (!is_closed(phi)) throw ShapeError("forcing needs a closed formula: " + to_string(phi));
  return eval(poset_->id_of(sigma), normalize(phi));
}

std::vector<std::int8_t>& ForcingContext::slots(
    std::unordered_map<std::string, std::vector<std::int8_t>>& table, const std::string& key) {
  auto [it, inserted] = table.try_emplace(key);
  if (inserted) it->second.assign(poset_->size(), -1);
  return it->second;
}

void ForcingContext::record(int id, const std::string& key, int clause, bool verdict) {
  if (!options_.trace) return;
  if (trace_.size() >= options_.trace_limit) {
    trace_truncated_ = true;
    return;
  }
  trace_.push_back({poset_->at(id), key, clause, verdict});
}

bool ForcingContext::eval(int id, const Formula& f) { return eval_keyed(id, f, to_string(f)); }

namespace {

bool atom_in_range(const Formula& f, int n) {
  const int a = f.pigeon().value();
  const int b = f.hole().value();
  return a <= n && b < n;
}

}  // namespace

bool ForcingContext::eval_keyed(int id, const Formula& f, const std::string& key) {
  auto& memo = slots(memo_, key);
  if (memo[static_cast<std::size_t>(id)] >= 0) return memo[static_cast<std::size_t>(id)] == 1;

  const Condition& sigma = poset_->at(id);
  bool verdict = false;
  int clause = 0;
  switch (f.kind()) {
    case FormulaKind::Atom:
      clause = 1;
      verdict = atom_in_range(f, scale_.n) &&
                sigma.contains({f.pigeon().value(), f.hole().value()});
      break;
    case FormulaKind::NegAtom: {
      clause = 2;
      if (!atom_in_range(f, scale_.n)) {
        verdict = true;
        break;
      }
      const int a = f.pigeon().value();
      const int b = f.hole().value();
      const auto hole = sigma.hole_of(a);
      const auto pigeon = sigma.pigeon_of(b);
      verdict = (hole && *hole != b) || (pigeon && *pigeon != a);
      break;
    }
    case FormulaKind::And:
      clause = 3;
      verdict = eval(id, f.left()) && eval(id, f.right());
      break;
    case FormulaKind::ForallLe:
      clause = 4;
      verdict = true;
      for (int i = 0; i <= f.bound() && verdict; ++i) {
        verdict = eval(id, substitute(f.body(), f.var(), i));
      }
      break;
    case FormulaKind::Not:
      // No τ ≤ σ forces the body: check σ, then recurse through one-pair
      // extensions (every proper extension lies above one of them).
      clause = 5;
      verdict = !eval(id, f.body());
      for (int next : poset_->successors(id)) {
        if (!verdict) break;
        verdict = eval_keyed(next, f, key);
      }
      break;
    case FormulaKind::Or:
    case FormulaKind::ExistsLe:
      // Every τ ≤ σ has an extension meeting the disjunct set.
      clause = f.kind() == FormulaKind::Or ? 6 : 7;
      verdict = exists_below(id, f, key);
      for (int next : poset_->successors(id)) {
        if (!verdict) break;
        verdict = eval_keyed(next, f, key);
      }
      break;
  }
  memo[static_cast<std::size_t>(id)] = verdict ? 1 : 0;
  record(id, key, clause, verdict);
  return verdict;
}

bool ForcingContext::exists_below(int id, const Formula& f, const std::string& key) {
  auto& memo = slots(below_memo_, key);
  if (memo[static_cast<std::size_t>(id)] >= 0) return memo[static_cast<std::size_t>(id)] == 1;
  bool found = false;
  if (f.kind() == FormulaKind::Or) {
    found = eval(id, f.left()) || eval(id, f.right());
  } else {
    for (int i = 0; i <= f.bound() && !found; ++i) {
      found = eval(id, substitute(f.body(), f.var(), i));
    }
  }
  for (int next : poset_->successors(id)) {
    if (found) break;
    found = exists_below(next, f, key);
  }
  memo[static_cast<std::size_t>(id)] = found ? 1 : 0;
  return found;
}

bool forces(const Condition& sigma, const Formula& phi, ForcingContext& ctx) {
  return ctx.forces(sigma, phi);
}

namespace {

// For each id: does some extension within the index satisfy pred?
std::vector<std::int8_t> reachable(const ConditionIndex& index, const ConditionPredicate& pred) {
  std::vector<std::int8_t> out(index.size(), 0);
  // Successors are strictly larger, and ids are sorted by size, so a reverse
  // sweep sees every successor before its predecessor.
  for (std::size_t i = index.size(); i-- > 0;) {
    bool ok = pred(index.at(static_cast<int>(i)));
    for (int next : index.successors(static_cast<int>(i))) {
      if (ok) break;
      ok = out[static_cast<std::size_t>(next)] != 0;
    }
    out[i] = ok ? 1 : 0;
  }
  return out;
}

}  // namespace

bool is_dense(const ConditionPredicate& pred, const Scale& s, ExtensionRange range) {
  return is_dense_relative(pred, Condition(), s, range);
}

bool is_dense_relative(const ConditionPredicate& pred, const Condition& sigma, const Scale& s,
                       ExtensionRange range) {
  const ConditionIndex index(s.n, range == ExtensionRange::Full ? s.n : s.k_cap);
  const auto ok = reachable(index, pred);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Condition& tau = index.at(static_cast<int>(i));
    if (static_cast<int>(tau.size()) > s.k_cap || !extends(tau, sigma)) continue;
    if (!ok[i]) return false;
  }
  return true;
}

}  // namespace phplab
