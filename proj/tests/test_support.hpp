// Independent oracles shared by the unit tests and the acceptance suite.
// Nothing here calls the forcing engine, the compiler or the searches it
// is used to check.
#ifndef PHPLAB_TEST_SUPPORT_HPP
#define PHPLAB_TEST_SUPPORT_HPP

#include "phplab/condition.hpp"
#include "phplab/formula.hpp"
#include "phplab/php_tree.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace phplab::testing {

/// Closed formulas of bounded depth with atoms over [n+1] × [n].
class FormulaGenerator {
 public:
  FormulaGenerator(int n, std::uint64_t seed) : n_(n), rng_(seed) {}

  Formula next(int depth) { return gen(depth, {}); }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Term term(const std::vector<std::string>& vars, int hi) {
    if (!vars.empty() && pick(0, 2) == 0) {
      return Term::variable(vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))]);
    }
    return Term::constant(pick(0, hi));
  }

  Formula gen(int depth, std::vector<std::string> vars) {
    if (depth == 0 || pick(0, 4) == 0) {
      Term p = term(vars, n_);
      Term h = term(vars, n_ - 1);
      return pick(0, 1) ? Formula::atom(p, h) : Formula::neg_atom(p, h);
    }
    switch (pick(0, 5)) {
      case 0:
        return Formula::conj(gen(depth - 1, vars), gen(depth - 1, vars));
      case 1:
        return Formula::disj(gen(depth - 1, vars), gen(depth - 1, vars));
      case 2:
        return Formula::negation(gen(depth - 1, vars));
      case 3:
      case 4: {
        const std::string v = "u" + std::to_string(vars.size());
        const int bound = pick(0, 2);
        vars.push_back(v);
        Formula body = gen(depth - 1, vars);
        return pick(0, 1) ? Formula::forall_le(v, bound, body) : Formula::exists_le(v, bound, body);
      }
      default:
        return Formula::disj(gen(depth - 1, vars), Formula::negation(gen(depth - 1, vars)));
    }
  }

  int n_;
  std::mt19937_64 rng_;
};

inline int term_value(const Term& t, const std::map<std::string, int>& env) {
  return t.is_variable() ? env.at(t.name()) : t.value();
}

/// Classical truth with R read as the pair set of `world`.
inline bool holds(const Formula& f, const Condition& world, std::map<std::string, int>& env) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return world.contains({term_value(f.pigeon(), env), term_value(f.hole(), env)});
    case FormulaKind::NegAtom:
      return !world.contains({term_value(f.pigeon(), env), term_value(f.hole(), env)});
    case FormulaKind::Not:
      return !holds(f.body(), world, env);
    case FormulaKind::And:
      return holds(f.left(), world, env) && holds(f.right(), world, env);
    case FormulaKind::Or:
      return holds(f.left(), world, env) || holds(f.right(), world, env);
    case FormulaKind::ForallLe:
    case FormulaKind::ExistsLe: {
      const bool forall = f.kind() == FormulaKind::ForallLe;
      const auto saved = env.count(f.var()) ? std::optional<int>(env.at(f.var())) : std::nullopt;
      bool result = forall;
      for (int i = 0; i <= f.bound(); ++i) {
        env[f.var()] = i;
        if (holds(f.body(), world, env) != forall) {
          result = !forall;
          break;
        }
      }
      if (saved) env[f.var()] = *saved;
      else env.erase(f.var());
      return result;
    }
  }
  return false;
}

inline bool holds(const Formula& f, const Condition& world) {
  std::map<std::string, int> env;
  return holds(f, world, env);
}

/// All partial injections of size exactly n extending σ: every hole used.
inline std::vector<Condition> maximal_extensions(const Condition& sigma, int n) {
  std::vector<Condition> out;
  std::vector<Pair> pairs(sigma.pairs().begin(), sigma.pairs().end());
  std::vector<int> free_holes;
  for (int h = 0; h < n; ++h) {
    if (!sigma.has_hole(h)) free_holes.push_back(h);
  }
  std::vector<bool> taken(static_cast<std::size_t>(n + 1), false);
  for (const Pair& p : pairs) taken[static_cast<std::size_t>(p.pigeon)] = true;
  // Assign each free hole a distinct free pigeon.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == free_holes.size()) {
      out.emplace_back(pairs);
      return;
    }
    for (int p = 0; p <= n; ++p) {
      if (taken[static_cast<std::size_t>(p)]) continue;
      taken[static_cast<std::size_t>(p)] = true;
      pairs.push_back({p, free_holes[i]});
      rec(i + 1);
      pairs.pop_back();
      taken[static_cast<std::size_t>(p)] = false;
    }
  };
  rec(0);
  return out;
}

/// σ forces φ over the full extension range exactly when φ holds in every
/// maximal extension of σ.
inline bool forced_by_maximal_extensions(const Condition& sigma, const Formula& phi, int n) {
  for (const Condition& world : maximal_extensions(sigma, n)) {
    if (!holds(phi, world)) return false;
  }
  return true;
}

/// Random PHP-tree over `base` of depth at most `max_depth`, mixing pigeon
/// and hole queries.
class TreeGenerator {
 public:
  TreeGenerator(Scale s, std::uint64_t seed) : s_(s), rng_(seed) {}

  PhpTree next(const Condition& base, int max_depth) {
    return PhpTree(s_, base, node(base, max_depth));
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  NodePtr node(const Condition& used, int budget) {
    std::vector<int> pigeons, holes;
    for (int p = 0; p <= s_.n; ++p) {
      if (!used.has_pigeon(p)) pigeons.push_back(p);
    }
    for (int h = 0; h < s_.n; ++h) {
      if (!used.has_hole(h)) holes.push_back(h);
    }
    if (budget == 0 || holes.empty() || pick(0, 3) == 0) return make_leaf();
    std::map<int, NodePtr> kids;
    if (pick(0, 1) == 0) {
      const int p = pigeons[static_cast<std::size_t>(pick(0, static_cast<int>(pigeons.size()) - 1))];
      for (int h : holes) kids.emplace(h, node(used.with({p, h}), budget - 1));
      return make_pigeon_query(p, std::move(kids));
    }
    const int h = holes[static_cast<std::size_t>(pick(0, static_cast<int>(holes.size()) - 1))];
    for (int p : pigeons) kids.emplace(p, node(used.with({p, h}), budget - 1));
    return make_hole_query(h, std::move(kids));
  }

  Scale s_;
  std::mt19937_64 rng_;
};

/// Every PHP-tree over `base` of depth at most `max_depth` (all query
/// choices at every node), canonical in the sense that children are keyed
/// in ascending order.
inline std::vector<NodePtr> all_tree_nodes(const Condition& used, int max_depth, const Scale& s) {
  std::vector<NodePtr> out{make_leaf()};
  if (max_depth == 0) return out;
  std::vector<int> pigeons, holes;
  for (int p = 0; p <= s.n; ++p) {
    if (!used.has_pigeon(p)) pigeons.push_back(p);
  }
  for (int h = 0; h < s.n; ++h) {
    if (!used.has_hole(h)) holes.push_back(h);
  }
  if (holes.empty()) return out;
  // For each query, take the product of child choices.
  auto product = [&](const std::vector<Pair>& edges, auto make) {
    std::vector<std::vector<NodePtr>> options;
    for (const Pair& e : edges) options.push_back(all_tree_nodes(used.with(e), max_depth - 1, s));
    std::vector<std::size_t> idx(edges.size(), 0);
    while (true) {
      std::map<int, NodePtr> kids;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        kids.emplace(make.key(edges[i]), options[i][idx[i]]);
      }
      out.push_back(make.build(std::move(kids)));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  };
  for (int p : pigeons) {
    std::vector<Pair> edges;
    for (int h : holes) edges.push_back({p, h});
    struct {
      int p;
      int key(const Pair& e) const { return e.hole; }
      NodePtr build(std::map<int, NodePtr> k) const { return make_pigeon_query(p, std::move(k)); }
    } make{p};
    product(edges, make);
  }
  for (int h : holes) {
    std::vector<Pair> edges;
    for (int p : pigeons) edges.push_back({p, h});
    struct {
      int h;
      int key(const Pair& e) const { return e.pigeon; }
      NodePtr build(std::map<int, NodePtr> k) const { return make_hole_query(h, std::move(k)); }
    } make{h};
    product(edges, make);
  }
  return out;
}

/// k-matchings of K_{d,c} by filtering all k-subsets of the edge set.
inline std::vector<Condition> matchings_by_subsets(int d, int c, int k) {
  std::vector<Pair> edges;
  for (int l = 0; l < d; ++l) {
    for (int r = 0; r < c; ++r) edges.push_back({l, r});
  }
  std::vector<Condition> out;
  std::vector<Pair> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (static_cast<int>(chosen.size()) == k) {
      std::vector<bool> left(static_cast<std::size_t>(d)), right(static_cast<std::size_t>(c));
      for (const Pair& e : chosen) {
        if (left[static_cast<std::size_t>(e.pigeon)] || right[static_cast<std::size_t>(e.hole)]) return;
        left[static_cast<std::size_t>(e.pigeon)] = right[static_cast<std::size_t>(e.hole)] = true;
      }
      out.emplace_back(chosen);
      return;
    }
    if (i == edges.size()) return;
    chosen.push_back(edges[i]);
    rec(i + 1);
    chosen.pop_back();
    rec(i + 1);
  };
  rec(0);
  return out;
}

}  // namespace phplab::testing

#endif  // PHPLAB_TEST_SUPPORT_HPP
