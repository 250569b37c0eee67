#include "phplab/warray.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace phplab {

WArray WArray::empty(int m, int k, Condition sigma, Scale scale) {
  if (m < 1) throw DomainError("array needs m >= 1");
  WArray a;
  a.m = m;
  a.k = k;
  a.sigma = std::move(sigma);
  a.scale = scale;
  a.cells.assign(static_cast<std::size_t>(2 * m),
                 std::vector<std::vector<Condition>>(static_cast<std::size_t>(m)));
  return a;
}

std::vector<Condition> WArray::row(int a) const {
  std::set<Condition> out;
  for (int b = 0; b < cols(); ++b) out.insert(cell(a, b).begin(), cell(a, b).end());
  return {out.begin(), out.end()};
}

std::vector<Condition> WArray::column(int b) const {
  std::set<Condition> out;
  for (int a = 0; a < rows(); ++a) out.insert(cell(a, b).begin(), cell(a, b).end());
  return {out.begin(), out.end()};
}

void WArray::normalize() {
  for (auto& row : cells) {
    for (auto& c : row) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
  }
}

namespace {

struct Entry {
  int a;
  int b;
  const Condition* cond;
};

std::vector<Entry> all_entries(const WArray& A) {
  std::vector<Entry> out;
  for (int a = 0; a < A.rows(); ++a) {
    for (int b = 0; b < A.cols(); ++b) {
      for (const Condition& c : A.cell(a, b)) out.push_back({a, b, &c});
    }
  }
  return out;
}

Witness pair_witness(std::string description, const Entry& x, const Entry& y) {
  return Witness{std::move(description), x.a, x.b, y.a, y.b, {*x.cond, *y.cond}};
}

std::vector<Condition> extensions_of(const Condition& sigma, const Scale& s) {
  std::vector<Condition> out;
  for (Condition& rho : enumerate_conditions(s)) {
    if (extends(rho, sigma)) out.push_back(std::move(rho));
  }
  return out;
}

std::optional<Witness> first_uncovered_row(const WArray& A, const std::vector<Condition>& rhos) {
  for (const Condition& rho : rhos) {
    for (int a = 0; a < A.rows(); ++a) {
      bool covered = false;
      for (int b = 0; b < A.cols() && !covered; ++b) {
        for (const Condition& tau : A.cell(a, b)) {
          if (compatible(tau, rho)) {
            covered = true;
            break;
          }
        }
      }
      if (!covered) {
        return Witness{"row " + std::to_string(a) + " has no entry compatible with " +
                           rho.to_string(),
                       a, -1, -1, -1, {rho}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PropertyReport verify_properties(const WArray& A) {
  PropertyReport r;
  const auto entries = all_entries(A);

  for (const Entry& e : entries) {
    const Condition& c = *e.cond;
    std::string problem;
    if (c.empty()) {
      problem = "empty entry";
    } else if (static_cast<int>(c.size()) > A.k) {
      problem = "entry larger than k";
    } else if (!in_range(c, A.scale)) {
      problem = "entry out of range";
    } else if (!compatible(c, A.sigma)) {
      problem = "entry incompatible with the base";
    } else if (!disjoint(c, A.sigma)) {
      problem = "entry intersects the base";
    }
    if (!problem.empty()) {
      r.entries = {false, Witness{problem + " " + c.to_string(), e.a, e.b, -1, -1, {c}}};
      break;
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const Entry& x = entries[i];
      const Entry& y = entries[j];
      const bool same_row = x.a == y.a;
      const bool same_col = x.b == y.b;
      if (same_row && same_col) continue;
      const bool equal = *x.cond == *y.cond;
      if (equal && (same_row || same_col) && r.p1.ok) {
        r.p1 = {false, pair_witness("condition " + x.cond->to_string() +
                                        " sits in two cells sharing a " +
                                        (same_row ? "row" : "column"),
                                    x, y)};
      }
      if (equal || !compatible(*x.cond, *y.cond)) continue;
      if (same_col && r.p2.ok) {
        r.p2 = {false, pair_witness("compatible entries in column " + std::to_string(x.b), x, y)};
      }
      if (same_row && r.p3.ok) {
        r.p3 = {false, pair_witness("compatible entries in row " + std::to_string(x.a), x, y)};
      }
    }
  }

  if (auto w = first_uncovered_row(A, extensions_of(A.sigma, A.scale))) r.p4 = {false, *w};
  return r;
}

SizeReport array_size(const WArray& A) {
  const PropertyReport report = verify_properties(A);
  if (!report.p1.ok) {
    throw PreconditionError("size identity needs property 1: " + report.p1.witness->description);
  }
  SizeReport s;
  for (int a = 0; a < A.rows(); ++a) {
    for (int b = 0; b < A.cols(); ++b) s.total += A.cell(a, b).size();
  }
  for (int a = 0; a < A.rows(); ++a) s.row_sum += A.row(a).size();
  for (int b = 0; b < A.cols(); ++b) s.column_sum += A.column(b).size();
  if (s.total != s.row_sum || s.total != s.column_sum) {
    throw PreconditionError("size identity failed although property 1 holds");
  }
  return s;
}

namespace {

void check_regime(int k, const Condition& sigma, const Scale& s) {
  if (2 * k * k + s.k_cap + static_cast<int>(sigma.size()) > s.n) {
    throw RegimeError("uniformization needs 2k^2 + K + |sigma| <= n, got k=" + std::to_string(k) +
                      ", K=" + std::to_string(s.k_cap) + ", |sigma|=" +
                      std::to_string(sigma.size()) + ", n=" + std::to_string(s.n));
  }
}

void check_row(const std::vector<Condition>& row, int k, const Condition& sigma, const Scale& s) {
  if (k < 1) throw PreconditionError("uniformization needs k >= 1");
  for (const Condition& pi : row) {
    if (pi.empty() || static_cast<int>(pi.size()) > k || !in_range(pi, s) ||
        !compatible(pi, sigma) || !disjoint(pi, sigma)) {
      throw PreconditionError("row entry " + pi.to_string() +
                              " must be nonempty, of size <= k, compatible with and disjoint "
                              "from the base");
    }
  }
  if (!is_antichain(row)) throw PreconditionError("row entries must be pairwise incompatible");
  if (auto rho = find_uncovered(LeafFamily{sigma, row}, s)) {
    throw PreconditionError("row does not cover " + rho->to_string());
  }
}

}  // namespace

PhpTree uniformize_row_tree(const std::vector<Condition>& row_in, int k, const Condition& sigma,
                            const Scale& s, const UniformizeObserver& observer) {
  check_regime(k, sigma, s);
  std::vector<Condition> row = row_in;
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
  check_row(row, k, sigma, s);

  PhpTree tree = PhpTree::root_only(s, sigma);
  for (int step = 1; step <= k; ++step) {
    tree = graft(tree, [&](const Condition& label) {
      const Condition here = *join(sigma, label);
      auto pi = std::find_if(row.begin(), row.end(),
                             [&](const Condition& c) { return compatible(c, here); });
      if (pi == row.end()) throw PreconditionError("leaf " + label.to_string() + " is uncovered");
      return extend_uniform(decide_condition_tree(here, *pi, s), 2 * k);
    });
    if (observer) observer(step, tree);
  }
  return tree;
}

LeafFamily uniformize_row(const std::vector<Condition>& row, int k, const Condition& sigma,
                          const Scale& s, const UniformizeObserver& observer) {
  return leaves(uniformize_row_tree(row, k, sigma, s, observer));
}

WArray uniformize(const WArray& A, UniformizeMode mode) {
  const PropertyReport report = verify_properties(A);
  if (!report.entries.ok) {
    throw ArrayPreconditionError("entry constraint fails: " + report.entries.witness->description,
                                 report);
  }
  if (mode == UniformizeMode::Strict && !report.all_ok()) {
    std::string what = "array properties fail:";
    for (const auto* c : {&report.p1, &report.p2, &report.p3, &report.p4}) {
      if (!c->ok) what += " " + c->witness->description + ";";
    }
    throw ArrayPreconditionError(what, report);
  }
  if (mode == UniformizeMode::Pseudo && !report.p4.ok) {
    throw ArrayPreconditionError("covering fails: " + report.p4.witness->description, report);
  }
  check_regime(A.k, A.sigma, A.scale);

  const int k_prime = 2 * A.k * A.k;
  WArray out = WArray::empty(A.m, k_prime, A.sigma, A.scale);
  for (int a = 0; a < A.rows(); ++a) {
    const std::vector<Condition> row = A.row(a);
    const LeafFamily family = uniformize_row(row, A.k, A.sigma, A.scale);
    for (const Condition& rho : family.leaves) {
      int column = -1;
      for (int b = 0; b < A.cols() && column < 0; ++b) {
        for (const Condition& tau : A.cell(a, b)) {
          if (extends(rho, tau)) {
            column = b;
            break;
          }
        }
      }
      if (column < 0) {
        throw PreconditionError("uniformized member " + rho.to_string() +
                                " extends no entry of row " + std::to_string(a));
      }
      out.cell(a, column).push_back(rho);
    }
  }
  out.normalize();
  return out;
}

BigInt lower_bound(int n, int s, int k_prime, int m) {
  if (m < 0 || s < 0) throw DomainError("lower bound needs m, s >= 0");
  return 2 * BigInt(m) * falling_factorial(n - s, k_prime);
}

BigInt upper_bound(int n, int s, int k, int m) {
  if (m < 0 || s < 0) throw DomainError("upper bound needs m, s >= 0");
  return BigInt(m) * falling_factorial(n + 1 - s, k);
}

namespace {

Rational ratio_of(int n, int s, int k) {
  if (n < 0 || s < 0 || k < 0 || k >= n + 1 - s) {
    throw DomainError("ratio needs 0 <= k < n + 1 - s, got n=" + std::to_string(n) +
                      ", s=" + std::to_string(s) + ", k=" + std::to_string(k));
  }
  return Rational(n + 1 - s, n + 1 - s - k);
}

}  // namespace

ContradictionResult contradiction_check(int n, int s, int k) {
  const Rational ratio = ratio_of(n, s, k);
  return {ratio < 2, ratio};
}

AjtaiResult ajtai_check(int n, int s, int k, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw DomainError("epsilon must lie in (0, 1]");
  if (n < 1) throw DomainError("ajtai check needs n >= 1");
  const Rational rhs = ratio_of(n, s, k);
  const BigInt p = boost::multiprecision::numerator(epsilon);
  const BigInt q = boost::multiprecision::denominator(epsilon);
  if (q > 64) throw DomainError("epsilon denominator too large");
  const unsigned qu = q.convert_to<unsigned>();
  const unsigned pu = p.convert_to<unsigned>();
  const BigInt root = integer_root(boost::multiprecision::pow(BigInt(n), qu - pu), qu);
  const Rational lhs = Rational(root + 1, root);
  return {lhs > rhs, root, lhs, rhs};
}

std::size_t budget_from_env(std::size_t fallback) {
  const char* raw = std::getenv("LAB_BUDGET_NODES");
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

namespace {

class ArraySearch {
 public:
  ArraySearch(const Scale& s, int m, int k, const Condition& sigma, std::size_t budget)
      : array_(WArray::empty(m, std::max(k, 1), sigma, s)), budget_(budget) {
    for (Condition& c : enumerate_conditions(s)) {
      if (!c.empty() && static_cast<int>(c.size()) <= k && compatible(c, sigma) &&
          disjoint(c, sigma)) {
        candidates_.push_back(std::move(c));
      }
    }
    rhos_ = extensions_of(sigma, s);
  }

  SearchResult run() {
    SearchResult r;
    r.candidates = candidates_.size();
    if (visit(0)) r.found = array_;
    r.nodes = nodes_;
    return r;
  }

 private:
  bool fits(const Condition& c, int a, int b) const {
    for (int bb = 0; bb < array_.cols(); ++bb) {
      for (const Condition& t : array_.cell(a, bb)) {
        if (compatible(t, c)) return false;
      }
    }
    for (int aa = 0; aa < array_.rows(); ++aa) {
      for (const Condition& t : array_.cell(aa, b)) {
        if (compatible(t, c)) return false;
      }
    }
    return true;
  }

  void tick() {
    if (++nodes_ > budget_) {
      throw BudgetError("array search exceeded " + std::to_string(budget_) + " nodes");
    }
  }

  bool visit(std::size_t idx) {
    tick();
    if (idx == candidates_.size()) return !first_uncovered_row(array_, rhos_).has_value();
    return place(idx, 0, 0);
  }

  // Places candidate idx in rows >= a, at most once per row and per column.
  bool place(std::size_t idx, int a, unsigned used_cols) {
    if (a == array_.rows()) return visit(idx + 1);
    if (place(idx, a + 1, used_cols)) return true;
    const Condition& c = candidates_[idx];
    for (int b = 0; b < array_.cols(); ++b) {
      if (used_cols & (1u << b) || !fits(c, a, b)) continue;
      tick();
      array_.cell(a, b).push_back(c);
      if (place(idx, a + 1, used_cols | (1u << b))) return true;
      array_.cell(a, b).pop_back();
    }
    return false;
  }

  WArray array_;
  std::vector<Condition> candidates_;
  std::vector<Condition> rhos_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

}  // namespace

SearchResult brute_force_search_array(const Scale& s, int m, int k, const Condition& sigma,
                                      std::size_t budget) {
  if (m < 1 || m > 16) throw DomainError("array search supports 1 <= m <= 16");
  if (k < 0) throw DomainError("array search needs k >= 0");
  if (!is_valid(sigma, s)) throw PreconditionError("base " + sigma.to_string() + " not in P(n,K)");
  return ArraySearch(s, m, k, sigma, budget).run();
}

nlohmann::json to_json(const WArray& A) {
  nlohmann::json cells = nlohmann::json::array();
  for (int a = 0; a < A.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < A.cols(); ++b) {
      nlohmann::json cell = nlohmann::json::array();
      for (const Condition& c : A.cell(a, b)) cell.push_back(c.to_string());
      row.push_back(std::move(cell));
    }
    cells.push_back(std::move(row));
  }
  return {{"m", A.m},
          {"k", A.k},
          {"sigma", A.sigma.to_string()},
          {"n", A.scale.n},
          {"k_cap", A.scale.k_cap},
          {"cells", std::move(cells)}};
}

WArray warray_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k_cap = j.contains("k_cap") ? j.at("k_cap").get<int>() : n;
    WArray A = WArray::empty(j.at("m").get<int>(), j.at("k").get<int>(),
                             Condition::parse(j.at("sigma").get<std::string>()),
                             Scale::make(n, k_cap));
    const auto& cells = j.at("cells");
    if (!cells.is_array() || static_cast<int>(cells.size()) != A.rows()) {
      throw PreconditionError("array JSON needs 2m rows of cells");
    }
    for (int a = 0; a < A.rows(); ++a) {
      const auto& row = cells.at(static_cast<std::size_t>(a));
      if (!row.is_array() || static_cast<int>(row.size()) != A.cols()) {
        throw PreconditionError("array JSON needs m cells per row");
      }
      for (int b = 0; b < A.cols(); ++b) {
        for (const auto& c : row.at(static_cast<std::size_t>(b))) {
          A.cell(a, b).push_back(Condition::parse(c.get<std::string>()));
        }
      }
    }
    A.normalize();
    return A;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed array JSON: ") + e.what());
  }
}

namespace {

nlohmann::json check_json(const PropertyCheck& c) {
  nlohmann::json j{{"ok", c.ok}};
  if (c.witness) {
    nlohmann::json conds = nlohmann::json::array();
    for (const Condition& x : c.witness->conditions) conds.push_back(x.to_string());
    nlohmann::json w{{"description", c.witness->description}, {"conditions", conds}};
    if (c.witness->a >= 0) w["a"] = c.witness->a;
    if (c.witness->b >= 0) w["b"] = c.witness->b;
    if (c.witness->a2 >= 0) w["a2"] = c.witness->a2;
    if (c.witness->b2 >= 0) w["b2"] = c.witness->b2;
    j["witness"] = std::move(w);
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const PropertyReport& r) {
  return {{"p1", check_json(r.p1)},
          {"p2", check_json(r.p2)},
          {"p3", check_json(r.p3)},
          {"p4", check_json(r.p4)},
          {"entries", check_json(r.entries)},
          {"all_ok", r.all_ok()}};
}

}  // namespace phplab
