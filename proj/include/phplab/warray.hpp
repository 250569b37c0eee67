#ifndef PHPLAB_WARRAY_HPP
#define PHPLAB_WARRAY_HPP

#include "phplab/bigint.hpp"
#include "phplab/condition.hpp"
#include "phplab/errors.hpp"
#include "phplab/php_tree.hpp"

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace phplab {

/// A [2m] × [m] grid of condition sets over a base σ.
///
/// The struct itself holds any grid; entry constraints and the four array
/// properties are reported by verify_properties().
struct WArray {
  int m = 1;
  int k = 1;
  Condition sigma;
  Scale scale;
  std::vector<std::vector<std::vector<Condition>>> cells;  // cells[a][b], canonical order

  static WArray empty(int m, int k, Condition sigma, Scale scale);

  int rows() const { return 2 * m; }
  int cols() const { return m; }
  std::vector<Condition>& cell(int a, int b) {
    return cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  const std::vector<Condition>& cell(int a, int b) const {
    return cells[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  /// A_a: the union of row a, canonical order, duplicates removed.
  std::vector<Condition> row(int a) const;
  /// A^b: the union of column b.
  std::vector<Condition> column(int b) const;
  /// Sorts every cell canonically and drops duplicates inside a cell.
  void normalize();
};

struct Witness {
  std::string description;
  int a = -1;
  int b = -1;
  int a2 = -1;
  int b2 = -1;
  std::vector<Condition> conditions;
};

struct PropertyCheck {
  bool ok = true;
  std::optional<Witness> witness;
};

struct PropertyReport {
  PropertyCheck p1;  // no condition in two cells sharing a row or a column
  PropertyCheck p2;  // same column, different rows: incompatible
  PropertyCheck p3;  // same row, different columns: incompatible
  PropertyCheck p4;  // every ρ ≤ σ in P(n, K) meets every row compatibly
  PropertyCheck entries;  // size ≤ k, nonempty, compatible with and disjoint from σ

  bool all_ok() const { return p1.ok && p2.ok && p3.ok && p4.ok && entries.ok; }
};

/// Carries the report that made an array operation refuse its input.
class ArrayPreconditionError : public PreconditionError {
 public:
  ArrayPreconditionError(const std::string& what, PropertyReport report)
      : PreconditionError(what), report_(std::move(report)) {}
  const PropertyReport& report() const { return report_; }

 private:
  PropertyReport report_;
};

PropertyReport verify_properties(const WArray& a);

struct SizeReport {
  std::size_t total = 0;      // Σ_{a,b} |A(a,b)|
  std::size_t row_sum = 0;    // Σ_a |A_a|
  std::size_t column_sum = 0; // Σ_b |A^b|
};

/// Throws PreconditionError if p1 fails.
SizeReport array_size(const WArray& a);

/// Observer for the grafting loop: called after step i with the tree P_i.
using UniformizeObserver = std::function<void(int step, const PhpTree& tree)>;

/// Builds the 2k²-uniform tree P_k over σ by k rounds of grafting: each leaf
/// ρ of P_{i-1} gets decide_condition_tree(σ ∪ ρ, π) extended to depth 2k,
/// where π is the first row member (canonical order) compatible with ρ.
///
/// Throws RegimeError unless 2k² + K + |σ| <= n, and PreconditionError if
/// the row is not a covering antichain of nonempty entries of size <= k,
/// compatible with and disjoint from σ.
PhpTree uniformize_row_tree(const std::vector<Condition>& row, int k, const Condition& sigma,
                            const Scale& s, const UniformizeObserver& observer = nullptr);
LeafFamily uniformize_row(const std::vector<Condition>& row, int k, const Condition& sigma,
                          const Scale& s, const UniformizeObserver& observer = nullptr);

enum class UniformizeMode {
  Strict,  // requires all four properties
  Pseudo,  // requires only the row-local ones (antichain rows, covering)
};

/// Replaces each row by its uniformized family, placing every new member in
/// the column of the unique old entry it extends. The result has k = 2k².
/// Throws ArrayPreconditionError when the input fails the mode's gate.
WArray uniformize(const WArray& a, UniformizeMode mode = UniformizeMode::Strict);

/// 2m (n-s)! / (n-s-k')!
BigInt lower_bound(int n, int s, int k_prime, int m);
/// m (n+1-s)! / (n+1-s-k)!
BigInt upper_bound(int n, int s, int k, int m);

struct ContradictionResult {
  bool contradiction = false;
  Rational ratio;
};

/// ratio = (n+1-s) / (n+1-s-k); a contradiction when ratio < 2.
ContradictionResult contradiction_check(int n, int s, int k);

struct AjtaiResult {
  bool contradiction = false;
  BigInt root;  // ⌊n^{1-ε}⌋
  Rational lhs;
  Rational rhs;
};

/// lhs = (r+1)/r with r = ⌊n^{1-ε}⌋, rhs = (n+1-s)/(n+1-s-k); a
/// contradiction when lhs > rhs. ε must satisfy 0 < ε <= 1.
AjtaiResult ajtai_check(int n, int s, int k, const Rational& epsilon);

struct SearchResult {
  std::optional<WArray> found;
  std::size_t nodes = 0;
  std::size_t candidates = 0;
};

/// Node budget from LAB_BUDGET_NODES, or `fallback` if unset or malformed.
std::size_t budget_from_env(std::size_t fallback = 10'000'000);

/// Exhaustive search for an array satisfying all four properties, with
/// entries drawn from P(n, K) of size 1..k. Throws BudgetError past
/// `budget` search nodes.
SearchResult brute_force_search_array(const Scale& s, int m, int k, const Condition& sigma,
                                      std::size_t budget);

nlohmann::json to_json(const WArray& a);
WArray warray_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PropertyReport& r);

}  // namespace phplab

#endif  // PHPLAB_WARRAY_HPP
