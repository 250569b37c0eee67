#ifndef PHPLAB_TREE_COMPILER_HPP
#define PHPLAB_TREE_COMPILER_HPP

#include "phplab/condition.hpp"
#include "phplab/forcing.hpp"
#include "phplab/formula.hpp"
#include "phplab/php_tree.hpp"
#include "phplab/warray.hpp"

#include <optional>
#include <string>

namespace phplab {

struct CompileOptions {
  /// Refuse trees deeper than this (RegimeError). Unset means no cap beyond
  /// the n - |σ| holes available.
  std::optional<int> max_depth;
};

/// Compiles a closed formula into a marked PHP^σ-tree.
///
/// Along each path the formula is evaluated three-valued: an atom R(a,b) is
/// true if (a,b) is on the path or in σ, false if a or b is already matched
/// elsewhere (or the indices are out of range), and unknown otherwise. While
/// the value is unknown the first unknown atom, left to right, is queried
/// with a pigeon query on a. Leaves are marked with the decided value.
///
/// Throws ShapeError for open or general formulas.
PhpTree compile(const Formula& phi, const Condition& sigma, const Scale& s,
                const CompileOptions& options = {});

/// Labels of the accepting leaves.
LeafFamily accepting_leaves(const PhpTree& t);

/// A(a, b) = accepting leaves of compile(φ(a, b)) for a < 2m, b < m, where
/// φ has free variables `x` (row) and `y` (column). Entries keep whatever
/// shape compilation produced; check them with verify_properties.
WArray build_array_from_formula(const Formula& phi, int m, const Condition& sigma,
                                const Scale& s, const std::string& x = "x",
                                const std::string& y = "y", const CompileOptions& options = {});

struct ViolationReport {
  bool forced = false;
  std::string kind;  // "column-collision", "row-collision", "empty-row" or ""
  int a = -1;
  int a2 = -1;
  int b = -1;
  int b2 = -1;
};

/// Whether σ forces that φ(x,y) fails to describe an injection [2m] -> [m]:
/// two rows share a column, one row takes two columns, or some row is
/// forced empty.
ViolationReport find_forced_violation(const Condition& sigma, const Formula& phi, int m,
                                      ForcingContext& ctx, const std::string& x = "x",
                                      const std::string& y = "y");
bool violation_forced(const Condition& sigma, const Formula& phi, int m, ForcingContext& ctx,
                      const std::string& x = "x", const std::string& y = "y");

}  // namespace phplab

#endif  // PHPLAB_TREE_COMPILER_HPP
