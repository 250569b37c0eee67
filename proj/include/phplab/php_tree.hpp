#ifndef PHPLAB_PHP_TREE_HPP
#define PHPLAB_PHP_TREE_HPP

#include "phplab/bigint.hpp"
#include "phplab/condition.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace phplab {

struct TreeNode;
using NodePtr = std::shared_ptr<const TreeNode>;

struct Leaf {
  std::optional<bool> mark;
};

/// "Where does pigeon `pigeon` go?" Children are keyed by hole.
struct PigeonQuery {
  int pigeon = 0;
  std::map<int, NodePtr> children;
};

/// "Which pigeon goes to hole `hole`?" Children are keyed by pigeon.
struct HoleQuery {
  int hole = 0;
  std::map<int, NodePtr> children;
};

struct TreeNode {
  std::variant<Leaf, PigeonQuery, HoleQuery> kind;
};

NodePtr make_leaf(std::optional<bool> mark = std::nullopt);
NodePtr make_pigeon_query(int pigeon, std::map<int, NodePtr> children);
NodePtr make_hole_query(int hole, std::map<int, NodePtr> children);

/// A PHP-tree over the pigeons and holes left free by a base condition.
/// Immutable; subtrees are shared between trees built from one another.
class PhpTree {
 public:
  /// Validates the PHP-tree invariants; throws InvalidTreeError.
  PhpTree(Scale scale, Condition base, NodePtr root);

  /// The single-node tree.
  static PhpTree root_only(Scale scale, Condition base);

  const Scale& scale() const { return scale_; }
  const Condition& base() const { return base_; }
  const NodePtr& root() const { return root_; }

 private:
  Scale scale_;
  Condition base_;
  NodePtr root_;
};

struct LabeledLeaf {
  Condition label;
  std::optional<bool> mark;
  int depth = 0;
};

/// Leaf labels of one tree, relative to its base.
struct LeafFamily {
  Condition base;
  std::vector<Condition> leaves;  // canonical order
};

/// Leaves in depth-first order (children visited in ascending key order).
std::vector<LabeledLeaf> labeled_leaves(const PhpTree& t);
LeafFamily leaves(const PhpTree& t);

/// Length of the longest root-to-leaf path.
int depth(const PhpTree& t);
bool is_uniform(const PhpTree& t, int k);
std::size_t leaf_count(const PhpTree& t);

/// The k-uniform tree querying the k smallest free pigeons in order.
PhpTree pigeon_chain(const Condition& base, int k, const Scale& s);

/// A PHP^{base,tau}-tree: every leaf label contains (a,b), or contains some
/// (a',b) and (a,b') with a' != a and b' != b, for each (a,b) in tau \ base.
PhpTree decide_condition_tree(const Condition& base, const Condition& tau, const Scale& s);

/// The per-pair leaf condition of a PHP^{base,tau}-tree.
bool decides_condition(const Condition& label, const Condition& base, const Condition& tau);

/// Replaces each leaf of `p` labeled λ by the tree attached to λ. Every
/// attachment must be a tree over base ∪ λ on the same scale.
PhpTree graft(const PhpTree& p, const std::map<Condition, PhpTree>& attachments);
PhpTree graft(const PhpTree& p,
              const std::function<PhpTree(const Condition& label)>& attachment_for);

/// Grafts pigeon chains so that every leaf sits at depth exactly k.
PhpTree extend_uniform(const PhpTree& p, int k);

/// (n - s)! / (n - s - k)!
BigInt min_leaf_count(int n, int base_size, int k);

/// Every member pair is incompatible.
bool is_antichain(std::span<const Condition> family);

/// Every ρ in P(n, K) extending the base is compatible with some leaf.
bool check_covering(const LeafFamily& f, const Scale& s);
/// Same, returning the first uncovered ρ.
std::optional<Condition> find_uncovered(const LeafFamily& f, const Scale& s);

nlohmann::json node_to_json(const NodePtr& node);
NodePtr node_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PhpTree& t);
PhpTree tree_from_json(const nlohmann::json& j);

}  // namespace phplab

#endif  // PHPLAB_PHP_TREE_HPP
