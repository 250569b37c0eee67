#include "phplab/php_tree.hpp"

#include "phplab/errors.hpp"

#include <algorithm>
#include <set>

namespace phplab {

NodePtr make_leaf(std::optional<bool> mark) {
  return std::make_shared<const TreeNode>(TreeNode{Leaf{mark}});
}

NodePtr make_pigeon_query(int pigeon, std::map<int, NodePtr> children) {
  return std::make_shared<const TreeNode>(TreeNode{PigeonQuery{pigeon, std::move(children)}});
}

NodePtr make_hole_query(int hole, std::map<int, NodePtr> children) {
  return std::make_shared<const TreeNode>(TreeNode{HoleQuery{hole, std::move(children)}});
}

namespace {

std::vector<int> free_holes(const Condition& used, const Scale& s) {
  std::vector<int> out;
  for (int h = 0; h < s.holes(); ++h) {
    if (!used.has_hole(h)) out.push_back(h);
  }
  return out;
}

std::vector<int> free_pigeons(const Condition& used, const Scale& s) {
  std::vector<int> out;
  for (int p = 0; p < s.pigeons(); ++p) {
    if (!used.has_pigeon(p)) out.push_back(p);
  }
  return out;
}

void validate_node(const NodePtr& node, const Condition& used, const Scale& s) {
  if (!node) throw InvalidTreeError("null node");
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, PigeonQuery>) {
          if (q.pigeon < 0 || q.pigeon >= s.pigeons() || used.has_pigeon(q.pigeon)) {
            throw InvalidTreeError("query on pigeon " + std::to_string(q.pigeon) +
                                   " which is not free at " + used.to_string());
          }
          const auto expected = free_holes(used, s);
          if (q.children.size() != expected.size() ||
              !std::equal(expected.begin(), expected.end(), q.children.begin(),
                          [](int h, const auto& kv) { return kv.first == h; })) {
            throw InvalidTreeError("pigeon query on " + std::to_string(q.pigeon) +
                                   " does not branch on exactly the free holes");
          }
          for (const auto& [hole, child] : q.children) {
            validate_node(child, used.with({q.pigeon, hole}), s);
          }
        } else if constexpr (std::is_same_v<T, HoleQuery>) {
          if (q.hole < 0 || q.hole >= s.holes() || used.has_hole(q.hole)) {
            throw InvalidTreeError("query on hole " + std::to_string(q.hole) +
                                   " which is not free at " + used.to_string());
          }
          const auto expected = free_pigeons(used, s);
          if (q.children.size() != expected.size() ||
              !std::equal(expected.begin(), expected.end(), q.children.begin(),
                          [](int p, const auto& kv) { return kv.first == p; })) {
            throw InvalidTreeError("hole query on " + std::to_string(q.hole) +
                                   " does not branch on exactly the free pigeons");
          }
          for (const auto& [pigeon, child] : q.children) {
            validate_node(child, used.with({pigeon, q.hole}), s);
          }
        }
      },
      node->kind);
}

void collect(const NodePtr& node, std::vector<Pair>& path, std::vector<LabeledLeaf>& out) {
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          out.push_back({Condition(path), q.mark, static_cast<int>(path.size())});
        } else if constexpr (std::is_same_v<T, PigeonQuery>) {
          for (const auto& [hole, child] : q.children) {
            path.push_back({q.pigeon, hole});
            collect(child, path, out);
            path.pop_back();
          }
        } else {
          for (const auto& [pigeon, child] : q.children) {
            path.push_back({pigeon, q.hole});
            collect(child, path, out);
            path.pop_back();
          }
        }
      },
      node->kind);
}

}  // namespace

PhpTree::PhpTree(Scale scale, Condition base, NodePtr root)
    : scale_(scale), base_(std::move(base)), root_(std::move(root)) {
  if (!in_range(base_, scale_)) {
    throw InvalidTreeError("base " + base_.to_string() + " out of range for n=" +
                           std::to_string(scale_.n));
  }
  validate_node(root_, base_, scale_);
}

PhpTree PhpTree::root_only(Scale scale, Condition base) {
  return PhpTree(scale, std::move(base), make_leaf());
}

std::vector<LabeledLeaf> labeled_leaves(const PhpTree& t) {
  std::vector<LabeledLeaf> out;
  std::vector<Pair> path;
  collect(t.root(), path, out);
  return out;
}

LeafFamily leaves(const PhpTree& t) {
  LeafFamily f{t.base(), {}};
  for (auto& leaf : labeled_leaves(t)) f.leaves.push_back(std::move(leaf.label));
  std::sort(f.leaves.begin(), f.leaves.end());
  return f;
}

int depth(const PhpTree& t) {
  int d = 0;
  for (const auto& leaf : labeled_leaves(t)) d = std::max(d, leaf.depth);
  return d;
}

bool is_uniform(const PhpTree& t, int k) {
  const auto all = labeled_leaves(t);
  return std::all_of(all.begin(), all.end(), [k](const LabeledLeaf& l) { return l.depth == k; });
}

std::size_t leaf_count(const PhpTree& t) { return labeled_leaves(t).size(); }

namespace {

NodePtr chain_node(const Condition& used, int remaining, const Scale& s) {
  if (remaining == 0) return make_leaf();
  const auto pigeons = free_pigeons(used, s);
  const int pigeon = pigeons.front();
  std::map<int, NodePtr> children;
  for (int h : free_holes(used, s)) {
    children.emplace(h, chain_node(used.with({pigeon, h}), remaining - 1, s));
  }
  return make_pigeon_query(pigeon, std::move(children));
}

}  // namespace

PhpTree pigeon_chain(const Condition& base, int k, const Scale& s) {
  if (k < 0 || k + static_cast<int>(base.size()) > s.n) {
    throw RegimeError("pigeon chain of depth " + std::to_string(k) + " over a base of size " +
                      std::to_string(base.size()) + " needs k + |base| <= n = " +
                      std::to_string(s.n));
  }
  return PhpTree(s, base, chain_node(base, k, s));
}

bool decides_condition(const Condition& label, const Condition& base, const Condition& tau) {
  const Condition todo = difference(tau, base);
  for (const Pair& p : todo.pairs()) {
    if (label.contains(p)) continue;
    auto other_pigeon = label.pigeon_of(p.hole);
    auto other_hole = label.hole_of(p.pigeon);
    if (!(other_pigeon && *other_pigeon != p.pigeon && other_hole && *other_hole != p.hole)) {
      return false;
    }
  }
  return true;
}

namespace {

bool pair_settled(const Condition& path, const Pair& p) {
  if (path.contains(p)) return true;
  auto other_pigeon = path.pigeon_of(p.hole);
  auto other_hole = path.hole_of(p.pigeon);
  return other_pigeon && *other_pigeon != p.pigeon && other_hole && *other_hole != p.hole;
}

// `path` is relative to the base; `used` is base ∪ path.
NodePtr decide_node(const std::vector<Pair>& todo, std::size_t next, const Condition& path,
                    const Condition& used, const Scale& s) {
  while (next < todo.size() && pair_settled(path, todo[next])) ++next;
  if (next == todo.size()) return make_leaf();
  const Pair target = todo[next];
  std::map<int, NodePtr> children;
  if (!used.has_pigeon(target.pigeon)) {
    for (int h : free_holes(used, s)) {
      const Pair edge{target.pigeon, h};
      children.emplace(h, decide_node(todo, next, path.with(edge), used.with(edge), s));
    }
    return make_pigeon_query(target.pigeon, std::move(children));
  }
  // The pigeon went elsewhere; the hole is still free, so ask who takes it.
  for (int p : free_pigeons(used, s)) {
    const Pair edge{p, target.hole};
    children.emplace(p, decide_node(todo, next, path.with(edge), used.with(edge), s));
  }
  return make_hole_query(target.hole, std::move(children));
}

}  // namespace

PhpTree decide_condition_tree(const Condition& base, const Condition& tau, const Scale& s) {
  if (!compatible(base, tau)) {
    throw RegimeError("decide tree needs compatible conditions, got " + base.to_string() +
                      " and " + tau.to_string());
  }
  const Condition todo = difference(tau, base);
  if (2 * static_cast<int>(todo.size()) + static_cast<int>(base.size()) > s.n) {
    throw RegimeError("decide tree needs 2|tau \\ base| + |base| <= n");
  }
  if (!in_range(tau, s)) throw RegimeError("tau out of range for the scale");
  std::vector<Pair> pairs(todo.pairs().begin(), todo.pairs().end());
  return PhpTree(s, base, decide_node(pairs, 0, Condition(), base, s));
}

namespace {

NodePtr graft_node(const NodePtr& node, std::vector<Pair>& path, const PhpTree& p,
                   const std::function<PhpTree(const Condition&)>& attachment_for) {
  return std::visit(
      [&](const auto& q) -> NodePtr {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          const Condition label(path);
          const PhpTree attached = attachment_for(label);
          if (!(attached.scale() == p.scale())) {
            throw AmbientMismatchError("attachment for " + label.to_string() +
                                       " lives on a different scale");
          }
          const Condition expected = *join(p.base(), label);
          if (!(attached.base() == expected)) {
            throw AmbientMismatchError("attachment for " + label.to_string() + " is rooted at " +
                                       attached.base().to_string() + ", expected " +
                                       expected.to_string());
          }
          if (!q.mark) return attached.root();
          // Unmarked leaves of the attachment inherit the mark they replace.
          std::function<NodePtr(const NodePtr&)> inherit = [&](const NodePtr& n) -> NodePtr {
            return std::visit(
                [&](const auto& r) -> NodePtr {
                  using U = std::decay_t<decltype(r)>;
                  if constexpr (std::is_same_v<U, Leaf>) {
                    return r.mark ? n : make_leaf(q.mark);
                  } else {
                    std::map<int, NodePtr> kids;
                    for (const auto& [key, child] : r.children) kids.emplace(key, inherit(child));
                    if constexpr (std::is_same_v<U, PigeonQuery>) {
                      return make_pigeon_query(r.pigeon, std::move(kids));
                    } else {
                      return make_hole_query(r.hole, std::move(kids));
                    }
                  }
                },
                n->kind);
          };
          return inherit(attached.root());
        } else {
          std::map<int, NodePtr> kids;
          for (const auto& [key, child] : q.children) {
            if constexpr (std::is_same_v<T, PigeonQuery>) {
              path.push_back({q.pigeon, key});
            } else {
              path.push_back({key, q.hole});
            }
            kids.emplace(key, graft_node(child, path, p, attachment_for));
            path.pop_back();
          }
          if constexpr (std::is_same_v<T, PigeonQuery>) {
            return make_pigeon_query(q.pigeon, std::move(kids));
          } else {
            return make_hole_query(q.hole, std::move(kids));
          }
        }
      },
      node->kind);
}

}  // namespace

PhpTree graft(const PhpTree& p,
              const std::function<PhpTree(const Condition& label)>& attachment_for) {
  std::vector<Pair> path;
  return PhpTree(p.scale(), p.base(), graft_node(p.root(), path, p, attachment_for));
}

PhpTree graft(const PhpTree& p, const std::map<Condition, PhpTree>& attachments) {
  return graft(p, [&](const Condition& label) -> PhpTree {
    auto it = attachments.find(label);
    if (it == attachments.end()) {
      throw PreconditionError("no attachment for leaf " + label.to_string());
    }
    return it->second;
  });
}

PhpTree extend_uniform(const PhpTree& p, int k) {
  if (k + static_cast<int>(p.base().size()) > p.scale().n) {
    throw RegimeError("uniform depth " + std::to_string(k) + " over a base of size " +
                      std::to_string(p.base().size()) + " exceeds n = " +
                      std::to_string(p.scale().n));
  }
  if (k < depth(p)) {
    throw PreconditionError("tree of depth " + std::to_string(depth(p)) +
                            " cannot be extended to uniform depth " + std::to_string(k));
  }
  return graft(p, [&](const Condition& label) {
    return pigeon_chain(*join(p.base(), label), k - static_cast<int>(label.size()), p.scale());
  });
}

BigInt min_leaf_count(int n, int base_size, int k) {
  if (n < 0 || base_size < 0 || k < 0 || k > n - base_size) {
    throw RegimeError("min leaf count needs 0 <= k <= n - s");
  }
  return falling_factorial(n - base_size, k);
}

bool is_antichain(std::span<const Condition> family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (compatible(family[i], family[j])) return false;
    }
  }
  return true;
}

std::optional<Condition> find_uncovered(const LeafFamily& f, const Scale& s) {
  for (const Condition& rho : enumerate_conditions(s)) {
    if (!extends(rho, f.base)) continue;
    const bool covered = std::any_of(f.leaves.begin(), f.leaves.end(),
                                     [&](const Condition& leaf) { return compatible(leaf, rho); });
    if (!covered) return rho;
  }
  return std::nullopt;
}

bool check_covering(const LeafFamily& f, const Scale& s) { return !find_uncovered(f, s); }

nlohmann::json node_to_json(const NodePtr& node) {
  return std::visit(
      [](const auto& q) -> nlohmann::json {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Leaf>) {
          nlohmann::json j{{"leaf", true}};
          j["mark"] = q.mark ? nlohmann::json(*q.mark) : nlohmann::json(nullptr);
          return j;
        } else {
          nlohmann::json kids = nlohmann::json::object();
          for (const auto& [key, child] : q.children) kids[std::to_string(key)] = node_to_json(child);
          if constexpr (std::is_same_v<T, PigeonQuery>) {
            return {{"q", "pigeon"}, {"idx", q.pigeon}, {"children", kids}};
          } else {
            return {{"q", "hole"}, {"idx", q.hole}, {"children", kids}};
          }
        }
      },
      node->kind);
}

NodePtr node_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidTreeError("tree node must be a JSON object");
  if (j.contains("leaf")) {
    const auto& mark = j.value("mark", nlohmann::json(nullptr));
    if (mark.is_null()) return make_leaf();
    if (!mark.is_boolean()) throw InvalidTreeError("leaf mark must be bool or null");
    return make_leaf(mark.get<bool>());
  }
  const std::string q = j.at("q").get<std::string>();
  const int idx = j.at("idx").get<int>();
  std::map<int, NodePtr> kids;
  for (const auto& [key, child] : j.at("children").items()) {
    kids.emplace(std::stoi(key), node_from_json(child));
  }
  if (q == "pigeon") return make_pigeon_query(idx, std::move(kids));
  if (q == "hole") return make_hole_query(idx, std::move(kids));
  throw InvalidTreeError("unknown query kind '" + q + "'");
}

nlohmann::json to_json(const PhpTree& t) {
  return {{"n", t.scale().n},
          {"k_cap", t.scale().k_cap},
          {"sigma", t.base().to_string()},
          {"root", node_to_json(t.root())}};
}

PhpTree tree_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k_cap = j.value("k_cap", n);
    return PhpTree(Scale::make(n, k_cap), Condition::parse(j.value("sigma", "{}")),
                   node_from_json(j.at("root")));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidTreeError(std::string("malformed tree JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InvalidTreeError(std::string("malformed tree JSON: ") + e.what());
  }
}

}  // namespace phplab
