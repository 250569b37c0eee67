#include "phplab/matching.hpp"

#include "phplab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace phplab {

namespace {

std::string triple(int d, int c, int k) {
  return "(d=" + std::to_string(d) + ", c=" + std::to_string(c) + ", k=" + std::to_string(k) + ")";
}

void require_k_le_c_le_d(int d, int c, int k) {
  if (k < 0 || k > c || c > d) throw DomainError("needs 0 <= k <= c <= d, got " + triple(d, c, k));
}

void extend(int d, int c, int k, int left, std::vector<Pair>& current, std::vector<bool>& used,
            std::vector<Condition>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.emplace_back(current);
    return;
  }
  // Not enough left vertices remain to finish.
  if (d - left < k - static_cast<int>(current.size())) return;
  extend(d, c, k, left + 1, current, used, out);
  for (int r = 0; r < c; ++r) {
    if (used[static_cast<std::size_t>(r)]) continue;
    used[static_cast<std::size_t>(r)] = true;
    current.push_back({left, r});
    extend(d, c, k, left + 1, current, used, out);
    current.pop_back();
    used[static_cast<std::size_t>(r)] = false;
  }
}

}  // namespace

BigInt count_k_matchings(int d, int c, int k) {
  if (k < 0 || d < 0 || c < 0 || k > std::min(c, d)) {
    throw DomainError("needs 0 <= k <= min(c, d), got " + triple(d, c, k));
  }
  return factorial(k) * binomial(d, k) * binomial(c, k);
}

BigInt count_extensions(int d, int c, int k) {
  require_k_le_c_le_d(d, c, k);
  return factorial(c - k) * binomial(d - k, c - k);
}

BigInt family_bound(int d, int k) {
  if (k < 0 || k > d) throw DomainError("needs 0 <= k <= d");
  return falling_factorial(d, k);
}

BigInt family_bound_via_extensions(int d, int c, int k) {
  require_k_le_c_le_d(d, c, k);
  const BigInt total = factorial(c) * binomial(d, c);
  const BigInt per = count_extensions(d, c, k);
  if (total % per != 0) throw DomainError("inexact quotient at " + triple(d, c, k));
  return total / per;
}

std::vector<Condition> enumerate_k_matchings(int d, int c, int k) {
  if (k < 0 || d < 0 || c < 0 || k > std::min(c, d)) {
    throw DomainError("needs 0 <= k <= min(c, d), got " + triple(d, c, k));
  }
  std::vector<Condition> out;
  std::vector<Pair> current;
  std::vector<bool> used(static_cast<std::size_t>(c), false);
  extend(d, c, k, 0, current, used, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_pairwise_incompatible(const MatchingFamily& f) {
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    for (std::size_t j = i + 1; j < f.members.size(); ++j) {
      if (compatible(f.members[i], f.members[j])) return false;
    }
  }
  return true;
}

namespace {

using Bits = std::vector<std::uint64_t>;

void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
void reset(Bits& b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

// Maximum clique with greedy-colouring bounds, on the graph whose edges join
// incompatible matchings.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<Condition>& vertices, std::size_t budget)
      : n_(vertices.size()), words_((n_ + 63) / 64), budget_(budget) {
    adj_.assign(n_, Bits(words_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (!compatible(vertices[i], vertices[j])) {
          set(adj_[i], j);
          set(adj_[j], i);
        }
      }
    }
  }

  std::vector<std::size_t> run() {
    Bits all(words_, 0);
    for (std::size_t i = 0; i < n_; ++i) set(all, i);
    std::vector<std::size_t> current;
    expand(current, all);
    return best_;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  void colour(const Bits& p, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) {
    Bits uncoloured = p;
    std::size_t colour_index = 0;
    while (!none(uncoloured)) {
      ++colour_index;
      Bits q = uncoloured;
      while (!none(q)) {
        std::size_t v = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          if (q[w]) {
            v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
            break;
          }
        }
        reset(q, v);
        reset(uncoloured, v);
        for (std::size_t w = 0; w < words_; ++w) q[w] &= ~adj_[v][w];
        order.push_back(v);
        bound.push_back(colour_index);
      }
    }
  }

  void expand(std::vector<std::size_t>& current, Bits p) {
    if (++nodes_ > budget_) {
      throw BudgetError("family search exceeded " + std::to_string(budget_) + " nodes");
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    colour(p, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      Bits next(words_);
      for (std::size_t w = 0; w < words_; ++w) next[w] = p[w] & adj_[v][w];
      if (none(next)) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      reset(p, v);
    }
  }

  std::size_t n_;
  std::size_t words_;
  std::size_t budget_;
  std::vector<Bits> adj_;
  std::vector<std::size_t> best_;
  std::size_t nodes_ = 0;
};

}  // namespace

MaxFamilyResult brute_force_max_family(int d, int c, int k, std::size_t budget) {
  const auto vertices = enumerate_k_matchings(d, c, k);
  CliqueSearch search(vertices, budget);
  const auto best = search.run();
  MaxFamilyResult r;
  r.size = best.size();
  r.nodes = search.nodes();
  r.witness = {d, c, k, {}};
  for (std::size_t v : best) r.witness.members.push_back(vertices[v]);
  std::sort(r.witness.members.begin(), r.witness.members.end());
  return r;
}

MatchingFamily fixed_holes_family(int d, int k) {
  if (k < 0 || k > d) throw DomainError("needs 0 <= k <= d");
  MatchingFamily f{d, k, k, {}};
  for (Condition& m : enumerate_k_matchings(d, k, k)) f.members.push_back(std::move(m));
  return f;
}

}  // namespace phplab
