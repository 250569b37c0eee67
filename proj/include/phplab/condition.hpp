#ifndef PHPLAB_CONDITION_HPP
#define PHPLAB_CONDITION_HPP

#include "phplab/bigint.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phplab {

/// Ambient finite parameters: n holes, n+1 pigeons, and the cap K on
/// condition size.
struct Scale {
  int n = 2;
  int k_cap = 1;

  /// Throws DomainError unless n >= 2 and 1 <= K <= n.
  static Scale make(int n, int k_cap);

  int pigeons() const { return n + 1; }
  int holes() const { return n; }

  friend bool operator==(const Scale&, const Scale&) = default;
};

struct Pair {
  int pigeon = 0;
  int hole = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// A partial injective map from pigeons to holes, stored sorted by pigeon.
///
/// The type only enforces injectivity and nonnegative indices. Whether the
/// condition belongs to a particular poset P(n, K) is a separate question,
/// answered by is_valid().
class Condition {
 public:
  Condition() = default;
  /// Throws InvalidConditionError if the pairs are not injective both ways.
  explicit Condition(std::vector<Pair> pairs);
  Condition(std::initializer_list<Pair> pairs)
      : Condition(std::vector<Pair>(pairs)) {}

  /// Parses "0->1,2->0" or "{}". Whitespace is ignored.
  static Condition parse(std::string_view text);

  std::span<const Pair> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  std::optional<int> hole_of(int pigeon) const;
  std::optional<int> pigeon_of(int hole) const;
  bool has_pigeon(int pigeon) const { return hole_of(pigeon).has_value(); }
  bool has_hole(int hole) const { return pigeon_of(hole).has_value(); }
  bool contains(Pair p) const;

  /// Adds a pair; throws InvalidConditionError if it breaks injectivity.
  Condition with(Pair p) const;

  std::string to_string() const;

  /// Size first, then lexicographic on the pigeon-sorted pair list.
  friend std::strong_ordering operator<=>(const Condition& a, const Condition& b);
  friend bool operator==(const Condition& a, const Condition& b) = default;

 private:
  std::vector<Pair> pairs_;
};

/// Indices in range for the scale and size at most K.
bool is_valid(const Condition& c, const Scale& s);
/// Indices in range for the scale, any size.
bool in_range(const Condition& c, const Scale& s);

/// The union of a and b is again injective both ways (no size cap). This is
/// the relation used for leaf families, matchings and arrays.
bool compatible(const Condition& a, const Condition& b);
/// The union, or nullopt if the two are incompatible.
std::optional<Condition> join(const Condition& a, const Condition& b);

/// Compatibility inside P(n, K): the union is injective and has size <= K.
bool is_compatible(const Condition& a, const Condition& b, const Scale& s);

/// a <= b in the poset, i.e. a is a superset of b.
bool extends(const Condition& a, const Condition& b);

Condition intersection(const Condition& a, const Condition& b);
Condition difference(const Condition& a, const Condition& b);
bool disjoint(const Condition& a, const Condition& b);

/// Number of partial injections [n+1] -> [n] of size <= K.
BigInt count_conditions(int n, int k_cap);

constexpr std::size_t kDefaultEnumerationLimit = 5'000'000;

/// Every condition of size <= K over n holes, sorted by size then
/// lexicographically. Throws BudgetError past `limit`.
std::vector<Condition> enumerate_conditions(int n, int k_cap,
                                            std::size_t limit = kDefaultEnumerationLimit);
std::vector<Condition> enumerate_conditions(const Scale& s,
                                            std::size_t limit = kDefaultEnumerationLimit);

bool is_filter(std::span<const Condition> members, const Scale& s);

/// A materialized poset P(n, h) with integer ids and the covering relation
/// (one-pair extensions), for algorithms that walk the order.
class ConditionIndex {
 public:
  ConditionIndex(int n, int max_size, std::size_t limit = kDefaultEnumerationLimit);

  int n() const { return n_; }
  int max_size() const { return max_size_; }
  std::size_t size() const { return all_.size(); }
  const Condition& at(int id) const { return all_[static_cast<std::size_t>(id)]; }
  std::optional<int> find(const Condition& c) const;
  int id_of(const Condition& c) const;  // throws PreconditionError if absent

  std::span<const int> successors(int id) const {
    return successors_[static_cast<std::size_t>(id)];
  }

 private:
  int n_;
  int max_size_;
  std::vector<Condition> all_;
  std::map<Condition, int> ids_;
  std::vector<std::vector<int>> successors_;
};

}  // namespace phplab

#endif  // PHPLAB_CONDITION_HPP
