#include "phplab/condition.hpp"

#include "phplab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace phplab {

Scale Scale::make(int n, int k_cap) {
  if (n < 2) throw DomainError("scale requires n >= 2, got " + std::to_string(n));
  if (k_cap < 1 || k_cap > n) {
    throw DomainError("scale requires 1 <= K <= n, got K=" + std::to_string(k_cap));
  }
  return Scale{n, k_cap};
}

Condition::Condition(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  std::set<int> holes;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const Pair& p = pairs_[i];
    if (p.pigeon < 0 || p.hole < 0) {
      throw InvalidConditionError("negative index in condition");
    }
    if (i > 0 && pairs_[i - 1].pigeon == p.pigeon) {
      throw InvalidConditionError("pigeon " + std::to_string(p.pigeon) +
                                  " mapped to two holes");
    }
    if (!holes.insert(p.hole).second) {
      throw InvalidConditionError("hole " + std::to_string(p.hole) +
                                  " receives two pigeons");
    }
  }
}

Condition Condition::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "{}" || s.empty()) return Condition();
  std::vector<Pair> pairs;
  std::size_t pos = 0;
  auto read_int = [&](std::size_t& at) {
    std::size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (start == at) {
      throw InvalidConditionError("malformed condition '" + std::string(text) + "'");
    }
    return std::stoi(s.substr(start, at - start));
  };
  while (pos < s.size()) {
    int pigeon = read_int(pos);
    if (s.compare(pos, 2, "->") != 0) {
      throw InvalidConditionError("malformed condition '" + std::string(text) + "'");
    }
    pos += 2;
    int hole = read_int(pos);
    pairs.push_back({pigeon, hole});
    if (pos < s.size()) {
      if (s[pos] != ',') {
        throw InvalidConditionError("malformed condition '" + std::string(text) + "'");
      }
      ++pos;
      if (pos == s.size()) {
        throw InvalidConditionError("trailing comma in '" + std::string(text) + "'");
      }
    }
  }
  return Condition(std::move(pairs));
}

std::optional<int> Condition::hole_of(int pigeon) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), Pair{pigeon, -1});
  if (it != pairs_.end() && it->pigeon == pigeon) return it->hole;
  return std::nullopt;
}

std::optional<int> Condition::pigeon_of(int hole) const {
  for (const Pair& p : pairs_) {
    if (p.hole == hole) return p.pigeon;
  }
  return std::nullopt;
}

bool Condition::contains(Pair p) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), p);
}

Condition Condition::with(Pair p) const {
  std::vector<Pair> next = pairs_;
  next.push_back(p);
  return Condition(std::move(next));
}

std::string Condition::to_string() const {
  if (pairs_.empty()) return "{}";
  std::string out;
  for (const Pair& p : pairs_) {
    if (!out.empty()) out += ',';
    out += std::to_string(p.pigeon) + "->" + std::to_string(p.hole);
  }
  return out;
}

std::strong_ordering operator<=>(const Condition& a, const Condition& b) {
  if (auto c = a.pairs_.size() <=> b.pairs_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.pairs_.begin(), a.pairs_.end(),
                                                b.pairs_.begin(), b.pairs_.end());
}

bool in_range(const Condition& c, const Scale& s) {
  return std::all_of(c.pairs().begin(), c.pairs().end(), [&](const Pair& p) {
    return p.pigeon < s.pigeons() && p.hole < s.holes();
  });
}

bool is_valid(const Condition& c, const Scale& s) {
  return in_range(c, s) && c.size() <= static_cast<std::size_t>(s.k_cap);
}

bool compatible(const Condition& a, const Condition& b) {
  for (const Pair& p : b.pairs()) {
    auto hole = a.hole_of(p.pigeon);
    if (hole && *hole != p.hole) return false;
    auto pigeon = a.pigeon_of(p.hole);
    if (pigeon && *pigeon != p.pigeon) return false;
  }
  return true;
}

std::optional<Condition> join(const Condition& a, const Condition& b) {
  if (!compatible(a, b)) return std::nullopt;
  std::vector<Pair> all(a.pairs().begin(), a.pairs().end());
  all.insert(all.end(), b.pairs().begin(), b.pairs().end());
  return Condition(std::move(all));
}

bool is_compatible(const Condition& a, const Condition& b, const Scale& s) {
  auto u = join(a, b);
  return u && u->size() <= static_cast<std::size_t>(s.k_cap);
}

bool extends(const Condition& a, const Condition& b) {
  return std::includes(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                       b.pairs().end());
}

Condition intersection(const Condition& a, const Condition& b) {
  std::vector<Pair> out;
  std::set_intersection(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                        b.pairs().end(), std::back_inserter(out));
  return Condition(std::move(out));
}

Condition difference(const Condition& a, const Condition& b) {
  std::vector<Pair> out;
  std::set_difference(a.pairs().begin(), a.pairs().end(), b.pairs().begin(),
                      b.pairs().end(), std::back_inserter(out));
  return Condition(std::move(out));
}

bool disjoint(const Condition& a, const Condition& b) {
  return intersection(a, b).empty();
}

BigInt count_conditions(int n, int k_cap) {
  if (n < 0 || k_cap < 0) throw DomainError("negative scale");
  BigInt total = 0;
  for (int j = 0; j <= std::min(k_cap, n); ++j) {
    total += factorial(j) * binomial(n + 1, j) * binomial(n, j);
  }
  return total;
}

namespace {

void extend_all(int n, int k_cap, int next_pigeon, std::vector<Pair>& current,
                std::vector<bool>& hole_used, std::vector<Condition>& out) {
  out.emplace_back(current);
  if (static_cast<int>(current.size()) == k_cap) return;
  for (int p = next_pigeon; p <= n; ++p) {
    for (int h = 0; h < n; ++h) {
      if (hole_used[static_cast<std::size_t>(h)]) continue;
      hole_used[static_cast<std::size_t>(h)] = true;
      current.push_back({p, h});
      extend_all(n, k_cap, p + 1, current, hole_used, out);
      current.pop_back();
      hole_used[static_cast<std::size_t>(h)] = false;
    }
  }
}

}  // namespace

std::vector<Condition> enumerate_conditions(int n, int k_cap, std::size_t limit) {
  if (n < 1 || k_cap < 0) throw DomainError("enumeration needs n >= 1 and K >= 0");
  k_cap = std::min(k_cap, n);
  const BigInt count = count_conditions(n, k_cap);
  if (count > limit) {
    throw BudgetError("P(" + std::to_string(n) + "," + std::to_string(k_cap) +
                      ") has " + count.str() + " conditions, limit is " +
                      std::to_string(limit));
  }
  std::vector<Condition> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<Pair> current;
  std::vector<bool> hole_used(static_cast<std::size_t>(n), false);
  extend_all(n, k_cap, 0, current, hole_used, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Condition> enumerate_conditions(const Scale& s, std::size_t limit) {
  return enumerate_conditions(s.n, s.k_cap, limit);
}

bool is_filter(std::span<const Condition> members, const Scale& s) {
  std::set<Condition> set(members.begin(), members.end());
  for (const Condition& a : set) {
    if (!is_valid(a, s)) return false;
    for (const Condition& b : set) {
      if (!is_compatible(a, b, s)) return false;
    }
  }
  // Upward closure: every weaker condition (subset) must be present. The
  // subsets of a valid condition are all in P(n, K).
  for (const Condition& a : set) {
    const auto pairs = a.pairs();
    const std::size_t size = pairs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << size); ++mask) {
      std::vector<Pair> sub;
      for (std::size_t i = 0; i < size; ++i) {
        if (mask & (std::size_t{1} << i)) sub.push_back(pairs[i]);
      }
      if (!set.contains(Condition(std::move(sub)))) return false;
    }
  }
  return true;
}

ConditionIndex::ConditionIndex(int n, int max_size, std::size_t limit)
    : n_(n), max_size_(std::min(max_size, n)), all_(enumerate_conditions(n, max_size, limit)) {
  for (std::size_t i = 0; i < all_.size(); ++i) ids_.emplace(all_[i], static_cast<int>(i));
  successors_.resize(all_.size());
  for (std::size_t i = 0; i < all_.size(); ++i) {
    const Condition& c = all_[i];
    if (static_cast<int>(c.size()) >= max_size_) continue;
    for (int p = 0; p <= n_; ++p) {
      if (c.has_pigeon(p)) continue;
      for (int h = 0; h < n_; ++h) {
        if (c.has_hole(h)) continue;
        successors_[i].push_back(ids_.at(c.with({p, h})));
      }
    }
  }
}

std::optional<int> ConditionIndex::find(const Condition& c) const {
  auto it = ids_.find(c);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int ConditionIndex::id_of(const Condition& c) const {
  auto id = find(c);
  if (!id) {
    throw PreconditionError("condition " + c.to_string() + " is outside P(" +
                            std::to_string(n_) + "," + std::to_string(max_size_) + ")");
  }
  return *id;
}

}  // namespace phplab
