#ifndef PHPLAB_FORCING_HPP
#define PHPLAB_FORCING_HPP

#include "phplab/condition.hpp"
#include "phplab/formula.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace phplab {

/// Which extensions the forcing clauses quantify over.
///
/// Full: every partial injection extending σ (sizes up to n). Conditions of
/// size n use every hole and therefore decide every atom, so the recursion
/// bottoms out the way it does in the infinite setting.
///
/// HardHorizon: only extensions of size <= K. A condition of size K has no
/// proper extension, so the existential clauses can fail below it even when a
/// larger K would let them succeed.
enum class ExtensionRange { Full, HardHorizon };

struct ForcingOptions {
  ExtensionRange range = ExtensionRange::Full;
  bool trace = false;
  std::size_t trace_limit = 10'000;
};

struct TraceEntry {
  Condition condition;
  std::string subformula;
  int clause = 0;  // 1 atom, 2 negated atom, 3 and, 4 forall, 5 not, 6 or, 7 exists
  bool verdict = false;
};

/// Rewrites negations the clauses do not cover. A negated atom becomes a
/// negative literal; a negation over a sharply bounded formula is kept;
/// a negation over anything else is pushed inward by the usual dualities.
Formula normalize(const Formula& f);

/// The forcing relation σ ⊩ φ over P(n, K), defined by the recursive clauses:
///
///   1. σ ⊩ R(a,b)   iff (a,b) ∈ σ
///   2. σ ⊩ ¬R(a,b)  iff σ contains (a,b') with b' ≠ b or (a',b) with a' ≠ a
///   3. σ ⊩ φ ∧ θ    iff σ ⊩ φ and σ ⊩ θ
///   4. σ ⊩ ∀u≤t φ   iff σ ⊩ φ(i) for every i ≤ t
///   5. σ ⊩ ¬φ       iff no τ ≤ σ forces φ
///   6. σ ⊩ φ ∨ θ    iff every τ ≤ σ has some ρ ≤ τ forcing φ or θ
///   7. σ ⊩ ∃u≤t φ   iff every τ ≤ σ has some ρ ≤ τ and i ≤ t with ρ ⊩ φ(i)
///
/// Atoms whose indices fall outside [n+1] × [n] are false.
///
/// Results are memoized per (condition, formula); the cache only ever grows.
class ForcingContext {
 public:
  explicit ForcingContext(Scale scale, ForcingOptions options = {});

  const Scale& scale() const { return scale_; }
  const ForcingOptions& options() const { return options_; }
  /// Largest condition size the clauses quantify over.
  int horizon() const { return poset_->max_size(); }
  const ConditionIndex& poset() const { return *poset_; }

  /// Throws PreconditionError if σ is not in P(n, K) and ShapeError if φ has
  /// free variables.
  bool forces(const Condition& sigma, const Formula& phi);

  const std::vector<TraceEntry>& trace() const { return trace_; }
  bool trace_truncated() const { return trace_truncated_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  bool eval(int id, const Formula& f);
  bool eval_keyed(int id, const Formula& f, const std::string& key);
  bool exists_below(int id, const Formula& f, const std::string& key);
  std::vector<std::int8_t>& slots(std::unordered_map<std::string, std::vector<std::int8_t>>& table,
                                  const std::string& key);
  void record(int id, const std::string& key, int clause, bool verdict);

  Scale scale_;
  ForcingOptions options_;
  std::shared_ptr<const ConditionIndex> poset_;
  std::unordered_map<std::string, std::vector<std::int8_t>> memo_;
  std::unordered_map<std::string, std::vector<std::int8_t>> below_memo_;
  std::vector<TraceEntry> trace_;
  bool trace_truncated_ = false;
};

bool forces(const Condition& sigma, const Formula& phi, ForcingContext& ctx);

using ConditionPredicate = std::function<bool(const Condition&)>;

/// Every σ in P(n, K) has an extension satisfying `pred`.
bool is_dense(const ConditionPredicate& pred, const Scale& s,
              ExtensionRange range = ExtensionRange::Full);
/// Every τ ≤ σ in P(n, K) has an extension satisfying `pred`.
bool is_dense_relative(const ConditionPredicate& pred, const Condition& sigma, const Scale& s,
                       ExtensionRange range = ExtensionRange::Full);

}  // namespace phplab

#endif  // PHPLAB_FORCING_HPP
