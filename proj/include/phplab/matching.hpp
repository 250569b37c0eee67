#ifndef PHPLAB_MATCHING_HPP
#define PHPLAB_MATCHING_HPP

#include "phplab/bigint.hpp"
#include "phplab/condition.hpp"

#include <cstddef>
#include <vector>

namespace phplab {

/// A family of k-matchings of the complete bipartite graph K_{d,c}, left
/// vertices [d] and right vertices [c]. Members reuse Condition with the
/// left vertex as pigeon and the right vertex as hole.
struct MatchingFamily {
  int d = 0;
  int c = 0;
  int k = 0;
  std::vector<Condition> members;  // canonical order
};

// k! C(d,k) C(c,k); requires 0 <= k <= min(c, d).
BigInt count_k_matchings(int d, int c, int k);
// (c-k)! C(d-k, c-k): c-matchings extending a fixed k-matching; k <= c <= d.
BigInt count_extensions(int d, int c, int k);
// d! / (d-k)!; 0 <= k <= d.
BigInt family_bound(int d, int k);
/// c! C(d,c) / ((c-k)! C(d-k,c-k)), evaluated as an exact quotient. Throws
/// DomainError if the division leaves a remainder.
BigInt family_bound_via_extensions(int d, int c, int k);

/// All k-matchings of K_{d,c} in canonical order.
std::vector<Condition> enumerate_k_matchings(int d, int c, int k);

/// Every two members are incompatible (their union is not a matching).
bool is_pairwise_incompatible(const MatchingFamily& f);

struct MaxFamilyResult {
  std::size_t size = 0;
  MatchingFamily witness;
  std::size_t nodes = 0;
};

/// Exact maximum pairwise-incompatible family of k-matchings of K_{d,c}, by
/// branch and bound on the compatibility complement. Throws BudgetError past
/// `budget` search nodes.
MaxFamilyResult brute_force_max_family(int d, int c, int k, std::size_t budget = 10'000'000);

/// The k-matchings of K_{d,k} whose right endpoints are exactly {0..k-1}.
MatchingFamily fixed_holes_family(int d, int k);

}  // namespace phplab

#endif  // PHPLAB_MATCHING_HPP
