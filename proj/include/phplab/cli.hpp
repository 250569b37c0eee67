#ifndef PHPLAB_CLI_HPP
#define PHPLAB_CLI_HPP

#include "phplab/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace phplab::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Parameters of a bounds sweep. Stored as a flat `key = value` file:
///
///   n = 8..12
///   k = 1,2
///   s = 0
///   m = 1
///   k_cap = 2
///   search = false
///   format = csv
///   seed = 1
///   budget_nodes = 1000000
///
/// Lists accept comma-separated integers and inclusive ranges `a..b`.
struct ExperimentConfig {
  std::vector<int> n;
  std::vector<int> k;
  std::vector<int> s{0};
  std::vector<int> m{1};
  int k_cap = 2;
  bool search = false;
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::size_t budget_nodes = 1'000'000;

  /// Throws UsageError on an empty sweep, a non-positive limit or an
  /// unknown format.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::vector<int> parse_int_list(std::string_view text);
std::string format_int_list(const std::vector<int>& values);

/// Unknown keys and malformed values throw UsageError.
ExperimentConfig parse_config(std::string_view text);
std::string write_config(const ExperimentConfig& c);

/// One row per (n, k, s, m) point, in that nesting order.
std::string sweep(const ExperimentConfig& c);

/// Entry point of the `lab` tool. Returns 0 on success, 1 when a check finds
/// a violation (or a search runs out of budget), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phplab::cli

#endif  // PHPLAB_CLI_HPP
