#pragma once

#include <cstdint>
#include <vector>

#include "tradeopt/domain.hpp"

namespace tradeopt {

// Every trade with 1..m players per side against every opponent, indexed
// densely in [0, count()). Index order: opponent (document order), then the
// user's subset, then the opponent's subset; subsets are ordered by size and
// then lexicographically by roster position.
class CandidateSpace {
 public:
  CandidateSpace(const LeagueSnapshot& snapshot, int max_players_per_side);

  // Saturates at UINT64_MAX.
  std::uint64_t count() const noexcept { return total_; }
  Trade trade_at(std::uint64_t index) const;

 private:
  const LeagueSnapshot& snapshot_;
  int max_side_;
  std::uint64_t user_subsets_ = 0;
  std::vector<std::uint64_t> opponent_subsets_;  // per opponent
  std::vector<std::uint64_t> prefix_;            // cumulative candidate counts
  std::uint64_t total_ = 0;
};

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

// Number of non-empty subsets with at most m elements of an n-element set.
std::uint64_t bounded_subset_count(std::uint64_t n, int m) noexcept;

// The `rank`-th subset (size-then-lexicographic order) of {0..n-1} with at
// most m elements.
std::vector<std::size_t> unrank_bounded_subset(std::size_t n, int m, std::uint64_t rank);

}  // namespace tradeopt
