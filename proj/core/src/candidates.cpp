#include "tradeopt/candidates.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tradeopt {
namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t bounded_subset_count(std::uint64_t n, int m) noexcept {
  std::uint64_t total = 0;
  for (int k = 1; k <= m; ++k) total = sat_add(total, binomial(n, static_cast<std::uint64_t>(k)));
  return total;
}

std::vector<std::size_t> unrank_bounded_subset(std::size_t n, int m, std::uint64_t rank) {
  std::size_t k = 1;
  for (; static_cast<int>(k) <= m; ++k) {
    const std::uint64_t c = binomial(n, k);
    if (rank < c) break;
    rank -= c;
  }
  if (static_cast<int>(k) > m || k > n) throw std::out_of_range("subset rank out of range");

  // Lexicographic unranking of a k-combination of {0..n-1}.
  std::vector<std::size_t> out;
  out.reserve(k);
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    const std::size_t left = k - slot - 1;
    for (;; ++next) {
      const std::uint64_t with_next = binomial(n - next - 1, left);
      if (rank < with_next) break;
      rank -= with_next;
    }
    out.push_back(next++);
  }
  return out;
}

CandidateSpace::CandidateSpace(const LeagueSnapshot& snapshot, int max_players_per_side)
    : snapshot_(snapshot), max_side_(max_players_per_side) {
  user_subsets_ = bounded_subset_count(snapshot.user_team().players.size(), max_side_);
  for (std::size_t t : snapshot.opponent_indices()) {
    const std::uint64_t opp = bounded_subset_count(snapshot.teams()[t].players.size(), max_side_);
    opponent_subsets_.push_back(opp);
    total_ = sat_add(total_, sat_mul(user_subsets_, opp));
    prefix_.push_back(total_);
  }
}

Trade CandidateSpace::trade_at(std::uint64_t index) const {
  if (index >= total_) throw std::out_of_range("candidate index out of range");
  const auto it = std::upper_bound(prefix_.begin(), prefix_.end(), index);
  const auto o = static_cast<std::size_t>(it - prefix_.begin());
  const std::uint64_t local = index - (o == 0 ? 0 : prefix_[o - 1]);
  const std::uint64_t giving_rank = local / opponent_subsets_[o];
  const std::uint64_t receiving_rank = local % opponent_subsets_[o];

  const Roster& user = snapshot_.user_team();
  const Roster& opponent = snapshot_.teams()[snapshot_.opponent_indices()[o]];
  std::vector<std::string> giving;
  std::vector<std::string> receiving;
  for (std::size_t i : unrank_bounded_subset(user.players.size(), max_side_, giving_rank)) {
    giving.push_back(user.players[i].player_id);
  }
  for (std::size_t i : unrank_bounded_subset(opponent.players.size(), max_side_, receiving_rank)) {
    receiving.push_back(opponent.players[i].player_id);
  }
  return Trade(opponent.team_id, std::move(giving), std::move(receiving));
}

}  // namespace tradeopt
