#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tradeopt {

// Seeded random stream used by every stochastic step of a run.
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Range reduction is done here rather than through
// <random> distributions (which are implementation-defined), so a seed yields
// the same run on every conforming toolchain:
//   uniform01()      = (next() >> 11) * 2^-53
//   uniform_index(n) = rejection sampling on next() against the largest
//                      multiple of n below 2^64
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  bool bernoulli(double p) { return uniform01() < p; }

  // Uniformly random k-subset of [0, n), returned in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  // Index drawn from a discrete distribution given by `weights` (sum ~ 1).
  std::size_t pick_weighted(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tradeopt
