#ifndef CYLSLE_MC_HPP
#define CYLSLE_MC_HPP

#include <cstdint>
#include <random>

namespace cylsle {

/// Frequency of the LEFT outcome among resolved samples.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / n)
  std::int64_t n = 0;
  std::int64_t n_left = 0;
  std::int64_t n_unresolved = 0;
  /// Set when more than 1% of the samples stayed unresolved.
  bool flagged = false;
  std::int64_t steps = 0;
};

McEstimate make_estimate(std::int64_t n_left, std::int64_t n,
                         std::int64_t n_unresolved, std::int64_t steps);

/// Independent stream for one worker, derived from (seed, worker).
std::mt19937_64 worker_stream(std::uint64_t seed, int worker);

/// Number of samples assigned to a worker when n is split across workers.
std::int64_t worker_share(std::int64_t n, int workers, int worker);

}  // namespace cylsle

#endif  // CYLSLE_MC_HPP
