#include "cylsle/mc.hpp"

#include <cmath>

namespace cylsle {

McEstimate make_estimate(std::int64_t n_left, std::int64_t n,
                         std::int64_t n_unresolved, std::int64_t steps) {
  McEstimate e;
  e.n = n;
  e.n_left = n_left;
  e.n_unresolved = n_unresolved;
  e.steps = steps;
  if (n > 0) {
    e.mean = static_cast<double>(n_left) / static_cast<double>(n);
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(n));
  }
  const std::int64_t total = n + n_unresolved;
  e.flagged = n == 0 || (total > 0 && 100 * n_unresolved > total);
  return e;
}

std::mt19937_64 worker_stream(std::uint64_t seed, int worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(worker)};
  return std::mt19937_64(seq);
}

std::int64_t worker_share(std::int64_t n, int workers, int worker) {
  return n / workers + (worker < n % workers ? 1 : 0);
}

}  // namespace cylsle
