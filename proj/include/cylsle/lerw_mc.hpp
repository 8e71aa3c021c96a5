#ifndef CYLSLE_LERW_MC_HPP
#define CYLSLE_LERW_MC_HPP

// Loop-erased random walks on the M x L cylinder grid from the boundary site
// (0, 0) to the boundary site (m, 0). A walk is LEFT when the net unwrapped
// x-displacement of its loop erasure is negative.

#include <cstdint>
#include <vector>

#include "cylsle/lattice.hpp"
#include "cylsle/mc.hpp"

namespace cylsle {

struct LatticeSite {
  std::int64_t x = 0;  // unwrapped column
  int y = 0;

  bool operator==(const LatticeSite&) const = default;
};

struct LatticePath {
  std::vector<LatticeSite> sites;
};

enum class LerwMethod {
  /// Simple random walk from (0, 1), rejected unless it exits at the target.
  rejection,
  /// The same walk conditioned exactly through the discrete Poisson kernel of
  /// the target (Doob transform); no rejections.
  h_transform,
};

struct LerwConfig {
  std::uint64_t seed = 1;
  std::int64_t n_samples = 1000;
  /// Walk-step budget per requested sample, pooled over the run.
  std::int64_t max_attempts_per_sample = 10'000'000;
  int workers = 1;
  LerwMethod method = LerwMethod::rejection;

  void validate() const;
};

/// Throws ConfigError unless consecutive sites are unit steps, the end sites
/// are on y = 0 and all other sites have 1 <= y <= L - 1.
void validate_path(const LatticePath& path, const LatticeDomain& dom);

/// Chronological loop erasure; sites are compared modulo M in x.
LatticePath loop_erase(const LatticePath& path, const LatticeDomain& dom);

/// Net x-displacement of the loop erasure of path; LEFT iff negative.
std::int64_t erased_displacement(const LatticePath& path,
                                 const LatticeDomain& dom);

/// Probability that the walk from (x, y) first reaches the boundary at
/// (target_m, 0); harmonic in the interior.
double exit_kernel(const LatticeDomain& dom, int target_m, std::int64_t x,
                   int y);

/// Throws PartialResultError when the step budget runs out first.
McEstimate sample_lerw(const LatticeDomain& dom, int target_m,
                       const LerwConfig& cfg);

/// One accepted walk (before loop erasure), starting at (0, 0).
LatticePath sample_walk(const LatticeDomain& dom, int target_m,
                        const LerwConfig& cfg, std::uint64_t stream);

}  // namespace cylsle

#endif  // CYLSLE_LERW_MC_HPP
