#ifndef CYLSLE_SLE_MC_HPP
#define CYLSLE_SLE_MC_HPP

// Monte Carlo for the lifted difference process Y = X - W on the shrinking
// clock q = p - t:
//
//   dY = b(Y, q) dt + sqrt(2) dB,   b = v + 2 H'/H,
//
// absorbed near 0 (RIGHT) or near 2 pi (LEFT).

#include <cstdint>
#include <random>

#include "cylsle/mc.hpp"
#include "cylsle/passage.hpp"

namespace cylsle {

struct SdeRunConfig {
  double dt_max = 1e-3;
  /// dt <= factor * d^2 and dt <= factor * d / |b|, d the distance to {0, 2 pi}.
  double dt_boundary_factor = 0.1;
  double absorb_eps = 1e-4;
  double time_eps = 1e-6;
  std::uint64_t seed = 1;
  std::int64_t n_samples = 1000;
  int workers = 1;
  /// Series tolerance for the drift.
  double drift_rel_tol = 1e-12;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

enum class PathOutcome { left, right, unresolved };

struct PathResult {
  PathOutcome outcome = PathOutcome::unresolved;
  std::int64_t steps = 0;
  /// How far the absorbing step landed beyond the endpoint (0 if it did not).
  double overshoot = 0.0;
};

/// One path of Y started at x on the clock q = p - t.
PathResult simulate_path(double x, double p, const SdeRunConfig& cfg,
                         std::mt19937_64& rng);

/// Throws DomainError unless x in (0, 2 pi) and p is finite.
McEstimate simulate_passage(double x, Modulus p, const SdeRunConfig& cfg);

/// Exit points drawn from the hitting density on the arc (inverse CDF on a
/// grid of the closed-form distribution function), one path per draw.
McEstimate simulate_arc_passage(const SideArc& arc, Modulus p,
                                const SdeRunConfig& cfg);

}  // namespace cylsle

#endif  // CYLSLE_SLE_MC_HPP
