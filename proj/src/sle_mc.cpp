#include "cylsle/sle_mc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cylsle/errors.hpp"
#include "cylsle/kernels.hpp"
#include "parallel.hpp"

namespace cylsle {

namespace {

constexpr int kCdfGrid = 4097;

// Supplies one random sign per call, 64 per engine draw.
class SignSource {
 public:
  explicit SignSource(std::mt19937_64& rng) : rng_(rng) {}

  double next() {
    if (left_ == 0) {
      bits_ = rng_();
      left_ = 64;
    }
    const double s = (bits_ & 1u) ? 1.0 : -1.0;
    bits_ >>= 1;
    --left_;
    return s;
  }

 private:
  std::mt19937_64& rng_;
  std::uint64_t bits_ = 0;
  int left_ = 0;
};

struct Tally {
  std::int64_t left = 0;
  std::int64_t resolved = 0;
  std::int64_t unresolved = 0;
  std::int64_t steps = 0;

  void add(const PathResult& r) {
    steps += r.steps;
    switch (r.outcome) {
      case PathOutcome::left:
        ++left;
        ++resolved;
        break;
      case PathOutcome::right:
        ++resolved;
        break;
      case PathOutcome::unresolved:
        ++unresolved;
        break;
    }
  }
};

McEstimate reduce(const std::vector<Tally>& parts) {
  Tally total;
  for (const auto& t : parts) {
    total.left += t.left;
    total.resolved += t.resolved;
    total.unresolved += t.unresolved;
    total.steps += t.steps;
  }
  return make_estimate(total.left, total.resolved, total.unresolved,
                       total.steps);
}

double require_finite_modulus(Modulus p) {
  if (p.is_infinite()) {
    throw DomainError("Monte Carlo needs a finite modulus");
  }
  return p.value();
}

}  // namespace

void SdeRunConfig::validate() const {
  if (!(dt_max > 0.0) || !(dt_boundary_factor > 0.0) || !(absorb_eps > 0.0) ||
      !(time_eps > 0.0) || !(drift_rel_tol > 0.0 && drift_rel_tol < 1.0)) {
    throw ConfigError("SDE config: step, tolerance and epsilon fields must be positive");
  }
  if (dt_boundary_factor > 0.25) {
    throw ConfigError("SDE config: dt_boundary_factor must not exceed 0.25");
  }
  if (absorb_eps >= 1.0) throw ConfigError("SDE config: absorb_eps must be below 1");
  if (n_samples < 1) throw ConfigError("SDE config: n_samples must be at least 1");
  if (workers < 1) throw ConfigError("SDE config: workers must be at least 1");
}

PathResult simulate_path(double x, double p, const SdeRunConfig& cfg,
                         std::mt19937_64& rng) {
  SeriesPrecision prec;
  prec.rel_tol = cfg.drift_rel_tol;
  SignSource sign(rng);
  const double f = cfg.dt_boundary_factor;
  const double left_edge = kTwoPi - cfg.absorb_eps;

  PathResult out;
  double y = x;
  double t = 0.0;
  for (;;) {
    const double q = p - t;
    const double d = std::min(y, kTwoPi - y);
    if (q <= cfg.time_eps) {
      // Out of time: accept only paths already next to an endpoint.
      if (d < 10.0 * cfg.absorb_eps) {
        out.outcome = y < kPi ? PathOutcome::right : PathOutcome::left;
      }
      return out;
    }
    const double b = sde_drift(y, Modulus(q), prec);
    double dt = std::min({cfg.dt_max, f * d * d, 0.5 * q});
    if (b != 0.0) dt = std::min(dt, f * d / std::abs(b));
    // Two-point increments keep |dY| <= (f + sqrt(2 f)) d < d, so no step
    // jumps over an endpoint.
    y += b * dt + sign.next() * std::sqrt(2.0 * dt);
    t += dt;
    ++out.steps;
    if (y >= left_edge) {
      out.outcome = PathOutcome::left;
      out.overshoot = std::max(0.0, y - kTwoPi);
      return out;
    }
    if (y <= cfg.absorb_eps) {
      out.outcome = PathOutcome::right;
      out.overshoot = std::max(0.0, -y);
      return out;
    }
  }
}

McEstimate simulate_passage(double x, Modulus p, const SdeRunConfig& cfg) {
  cfg.validate();
  if (!(x > 0.0 && x < kTwoPi)) {
    throw DomainError("simulate_passage: x must lie in (0, 2*pi)");
  }
  const double pv = require_finite_modulus(p);
  std::vector<Tally> parts(cfg.workers);
  detail::run_workers(cfg.workers, [&](int w) {
    auto rng = worker_stream(cfg.seed, w);
    const std::int64_t n = worker_share(cfg.n_samples, cfg.workers, w);
    for (std::int64_t i = 0; i < n; ++i) {
      parts[w].add(simulate_path(x, pv, cfg, rng));
    }
  });
  return reduce(parts);
}

McEstimate simulate_arc_passage(const SideArc& arc, Modulus p,
                                const SdeRunConfig& cfg) {
  cfg.validate();
  arc.validate();
  const double pv = require_finite_modulus(p);

  std::vector<double> grid(kCdfGrid);
  std::vector<double> cdf(kCdfGrid);
  const double h = (arc.b - arc.a) / (kCdfGrid - 1);
  for (int j = 0; j < kCdfGrid; ++j) {
    grid[j] = j + 1 == kCdfGrid ? arc.b : arc.a + h * j;
    cdf[j] = hitting_cdf(grid[j], arc, p);
  }

  std::vector<Tally> parts(cfg.workers);
  detail::run_workers(cfg.workers, [&](int w) {
    auto rng = worker_stream(cfg.seed, w);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const std::int64_t n = worker_share(cfg.n_samples, cfg.workers, w);
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = uniform(rng);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t j = std::clamp<std::size_t>(it - cdf.begin(), 1, kCdfGrid - 1);
      const double span = cdf[j] - cdf[j - 1];
      const double frac = span > 0.0 ? (u - cdf[j - 1]) / span : 0.5;
      const double x = std::clamp(grid[j - 1] + frac * (grid[j] - grid[j - 1]),
                                  arc.a, arc.b);
      parts[w].add(simulate_path(x, pv, cfg, rng));
    }
  });
  return reduce(parts);
}

}  // namespace cylsle
