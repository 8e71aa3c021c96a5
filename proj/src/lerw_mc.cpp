#include "cylsle/lerw_mc.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include "cylsle/errors.hpp"
#include "parallel.hpp"

namespace cylsle {

namespace {

// Moves: 0 = +x, 1 = -x, 2 = +y, 3 = -y.
constexpr std::array<int, 4> kDx{1, -1, 0, 0};
constexpr std::array<int, 4> kDy{0, 0, 1, -1};

std::int64_t wrap(std::int64_t x, int M) {
  const std::int64_t r = x % M;
  return r < 0 ? r + M : r;
}

// Chronological loop erasure with a site -> position table that is cleared
// again after every use.
class LoopEraser {
 public:
  explicit LoopEraser(const LatticeDomain& dom)
      : M_(dom.M), rows_(dom.L + 1), index_(static_cast<std::size_t>(dom.M) * rows_, -1) {}

  void reset(LatticeSite start) {
    for (const auto& s : out_) index_[key(s)] = -1;
    out_.clear();
    push(start);
  }

  // Takes one walk step from the current tip.
  void step(int dx, int dy) {
    const LatticeSite& tip = out_.back();
    const LatticeSite next{tip.x + dx, tip.y + dy};
    const std::int32_t seen = index_[key(next)];
    if (seen >= 0) {
      while (static_cast<std::int32_t>(out_.size()) > seen + 1) {
        index_[key(out_.back())] = -1;
        out_.pop_back();
      }
      return;
    }
    push(next);
  }

  const std::vector<LatticeSite>& path() const { return out_; }

 private:
  std::size_t key(const LatticeSite& s) const {
    return static_cast<std::size_t>(wrap(s.x, M_)) * rows_ + s.y;
  }
  void push(const LatticeSite& s) {
    index_[key(s)] = static_cast<std::int32_t>(out_.size());
    out_.push_back(s);
  }

  int M_;
  int rows_;
  std::vector<std::int32_t> index_;
  std::vector<LatticeSite> out_;
};

// Transition thresholds of the conditioned walk for every interior site.
class ConditionedChain {
 public:
  ConditionedChain(const LatticeDomain& dom, int target)
      : M_(dom.M), L_(dom.L), cut_(static_cast<std::size_t>(dom.M) * (dom.L - 1)) {
    std::vector<double> h(static_cast<std::size_t>(M_) * (L_ + 1), 0.0);
    h[index(target, 0)] = 1.0;
    for (int y = 1; y < L_; ++y) {
      for (int x = 0; x < M_; ++x) h[index(x, y)] = exit_kernel(dom, target, x, y);
    }
    for (int y = 1; y < L_; ++y) {
      for (int x = 0; x < M_; ++x) {
        std::array<double, 4> w{};
        for (int k = 0; k < 4; ++k) {
          w[k] = h[index(static_cast<int>(wrap(x + kDx[k], M_)), y + kDy[k])];
        }
        const double total = w[0] + w[1] + w[2] + w[3];
        if (!(total > 0.0)) {
          throw PrecisionError("h-transform: exit kernel underflows at (" +
                               std::to_string(x) + ", " + std::to_string(y) + ")");
        }
        auto& c = cut_[static_cast<std::size_t>(y - 1) * M_ + x];
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
          acc += w[k] / total;
          c[k] = to_threshold(acc);
        }
      }
    }
  }

  int draw(std::int64_t x, int y, std::uint64_t r) const {
    const auto& c = cut_[static_cast<std::size_t>(y - 1) * M_ + wrap(x, M_)];
    if (r < c[0]) return 0;
    if (r < c[1]) return 1;
    if (r < c[2]) return 2;
    return 3;
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * M_ + x;
  }
  static std::uint64_t to_threshold(double c) {
    if (c >= 1.0) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::ldexp(c, 64));
  }

  int M_;
  int L_;
  std::vector<std::array<std::uint64_t, 3>> cut_;
};

enum class Attempt { accepted, accepted_mirrored, rejected, out_of_budget };

// One walk from (0, 1) to absorption; moves recorded in `moves`.
class Walker {
 public:
  Walker(const LatticeDomain& dom, int target, LerwMethod method)
      : dom_(dom), target_(target), method_(method) {
    if (method_ == LerwMethod::h_transform) chain_.emplace_back(dom, target);
  }

  Attempt run(std::mt19937_64& rng, std::int64_t& budget,
              std::vector<std::uint8_t>& moves) const {
    moves.clear();
    std::int64_t x = 0;
    int y = 1;
    std::uint64_t bits = 0;
    int left = 0;
    while (y > 0 && y < dom_.L) {
      if (budget <= 0) return Attempt::out_of_budget;
      --budget;
      int move;
      if (method_ == LerwMethod::rejection) {
        if (left == 0) {
          bits = rng();
          left = 32;
        }
        move = static_cast<int>(bits & 3u);
        bits >>= 2;
        --left;
      } else {
        move = chain_.front().draw(x, y, rng());
      }
      x += kDx[move];
      y += kDy[move];
      moves.push_back(static_cast<std::uint8_t>(move));
    }
    if (y != 0) return Attempt::rejected;
    const std::int64_t col = wrap(x, dom_.M);
    if (col == target_) return Attempt::accepted;
    // The mirror image x -> -x of this walk exits at the target.
    if (method_ == LerwMethod::rejection && col == dom_.M - target_) {
      return Attempt::accepted_mirrored;
    }
    return Attempt::rejected;
  }

 private:
  const LatticeDomain& dom_;
  int target_;
  LerwMethod method_;
  std::vector<ConditionedChain> chain_;
};

void check_target(const LatticeDomain& dom, int target_m) {
  dom.validate(4);
  if (target_m < 1 || target_m > dom.M - 1) {
    throw ConfigError("LERW: target must satisfy 1 <= m <= M - 1");
  }
}

std::int64_t erase_moves(LoopEraser& eraser,
                         const std::vector<std::uint8_t>& moves) {
  eraser.reset({0, 0});
  eraser.step(0, 1);
  for (const auto m : moves) eraser.step(kDx[m], kDy[m]);
  return eraser.path().back().x;
}

}  // namespace

void LerwConfig::validate() const {
  if (n_samples < 1) throw ConfigError("LERW config: n_samples must be at least 1");
  if (max_attempts_per_sample < 1) {
    throw ConfigError("LERW config: max_attempts_per_sample must be positive");
  }
  if (workers < 1) throw ConfigError("LERW config: workers must be at least 1");
}

void validate_path(const LatticePath& path, const LatticeDomain& dom) {
  dom.validate(2);
  const auto& s = path.sites;
  if (s.size() < 2) throw ConfigError("lattice path: needs at least two sites");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool end = i == 0 || i + 1 == s.size();
    if (end ? s[i].y != 0 : (s[i].y < 1 || s[i].y > dom.L - 1)) {
      throw ConfigError("lattice path: site " + std::to_string(i) +
                        " violates the boundary layout");
    }
    if (i > 0) {
      const std::int64_t step =
          std::llabs(s[i].x - s[i - 1].x) + std::abs(s[i].y - s[i - 1].y);
      if (step != 1) {
        throw ConfigError("lattice path: sites " + std::to_string(i - 1) +
                          " and " + std::to_string(i) + " are not neighbours");
      }
    }
  }
}

LatticePath loop_erase(const LatticePath& path, const LatticeDomain& dom) {
  validate_path(path, dom);
  LoopEraser eraser(dom);
  eraser.reset(path.sites.front());
  for (std::size_t i = 1; i < path.sites.size(); ++i) {
    eraser.step(static_cast<int>(path.sites[i].x - path.sites[i - 1].x),
                path.sites[i].y - path.sites[i - 1].y);
  }
  return {eraser.path()};
}

std::int64_t erased_displacement(const LatticePath& path,
                                 const LatticeDomain& dom) {
  const LatticePath erased = loop_erase(path, dom);
  return erased.sites.back().x - erased.sites.front().x;
}

double exit_kernel(const LatticeDomain& dom, int target_m, std::int64_t x,
                   int y) {
  dom.validate(2);
  if (y <= 0 || y >= dom.L) {
    return (y == 0 && wrap(x, dom.M) == wrap(target_m, dom.M)) ? 1.0 : 0.0;
  }
  // Sine modes in y; mode l decays like e^{-t_l |x - m|} along the cylinder,
  // cosh t_l = 2 - cos(pi l / L).
  const double d = static_cast<double>(wrap(x - target_m, dom.M));
  double sum = 0.0;
  for (int l = 1; l < dom.L; ++l) {
    const double theta = kPi * l / dom.L;
    const double s = 2.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta);
    const double t = std::log1p(s + std::sqrt(s * (s + 2.0)));
    const double around = std::exp(-t * d) + std::exp(-t * (dom.M - d));
    sum += std::sin(theta * y) * std::sin(theta) * around /
           (dom.L * std::sinh(t) * -std::expm1(-t * dom.M));
  }
  return sum;
}

LatticePath sample_walk(const LatticeDomain& dom, int target_m,
                        const LerwConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  check_target(dom, target_m);
  const Walker walker(dom, target_m, cfg.method);
  auto rng = worker_stream(cfg.seed, static_cast<int>(stream));
  std::int64_t budget = cfg.max_attempts_per_sample;
  std::vector<std::uint8_t> moves;
  for (;;) {
    const Attempt a = walker.run(rng, budget, moves);
    if (a == Attempt::out_of_budget) {
      throw PartialResultError("LERW: step budget exhausted", 0, 0, 1);
    }
    if (a == Attempt::rejected) continue;
    const std::int64_t sign = a == Attempt::accepted_mirrored ? -1 : 1;
    LatticePath path;
    path.sites.push_back({0, 0});
    LatticeSite cur{0, 1};
    path.sites.push_back(cur);
    for (const auto m : moves) {
      cur.x += sign * kDx[m];
      cur.y += kDy[m];
      path.sites.push_back(cur);
    }
    return path;
  }
}

McEstimate sample_lerw(const LatticeDomain& dom, int target_m,
                       const LerwConfig& cfg) {
  cfg.validate();
  check_target(dom, target_m);
  const Walker walker(dom, target_m, cfg.method);

  struct Part {
    std::int64_t accepted = 0;
    std::int64_t left = 0;
    std::int64_t steps = 0;
    bool exhausted = false;
  };
  std::vector<Part> parts(cfg.workers);
  detail::run_workers(cfg.workers, [&](int w) {
    auto rng = worker_stream(cfg.seed, w);
    const std::int64_t want = worker_share(cfg.n_samples, cfg.workers, w);
    const std::int64_t budget_total =
        want > std::numeric_limits<std::int64_t>::max() / cfg.max_attempts_per_sample
            ? std::numeric_limits<std::int64_t>::max()
            : want * cfg.max_attempts_per_sample;
    std::int64_t budget = budget_total;
    std::vector<std::uint8_t> moves;
    LoopEraser eraser(dom);
    Part& part = parts[w];
    while (part.accepted < want) {
      const Attempt a = walker.run(rng, budget, moves);
      if (a == Attempt::out_of_budget) {
        part.exhausted = true;
        break;
      }
      if (a == Attempt::rejected) continue;
      const std::int64_t disp = erase_moves(eraser, moves);
      const bool left = a == Attempt::accepted ? disp < 0 : disp > 0;
      ++part.accepted;
      if (left) ++part.left;
    }
    part.steps = budget_total - budget;
  });

  std::int64_t accepted = 0;
  std::int64_t left = 0;
  std::int64_t steps = 0;
  bool exhausted = false;
  for (const auto& p : parts) {
    accepted += p.accepted;
    left += p.left;
    steps += p.steps;
    exhausted = exhausted || p.exhausted;
  }
  if (exhausted) {
    throw PartialResultError("LERW: step budget exhausted after " +
                                 std::to_string(accepted) + " of " +
                                 std::to_string(cfg.n_samples) + " samples",
                             accepted, left, cfg.n_samples);
  }
  return make_estimate(left, accepted, 0, steps);
}

}  // namespace cylsle
