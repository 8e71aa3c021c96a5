#include <cmath>

#include "doctest.h"

#include "cylsle/errors.hpp"
#include "cylsle/passage.hpp"
#include "cylsle/sle_mc.hpp"

using namespace cylsle;

namespace {

SdeRunConfig config(std::int64_t n, std::uint64_t seed = 7) {
  SdeRunConfig cfg;
  cfg.n_samples = n;
  cfg.seed = seed;
  cfg.dt_max = 2e-3;
  cfg.absorb_eps = 1e-3;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SdeRunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.dt_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dt_boundary_factor = 0.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.n_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(simulate_passage(1.0, Modulus::infinite(), SdeRunConfig{}), DomainError);
  CHECK_THROWS_AS(simulate_passage(0.0, Modulus(1.0), SdeRunConfig{}), DomainError);
}

TEST_CASE("estimate bookkeeping") {
  const auto e = make_estimate(30, 100, 2, 5);
  CHECK(e.mean == doctest::Approx(0.3));
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.3 * 0.7 / 100)));
  CHECK(e.flagged);
  CHECK_FALSE(make_estimate(30, 100, 1, 5).flagged);
  std::int64_t total = 0;
  for (int w = 0; w < 3; ++w) total += worker_share(100, 3, w);
  CHECK(total == 100);
}

TEST_CASE("symmetric start is a fair coin") {
  const auto e = simulate_passage(kPi, Modulus(1.0), config(2000));
  CHECK(std::abs(e.mean - 0.5) < 4.0 * e.std_error + 0.005);
  CHECK(e.n_unresolved == 0);
}

TEST_CASE("agreement with the closed form") {
  for (auto [x, p] : {std::pair{2.5, 1.5}, {4.0, 2.0}}) {
    const auto e = simulate_passage(x, Modulus(p), config(3000, 11));
    const double exact = left_passage(x, Modulus(p));
    CHECK(std::abs(e.mean - exact) < 4.0 * e.std_error + 0.01);
  }
}

TEST_CASE("reproducible for a fixed seed and worker count") {
  auto cfg = config(300, 5);
  cfg.workers = 2;
  const auto a = simulate_passage(2.0, Modulus(1.0), cfg);
  const auto b = simulate_passage(2.0, Modulus(1.0), cfg);
  CHECK(a.n_left == b.n_left);
  CHECK(a.steps == b.steps);
  cfg.seed = 6;
  const auto c = simulate_passage(2.0, Modulus(1.0), cfg);
  CHECK(c.steps != a.steps);
}

TEST_CASE("absorbing steps never jump far past the endpoint") {
  auto cfg = config(1);
  auto rng = worker_stream(3, 0);
  for (int i = 0; i < 300; ++i) {
    const auto r = simulate_path(1.0 + 0.01 * i, 1.2, cfg, rng);
    CHECK(r.outcome != PathOutcome::unresolved);
    CHECK(r.overshoot >= 0.0);
    CHECK(r.overshoot <= cfg.absorb_eps);
  }
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  const auto a = simulate_passage(2.5, Modulus(1.0), config(400, 1));
  const auto b = simulate_passage(2.5, Modulus(1.0), config(1600, 2));
  CHECK(b.std_error / a.std_error == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("exchanging the sides") {
  const auto a = simulate_passage(2.0, Modulus(1.5), config(2000, 21));
  const auto b = simulate_passage(kTwoPi - 2.0, Modulus(1.5), config(2000, 22));
  const double se = std::hypot(a.std_error, b.std_error);
  CHECK(std::abs(a.mean + b.mean - 1.0) < 4.0 * se + 0.01);
}

TEST_CASE("finer steps do not move the estimate") {
  auto coarse = config(2000, 31);
  coarse.dt_max = 1e-2;
  auto fine = config(2000, 32);
  fine.dt_max = 1e-3;
  const auto a = simulate_passage(2.5, Modulus(1.5), coarse);
  const auto b = simulate_passage(2.5, Modulus(1.5), fine);
  CHECK(std::abs(a.mean - b.mean) < 4.0 * std::hypot(a.std_error, b.std_error) + 0.01);
}

TEST_CASE("arc passage") {
  const SideArc arc{2.0, 4.0};
  const auto e = simulate_arc_passage(arc, Modulus(1.5), config(2000, 41));
  const double exact = left_passage_arc(arc, Modulus(1.5));
  CHECK(std::abs(e.mean - exact) < 4.0 * e.std_error + 0.01);
  CHECK_THROWS_AS(simulate_arc_passage({4.0, 2.0}, Modulus(1.5), config(10)), DomainError);
}
