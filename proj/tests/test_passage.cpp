#include <cmath>
#include <functional>
#include <tuple>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"

#include "cylsle/errors.hpp"
#include "cylsle/kernels.hpp"
#include "cylsle/passage.hpp"

using namespace cylsle;

namespace {

double varpi(double x, double p) { return left_passage(x, Modulus(p)); }

double integrate(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

double arc_quadrature(double a, double b, double p) {
  const SideArc arc{a, b};
  return integrate(
      [&](double x) { return varpi(x, p) * hitting_density(x, arc, Modulus(p)); }, a, b);
}

}  // namespace

TEST_CASE("left passage: exact values") {
  for (double p : {0.1, 0.5, 1.0, 2.0, 7.0}) CHECK(varpi(kPi, p) == 0.5);
  CHECK(left_passage(kPi / 2, Modulus::infinite()) ==
        doctest::Approx(0.0908450569081046).epsilon(1e-14));
  // Oracle: mpmath, p-derivative by numerical differentiation of p v.
  CHECK(varpi(kPi / 2, 1.0) == doctest::Approx(5.097668948001910e-05).epsilon(1e-10));
  CHECK(varpi(1.0, 2.0) == doctest::Approx(7.184374799324406e-4).epsilon(1e-10));
  CHECK(varpi(4.0, 0.6) == doctest::Approx(0.9998752698937224).epsilon(1e-13));
  CHECK(varpi(kPi / 2, 4.0) == doctest::Approx(0.03978834104324166).epsilon(1e-12));
  CHECK(varpi(2 * kPi / 3, 1.0) == doctest::Approx(1.382452602653001e-3).epsilon(1e-11));
}

TEST_CASE("quasi-periodic extension") {
  CHECK(std::abs(varpi(1.0 + kTwoPi, 1.0) - varpi(1.0, 1.0) - 1.0) < 1e-10);
  CHECK(std::abs(varpi(1.0 - kTwoPi, 1.0) - varpi(1.0, 1.0) + 1.0) < 1e-10);
  CHECK(varpi(0.0, 1.0) == 0.0);
  CHECK(varpi(2 * kTwoPi, 1.0) == 2.0);
  for (double x : {-7.0, -2.0, 3.0, 9.0, 15.0}) {
    const double k = std::floor(x / kTwoPi);
    const double w = varpi(x, 1.5);
    CHECK(w >= k);
    CHECK(w <= k + 1.0);
  }
}

TEST_CASE("reflection and monotonicity") {
  for (double p : {0.3, 1.0, 2.5}) {
    for (double x = 0.1; x < kTwoPi; x += 0.1) {
      CHECK(std::abs(varpi(kTwoPi - x, p) - (1.0 - varpi(x, p))) < 1e-10);
    }
  }
  for (double p : {0.5, 2.0}) {
    // Strict on the lower half; above pi the values round to 1 for small p.
    double prev = 0.0;
    for (int i = 1; i < 500; ++i) {
      const double w = varpi(kTwoPi * i / 500.0, p);
      if (i <= 250) {
        CHECK(w > prev);
      } else {
        CHECK(w >= prev);
      }
      prev = w;
    }
  }
}

TEST_CASE("boundary values") {
  CHECK(varpi(1e-4, 0.5) < 1e-6);
  CHECK(varpi(kTwoPi - 1e-4, 0.5) > 1.0 - 1e-6);
  CHECK(varpi(1e-4, 2.0) < 1e-2);
  CHECK(varpi(kTwoPi - 1e-4, 2.0) > 1.0 - 1e-2);
}

TEST_CASE("both regimes of varpi and lambda agree") {
  SeriesPrecision direct;
  direct.switch_threshold = 1e-3;
  SeriesPrecision modular;
  modular.switch_threshold = 1e3;
  for (double p : {1.5, 2.5, 3.5, 5.0}) {
    for (double x = 0.3; x < kTwoPi - 0.2; x += 0.4) {
      const double a = left_passage(x, Modulus(p), direct);
      const double b = left_passage(x, Modulus(p), modular);
      CHECK(std::abs(a - b) < 1e-11);
      const double la = lambda_density(x, Modulus(p), direct);
      const double lb = lambda_density(x, Modulus(p), modular);
      CHECK(std::abs(la - lb) < 1e-11);
    }
  }
}

TEST_CASE("martingale PDE for varpi") {
  const double hp = 1e-4;
  const double hx = 1e-3;
  for (double p : {0.6, 1.0, 2.0, 4.0}) {
    for (double x = 0.5; x < kTwoPi - 0.4; x += 0.5) {
      const double dp = (varpi(x, p + hp) - varpi(x, p - hp)) / (2 * hp);
      const double w0 = varpi(x, p);
      const double wp = varpi(x + hx, p);
      const double wm = varpi(x - hx, p);
      const double d1 = (wp - wm) / (2 * hx);
      const double d2 = (wp - 2 * w0 + wm) / (hx * hx);
      const auto k = excursion_kernel_jet(x, Modulus(p));
      const double adv = 2.0 * k.d1 / k.value + v_field(x, Modulus(p));
      CHECK(std::abs(dp - adv * d1 - d2) < 2e-5 * (1.0 + std::abs(d2)));
    }
  }
}

TEST_CASE("p -> infinity intermediate form") {
  const double p = 20.0;
  for (double x = 0.1; x < kTwoPi; x += 0.1) {
    const double s = std::sin(0.5 * x);
    const double approx = (x - std::sin(x) / (1.0 - 2.0 * s * s / p)) / kTwoPi;
    CHECK(std::abs(varpi(x, p) - approx) < 1e-12);
  }
}

TEST_CASE("small-p asymptote") {
  CHECK(left_passage_small_p(kPi, Modulus(0.4)) == 0.5);
  const double b = std::exp(-kTwoPi * 0.5 / 0.4);
  CHECK(left_passage_small_p(kPi - 0.5, Modulus(0.4)) == doctest::Approx(b).epsilon(1e-15));
  CHECK(left_passage_small_p(kPi - 0.5, Modulus(0.4)) == doctest::Approx(3.873e-4).epsilon(1e-3));
  CHECK(left_passage_small_p(kPi + 0.5, Modulus(0.4)) == doctest::Approx(1.0 - b).epsilon(1e-15));
  CHECK_THROWS_AS(left_passage_small_p(0.0, Modulus(0.4)), DomainError);

  // Near x = pi the closed form behaves as b - b^2 + O(b^3), b = e^{-2 pi (pi - x)/p}.
  // Further out terms of order e^{-pi (2 pi - x)/p} take over.
  for (double p : {0.2, 0.3, 0.4}) {
    for (double x : {kPi - 0.25, kPi - 0.5}) {
      const double bb = std::exp(-kTwoPi * (kPi - x) / p);
      const double err = left_passage(x, Modulus(p)) - left_passage_small_p(x, Modulus(p));
      CHECK(std::abs(err + bb * bb) < 4.0 * bb * bb * bb + 1e-15);
    }
  }
}

TEST_CASE("Omega: closed form and heat-kernel image sum") {
  CHECK(std::abs(omega_big(2.0, Modulus(1.0)) - omega_big_heat(2.0, Modulus(1.0))) < 1e-9);
  CHECK(omega_big(2.0, Modulus(1.0)) ==
        doctest::Approx(-9.018109720108900e-06).epsilon(1e-8));
  for (double x : {0.5, 2.0, 4.0, 5.8}) {
    CHECK(std::abs(omega_big(x, Modulus(0.05))) < 1e-9);
    CHECK(std::abs(omega_big_heat(x, Modulus(0.05))) < 1e-9);
  }
  CHECK_THROWS_AS(omega_big(0.0, Modulus(1.0)), DomainError);
  CHECK_THROWS_AS(omega_big(kTwoPi, Modulus(1.0)), DomainError);
}

TEST_CASE("Omega under x -> 2 pi - x") {
  // Omega(2 pi - x) - Omega(x) = pi - x - p v(x)
  for (auto [x, p] : std::vector<std::pair<double, double>>{{1.1, 0.8}, {0.4, 2.0}, {2.5, 3.3}}) {
    const double diff = omega_big(kTwoPi - x, Modulus(p)) - omega_big(x, Modulus(p));
    CHECK(std::abs(diff - (kPi - x - p * v_field(x, Modulus(p)))) < 1e-10);
  }
}

TEST_CASE("lambda density") {
  for (double p : {0.5, 1.0, 3.0}) {
    const double ref = 0.5 * (p * v_prime(kPi, Modulus(p)) + 1.0);
    CHECK(std::abs(lambda_density(kPi, Modulus(p)) - ref) < 1e-13);
  }
  const double h = 1e-5;
  const double fd = (omega_big(1.5 + h, Modulus(1.0)) - omega_big(1.5 - h, Modulus(1.0))) / (2 * h);
  CHECK(std::abs(fd - lambda_density(1.5, Modulus(1.0))) < 1e-6);
  for (double x : {0.5, 2.0, 4.0, 5.5}) {
    CHECK(std::abs(lambda_density(x, Modulus(0.02))) < 1e-12);
    // lambda = -p pi H varpi
    const double p = 1.7;
    CHECK(lambda_density(x, Modulus(p)) ==
          doctest::Approx(-p * kPi * excursion_kernel(x, Modulus(p)).value * varpi(x, p))
              .epsilon(1e-10));
  }
}

TEST_CASE("advection-diffusion for Omega") {
  const double hp = 1e-4;
  const double hx = 1e-3;
  for (double p : {0.6, 1.2, 2.5}) {
    for (double x = 0.5; x < kTwoPi - 0.4; x += 0.6) {
      const double dp = (omega_big(x, Modulus(p + hp)) - omega_big(x, Modulus(p - hp))) / (2 * hp);
      const double o0 = omega_big(x, Modulus(p));
      const double op = omega_big(x + hx, Modulus(p));
      const double om = omega_big(x - hx, Modulus(p));
      const double rhs = v_field(x, Modulus(p)) * (op - om) / (2 * hx) +
                         (op - 2 * o0 + om) / (hx * hx);
      CHECK(std::abs(dp - rhs) < 1e-5);
    }
  }
}

TEST_CASE("hitting density") {
  const SideArc arc{1.0, 4.0};
  const double total = integrate(
      [&](double x) { return hitting_density(x, arc, Modulus(1.0)); }, arc.a, arc.b);
  CHECK(std::abs(total - 1.0) < 1e-8);

  const SideArc arc2{0.8, 2.4};
  const double p = 1.5;
  const double integral = integrate(
      [&](double x) { return excursion_kernel(x, Modulus(p)).value; }, arc2.a, arc2.b);
  const double closed = p * (v_field(arc2.b, Modulus(p)) - v_field(arc2.a, Modulus(p))) +
                        arc2.b - arc2.a;
  CHECK(std::abs(-p * kPi * integral - closed) < 1e-8);

  const double cot_a = 1.0 / std::tan(0.5 * arc.a);
  const double cot_b = 1.0 / std::tan(0.5 * arc.b);
  for (double x : {1.0, 2.0, 3.5}) {
    const double s = std::sin(0.5 * x);
    const double ref = 1.0 / (2 * s * s * (cot_a - cot_b));
    CHECK(hitting_density(x, arc, Modulus::infinite()) == doctest::Approx(ref).epsilon(1e-14));
    // Large p keeps the algebraic 1/p part of H.
    const double p = 60.0;
    const double ref_p = (0.5 / (s * s) - 1.0 / p) / (cot_a - cot_b - (arc.b - arc.a) / p);
    CHECK(hitting_density(x, arc, Modulus(p)) == doctest::Approx(ref_p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hitting_density(0.5, arc, Modulus(1.0)), DomainError);
  CHECK(hitting_cdf(arc.a, arc, Modulus(1.0)) == 0.0);
  CHECK(hitting_cdf(arc.b, arc, Modulus(1.0)) == 1.0);
  const double half = integrate(
      [&](double x) { return hitting_density(x, arc, Modulus(1.0)); }, arc.a, 2.5);
  CHECK(std::abs(hitting_cdf(2.5, arc, Modulus(1.0)) - half) < 1e-10);
}

TEST_CASE("arc passage: quadrature oracle") {
  const std::vector<std::tuple<double, double, double>> cases{
      {0.8, 2.4, 1.0}, {kPi / 2, 3 * kPi / 2, 2.0}, {1.0, 5.0, 0.6}};
  for (auto [a, b, p] : cases) {
    const double closed = left_passage_arc({a, b}, Modulus(p));
    CHECK(std::abs(closed - arc_quadrature(a, b, p)) < 1e-7);
  }
  CHECK(left_passage_arc({0.8, 2.4}, Modulus(1.0)) ==
        doctest::Approx(5.707119810603192e-05).epsilon(1e-6));
  CHECK(left_passage_arc({1.0, 5.0}, Modulus(0.6)) ==
        doctest::Approx(0.1843902150456590).epsilon(1e-9));
}

TEST_CASE("arc passage: infinite modulus") {
  CHECK(left_passage_arc({kPi / 2, 3 * kPi / 2}, Modulus::infinite()) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(left_passage_arc({kPi / 2, kPi}, Modulus::infinite()) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // The corrected closed form equals its defining integral.
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 2.0}, {1.0, 5.5}}) {
    const SideArc arc{a, b};
    const double quad = integrate(
        [&](double x) {
          return left_passage(x, Modulus::infinite()) *
                 hitting_density(x, arc, Modulus::infinite());
        },
        a, b);
    CHECK(std::abs(left_passage_arc(arc, Modulus::infinite()) - quad) < 1e-12);
  }
}

TEST_CASE("arc passage: limits and bounds") {
  const double a = 2.0;
  CHECK(std::abs(left_passage_arc({a, a + 1e-6}, Modulus(1.0)) - varpi(a, 1.0)) < 1e-5);
  CHECK(left_passage_arc({a, a + 1e-9}, Modulus(1.0)) == varpi(a, 1.0));
  for (auto [a2, b2, p] : std::vector<std::tuple<double, double, double>>{
           {0.8, 2.4, 1.0}, {1.0, 5.0, 0.6}, {3.0, 6.0, 2.0}, {0.2, 0.9, 5.0}}) {
    const double pi_ab = left_passage_arc({a2, b2}, Modulus(p));
    CHECK(pi_ab >= varpi(a2, p));
    CHECK(pi_ab <= varpi(b2, p));
  }
  CHECK_THROWS_AS(left_passage_arc({2.0, 1.0}, Modulus(1.0)), DomainError);
  CHECK_THROWS_AS(left_passage_arc({0.0, 1.0}, Modulus(1.0)), DomainError);
}

TEST_CASE("arc passage: large-p expansion") {
  for (double p : {10.0, 20.0}) {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{0.8, 2.4}, {kPi / 2, kPi}}) {
      const double closed = left_passage_arc({a, b}, Modulus(p));
      const double expansion = left_passage_arc_large_p({a, b}, Modulus(p));
      CHECK(std::abs(closed - expansion) < 10.0 * p * std::exp(-2.0 * p));
    }
  }
  CHECK(left_passage_arc_large_p({kPi / 2, kPi}, Modulus::infinite()) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("Schramm's half-plane formula") {
  for (double kappa : {1.0, 2.0, 8.0 / 3.0, 4.0, 6.0}) {
    CHECK(schramm_half_plane({0.0, 1.3}, kappa) == 0.5);
    // Tails decay like |u|^{1 - 8/kappa}.
    CHECK(schramm_half_plane({1e12, 1.0}, kappa) > 1.0 - 1e-2);
    CHECK(schramm_half_plane({-1e12, 1.0}, kappa) < 1e-2);
    CHECK(schramm_half_plane({50.0, 1.0}, kappa) > schramm_half_plane({5.0, 1.0}, kappa));
    const double l = schramm_half_plane({0.7, 1.1}, kappa);
    const double r = schramm_half_plane({-0.7, 1.1}, kappa);
    CHECK(std::abs(l + r - 1.0) < 1e-13);
  }
  // kappa = 2: 1/2 + (u/(1+u^2) + arctan u)/pi with u = x/y
  for (double u : {-3.0, -0.4, 0.9, 12.0}) {
    const double ref = 0.5 + (u / (1 + u * u) + std::atan(u)) / kPi;
    CHECK(schramm_half_plane({u, 1.0}, 2.0) == doctest::Approx(ref).epsilon(1e-12));
  }
  // kappa = 4: 1/2 + arctan(u)/pi
  CHECK(schramm_half_plane({2.0, 1.0}, 4.0) ==
        doctest::Approx(0.5 + std::atan(2.0) / kPi).epsilon(1e-12));
  CHECK_THROWS_AS(schramm_half_plane({1.0, 1.0}, 8.0), DomainError);
  CHECK_THROWS_AS(schramm_half_plane({1.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(schramm_half_plane({1.0, 0.0}, 2.0), DomainError);
}
