#include "cylsle/passage.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cylsle/errors.hpp"
#include "cylsle/kernels.hpp"
#include "kernel_series.hpp"
#include "series.hpp"

namespace cylsle {

namespace {

void require_fundamental(double x, const char* who) {
  if (!(x > 0.0 && x < kTwoPi)) {
    throw DomainError(std::string(who) + ": x must lie in (0, 2*pi)");
  }
}

void require_finite(Modulus p, const char* who) {
  if (p.is_infinite()) {
    throw DomainError(std::string(who) + ": needs a finite modulus");
  }
}

double cot_half(double x) { return 1.0 / std::tan(0.5 * x); }

bool modular(Modulus p, const SeriesPrecision& prec) {
  return resolve_representation(p, prec, Representation::automatic) ==
         Representation::modular;
}

// varpi on (0, 2 pi).
double passage_fundamental(double x, Modulus p, const SeriesPrecision& prec) {
  if (x == kPi) return 0.5;
  if (p.is_infinite()) return (x - std::sin(x)) / kTwoPi;
  const double pv = p.value();
  if (modular(p, prec)) {
    // Cancellation-free ratio of image sums, evaluated on (0, pi].
    const bool upper = x > kPi;
    const auto s = detail::modular_kernel_sums(upper ? kTwoPi - x : x, pv, prec);
    const double lower = s.w / s.h;
    return upper ? 1.0 - lower : lower;
  }
  const VelocityJet jet = velocity_jet(x, p, prec, Representation::direct);
  const double dpv = jet.v + pv * jet.dp;  // d(p v)/dp via Burgers
  return (x + dpv / (jet.d1 + 1.0 / pv)) / kTwoPi;
}

double arc_denominator(const SideArc& arc, Modulus p,
                       const SeriesPrecision& prec) {
  const double pv = p.value();
  return pv * (v_field(arc.b, p, prec) - v_field(arc.a, p, prec)) + arc.b -
         arc.a;
}

}  // namespace

void SideArc::validate() const {
  if (!(a > 0.0 && a < b && b < kTwoPi)) {
    throw DomainError("side arc must satisfy 0 < a < b < 2*pi");
  }
}

double omega_big(double x, Modulus p, const SeriesPrecision& prec) {
  require_fundamental(x, "omega_big");
  require_finite(p, "omega_big");
  const double pv = p.value();
  const VelocityJet jet = velocity_jet(x, p, prec);
  return ((x - kPi) * (x + kPi) + 2.0 * pv) / (4.0 * kPi) +
         pv * x / kTwoPi * jet.v +
         pv * pv / kTwoPi * (jet.d1 + 0.5 * jet.v * jet.v);
}

double omega_big_heat(double x, Modulus p, const SeriesPrecision& prec) {
  require_fundamental(x, "omega_big_heat");
  require_finite(p, "omega_big_heat");
  prec.validate();
  const double pv = p.value();
  // Both sums share the Gaussian weights; normalize by the largest one
  // (n = 0, since x lies in (0, 2 pi)).
  const auto exponent = [&](int n) {
    const double d = x - kPi * (2.0 * n + 1.0);
    return -d * d / (4.0 * pv);
  };
  const double ref = exponent(0);
  double num = 0.0;
  double den = 0.0;
  detail::ConvergenceGuard guard(prec);
  for (int j = 0;; ++j) {
    if (guard.exhausted(j)) detail::throw_not_converged("omega_big_heat", j);
    double tn = 0.0;
    double td = 0.0;
    for (int n : {j, -j - 1}) {
      const double weight = std::exp(exponent(n) - ref);
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      td += sign * weight;
      tn += sign * weight * kPi * n * (n + 1.0);
    }
    num += tn;
    den += td;
    if (guard.done(std::max(std::abs(td), std::abs(tn)),
                   std::max(std::abs(den), 1.0))) {
      break;
    }
  }
  return num / den;
}

double lambda_density(double x, Modulus p, const SeriesPrecision& prec) {
  require_fundamental(x, "lambda_density");
  require_finite(p, "lambda_density");
  const double pv = p.value();
  if (modular(p, prec)) {
    return -pv * kPi * excursion_kernel(x, p, prec).value *
           passage_fundamental(x, p, prec);
  }
  const VelocityJet jet = velocity_jet(x, p, prec, Representation::direct);
  return x / kTwoPi * (pv * jet.d1 + 1.0) +
         pv / kTwoPi * (jet.v + pv * jet.dp);
}

double left_passage(double x, Modulus p, const SeriesPrecision& prec) {
  prec.validate();
  if (!std::isfinite(x)) throw DomainError("left_passage: non-finite x");
  if (p.is_infinite()) return (x - std::sin(x)) / kTwoPi;
  const double k = std::floor(x / kTwoPi);
  const double xr = x - kTwoPi * k;
  if (xr <= 0.0) return k;
  if (xr >= kTwoPi) return k + 1.0;
  return k + passage_fundamental(xr, p, prec);
}

double left_passage_small_p(double x, Modulus p) {
  require_fundamental(x, "left_passage_small_p");
  if (x == kPi) return 0.5;
  if (p.is_infinite()) return 0.5;
  const double pv = p.value();
  if (x < kPi) return std::exp(-kTwoPi * (kPi - x) / pv);
  return -std::expm1(-kTwoPi * (x - kPi) / pv);
}

double hitting_density(double x, const SideArc& arc, Modulus p,
                       const SeriesPrecision& prec) {
  arc.validate();
  if (!(x >= arc.a && x <= arc.b)) {
    throw DomainError("hitting_density: x outside the arc");
  }
  if (p.is_infinite()) {
    const double s = std::sin(0.5 * x);
    return 1.0 / (2.0 * s * s * (cot_half(arc.a) - cot_half(arc.b)));
  }
  const double h = excursion_kernel(x, p, prec).value;
  return -p.value() * kPi * h / arc_denominator(arc, p, prec);
}

double hitting_cdf(double x, const SideArc& arc, Modulus p,
                   const SeriesPrecision& prec) {
  arc.validate();
  if (!(x >= arc.a && x <= arc.b)) {
    throw DomainError("hitting_cdf: x outside the arc");
  }
  if (x == arc.a) return 0.0;
  if (x == arc.b) return 1.0;
  if (p.is_infinite()) {
    return (cot_half(arc.a) - cot_half(x)) /
           (cot_half(arc.a) - cot_half(arc.b));
  }
  const SideArc head{arc.a, x};
  return arc_denominator(head, p, prec) / arc_denominator(arc, p, prec);
}

double left_passage_arc(const SideArc& arc, Modulus p,
                        const SeriesPrecision& prec) {
  arc.validate();
  if (arc.b - arc.a < kDegenerateArc) return left_passage(arc.a, p, prec);
  if (p.is_infinite()) {
    const double ca = cot_half(arc.a);
    const double cb = cot_half(arc.b);
    return (arc.a * ca - arc.b * cb) / (kTwoPi * (ca - cb));
  }
  return (omega_big(arc.b, p, prec) - omega_big(arc.a, p, prec)) /
         arc_denominator(arc, p, prec);
}

double left_passage_arc_large_p(const SideArc& arc, Modulus p) {
  arc.validate();
  const double ca = cot_half(arc.a);
  const double cb = cot_half(arc.b);
  const double inv_p = p.is_infinite() ? 0.0 : 1.0 / p.value();
  const double num =
      arc.a * ca - arc.b * cb + 0.5 * (arc.a * arc.a - arc.b * arc.b) * inv_p;
  const double den = ca - cb + (arc.a - arc.b) * inv_p;
  return num / (kTwoPi * den);
}

double schramm_half_plane(const HalfPlanePoint& z, double kappa,
                          const SeriesPrecision& prec) {
  if (!(kappa > 0.0 && kappa < 8.0)) {
    throw DomainError("schramm_half_plane: kappa must lie in (0, 8)");
  }
  if (!(z.im > 0.0) || !std::isfinite(z.re) || !std::isfinite(z.im)) {
    throw DomainError("schramm_half_plane: Im z must be positive");
  }
  const double r = z.re / z.im;
  if (r == 0.0) return 0.5;
  const double coeff = std::tgamma(4.0 / kappa) /
                       (std::sqrt(kPi) * std::tgamma((8.0 - kappa) / (2.0 * kappa)));
  return 0.5 + coeff * r * hypergeom_2f1(0.5, 4.0 / kappa, 1.5, -r * r, prec);
}

}  // namespace cylsle
