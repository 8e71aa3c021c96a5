#include "cylsle/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cylsle/errors.hpp"
#include "kernel_series.hpp"
#include "series.hpp"

namespace cylsle {

namespace detail {

ModularKernelSums modular_kernel_sums(double x, double p,
                                      const SeriesPrecision& prec) {
  const double k = kPi / p;
  const double kx = k * x;
  const double em = -std::expm1(-kx);
  const double coth = (2.0 - em) / em;
  const double scaled_csch2 = 4.0 / (em * em);   // e^{kx} csch^2(kx/2)
  const double csch2 = scaled_csch2 * std::exp(-kx);

  ModularKernelSums out;
  out.h = scaled_csch2;
  out.h1 = -k * scaled_csch2 * coth;
  out.h2 = k * k * scaled_csch2 * (coth * coth + 0.5 * csch2);
  out.v = k * coth - x / p;

  const double g = std::exp(-2.0 * kPi * k);
  const double rg = std::exp(k * (x - 2.0 * kPi));
  const double g_over_r = std::exp(-k * (x + 2.0 * kPi));
  double a = std::exp(k * (2.0 * x - 2.0 * kPi));  // e^{(n+1)kx} g^n
  double b = g;                                    // e^{-(n-1)kx} g^n
  double pn = rg;                                  // (r g)^n
  double qn = g_over_r;                            // (g / r)^n
  double gn = g;

  const double closed_h = out.h;
  const double closed_h1 = std::abs(out.h1);
  const double closed_h2 = std::abs(out.h2);
  const double closed_v = std::abs(out.v);
  double sum_h = 0.0, sum_h1 = 0.0, sum_h2 = 0.0, sum_w = 0.0, sum_v = 0.0;

  ConvergenceGuard guard(prec);
  for (int n = 1;; ++n) {
    if (guard.exhausted(n)) throw_not_converged("excursion kernel (modular)", n);
    if (a == 0.0 && b == 0.0) break;
    const double nn = n;
    const double inv = 1.0 / (1.0 - gn);
    const double th = 4.0 * nn * (a + b) * inv;
    const double th1 = 4.0 * nn * nn * k * (a - b) * inv;
    const double th2 = 4.0 * nn * nn * nn * k * k * (a + b) * inv;
    const double tw = 4.0 * nn * (a - b) * inv * inv;
    const double tv = -2.0 * k * (pn - qn) * inv;
    sum_h += th;
    sum_h1 += th1;
    sum_h2 += th2;
    sum_w += tw;
    sum_v += tv;
    double worst = std::abs(th) / (closed_h + std::abs(sum_h));
    worst = std::max(worst, std::abs(th1) / (closed_h1 + std::abs(sum_h1)));
    worst = std::max(worst, std::abs(th2) / (closed_h2 + std::abs(sum_h2)));
    worst = std::max(worst, std::abs(tv) / (closed_v + std::abs(sum_v)));
    if (sum_w != 0.0) worst = std::max(worst, std::abs(tw) / std::abs(sum_w));
    if (guard.done(worst, 1.0)) break;
    a *= rg;
    b *= g_over_r;
    pn *= rg;
    qn *= g_over_r;
    gn *= g;
  }
  out.h += sum_h;
  out.h1 += sum_h1;
  out.h2 += sum_h2;
  out.w = sum_w;
  out.v += sum_v;
  return out;
}

}  // namespace detail

namespace {

double checked_reduce(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
  const double xr = detail::reduce_symmetric(x);
  if (xr == 0.0) {
    throw DomainError(std::string(who) + ": pole at x in 2*pi*Z");
  }
  return xr;
}

}  // namespace

KernelJet excursion_kernel_jet(double x, Modulus p, const SeriesPrecision& prec,
                               Representation rep) {
  prec.validate();
  const double xr = checked_reduce(x, "excursion_kernel");
  KernelJet out;
  out.used = resolve_representation(p, prec, rep);
  const double pv = p.value();

  if (out.used == Representation::direct) {
    const VelocityJet jet = velocity_jet(x, p, prec, Representation::direct);
    const double inv_p = p.is_infinite() ? 0.0 : 1.0 / pv;
    out.value = -(jet.d1 + inv_p) / kPi;
    out.d1 = -jet.d2 / kPi;
    out.d2 = -jet.d3 / kPi;
    return out;
  }

  const double ax = std::abs(xr);
  const auto s = detail::modular_kernel_sums(ax, pv, prec);
  const double scale = kPi / (2.0 * pv * pv) * std::exp(-kPi * ax / pv);
  out.value = scale * s.h;
  out.d1 = (xr < 0.0 ? -1.0 : 1.0) * scale * s.h1;
  out.d2 = scale * s.h2;
  return out;
}

KernelValue excursion_kernel(double x, Modulus p, const SeriesPrecision& prec,
                             Representation rep) {
  const KernelJet jet = excursion_kernel_jet(x, p, prec, rep);
  return {jet.value, jet.used};
}

KernelValue excursion_kernel_prime(double x, Modulus p,
                                   const SeriesPrecision& prec,
                                   Representation rep) {
  const KernelJet jet = excursion_kernel_jet(x, p, prec, rep);
  return {jet.d1, jet.used};
}

double greens_function(Complex z, Complex z0, Modulus p,
                       const SeriesPrecision& prec) {
  prec.validate();
  const double pv = p.value();
  const double y = z.imag();
  const double y0 = z0.imag();
  const auto inside = [&](double t) {
    return std::isfinite(t) && t >= 0.0 && t <= pv;
  };
  if (!inside(y) || !inside(y0) || !std::isfinite(z.real()) ||
      !std::isfinite(z0.real())) {
    throw DomainError("greens_function: points must lie in the closed cylinder");
  }
  // Only the horizontal separation matters.
  const double dx = detail::reduce_symmetric(z.real() - z0.real());
  if (dx == 0.0 && y == y0) {
    throw DomainError("greens_function: coincident points");
  }
  if (y == 0.0 || y0 == 0.0) return 0.0;

  const Complex near{dx, y - y0};
  const Complex mirror{dx, y + y0};
  if (p.is_infinite()) {
    return -std::log(std::abs(std::sin(0.5 * near) / std::sin(0.5 * mirror))) /
           kPi;
  }
  const double ln_near = theta1_scaled(near / kTwoPi, p, prec).log_abs();
  const double ln_mirror = theta1_scaled(mirror / kTwoPi, p, prec).log_abs();
  return -(ln_near - ln_mirror) / kPi - y * y0 / (kPi * pv);
}

double log_partition_function(Modulus p, const SeriesPrecision& prec) {
  if (p.is_infinite()) return -std::numeric_limits<double>::infinity();
  return std::log(p.value() / kPi) + 2.0 * log_dedekind_eta(p, prec);
}

double partition_function(Modulus p, const SeriesPrecision& prec) {
  if (p.is_infinite()) return 0.0;
  return std::exp(log_partition_function(p, prec));
}

double sde_drift(double y, Modulus q, const SeriesPrecision& prec) {
  if (!(y > 0.0 && y < kTwoPi)) {
    throw DomainError("sde_drift: y must lie in (0, 2*pi)");
  }
  if (y == kPi) return 0.0;
  if (q.is_infinite()) return -1.0 / std::tan(0.5 * y);

  const double qv = q.value();
  if (resolve_representation(q, prec, Representation::automatic) ==
      Representation::direct) {
    const VelocityJet jet = velocity_jet(y, q, prec, Representation::direct);
    // H'/H = v'' / (v' + 1/q)
    return jet.v + 2.0 * jet.d2 / (jet.d1 + 1.0 / qv);
  }
  // b is odd about pi.
  const bool upper = y > kPi;
  const double x = upper ? kTwoPi - y : y;
  const auto s = detail::modular_kernel_sums(x, qv, prec);
  const double b = s.v + 2.0 * s.h1 / s.h;
  return upper ? -b : b;
}

}  // namespace cylsle
