#include "cylsle/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "cylsle/errors.hpp"
#include "series.hpp"

namespace cylsle {

namespace {

using detail::ConvergenceGuard;
using detail::throw_not_converged;

constexpr Complex kI{0.0, 1.0};

// Largest |term| / (|partial sum| + |closed-form part|) over the derivative
// orders of a jet.
template <typename T>
double jet_term_ratio(const std::array<T, 4>& term, const std::array<T, 4>& sum,
                      const std::array<T, 4>& closed) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double ref = std::abs(sum[i]) + std::abs(closed[i]);
    const double mag = std::abs(term[i]);
    if (mag == 0.0) continue;
    worst = std::max(worst, ref > 0.0 ? mag / ref : HUGE_VAL);
  }
  return worst;
}

// Direct theta1 series at nome exp(-p), scaled by the largest term.
ScaledComplex theta1_direct(Complex u, double p, const SeriesPrecision& prec) {
  const double y = kPi * std::abs(u.imag());
  const double peak = std::max(0.0, std::round(y / p - 0.5));
  const double ref = -p * (peak + 0.5) * (peak + 0.5) + (2.0 * peak + 1.0) * y;

  ConvergenceGuard guard(prec);
  Complex sum{0.0, 0.0};
  for (int n = 0;; ++n) {
    if (guard.exhausted(n)) throw_not_converged("theta1", n);
    const double m = n + 0.5;
    const Complex phase = kI * ((2.0 * n + 1.0) * kPi) * u;
    const double base = -p * m * m - ref;
    Complex term = -kI * (std::exp(base + phase) - std::exp(base - phase));
    if (n % 2 == 1) term = -term;
    sum += term;
    if (n > peak && guard.done(std::abs(term), std::abs(sum))) break;
  }
  return {sum, ref};
}

// theta1(u | i p/pi) = -i sqrt(pi/p) exp(-pi^2 u^2 / p) theta1(i pi u/p | i pi/p)
ScaledComplex theta1_modular(Complex u, double p, const SeriesPrecision& prec) {
  const double dual = kPi * kPi / p;
  ScaledComplex inner = theta1_direct(kI * kPi * u / p, dual, prec);
  const Complex gauss = -kPi * kPi * u * u / p;
  inner.log_scale += 0.5 * std::log(kPi / p) + gauss.real();
  inner.mantissa *= -kI * std::exp(Complex{0.0, gauss.imag()});
  return inner;
}

// Direct real jet, x in (0, 2 pi).
VelocityJet jet_direct(double x, double p, const SeriesPrecision& prec) {
  const double half = 0.5 * x;
  const double c = std::cos(half) / std::sin(half);
  const double cs2 = 1.0 + c * c;
  const double c1 = -0.5 * cs2;
  const double c2 = 0.5 * cs2 * c;
  const double c3 = -0.5 * cs2 * c * c - 0.25 * cs2 * cs2;

  std::array<double, 4> s{};
  if (std::isfinite(p)) {
    const double q = std::exp(-2.0 * p);
    const double s1 = std::sin(x);
    const double co1 = std::cos(x);
    double sn = s1;
    double cn = co1;
    double qn = q;
    ConvergenceGuard guard(prec);
    for (int n = 1;; ++n) {
      if (guard.exhausted(n)) throw_not_converged("velocity field", n);
      if (n % 32 == 0) {
        sn = std::sin(n * x);
        cn = std::cos(n * x);
      }
      const double w = 4.0 * qn / (1.0 - qn);
      const double nn = n;
      const std::array<double, 4> t{w * sn, w * nn * cn, -w * nn * nn * sn,
                                    -w * nn * nn * nn * cn};
      for (int k = 0; k < 4; ++k) s[k] += t[k];
      if (guard.done(jet_term_ratio(t, s, {c, c1, c2, c3}), 1.0)) break;
      const double sn_next = sn * co1 + cn * s1;
      cn = cn * co1 - sn * s1;
      sn = sn_next;
      qn *= q;
    }
  }

  VelocityJet jet;
  jet.v = c + s[0];
  jet.d1 = c1 + s[1];
  jet.d2 = c2 + s[2];
  jet.d3 = c3 + s[3];
  // cot(x/2) is a stationary Burgers solution: c c' + c'' = 0.
  jet.dp = c * s[1] + s[0] * c1 + s[0] * s[1] + s[2];
  jet.used = Representation::direct;
  return jet;
}

// u csch(u)^2 - coth(u)
double burgers_core(double u) {
  if (u < 1e-2) {
    const double u2 = u * u;
    return u * (-2.0 / 3.0 + u2 * (4.0 / 45.0 - u2 * (12.0 / 945.0)));
  }
  const auto h = detail::coth_csch2(u);
  return u * h.csch2 - h.coth;
}

// Modular real jet for x in (0, pi].
VelocityJet jet_modular(double x, double p, const SeriesPrecision& prec) {
  const double r = kPi / p;
  const double k = kPi / p;  // d/dx of n*pi*x/p per unit n
  const double half_k = 0.5 * k;
  const double u = half_k * x;
  const auto h = detail::coth_csch2(u);

  const double cv = r * h.coth - x / p;
  const double cd1 = -r * half_k * h.csch2 - 1.0 / p;
  const double cd2 = r * half_k * half_k * 2.0 * h.csch2 * h.coth;
  const double cd3 = r * half_k * half_k * half_k *
                     (-4.0 * h.csch2 * h.coth * h.coth - 2.0 * h.csch2 * h.csch2);

  std::array<double, 4> s{};
  const double rho_plus = std::exp((kPi * x - 2.0 * kPi * kPi) / p);
  const double rho_minus = std::exp(-(kPi * x + 2.0 * kPi * kPi) / p);
  const double g = std::exp(-2.0 * kPi * kPi / p);
  double pn = rho_plus;
  double mn = rho_minus;
  double gn = g;
  ConvergenceGuard guard(prec);
  for (int n = 1;; ++n) {
    if (guard.exhausted(n)) throw_not_converged("velocity field (modular)", n);
    const double denom = 2.0 * (1.0 - gn);
    const double sh = (pn - mn) / denom;
    const double ch = (pn + mn) / denom;
    const double nk = n * k;
    const std::array<double, 4> t{-4.0 * r * sh, -4.0 * r * nk * ch,
                                  -4.0 * r * nk * nk * sh,
                                  -4.0 * r * nk * nk * nk * ch};
    for (int i = 0; i < 4; ++i) s[i] += t[i];
    if (guard.done(jet_term_ratio(t, s, {cv, cd1, cd2, cd3}), 1.0)) break;
    pn *= rho_plus;
    mn *= rho_minus;
    gn *= g;
  }

  VelocityJet jet;
  jet.v = cv + s[0];
  jet.d1 = cd1 + s[1];
  jet.d2 = cd2 + s[2];
  jet.d3 = cd3 + s[3];
  const double stationary = kPi / (p * p) * burgers_core(u) + x / (p * p);
  jet.dp = stationary + cv * s[1] + s[0] * cd1 + s[0] * s[1] + s[2];
  jet.used = Representation::modular;
  return jet;
}

// Direct complex series: derivatives 0..3 of v at z, |Im z| < 2p.
std::array<Complex, 4> complex_direct(Complex z, double p,
                                      const SeriesPrecision& prec) {
  if (std::isfinite(p) && std::abs(z.imag()) >= 2.0 * p) {
    throw DomainError("v_field: |Im z| must be below 2p for the direct series");
  }
  const Complex half = 0.5 * z;
  const Complex sn = std::sin(half);
  if (std::abs(sn) == 0.0) throw DomainError("v_field: pole at z in 2*pi*Z");
  const Complex c = std::cos(half) / sn;
  const Complex cs2 = 1.0 / (sn * sn);
  std::array<Complex, 4> out{c, -0.5 * cs2, 0.5 * cs2 * c,
                             -0.5 * cs2 * c * c - 0.25 * cs2 * cs2};
  if (!std::isfinite(p)) return out;

  const Complex alpha = std::exp(kI * z - 2.0 * p);
  const Complex beta = std::exp(-kI * z - 2.0 * p);
  const double q = std::exp(-2.0 * p);
  Complex an = alpha;
  Complex bn = beta;
  double qn = 1.0;
  std::array<Complex, 4> s{};
  ConvergenceGuard guard(prec);
  for (int n = 1;; ++n) {
    if (guard.exhausted(n)) throw_not_converged("velocity field (complex)", n);
    qn *= q;
    const double w = 4.0 / (1.0 - qn);
    const Complex sin_n = (an - bn) / (2.0 * kI);
    const Complex cos_n = 0.5 * (an + bn);
    const double nn = n;
    const std::array<Complex, 4> t{w * sin_n, w * nn * cos_n,
                                   -w * nn * nn * sin_n,
                                   -w * nn * nn * nn * cos_n};
    for (int i = 0; i < 4; ++i) s[i] += t[i];
    if (guard.done(jet_term_ratio(t, s, out), 1.0)) break;
    an *= alpha;
    bn *= beta;
  }
  for (int i = 0; i < 4; ++i) out[i] += s[i];
  return out;
}

std::array<Complex, 4> complex_jet(Complex z, Modulus modulus,
                                   const SeriesPrecision& prec,
                                   Representation rep) {
  prec.validate();
  const double p = modulus.value();
  z = Complex{detail::reduce_symmetric(z.real()), z.imag()};
  if (z == Complex{0.0, 0.0}) throw DomainError("v_field: pole at z in 2*pi*Z");

  Representation used = resolve_representation(modulus, prec, rep);
  if (rep == Representation::automatic && used == Representation::direct &&
      std::abs(z.imag()) >= p) {
    used = Representation::modular;
  }
  if (used == Representation::direct) return complex_direct(z, p, prec);

  // v(z, p) = (i pi/p) v(i pi z/p, pi^2/p) - z/p
  const Complex w = kI * kPi * z / p;
  const auto d = complex_direct(w, kPi * kPi / p, prec);
  const Complex f = kI * kPi / p;
  return {f * d[0] - z / p, f * f * d[1] - 1.0 / p, f * f * f * d[2],
          f * f * f * f * d[3]};
}

double log_eta_direct(double p, const SeriesPrecision& prec) {
  double sum = 0.0;
  const double q = std::exp(-2.0 * p);
  double qn = 1.0;
  ConvergenceGuard guard(prec);
  for (int n = 1;; ++n) {
    if (guard.exhausted(n)) throw_not_converged("dedekind_eta", n);
    qn *= q;
    const double t = std::log1p(-qn);
    sum += t;
    if (guard.done(std::abs(t), std::abs(sum))) break;
  }
  return -p / 12.0 + sum;
}

}  // namespace

Modulus::Modulus(double p) : p_(p) {
  if (!(p > 0.0)) {
    throw DomainError("modulus must be positive, got " + std::to_string(p));
  }
}

void SeriesPrecision::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw ConfigError("rel_tol must lie in (0, 1)");
  }
  if (max_terms < 8) throw ConfigError("max_terms must be at least 8");
  if (!(switch_threshold > 0.0)) {
    throw ConfigError("switch_threshold must be positive");
  }
}

Representation resolve_representation(Modulus p, const SeriesPrecision& prec,
                                      Representation requested) {
  if (p.is_infinite()) return Representation::direct;
  if (requested != Representation::automatic) return requested;
  return p.value() >= prec.switch_threshold ? Representation::direct
                                            : Representation::modular;
}

Complex ScaledComplex::value() const {
  if (mantissa == Complex{0.0, 0.0}) return mantissa;
  return mantissa * std::exp(log_scale);
}

double ScaledComplex::log_abs() const {
  return std::log(std::abs(mantissa)) + log_scale;
}

ScaledComplex theta1_scaled(Complex u, Modulus p, const SeriesPrecision& prec,
                            Representation rep) {
  prec.validate();
  if (p.is_infinite()) {
    throw DomainError("theta1: the infinite modulus has a vanishing nome");
  }
  // theta1(u + k) = (-1)^k theta1(u)
  const double shift = std::round(u.real());
  u -= shift;
  const bool flip = std::fmod(std::abs(shift), 2.0) == 1.0;

  ScaledComplex out = resolve_representation(p, prec, rep) == Representation::direct
                          ? theta1_direct(u, p.value(), prec)
                          : theta1_modular(u, p.value(), prec);
  if (flip) out.mantissa = -out.mantissa;
  return out;
}

Complex theta1(Complex u, Modulus p, const SeriesPrecision& prec,
               Representation rep) {
  return theta1_scaled(u, p, prec, rep).value();
}

VelocityJet velocity_jet(double x, Modulus p, const SeriesPrecision& prec,
                         Representation rep) {
  prec.validate();
  if (!std::isfinite(x)) throw DomainError("v_field: non-finite argument");
  const Representation used = resolve_representation(p, prec, rep);
  if (used == Representation::direct) {
    const double xr = detail::reduce_positive(x);
    if (xr == 0.0) throw DomainError("v_field: pole at x in 2*pi*Z");
    return jet_direct(xr, p.value(), prec);
  }
  const double xr = detail::reduce_symmetric(x);
  if (xr == 0.0) throw DomainError("v_field: pole at x in 2*pi*Z");
  VelocityJet jet = jet_modular(std::abs(xr), p.value(), prec);
  if (xr < 0.0) {
    jet.v = -jet.v;
    jet.d2 = -jet.d2;
    jet.dp = -jet.dp;
  }
  return jet;
}

double v_field(double x, Modulus p, const SeriesPrecision& prec) {
  return velocity_jet(x, p, prec).v;
}

double v_prime(double x, Modulus p, const SeriesPrecision& prec) {
  return velocity_jet(x, p, prec).d1;
}

double v_double_prime(double x, Modulus p, const SeriesPrecision& prec) {
  return velocity_jet(x, p, prec).d2;
}

Complex v_field(Complex z, Modulus p, const SeriesPrecision& prec,
                Representation rep) {
  return complex_jet(z, p, prec, rep)[0];
}

Complex v_prime(Complex z, Modulus p, const SeriesPrecision& prec,
                Representation rep) {
  return complex_jet(z, p, prec, rep)[1];
}

Complex v_double_prime(Complex z, Modulus p, const SeriesPrecision& prec,
                       Representation rep) {
  return complex_jet(z, p, prec, rep)[2];
}

double log_dedekind_eta(Modulus p, const SeriesPrecision& prec,
                        Representation rep) {
  prec.validate();
  if (p.is_infinite()) return -std::numeric_limits<double>::infinity();
  const double pv = p.value();
  if (resolve_representation(p, prec, rep) == Representation::direct) {
    return log_eta_direct(pv, prec);
  }
  // eta(tau) = eta(-1/tau) / sqrt(-i tau), -i tau = p/pi
  return log_eta_direct(kPi * kPi / pv, prec) - 0.5 * std::log(pv / kPi);
}

double dedekind_eta(Modulus p, const SeriesPrecision& prec,
                    Representation rep) {
  if (p.is_infinite()) return 0.0;
  return std::exp(log_dedekind_eta(p, prec, rep));
}

}  // namespace cylsle
