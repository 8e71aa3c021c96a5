#ifndef CYLSLE_SPECIAL_FUNCTIONS_HPP
#define CYLSLE_SPECIAL_FUNCTIONS_HPP

// Theta-function machinery on the cylinder of circumference 2*pi and height p.
//
// Conventions: the modular parameter is tau = i p / pi, so the theta nome is
// exp(i pi tau) = exp(-p) and q = exp(2 pi i tau) = exp(-2p). theta1 uses the
// period-1 argument,
//
//   theta1(u | tau) = 2 SUM_{n>=0} (-1)^n exp(-p (n+1/2)^2) sin((2n+1) pi u),
//
// and the velocity field is its logarithmic derivative at u = z / (2 pi):
//
//   v(z, p) = cot(z/2) + 4 SUM_{n>=1} sin(nz) / (exp(2np) - 1).
//
// For p below SeriesPrecision::switch_threshold every function switches to
// the tau -> -1/tau transformed series, whose nome exp(-pi^2/p) is small
// exactly when exp(-p) is not. Both representations can be forced for
// cross-checking.

#include <complex>
#include <limits>
#include <numbers>

namespace cylsle {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Height p of the cylinder. Positive and finite, or the infinite sentinel
/// used by the p -> infinity asymptotic formulas.
class Modulus {
 public:
  explicit Modulus(double p);

  static Modulus infinite() noexcept { return Modulus(); }

  double value() const noexcept { return p_; }
  bool is_infinite() const noexcept { return p_ == kInf; }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  Modulus() noexcept : p_(kInf) {}
  double p_;
};

/// Truncation and representation-switch policy shared by all theta series.
struct SeriesPrecision {
  double rel_tol = 1e-14;
  int max_terms = 10000;
  /// Below this modulus the modular-transformed series is used.
  double switch_threshold = kPi;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

enum class Representation { automatic, direct, modular };

/// Representation that `automatic` resolves to for this modulus.
Representation resolve_representation(Modulus p, const SeriesPrecision& prec,
                                      Representation requested);

/// value = mantissa * exp(log_scale). Keeps theta1 usable where it under- or
/// overflows (small p, large imaginary arguments).
struct ScaledComplex {
  Complex mantissa;
  double log_scale = 0.0;

  Complex value() const;
  double log_abs() const;
};

ScaledComplex theta1_scaled(Complex u, Modulus p,
                            const SeriesPrecision& prec = {},
                            Representation rep = Representation::automatic);

/// theta1(u | i p / pi).
Complex theta1(Complex u, Modulus p, const SeriesPrecision& prec = {},
               Representation rep = Representation::automatic);

/// v and its first three x-derivatives at a real point, plus dv/dp obtained
/// from the Burgers equation dv/dp = v v' + v''.
struct VelocityJet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double dp = 0.0;
  Representation used = Representation::direct;
};

/// Throws DomainError at the poles x in 2*pi*Z.
VelocityJet velocity_jet(double x, Modulus p, const SeriesPrecision& prec = {},
                         Representation rep = Representation::automatic);

double v_field(double x, Modulus p, const SeriesPrecision& prec = {});
double v_prime(double x, Modulus p, const SeriesPrecision& prec = {});
double v_double_prime(double x, Modulus p, const SeriesPrecision& prec = {});

// Complex arguments. The direct series needs |Im z| < 2p; the modular one
// converges for any Im z once Re z is reduced to (-pi, pi].
Complex v_field(Complex z, Modulus p, const SeriesPrecision& prec = {},
                Representation rep = Representation::automatic);
Complex v_prime(Complex z, Modulus p, const SeriesPrecision& prec = {},
                Representation rep = Representation::automatic);
Complex v_double_prime(Complex z, Modulus p, const SeriesPrecision& prec = {},
                       Representation rep = Representation::automatic);

/// Dedekind eta at tau = i p / pi. Zero for the infinite modulus.
double dedekind_eta(Modulus p, const SeriesPrecision& prec = {},
                    Representation rep = Representation::automatic);
double log_dedekind_eta(Modulus p, const SeriesPrecision& prec = {},
                        Representation rep = Representation::automatic);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z <= 0.99 (the negative
/// half-line is the supported case; Pfaff-transformed into [0, 1)).
double hypergeom_2f1(double a, double b, double c, double z,
                     const SeriesPrecision& prec = {});

}  // namespace cylsle

#endif  // CYLSLE_SPECIAL_FUNCTIONS_HPP
