#ifndef CYLSLE_PASSAGE_HPP
#define CYLSLE_PASSAGE_HPP

// Closed-form passage probabilities on the cylinder T_p for SLE_2 started at
// 0 on the lower boundary, and Schramm's half-plane formula for general kappa.
//
// Boundary points are real (unwrapped) coordinates on the lower boundary;
// the fundamental interval is (0, 2 pi). left_passage accepts all of R via
// varpi(x + 2 pi k) = varpi(x) + k; everything else requires (0, 2 pi).

#include "cylsle/special_functions.hpp"

namespace cylsle {

/// Target arc [a, b] with 0 < a < b < 2 pi.
struct SideArc {
  double a = 0.0;
  double b = 0.0;

  /// Throws DomainError unless 0 < a < b < 2 pi.
  void validate() const;
};

/// z = re + i im in the upper half-plane.
struct HalfPlanePoint {
  double re = 0.0;
  double im = 1.0;
};

/// Arcs shorter than this are treated as the single point a.
inline constexpr double kDegenerateArc = 1e-8;

/// Omega(x,p) = ((x-pi)(x+pi)+2p)/4pi + (p x/2pi) v + (p^2/2pi)(v' + v^2/2).
double omega_big(double x, Modulus p, const SeriesPrecision& prec = {});

/// Omega from the heat-kernel image sum over Omega(pi(2n+1), 0) = pi n(n+1).
double omega_big_heat(double x, Modulus p, const SeriesPrecision& prec = {});

/// lambda = dOmega/dx = -p pi H varpi.
double lambda_density(double x, Modulus p, const SeriesPrecision& prec = {});

/// varpi(x,p) = (1/2pi)(x + d(p v)/dp / (v' + 1/p)); (x - sin x)/2pi for the
/// infinite modulus.
double left_passage(double x, Modulus p, const SeriesPrecision& prec = {});

/// exp(-2pi(pi-x)/p) on (0, pi), 1 - exp(-2pi(x-pi)/p) on (pi, 2pi), 1/2 at pi.
double left_passage_small_p(double x, Modulus p);

/// Density of the exit point on the arc, -p pi H / (p(v(b)-v(a)) + b - a).
double hitting_density(double x, const SideArc& arc, Modulus p,
                       const SeriesPrecision& prec = {});

/// Distribution function of hitting_density on [a, b].
double hitting_cdf(double x, const SideArc& arc, Modulus p,
                   const SeriesPrecision& prec = {});

/// Pi(a,b;p) = (Omega(b)-Omega(a)) / (p(v(b)-v(a)) + b - a). For the infinite
/// modulus, (a cot(a/2) - b cot(b/2)) / (2 pi (cot(a/2) - cot(b/2))).
double left_passage_arc(const SideArc& arc, Modulus p,
                        const SeriesPrecision& prec = {});

/// Large-p expansion of Pi, accurate up to O(p e^{-2p}).
double left_passage_arc_large_p(const SideArc& arc, Modulus p);

/// P[left passage of z] for chordal SLE_kappa in H, 0 < kappa < 8.
double schramm_half_plane(const HalfPlanePoint& z, double kappa,
                          const SeriesPrecision& prec = {});

}  // namespace cylsle

#endif  // CYLSLE_PASSAGE_HPP
