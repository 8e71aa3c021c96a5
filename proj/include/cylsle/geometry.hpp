#ifndef CYLSLE_GEOMETRY_HPP
#define CYLSLE_GEOMETRY_HPP

#include "cylsle/special_functions.hpp"

namespace cylsle {

/// Closed disk of radius r centred at x0 + i y0, strictly inside H.
struct DiskObstacle {
  double x0 = 0.0;
  double y0 = 1.0;
  double r = 0.5;
};

struct CylinderParameters {
  Modulus p;
  double x = kPi;
};

/// cosh 2p = (y0/r)^2 and cot(x/2) = -x0 / sqrt(y0^2 - r^2), x in (0, 2 pi).
/// Throws DomainError unless y0 > r > 0.
CylinderParameters disk_to_cylinder(const DiskObstacle& k);

struct CrossCheck {
  double half_plane = 0.0;  // Schramm's formula at kappa = 2
  double cylinder = 0.0;    // (x - sin x) / 2 pi
  Complex image{0.0, 1.0};  // image of the disk centre in H
};

/// Sends the p = infinity cylinder (the unit disk w = e^{iz} with the hole
/// shrunk to 0) to H so that 1 -> 0 and e^{ix} -> infinity, and evaluates
/// Schramm's formula at the image of 0. Throws DomainError when x is within
/// 1e-3 of 0 or 2 pi.
CrossCheck schramm_cylinder_crosscheck(double x, const SeriesPrecision& prec = {});

}  // namespace cylsle

#endif  // CYLSLE_GEOMETRY_HPP
