#include "cylsle/geometry.hpp"

#include <cmath>

#include "cylsle/errors.hpp"
#include "cylsle/passage.hpp"

namespace cylsle {

CylinderParameters disk_to_cylinder(const DiskObstacle& k) {
  if (!(k.r > 0.0 && k.y0 > k.r) || !std::isfinite(k.x0) ||
      !std::isfinite(k.y0)) {
    throw DomainError("disk_to_cylinder: the disk must satisfy y0 > r > 0");
  }
  const double ratio = k.y0 / k.r;
  // acosh(t^2) / 2 without forming t^2 - 1 by subtraction when t is close to 1
  const double s = (ratio - 1.0) * (ratio + 1.0);
  const double p = 0.5 * std::log1p(s + std::sqrt(s * (s + 2.0)));
  const double chord = std::sqrt((k.y0 - k.r) * (k.y0 + k.r));
  // cot(x/2) = -x0/chord with x/2 in (0, pi)
  const double x = kPi + 2.0 * std::atan(k.x0 / chord);
  return {Modulus(p), x};
}

CrossCheck schramm_cylinder_crosscheck(double x, const SeriesPrecision& prec) {
  constexpr double kMinSeparation = 1e-3;
  if (!(x >= kMinSeparation && x <= kTwoPi - kMinSeparation)) {
    throw DomainError(
        "schramm_cylinder_crosscheck: x must be at least 1e-3 away from 0 and 2*pi");
  }
  // phi(w) = -e^{ix/2} (w - 1) / (w - e^{ix}) is real on |w| = 1 and maps
  // the disk to H.
  const Complex half = std::polar(1.0, 0.5 * x);
  const Complex tip = std::polar(1.0, x);
  const Complex w{0.0, 0.0};
  const Complex image = -half * (w - 1.0) / (w - tip);

  CrossCheck out;
  out.image = image;
  out.half_plane = schramm_half_plane({image.real(), image.imag()}, 2.0, prec);
  out.cylinder = left_passage(x, Modulus::infinite(), prec);
  return out;
}

}  // namespace cylsle
