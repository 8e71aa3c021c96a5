#ifndef CYLSLE_SRC_KERNEL_SERIES_HPP
#define CYLSLE_SRC_KERNEL_SERIES_HPP

#include "cylsle/special_functions.hpp"

namespace cylsle::detail {

// Image sums of the modular representation at x in (0, pi], k = pi/p,
// G_n = exp(-2 pi k n). Everything is multiplied by exp(k x) so that the
// kernel stays representable when p is small:
//
//   h  = e^{kx} [csch^2(kx/2) + 8 SUM n cosh(nkx) G_n/(1-G_n)]
//   h1 = e^{kx} d/dx [...]
//   h2 = e^{kx} d2/dx2 [...]
//   w  = e^{kx} 8 SUM n sinh(nkx) G_n/(1-G_n)^2
//
// so that H = pi/(2p^2) e^{-kx} h and varpi = w / h. v is not scaled.
struct ModularKernelSums {
  double h = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double w = 0.0;
  double v = 0.0;
};

ModularKernelSums modular_kernel_sums(double x, double p,
                                      const SeriesPrecision& prec);

}  // namespace cylsle::detail

#endif  // CYLSLE_SRC_KERNEL_SERIES_HPP
