#ifndef CYLSLE_KERNELS_HPP
#define CYLSLE_KERNELS_HPP

// Excursion Poisson kernel H(x, p) between two points of the lower boundary
// of the cylinder, the Dirichlet Green's function, the partition function
// and the drift of the lifted driving process.

#include "cylsle/special_functions.hpp"

namespace cylsle {

struct KernelValue {
  double value = 0.0;
  Representation representation_used = Representation::direct;
};

/// H and its first two x-derivatives.
struct KernelJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  Representation used = Representation::direct;
};

/// H(x,p) = 1/(2 pi sin^2(x/2)) - (4/pi) SUM n cos(nx)/(e^{2np}-1) - 1/(p pi)
/// for p >= switch_threshold, and the image sum
/// (pi/2p^2)[csch^2(pi x/2p) + 8 SUM n cosh(n pi x/p)/(e^{2 pi^2 n/p}-1)]
/// otherwise. Throws DomainError for x in 2*pi*Z.
KernelValue excursion_kernel(double x, Modulus p,
                             const SeriesPrecision& prec = {},
                             Representation rep = Representation::automatic);
KernelValue excursion_kernel_prime(double x, Modulus p,
                                   const SeriesPrecision& prec = {},
                                   Representation rep = Representation::automatic);
KernelJet excursion_kernel_jet(double x, Modulus p,
                               const SeriesPrecision& prec = {},
                               Representation rep = Representation::automatic);

/// Dirichlet Green's function of the cylinder (0 <= Im z <= p, Re z mod 2 pi).
/// Returns 0 on either boundary. Throws DomainError for coincident points or
/// points outside the closed cylinder.
double greens_function(Complex z, Complex z0, Modulus p,
                       const SeriesPrecision& prec = {});

/// Z(p) = (p/pi) eta(i p/pi)^2.
double partition_function(Modulus p, const SeriesPrecision& prec = {});
double log_partition_function(Modulus p, const SeriesPrecision& prec = {});

/// b(y, q) = v(y, q) + 2 H'(y, q) / H(y, q) for y in (0, 2 pi).
double sde_drift(double y, Modulus q, const SeriesPrecision& prec = {});

}  // namespace cylsle

#endif  // CYLSLE_KERNELS_HPP
