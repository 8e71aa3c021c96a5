#ifndef CYLSLE_SPECTRAL_HPP
#define CYLSLE_SPECTRAL_HPP

// Determinant of the discrete Laplacian on the M x L cylinder grid with
// Dirichlet rows at y = 0 and y = L and periodic columns,
//
//   det(-Delta) = PROD_{l=1}^{L-1} PROD_{m=0}^{M-1} (4 - 2cos(pi l/L) - 2cos(2 pi m/M)).

#include "cylsle/lattice.hpp"

namespace cylsle {

inline constexpr double kCatalan = 0.9159655941772190;
inline constexpr double kLogThreePlusTwoSqrtTwo = 1.7627471740390860;  // ln(3+2 sqrt 2)

/// cosh t = 2 - cos(pi l / L).
double t_ell(int ell, int L);

/// SUM_l [M t_l + 2 ln(1 - e^{-M t_l})].
double log_det_exact(const LatticeDomain& dom);

/// Direct sum of the logarithms of all eigenvalues; M * L <= 4096.
double log_det_product(const LatticeDomain& dom);

struct SpectralReport {
  double log_det = 0.0;
  double bulk_term = 0.0;
  double surface_term = 0.0;
  double regularized = 0.0;
  double eta_target = 0.0;          // 2 ln eta(i pi/p)
  double eta_target_modular = 0.0;  // ln[(p/pi) eta(i p/pi)^2]
  double discrepancy = 0.0;         // regularized - eta_target
};

SpectralReport regularize(const LatticeDomain& dom);

/// 2 SUM_l ln(1 - e^{-M t_l}).
double winding_sector_exact(const LatticeDomain& dom);

/// 2 SUM_{l>=1} ln(1 - e^{-pi M l/L}), truncated once terms drop below 1e-16.
double winding_sector_continuum(const LatticeDomain& dom);

}  // namespace cylsle

#endif  // CYLSLE_SPECTRAL_HPP
