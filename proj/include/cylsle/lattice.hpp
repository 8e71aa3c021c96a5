#ifndef CYLSLE_LATTICE_HPP
#define CYLSLE_LATTICE_HPP

#include "cylsle/special_functions.hpp"

namespace cylsle {

/// Cylinder grid: columns x mod M, rows y = 0..L (rows 0 and L are the two
/// boundaries). The continuum modulus is p = 2 pi L / M.
struct LatticeDomain {
  int M = 0;
  int L = 0;

  double modulus_value() const { return kTwoPi * L / M; }
  Modulus modulus() const { return Modulus(modulus_value()); }

  /// Throws ConfigError unless M >= min_m and L >= 2.
  void validate(int min_m) const;
};

}  // namespace cylsle

#endif  // CYLSLE_LATTICE_HPP
