#ifndef CYLSLE_SRC_SERIES_HPP
#define CYLSLE_SRC_SERIES_HPP

#include <cmath>
#include <string>

#include "cylsle/errors.hpp"
#include "cylsle/special_functions.hpp"

namespace cylsle::detail {

// Stops a series once the latest term is below rel_tol times the reference
// magnitude for two consecutive terms.
class ConvergenceGuard {
 public:
  explicit ConvergenceGuard(const SeriesPrecision& prec)
      : tol_(prec.rel_tol), max_terms_(prec.max_terms) {}

  bool done(double term_mag, double reference_mag) {
    if (term_mag <= tol_ * reference_mag) {
      ++quiet_;
    } else {
      quiet_ = 0;
    }
    return quiet_ >= 2;
  }

  bool exhausted(int terms) const { return terms >= max_terms_; }
  int max_terms() const { return max_terms_; }

 private:
  double tol_;
  int max_terms_;
  int quiet_ = 0;
};

[[noreturn]] inline void throw_not_converged(const std::string& what,
                                             int terms) {
  throw PrecisionError(what + ": series did not converge within " +
                       std::to_string(terms) + " terms");
}

// Reduces x into (-pi, pi].
inline double reduce_symmetric(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

// Reduces x into [0, 2*pi).
inline double reduce_positive(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// coth(u) and csch(u)^2 for u > 0 without overflow.
struct HyperbolicPair {
  double coth;
  double csch2;
};

inline HyperbolicPair coth_csch2(double u) {
  const double em = -std::expm1(-2.0 * u);  // 1 - exp(-2u)
  const double e = std::exp(-2.0 * u);
  return {(2.0 - em) / em, 4.0 * e / (em * em)};
}

}  // namespace cylsle::detail

#endif  // CYLSLE_SRC_SERIES_HPP
