#include <cmath>
#include <string>

#include "cylsle/errors.hpp"
#include "cylsle/special_functions.hpp"
#include "series.hpp"

namespace cylsle {

namespace {

bool is_nonpositive_integer(double c) {
  return c <= 0.0 && c == std::floor(c);
}

// Plain Gauss series, |w| < 1.
double gauss_series(double a, double b, double c, double w, int max_terms,
                    double rel_tol) {
  SeriesPrecision prec;
  prec.rel_tol = rel_tol;
  prec.max_terms = max_terms;
  detail::ConvergenceGuard guard(prec);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0;; ++n) {
    if (guard.exhausted(n)) detail::throw_not_converged("hypergeom_2f1", n);
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
    sum += term;
    if (term == 0.0 || guard.done(std::abs(term), std::abs(sum))) break;
  }
  return sum;
}

// Connection formula for z < -1 in terms of 1/z; requires b - a not an
// integer.
double large_negative(double a, double b, double c, double z, int max_terms,
                      double rel_tol) {
  const double inv = 1.0 / z;
  const double left = std::tgamma(c) * std::tgamma(b - a) /
                      (std::tgamma(b) * std::tgamma(c - a)) *
                      std::pow(-z, -a) *
                      gauss_series(a, a - c + 1.0, a - b + 1.0, inv, max_terms,
                                   rel_tol);
  const double right = std::tgamma(c) * std::tgamma(a - b) /
                       (std::tgamma(a) * std::tgamma(c - b)) *
                       std::pow(-z, -b) *
                       gauss_series(b, b - c + 1.0, b - a + 1.0, inv, max_terms,
                                    rel_tol);
  return left + right;
}

}  // namespace

double hypergeom_2f1(double a, double b, double c, double z,
                     const SeriesPrecision& prec) {
  prec.validate();
  if (is_nonpositive_integer(c)) {
    throw DomainError("hypergeom_2f1: c must not be a non-positive integer");
  }
  if (!std::isfinite(z) || z > 0.99) {
    throw DomainError("hypergeom_2f1: unsupported argument z = " +
                      std::to_string(z));
  }
  if (z == 0.0) return 1.0;
  if (z > 0.0) return gauss_series(a, b, c, z, prec.max_terms, prec.rel_tol);

  // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), z/(z-1) in (0,1)
  const double w = z / (z - 1.0);
  if (w <= 0.9) {
    return std::pow(1.0 - z, -a) *
           gauss_series(a, c - b, c, w, prec.max_terms, prec.rel_tol);
  }

  const double gap = b - a;
  const bool degenerate = std::abs(gap - std::round(gap)) < 1e-12;
  const bool poles = is_nonpositive_integer(a) || is_nonpositive_integer(b) ||
                     is_nonpositive_integer(c - a) ||
                     is_nonpositive_integer(c - b);
  if (!degenerate && !poles) {
    return large_negative(a, b, c, z, prec.max_terms, prec.rel_tol);
  }
  // The Pfaff series still converges; widen the budget in proportion to
  // 1 / (1 - w).
  const int budget = std::max(prec.max_terms,
                              static_cast<int>(std::ceil(200.0 / (1.0 - w))));
  return std::pow(1.0 - z, -a) *
         gauss_series(a, c - b, c, w, budget, prec.rel_tol);
}

}  // namespace cylsle
