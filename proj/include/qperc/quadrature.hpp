#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace qperc {

// Raised when an adaptive rule cannot certify the requested absolute
// tolerance; carries the achieved error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double achieved, double requested)
      : std::runtime_error("quadrature did not converge: error bound " +
                           std::to_string(achieved) + " exceeds tolerance " +
                           std::to_string(requested)),
        achieved_error(achieved),
        requested_tolerance(requested) {}

  double achieved_error;
  double requested_tolerance;
};

inline constexpr double kQuadratureTol = 1e-10;

// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
// tolerance tol. b may be +infinity.
template <class F>
double integrate(F&& f, double a, double b, double tol = kQuadratureTol) {
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, a, b, /*max_depth=*/15, /*rel_term_tol=*/1e-14, &err);
  if (!(err <= tol)) throw QuadratureError(err, tol);
  return value;
}

template <class F>
double integrate_semi_infinite(F&& f, double tol = kQuadratureTol) {
  return integrate(static_cast<F&&>(f), 0.0,
                   std::numeric_limits<double>::infinity(), tol);
}

}  // namespace qperc
