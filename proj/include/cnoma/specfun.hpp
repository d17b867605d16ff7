#pragma once

#include <stdexcept>
#include <string>

namespace cnoma {

// Exponential integral Ei(x) for real x != 0, accurate to at least ten
// significant digits over |x| in [1e-6, 50]. Throws std::domain_error at
// x == 0 (logarithmic singularity).
double expint_ei(double x);

// e^x * E1(x) for x > 0. This scaled product stays O(1/x) for large x, so the
// ergodic-capacity expressions of the form -Ei(-1/k) * e^{1/k} can be
// evaluated without overflow for arbitrarily small k.
double expint_e1_scaled(double x);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;  // always >= 0
};

// Raised when an oracle integration cannot reach its requested tolerance.
struct OracleFailure : std::runtime_error {
  explicit OracleFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Independent oracle for E1(x) = integral_x^inf e^-t / t dt, x > 0, computed
// by adaptive Gauss-Kronrod quadrature without reference to the series or
// continued-fraction code paths above. `tol` is an absolute tolerance;
// on return abs_error_estimate <= tol. Throws OracleFailure when the panel
// budget is exhausted, std::invalid_argument for x <= 0.
QuadratureResult expint_e1_quadrature(double x, double tol);

}  // namespace cnoma
