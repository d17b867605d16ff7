#include "cnoma/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cnoma/quadrature.hpp"

namespace cnoma {

namespace {

constexpr double kEuler = 0.57721566490153286;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 400;

// Power series E1(x) = -euler - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!),
// reliable below the continued-fraction crossover.
double e1_series(double x) {
  double sum = -kEuler - std::log(x);
  double term = 1.0;  // (-x)^k / k!
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= -x / k;
    const double contrib = -term / k;
    sum += contrib;
    if (std::fabs(contrib) < kEps * std::fabs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction
// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))), stable for x >= 1.
double e1_scaled_cf(double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + a / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Ei(x), x > 0, by the all-positive power series; no cancellation occurs so
// this is good to the working precision up to the asymptotic crossover.
double ei_series_positive(double x) {
  double sum = 0.0;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= x / k;
    sum += term / k;
    if (term / k < kEps * sum) break;
  }
  return kEuler + std::log(x) + sum;
}

// Asymptotic series Ei(x) ~ e^x/x * sum k!/x^k, truncated at the smallest
// term; for x >= 40 the truncation error is far below double precision.
double ei_asymptotic_positive(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= kMaxIter; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // series started diverging
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  return std::exp(x) / x * sum;
}

constexpr double kSeriesCfCrossover = 1.0;
constexpr double kPositiveAsymptoticCrossover = 40.0;

}  // namespace

double expint_e1_scaled(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("expint_e1_scaled requires x > 0");
  }
  if (x < kSeriesCfCrossover) {
    return std::exp(x) * e1_series(x);
  }
  return e1_scaled_cf(x);
}

double expint_ei(double x) {
  if (std::isnan(x)) return x;
  if (x == 0.0) {
    throw std::domain_error("Ei is singular at x = 0");
  }
  if (x < 0.0) {
    // Ei(x) = -E1(-x); the exp factor undoes the scaling and underflows
    // gracefully for very negative arguments.
    return -std::exp(x) * expint_e1_scaled(-x);
  }
  if (x < kPositiveAsymptoticCrossover) {
    return ei_series_positive(x);
  }
  return ei_asymptotic_positive(x);
}

QuadratureResult expint_e1_quadrature(double x, double tol) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("expint_e1_quadrature requires x > 0");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("tolerance must be > 0");
  }
  // Substituting t = x/u maps the tail integral onto the unit interval:
  // E1(x) = integral_0^1 e^{-x/u} / u du. The integrand vanishes to all
  // orders at u = 0, so adaptive bisection resolves the boundary layer.
  auto integrand = [x](double u) {
    if (u <= 0.0) return 0.0;
    return std::exp(-x / u) / u;
  };
  IntegrationResult r =
      adaptive_gauss_kronrod(integrand, 0.0, 1.0, tol, 0.0, 200000);
  if (!r.converged) {
    std::ostringstream os;
    os << "E1 quadrature did not reach tol=" << tol << " at x=" << x
       << " (estimate " << r.abs_error_estimate << " after " << r.panels
       << " panels)";
    throw OracleFailure(os.str());
  }
  return QuadratureResult{r.value, r.abs_error_estimate};
}

}  // namespace cnoma
