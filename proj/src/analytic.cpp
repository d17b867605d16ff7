#include "cnoma/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cnoma/quadrature.hpp"
#include "cnoma/specfun.hpp"

namespace cnoma {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

void require_converged(const IntegrationResult& r, const char* what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << " quadrature failed to converge (estimate "
       << r.abs_error_estimate << " after " << r.panels << " panels)";
    throw OracleFailure(os.str());
  }
}

}  // namespace

// The first and third branches share |h_S1|^2, so the expectation is taken
// as an outer integral over that gain's density with the two conditionally
// independent survivals in closed form inside:
//   E = int_0^inf f(a) int_0^{min(g1(a), cap)} Sb(m) Sc(m|a) / (1+m) dm da.
double min_branch_log_moment(const ValidatedParams& p) {
  const double rho = p.rho;
  const double delta = p.raw.delta;
  const double beta2 = p.raw.beta * p.raw.beta;
  const double p_n = p.power.p_n;
  const double p_f = p.power.p_f;
  const double theta = p.raw.theta;
  const double k_relay =
      p.raw.eta * rho * (3.0 * theta / (1.0 - theta) + delta);
  const double m_cap = p_f / p_n;  // direct branch cannot exceed this

  auto inner = [&](double a) {
    const double id_power = (1.0 - delta) * rho * a;
    const double g1 = id_power * p_f / (beta2 * id_power * p_n + 1.0);
    const double upper = std::min(g1, m_cap);
    if (!(upper > 0.0)) return 0.0;
    const double relay_scale = k_relay * p.lambda_12 * a;
    auto f = [&](double m) {
      const double room = p_f - p_n * m;
      if (room <= 0.0) return 0.0;
      const double s_direct = std::exp(-m / (p.lambda_s2 * rho * room));
      const double s_relay = std::exp(-m / relay_scale);
      return s_direct * s_relay / (1.0 + m);
    };
    IntegrationResult r =
        adaptive_gauss_kronrod(f, 0.0, upper, 1e-13, 1e-10, 4000);
    require_converged(r, "far-user inner");
    return r.value;
  };

  // a = lambda_s1 * t/(1-t) folds the density and Jacobian into
  // e^{-t/(1-t)} / (1-t)^2, which vanishes to all orders at t = 1.
  auto outer = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double w = std::exp(-t / (1.0 - t)) / ((1.0 - t) * (1.0 - t));
    if (w == 0.0) return 0.0;
    return w * inner(p.lambda_s1 * t / (1.0 - t));
  };
  IntegrationResult r =
      adaptive_gauss_kronrod(outer, 0.0, 1.0, 1e-11, 1e-8, 4000);
  require_converged(r, "far-user outer");
  return r.value;
}

TheoremInputs theorem_inputs(const ValidatedParams& p) {
  const double rho = p.rho;
  const double one_minus_delta = 1.0 - p.raw.delta;
  const double p_n = p.power.p_n;
  TheoremInputs t;
  t.g = one_minus_delta * p.lambda_s1 * rho * p_n;
  t.h = p.lambda_s1 * rho * p_n;
  t.l = 1.0 / (p.lambda_s1 * rho * one_minus_delta);
  t.q = 1.0 / (p.lambda_12 * rho);
  t.r = 1.0 / (p.lambda_s1 * rho * p_n * one_minus_delta);
  t.s = 1.0 / (p.lambda_12 * rho * p_n);
  t.u = p.lambda_s2 * rho;
  return t;
}

double mean_log_capacity_quadrature(double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("mean_log_capacity_quadrature requires k > 0");
  }
  // a = t/(1-t): integrand e^{-a/k}/(1+a) da -> e^{-t/((1-t)k)}/(1-t) dt.
  auto f = [k](double t) {
    if (t <= 0.0) return 1.0;  // limit value at t = 0
    if (t >= 1.0) return 0.0;
    return std::exp(-t / ((1.0 - t) * k)) / (1.0 - t);
  };
  IntegrationResult r =
      adaptive_gauss_kronrod(f, 0.0, 1.0, 1e-13, 1e-10, 20000);
  require_converged(r, "log-moment");
  return r.value;
}

double ergodic_c1_closed_form(const ValidatedParams& p) {
  const TheoremInputs t = theorem_inputs(p);
  const double pre = (1.0 - p.raw.theta) / 3.0 * kInvLn2;
  return pre * (expint_e1_scaled(1.0 / t.g) + expint_e1_scaled(1.0 / t.h));
}

double ergodic_c2_as_printed(const ValidatedParams& p) {
  const TheoremInputs t = theorem_inputs(p);
  const double pre = (1.0 - p.raw.theta) / 3.0 * kInvLn2;
  const double mid =
      pre * (expint_e1_scaled(t.l + t.q) - expint_e1_scaled(t.r + t.s));
  const double direct =
      p.raw.theta * kInvLn2 * expint_e1_scaled(1.0 / t.u);
  return mid + direct;
}

double ergodic_c2_numeric_oracle(const ValidatedParams& p) {
  const TheoremInputs t = theorem_inputs(p);
  const double mid =
      (1.0 - p.raw.theta) / 3.0 * kInvLn2 * min_branch_log_moment(p);
  const double direct =
      p.raw.theta * kInvLn2 * mean_log_capacity_quadrature(t.u);
  return mid + direct;
}

C2ClosedForm ergodic_c2_closed_form(const ValidatedParams& p) {
  C2ClosedForm out;
  out.as_printed = ergodic_c2_as_printed(p);
  out.oracle = ergodic_c2_numeric_oracle(p);
  out.abs_deviation = std::fabs(out.as_printed - out.oracle);
  out.printed_consistent =
      out.abs_deviation <= std::max(1e-9, 1e-6 * std::fabs(out.oracle));
  return out;
}

double ergodic_sum_closed_form(const ValidatedParams& p, EscMode mode) {
  const double c1 = ergodic_c1_closed_form(p);
  if (mode == EscMode::kAsPrinted) {
    return c1 + ergodic_c2_as_printed(p);
  }
  return c1 + ergodic_c2_numeric_oracle(p);
}

}  // namespace cnoma
