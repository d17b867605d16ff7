#include "cnoma/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cnoma {

PowerAllocation derive_power_allocation(double r_th1, double r_th2) {
  if (!(r_th1 > 0.0) || !(r_th2 > 0.0)) {
    throw std::domain_error("target rates must be strictly positive");
  }
  const double num = std::exp2(2.0 * r_th1) - 1.0;
  const double den = std::exp2(2.0 * (r_th1 + r_th2)) - 1.0;
  const double p_n = num / den;
  const double p_f = 1.0 - p_n;
  if (!(p_n > 0.0) || !(p_n < p_f)) {
    throw std::domain_error(
        "rate pair breaks NOMA power ordering (requires p_n < p_f)");
  }
  return PowerAllocation{p_n, p_f};
}

double channel_variance(double d, double v) {
  if (!(d > 0.0)) {
    throw std::domain_error("distance must be strictly positive");
  }
  return std::pow(d, -v);
}

namespace {

bool in_open_01(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

ValidationOutcome validate(const SystemParams& raw) {
  ValidationOutcome out;
  auto fail = [&out](const char* field, const std::string& msg) {
    out.violations.push_back(Violation{field, msg});
  };

  if (!(raw.d_s1 > 0.0)) fail("d_s1", "must be > 0");
  if (!(raw.d_s2 > 0.0)) fail("d_s2", "must be > 0");
  if (raw.d_s1 > 0.0 && raw.d_s2 > 0.0 && !(raw.d_s1 < raw.d_s2)) {
    fail("d_s1", "near user must be closer than far user (d_s1 < d_s2)");
  }
  double d_12 = raw.d_12.value_or(raw.d_s2 - raw.d_s1);
  if (!(d_12 > 0.0)) fail("d_12", "must be > 0");
  if (!(raw.v > 0.0)) fail("v", "path-loss exponent must be > 0");
  if (!in_open_01(raw.theta)) fail("theta", "must lie in (0,1)");
  if (!in_open_01(raw.delta)) fail("delta", "must lie in (0,1)");
  if (!(raw.eta > 0.0 && raw.eta <= 1.0)) fail("eta", "must lie in (0,1]");
  if (!(raw.beta >= 0.0 && raw.beta <= 1.0)) fail("beta", "must lie in [0,1]");
  if (!(raw.r_th1 > 0.0)) fail("r_th1", "must be > 0");
  if (!(raw.r_th2 > 0.0)) fail("r_th2", "must be > 0");
  if (!(raw.t_total > 0.0)) fail("t_total", "must be > 0");
  if (!std::isfinite(raw.rho_db)) fail("rho_db", "must be finite");
  for (const auto* ov : {&raw.lambda_s1, &raw.lambda_s2, &raw.lambda_12}) {
    if (ov->has_value() && !(**ov > 0.0)) {
      fail("lambda", "override must be > 0");
    }
  }

  PowerAllocation power{0.0, 0.0};
  if (raw.r_th1 > 0.0 && raw.r_th2 > 0.0) {
    try {
      power = derive_power_allocation(raw.r_th1, raw.r_th2);
    } catch (const std::domain_error& e) {
      fail("r_th1", e.what());
    }
  }

  if (!out.violations.empty()) return out;

  ValidatedParams p;
  p.raw = raw;
  p.d_12 = d_12;
  p.lambda_s1 = raw.lambda_s1.value_or(channel_variance(raw.d_s1, raw.v));
  p.lambda_s2 = raw.lambda_s2.value_or(channel_variance(raw.d_s2, raw.v));
  p.lambda_12 = raw.lambda_12.value_or(channel_variance(d_12, raw.v));
  p.rho = std::pow(10.0, raw.rho_db / 10.0);
  p.power = power;
  out.params = p;
  return out;
}

std::string ValidationOutcome::describe() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].field << ": " << violations[i].message;
  }
  return os.str();
}

ValidatedParams validate_or_throw(const SystemParams& raw) {
  ValidationOutcome out = validate(raw);
  if (!out.ok()) {
    throw std::invalid_argument("invalid parameters: " + out.describe());
  }
  return out.value();
}

}  // namespace cnoma
