#include "cnoma/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "cnoma/montecarlo.hpp"

namespace cnoma {

EnergyReport from_harvest(double harvested, double relay_duration) {
  if (!(relay_duration > 0.0)) {
    throw std::domain_error("relaying duration is zero (theta = 1)");
  }
  return EnergyReport{harvested, harvested / relay_duration};
}

EnergyReport harvested_energy(const ValidatedParams& p, double g_s1) {
  const double t = p.raw.t_total;
  const double theta = p.raw.theta;
  const double base = p.raw.eta * p.rho * g_s1;
  const double e1 =
      base * theta * t + base * p.raw.delta * (1.0 - theta) * t / 3.0;
  return from_harvest(e1, (1.0 - theta) * t / 3.0);
}

EnergyReport harvested_energy_oma(const ValidatedParams& p, double g_s1) {
  const double t = p.raw.t_total;
  const double theta = p.raw.theta;
  const double base = p.raw.eta * p.rho * g_s1;
  const double e1 =
      base * theta * t + base * p.raw.delta * (1.0 - theta) * t / 6.0;
  return from_harvest(e1, (1.0 - theta) * t / 6.0);
}

EnergyReport harvested_energy_baseline(SchemeId id, const ValidatedParams& p,
                                       double g_s1) {
  const double t = p.raw.t_total;
  const double theta = p.raw.theta;
  const double base = p.raw.eta * p.rho * g_s1;
  switch (id) {
    case SchemeId::kCnomaHs:
      return from_harvest(
          base * theta * t + base * p.raw.delta * (1.0 - theta) * t / 2.0,
          (1.0 - theta) * t / 2.0);
    case SchemeId::kCnomaTs:
    case SchemeId::kWpCnoma:
      return from_harvest(base * theta * t, (1.0 - theta) * t / 2.0);
    case SchemeId::kCnomaPs:
      // no dedicated harvest slot; splitting over the first half-frame
      return from_harvest(base * p.raw.delta * t / 2.0, t / 2.0);
    default:
      throw std::invalid_argument("not a two-phase baseline scheme");
  }
}

double energy_denominator(SchemeId id, const ValidatedParams& p,
                          double relay_power) {
  const double P = p.rho;
  const double pn_term = p.raw.ee_pn_term == EePnTerm::kScaled
                             ? p.power.p_n * P
                             : p.power.p_n;
  switch (id) {
    case SchemeId::kCnomaIhs: return 2.0 * P + relay_power + pn_term;
    case SchemeId::kOmaIhs: return 5.0 * P + relay_power;
    case SchemeId::kCnomaHs:
    case SchemeId::kCnomaTs:
    case SchemeId::kWpCnoma: return 2.0 * P + relay_power;
    case SchemeId::kCnomaPs: return P + relay_power;
  }
  throw std::invalid_argument("unknown scheme");
}

double energy_efficiency(SchemeId id, const ValidatedParams& p, double esc,
                         double relay_power) {
  return esc / energy_denominator(id, p, relay_power);
}

namespace {

double ergodic_ee(SchemeId scheme, const ValidatedParams& p, std::uint64_t n,
                  SeedSpec seed, SinrMode mode, unsigned workers) {
  const ReportEstimates est = estimate(scheme, p, n, seed, mode, workers);
  if (p.raw.ee_averaging == EeAveraging::kMeanOfRatios) return est.ee.mean;
  return est.ergodic_ee;
}

}  // namespace

ThetaStarResult theta_star(const ValidatedParams& p, double g_s1,
                           ThetaMethod method, SchemeId scheme,
                           std::uint64_t n_samples, SeedSpec seed,
                           SinrMode mode, unsigned workers) {
  auto with_theta = [&p](double theta) {
    SystemParams raw = p.raw;
    raw.theta = theta;
    return validate_or_throw(raw);
  };

  if (method == ThetaMethod::kGrid) {
    ThetaStarResult r;
    r.method = ThetaMethod::kGrid;
    double best_theta = 0.0;
    double best_ee = -1.0;
    for (int i = 1; i <= 99; ++i) {
      const double theta = i / 100.0;
      const double ee =
          ergodic_ee(scheme, with_theta(theta), n_samples, seed, mode, workers);
      ++r.iterations;
      if (ee > best_ee) {
        best_ee = ee;
        best_theta = theta;
      }
    }
    r.theta_star = best_theta;
    r.ee_at_star = best_ee;
    return r;
  }

  // Fixed-point reading of the self-referential optimality condition: both
  // the harvested energy and the power bill move with theta each step.
  ThetaStarResult r;
  r.method = ThetaMethod::kFixedPoint;
  if (!(g_s1 > 0.0)) {
    throw std::invalid_argument("fixed point needs g_s1 > 0");
  }
  const double P = p.rho;
  const double pn_term = p.raw.ee_pn_term == EePnTerm::kScaled
                             ? p.power.p_n * P
                             : p.power.p_n;
  double theta = p.raw.theta;
  r.converged = false;
  for (int it = 1; it <= 1000; ++it) {
    const EnergyReport eh = harvested_energy(with_theta(theta), g_s1);
    const double next =
        1.0 - eh.e1 / (p.raw.eta * g_s1 * (2.0 * P + eh.p1 + pn_term));
    r.iterations = it;
    if (!(next > 0.0 && next < 1.0)) {
      r.theta_star = theta;  // last in-range iterate
      break;
    }
    const double delta = std::fabs(next - theta);
    theta = next;
    if (delta < 1e-9) {
      r.converged = true;
      r.theta_star = theta;
      break;
    }
    r.theta_star = theta;
  }
  r.ee_at_star = ergodic_ee(scheme, with_theta(r.theta_star), n_samples, seed,
                            mode, workers);
  return r;
}

}  // namespace cnoma
