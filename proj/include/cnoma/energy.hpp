#pragma once

#include <cstdint>

#include "cnoma/channel.hpp"
#include "cnoma/schemes.hpp"

namespace cnoma {

struct EnergyReport {
  double e1 = 0.0;  // energy harvested by the near user over one frame
  double p1 = 0.0;  // transmit power available while relaying, e1 / duration
};

// Energy-to-power conversion over the relaying slot. Throws std::domain_error
// when the duration is not strictly positive (theta == 1 collapses the slot).
EnergyReport from_harvest(double harvested, double relay_duration);

// Harvested energy under the improved hybrid protocol: a dedicated slot of
// length theta*T plus power splitting over one third of the remainder.
// Throws std::domain_error when the relaying duration is zero (theta == 1).
EnergyReport harvested_energy(const ValidatedParams& p, double g_s1);

// Six-slot orthogonal counterpart (power splitting over one sixth of the
// remainder).
EnergyReport harvested_energy_oma(const ValidatedParams& p, double g_s1);

// Two-phase baselines; relaying occupies half of the post-harvest time.
// Only kCnomaHs, kCnomaPs, kCnomaTs, kWpCnoma are valid ids.
EnergyReport harvested_energy_baseline(SchemeId id, const ValidatedParams& p,
                                       double g_s1);

// Total power spent per frame as counted by the efficiency metric:
//   kCnomaIhs: 2P + P1 + p_n-term   (two full-power slots, relay, near slot)
//   kOmaIhs:   5P + P1
//   kCnomaHs / kCnomaTs / kWpCnoma: 2P + P1  (EH illumination + data + relay)
//   kCnomaPs:  P + P1                        (no dedicated EH transmission)
// The p_n term follows p.raw.ee_pn_term (dimensionless p_n or p_n * P).
double energy_denominator(SchemeId id, const ValidatedParams& p,
                          double relay_power);

// esc / denominator; the ergodic version divides mean capacity by mean
// denominator unless p.raw.ee_averaging selects the mean of ratios.
double energy_efficiency(SchemeId id, const ValidatedParams& p, double esc,
                         double relay_power);

enum class ThetaMethod { kFixedPoint, kGrid };

struct ThetaStarResult {
  double theta_star = 0.0;
  ThetaMethod method = ThetaMethod::kGrid;
  int iterations = 0;
  double ee_at_star = 0.0;  // ergodic efficiency evaluated at theta_star
  bool converged = true;    // fixed point only; grid always converges
};

// Throughput-maximizing time-switching fraction.
//   kFixedPoint iterates theta <- 1 - E1(theta)/(eta*g_s1*(2P+P1(theta)+p_n))
//     from theta0 = p.raw.theta until |dtheta| < 1e-9 (at most 1000 steps);
//     escape from (0,1) or non-convergence is reported via `converged`.
//   kGrid maximizes the ergodic efficiency of `scheme` over
//     theta in {0.01, 0.02, ..., 0.99}, all points on common random numbers.
// `n_samples`/`seed` drive the Monte Carlo efficiency evaluations of both
// methods' ee_at_star.
ThetaStarResult theta_star(const ValidatedParams& p, double g_s1,
                           ThetaMethod method,
                           SchemeId scheme = SchemeId::kCnomaIhs,
                           std::uint64_t n_samples = 20000,
                           SeedSpec seed = SeedSpec{42},
                           SinrMode mode = SinrMode::kTheoremConsistent,
                           unsigned workers = 0);

}  // namespace cnoma
