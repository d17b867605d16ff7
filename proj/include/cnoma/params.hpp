#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cnoma {

// How the energy-efficiency denominator treats the near-user power fraction:
// LITERAL adds the dimensionless fraction p_N itself, SCALED adds p_N * P.
enum class EePnTerm { kLiteral, kScaled };

// How ergodic energy efficiency is formed from per-realization quantities.
enum class EeAveraging { kRatioOfMeans, kMeanOfRatios };

// Raw user-facing system parameters. Distances are in the same arbitrary unit,
// rates in bits/s/Hz, rho in dB, times in units of t_total.
struct SystemParams {
  double d_s1 = 0.6;   // source -> near user (UE1)
  double d_s2 = 1.0;   // source -> far user (UE2)
  // source defaults to d_s2 - d_s1 when unset
  std::optional<double> d_12;  // UE1 -> UE2
  double v = 2.0;      // path-loss exponent
  double theta = 0.4;  // time-switching fraction, (0,1)
  double delta = 0.4;  // power-splitting fraction at UE1, (0,1)
  double eta = 1.0;    // energy-conversion efficiency, (0,1]
  double beta = 1.0;   // residual interference level after SIC, [0,1]
  double rho_db = 15.0;  // transmit SNR in dB
  double r_th1 = 0.3;  // target rate of UE1
  double r_th2 = 0.3;  // target rate of UE2
  double t_total = 1.0;

  // Optional direct channel-variance overrides; when set they replace d^-v.
  std::optional<double> lambda_s1;
  std::optional<double> lambda_s2;
  std::optional<double> lambda_12;

  EePnTerm ee_pn_term = EePnTerm::kLiteral;
  EeAveraging ee_averaging = EeAveraging::kRatioOfMeans;
};

// NOMA power split. p_n + p_f == 1 and 0 < p_n < p_f < 1 always hold for
// instances produced by derive_power_allocation.
struct PowerAllocation {
  double p_n;  // near user (UE1)
  double p_f;  // far user (UE2)
};

// Power fractions from the target rates: p_n = (2^{2 r1} - 1)/(2^{2(r1+r2)} - 1).
// Throws std::domain_error when the rates yield p_n >= p_f (ordering violation)
// or are not strictly positive.
PowerAllocation derive_power_allocation(double r_th1, double r_th2);

// Mean channel gain at distance d with path-loss exponent v: d^-v.
// Throws std::domain_error for d <= 0.
double channel_variance(double d, double v);

struct Violation {
  std::string field;
  std::string message;
};

// Validated parameter set with derived quantities. Immutable by convention:
// always passed by const reference after construction.
struct ValidatedParams {
  SystemParams raw;
  double d_12 = 0.0;        // resolved UE1 -> UE2 distance
  double lambda_s1 = 0.0;   // mean of |h_S1|^2
  double lambda_s2 = 0.0;   // mean of |h_S2|^2
  double lambda_12 = 0.0;   // mean of |h_12|^2
  double rho = 0.0;         // linear transmit SNR
  PowerAllocation power{};
};

// Checks every constraint and collects all violations instead of stopping at
// the first. On success `params` is set and `violations` is empty.
struct ValidationOutcome {
  std::optional<ValidatedParams> params;
  std::vector<Violation> violations;

  bool ok() const { return params.has_value(); }
  const ValidatedParams& value() const { return *params; }
  std::string describe() const;
};

ValidationOutcome validate(const SystemParams& raw);

// Convenience for tests and tools: validate or throw std::invalid_argument
// with the full violation list in the message.
ValidatedParams validate_or_throw(const SystemParams& raw);

}  // namespace cnoma
