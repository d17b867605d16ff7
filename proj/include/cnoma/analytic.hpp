#pragma once

#include "cnoma/params.hpp"

namespace cnoma {

// Scale constants entering the closed-form ergodic capacities. g and h are
// the exponential means of the near user's two post-SIC SINRs; l, q, r, s, u
// are the reciprocal-scale constants of the far user's expression.
struct TheoremInputs {
  double g, h;
  double l, q, r, s, u;
};

TheoremInputs theorem_inputs(const ValidatedParams& p);

// integral_0^inf e^{-a/k} / (1+a) da, k > 0, by adaptive quadrature on the
// transformed unit interval. Identity target: equals e^{1/k} E1(1/k).
// Used as an independent cross-check of the scaled exponential integral and
// as a building block of the far-user oracle.
double mean_log_capacity_quadrature(double k);

// E[ln(1+M)] for M = min of the three decode SINRs of the relayed symbol.
// Bounded by ln(1 + p_f/p_n): the far user's NOMA SINRs saturate at that
// power ratio no matter how strong the links get.
double min_branch_log_moment(const ValidatedParams& p);

// Near user: C1 = (1-theta)/(3 ln 2) * (e^{1/g} E1(1/g) + e^{1/h} E1(1/h)),
// evaluated in the scaled product form so large rho cannot overflow.
double ergodic_c1_closed_form(const ValidatedParams& p);

// Far user, literal closed form. Its middle term treats the three-branch
// minimum as if the branches were independent and unbounded, which they are
// not, so it overstates the relayed capacity; see ergodic_c2_numeric_oracle.
double ergodic_c2_as_printed(const ValidatedParams& p);

// Far user, corrected: conditions on |h_S1|^2 (outer quadrature) with
// closed-form survival functions of the other two gains inside, capturing
// both the branch correlation through |h_S1|^2 and the SIC saturation cap.
// Throws OracleFailure when a quadrature cannot converge.
double ergodic_c2_numeric_oracle(const ValidatedParams& p);

struct C2ClosedForm {
  double as_printed = 0.0;
  double oracle = 0.0;
  double abs_deviation = 0.0;
  // true when the literal form agrees with the oracle to ~1e-6 relative;
  // false is the expected outcome away from degenerate corners.
  bool printed_consistent = false;
};

C2ClosedForm ergodic_c2_closed_form(const ValidatedParams& p);

enum class EscMode { kAsPrinted, kValidated };

// Ergodic sum capacity C1 + C2 with the chosen treatment of C2.
double ergodic_sum_closed_form(const ValidatedParams& p, EscMode mode);

}  // namespace cnoma
