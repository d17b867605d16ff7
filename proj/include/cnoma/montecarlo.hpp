#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cnoma/channel.hpp"
#include "cnoma/schemes.hpp"

namespace cnoma {

struct ErgodicEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  double ci95_halfwidth = 0.0;  // 1.96 * std_error
};

// Per-field sample means over one scheme's CapacityReport stream. `ee` is the
// mean of per-realization ratios; `ergodic_ee` divides mean capacity by mean
// power (the default efficiency definition), with a batch-means std error.
struct ReportEstimates {
  SchemeId scheme = SchemeId::kCnomaIhs;
  ErgodicEstimate c_x1, c_x2, c_x3, c_x4;
  ErgodicEstimate c_ue1, c_ue2, c_sum;
  ErgodicEstimate relay_power;
  ErgodicEstimate ee;
  double ergodic_ee = 0.0;
  double ergodic_ee_std_error = 0.0;
};

// Paired comparison on common random numbers. The capacity difference is
// estimated sample-by-sample; the efficiency difference pairs the two ratio
// estimators batch-by-batch.
struct SchemePairDifference {
  std::size_t index_a = 0, index_b = 0;
  SchemeId a = SchemeId::kCnomaIhs, b = SchemeId::kCnomaIhs;
  ErgodicEstimate esc_difference;  // mean of per-sample c_sum differences
  ErgodicEstimate ee_difference;   // ratio-of-means difference, batch std error
};

struct ComparisonTable {
  std::vector<SchemeId> schemes;
  std::vector<ReportEstimates> per_scheme;
  std::vector<SchemePairDifference> pairs;  // all unordered pairs, listing order
};

// Generic engine input: a pure per-realization evaluator plus the constant
// part of its power denominator (the relay power is added per realization).
struct EvaluatorSpec {
  std::function<CapacityReport(const ChannelRealization&)> fn;
  double denominator_const = 1.0;
};

// Runs all evaluators over realizations 0..n-1 drawn from the counter-based
// sampler. Chunks of fixed size are combined in index order with compensated
// summation, so results are bitwise identical for any worker count.
// workers == 0 picks a hardware-based default. Requires n >= 2.
ComparisonTable compare_evaluators(const std::vector<EvaluatorSpec>& evals,
                                   const GainLambdas& lambdas, std::uint64_t n,
                                   SeedSpec seed, unsigned workers = 0);

// Scheme-level wrappers; require n >= 1000.
ReportEstimates estimate(SchemeId scheme, const ValidatedParams& p,
                         std::uint64_t n, SeedSpec seed,
                         SinrMode mode = SinrMode::kTheoremConsistent,
                         unsigned workers = 0);

ComparisonTable compare_schemes(std::span<const SchemeId> schemes,
                                const ValidatedParams& p, std::uint64_t n,
                                SeedSpec seed,
                                SinrMode mode = SinrMode::kTheoremConsistent,
                                unsigned workers = 0);

}  // namespace cnoma
