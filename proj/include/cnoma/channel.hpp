#pragma once

#include <cstdint>

namespace cnoma {

// Squared channel-gain draws for one fading realization. Each field is
// exponentially distributed with the corresponding mean lambda.
struct ChannelRealization {
  double g_s1;  // |h_S1|^2
  double g_s2;  // |h_S2|^2
  double g_12;  // |h_12|^2
};

// Gain streams are separated by a fixed label so that adding or removing a
// field never shifts another field's draws.
enum class GainStream : std::uint64_t { kS1 = 0, kS2 = 1, k12 = 2 };

struct SeedSpec {
  std::uint64_t master_seed = 0;
};

struct GainLambdas {
  double lambda_s1;
  double lambda_s2;
  double lambda_12;
};

// Counter-style uniform draw in (0,1]: a pure function of
// (master_seed, sample_index, stream), independent of call order or of how
// sample indices are partitioned across workers.
double uniform_draw(const SeedSpec& seed, std::uint64_t sample_index,
                    GainStream stream);

// Exponential draw with mean lambda via inverse CDF, -lambda * ln(u).
// Throws std::invalid_argument for lambda <= 0.
double exponential_draw(const SeedSpec& seed, std::uint64_t sample_index,
                        GainStream stream, double lambda);

// All three gains of realization `sample_index`.
ChannelRealization draw(const SeedSpec& seed, std::uint64_t sample_index,
                        const GainLambdas& lambdas);

}  // namespace cnoma
