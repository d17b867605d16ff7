#include "cnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cnoma {

namespace {

// splitmix64 finalizer; full-avalanche bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

double uniform_draw(const SeedSpec& seed, std::uint64_t sample_index,
                    GainStream stream) {
  const std::uint64_t key = mix64(seed.master_seed + kGolden);
  std::uint64_t h = mix64(key ^ (sample_index + kGolden));
  h = mix64(h + kGolden * (static_cast<std::uint64_t>(stream) + 1));
  // Top 53 bits, shifted into (0,1]; never exactly zero so ln(u) is finite.
  return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

double exponential_draw(const SeedSpec& seed, std::uint64_t sample_index,
                        GainStream stream, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("exponential mean must be > 0");
  }
  return -lambda * std::log(uniform_draw(seed, sample_index, stream));
}

ChannelRealization draw(const SeedSpec& seed, std::uint64_t sample_index,
                        const GainLambdas& lambdas) {
  return ChannelRealization{
      exponential_draw(seed, sample_index, GainStream::kS1, lambdas.lambda_s1),
      exponential_draw(seed, sample_index, GainStream::kS2, lambdas.lambda_s2),
      exponential_draw(seed, sample_index, GainStream::k12, lambdas.lambda_12)};
}

}  // namespace cnoma
