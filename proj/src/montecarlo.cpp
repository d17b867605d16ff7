#include "cnoma/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "cnoma/energy.hpp"

namespace cnoma {

namespace {

// Chunk size fixes the reduction tree: workers claim whole chunks, partials
// are merged in chunk order, so the float result cannot depend on scheduling.
constexpr std::uint64_t kChunk = 256;
constexpr int kFields = 9;

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

inline void report_fields(const CapacityReport& r, double* out) {
  out[0] = r.c_x1;
  out[1] = r.c_x2;
  out[2] = r.c_x3;
  out[3] = r.c_x4;
  out[4] = r.c_ue1;
  out[5] = r.c_ue2;
  out[6] = r.c_sum;
  out[7] = r.relay_power;
  out[8] = r.ee;
}

struct ChunkBlock {
  double sum[kFields] = {};
  double sumsq[kFields] = {};
};

struct PairBlock {
  double sum_d = 0.0;
  double sum_d2 = 0.0;
};

ErgodicEstimate finish_estimate(double sum, double sumsq, std::uint64_t n) {
  ErgodicEstimate e;
  e.n_samples = n;
  e.mean = sum / static_cast<double>(n);
  double var = 0.0;
  if (n > 1) {
    var = (sumsq / static_cast<double>(n) - e.mean * e.mean) *
          (static_cast<double>(n) / static_cast<double>(n - 1));
    var = std::max(var, 0.0);
  }
  e.std_error = std::sqrt(var / static_cast<double>(n));
  e.ci95_halfwidth = 1.96 * e.std_error;
  return e;
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

}  // namespace

ComparisonTable compare_evaluators(const std::vector<EvaluatorSpec>& evals,
                                   const GainLambdas& lambdas, std::uint64_t n,
                                   SeedSpec seed, unsigned workers) {
  if (evals.empty()) throw std::invalid_argument("no evaluators given");
  if (n < 2) throw std::invalid_argument("need at least two samples");

  const std::size_t n_eval = evals.size();
  const std::size_t n_pairs = n_eval * (n_eval - 1) / 2;
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;

  std::vector<ChunkBlock> blocks(n_chunks * n_eval);
  std::vector<PairBlock> pair_blocks(n_chunks * n_pairs);
  std::vector<std::uint64_t> chunk_counts(n_chunks, 0);

  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&] {
    std::vector<double> fields(n_eval * kFields);
    for (;;) {
      const std::uint64_t k = next_chunk.fetch_add(1);
      if (k >= n_chunks) break;
      const std::uint64_t i0 = k * kChunk;
      const std::uint64_t i1 = std::min(n, i0 + kChunk);
      std::vector<Kahan> acc(n_eval * kFields * 2);
      std::vector<Kahan> pacc(n_pairs * 2);
      for (std::uint64_t i = i0; i < i1; ++i) {
        const ChannelRealization ch = draw(seed, i, lambdas);
        for (std::size_t e = 0; e < n_eval; ++e) {
          const CapacityReport rep = evals[e].fn(ch);
          report_fields(rep, &fields[e * kFields]);
          for (int f = 0; f < kFields; ++f) {
            const double x = fields[e * kFields + f];
            acc[(e * kFields + f) * 2].add(x);
            acc[(e * kFields + f) * 2 + 1].add(x * x);
          }
        }
        std::size_t pair = 0;
        for (std::size_t a = 0; a < n_eval; ++a) {
          for (std::size_t b = a + 1; b < n_eval; ++b, ++pair) {
            const double d = fields[a * kFields + 6] - fields[b * kFields + 6];
            pacc[pair * 2].add(d);
            pacc[pair * 2 + 1].add(d * d);
          }
        }
      }
      for (std::size_t e = 0; e < n_eval; ++e) {
        ChunkBlock& blk = blocks[k * n_eval + e];
        for (int f = 0; f < kFields; ++f) {
          blk.sum[f] = acc[(e * kFields + f) * 2].sum;
          blk.sumsq[f] = acc[(e * kFields + f) * 2 + 1].sum;
        }
      }
      for (std::size_t pr = 0; pr < n_pairs; ++pr) {
        pair_blocks[k * n_pairs + pr] =
            PairBlock{pacc[pr * 2].sum, pacc[pr * 2 + 1].sum};
      }
      chunk_counts[k] = i1 - i0;
    }
  };

  const unsigned n_workers = resolve_workers(workers);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  // Deterministic merge: chunk order only, never worker order.
  ComparisonTable table;
  table.per_scheme.resize(n_eval);
  std::vector<double> batch_ee(n_chunks);
  for (std::size_t e = 0; e < n_eval; ++e) {
    Kahan sums[kFields], sumsqs[kFields];
    for (std::uint64_t k = 0; k < n_chunks; ++k) {
      const ChunkBlock& blk = blocks[k * n_eval + e];
      for (int f = 0; f < kFields; ++f) {
        sums[f].add(blk.sum[f]);
        sumsqs[f].add(blk.sumsq[f]);
      }
    }
    ReportEstimates& r = table.per_scheme[e];
    ErgodicEstimate* fields[kFields] = {&r.c_x1,  &r.c_x2,  &r.c_x3,
                                        &r.c_x4,  &r.c_ue1, &r.c_ue2,
                                        &r.c_sum, &r.relay_power, &r.ee};
    for (int f = 0; f < kFields; ++f) {
      *fields[f] = finish_estimate(sums[f].sum, sumsqs[f].sum, n);
    }
    r.ergodic_ee =
        r.c_sum.mean / (evals[e].denominator_const + r.relay_power.mean);
    Kahan bsum;
    for (std::uint64_t k = 0; k < n_chunks; ++k) {
      const ChunkBlock& blk = blocks[k * n_eval + e];
      const double m = static_cast<double>(chunk_counts[k]);
      batch_ee[k] = (blk.sum[6] / m) /
                    (evals[e].denominator_const + blk.sum[7] / m);
      bsum.add(batch_ee[k]);
    }
    const double bmean = bsum.sum / static_cast<double>(n_chunks);
    Kahan bvar;
    for (std::uint64_t k = 0; k < n_chunks; ++k) {
      const double d = batch_ee[k] - bmean;
      bvar.add(d * d);
    }
    r.ergodic_ee_std_error =
        n_chunks > 1 ? std::sqrt(bvar.sum / static_cast<double>(n_chunks - 1) /
                                 static_cast<double>(n_chunks))
                     : 0.0;
  }

  std::size_t pair = 0;
  for (std::size_t a = 0; a < n_eval; ++a) {
    for (std::size_t b = a + 1; b < n_eval; ++b, ++pair) {
      SchemePairDifference diff;
      diff.index_a = a;
      diff.index_b = b;
      Kahan dsum, dsumsq;
      for (std::uint64_t k = 0; k < n_chunks; ++k) {
        dsum.add(pair_blocks[k * n_pairs + pair].sum_d);
        dsumsq.add(pair_blocks[k * n_pairs + pair].sum_d2);
      }
      diff.esc_difference = finish_estimate(dsum.sum, dsumsq.sum, n);

      // Batch-paired efficiency difference: variance of per-chunk EE gaps.
      diff.ee_difference.n_samples = n;
      diff.ee_difference.mean =
          table.per_scheme[a].ergodic_ee - table.per_scheme[b].ergodic_ee;
      Kahan gsum;
      std::vector<double> gaps(n_chunks);
      for (std::uint64_t k = 0; k < n_chunks; ++k) {
        const ChunkBlock& ba = blocks[k * n_eval + a];
        const ChunkBlock& bb = blocks[k * n_eval + b];
        const double m = static_cast<double>(chunk_counts[k]);
        const double ee_a =
            (ba.sum[6] / m) / (evals[a].denominator_const + ba.sum[7] / m);
        const double ee_b =
            (bb.sum[6] / m) / (evals[b].denominator_const + bb.sum[7] / m);
        gaps[k] = ee_a - ee_b;
        gsum.add(gaps[k]);
      }
      const double gmean = gsum.sum / static_cast<double>(n_chunks);
      Kahan gvar;
      for (std::uint64_t k = 0; k < n_chunks; ++k) {
        const double d = gaps[k] - gmean;
        gvar.add(d * d);
      }
      diff.ee_difference.std_error =
          n_chunks > 1
              ? std::sqrt(gvar.sum / static_cast<double>(n_chunks - 1) /
                          static_cast<double>(n_chunks))
              : 0.0;
      diff.ee_difference.ci95_halfwidth = 1.96 * diff.ee_difference.std_error;
      table.pairs.push_back(diff);
    }
  }
  return table;
}

namespace {

EvaluatorSpec make_spec(SchemeId id, const ValidatedParams& p, SinrMode mode) {
  return EvaluatorSpec{
      [id, &p, mode](const ChannelRealization& ch) {
        return eval_scheme(id, p, ch, mode);
      },
      energy_denominator(id, p, 0.0)};
}

}  // namespace

ReportEstimates estimate(SchemeId scheme, const ValidatedParams& p,
                         std::uint64_t n, SeedSpec seed, SinrMode mode,
                         unsigned workers) {
  if (n < 1000) {
    throw std::invalid_argument("estimate requires n >= 1000 samples");
  }
  const GainLambdas lambdas{p.lambda_s1, p.lambda_s2, p.lambda_12};
  ComparisonTable t = compare_evaluators({make_spec(scheme, p, mode)}, lambdas,
                                         n, seed, workers);
  t.per_scheme[0].scheme = scheme;
  return t.per_scheme[0];
}

ComparisonTable compare_schemes(std::span<const SchemeId> schemes,
                                const ValidatedParams& p, std::uint64_t n,
                                SeedSpec seed, SinrMode mode,
                                unsigned workers) {
  if (schemes.empty()) throw std::invalid_argument("no schemes given");
  if (n < 1000) {
    throw std::invalid_argument("compare requires n >= 1000 samples");
  }
  std::vector<EvaluatorSpec> evals;
  evals.reserve(schemes.size());
  for (SchemeId id : schemes) evals.push_back(make_spec(id, p, mode));
  const GainLambdas lambdas{p.lambda_s1, p.lambda_s2, p.lambda_12};
  ComparisonTable t = compare_evaluators(evals, lambdas, n, seed, workers);
  t.schemes.assign(schemes.begin(), schemes.end());
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    t.per_scheme[i].scheme = schemes[i];
  }
  for (auto& pr : t.pairs) {
    pr.a = schemes[pr.index_a];
    pr.b = schemes[pr.index_b];
  }
  return t;
}

}  // namespace cnoma
