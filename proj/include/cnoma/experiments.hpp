#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cnoma/config.hpp"
#include "cnoma/montecarlo.hpp"
#include "cnoma/params.hpp"
#include "cnoma/schemes.hpp"

namespace cnoma {

enum class SweptVariable { kRhoDb, kDS1, kTheta, kDelta, kEta };
enum class Metric { kEsc, kEe };

const char* swept_variable_name(SweptVariable v);
const char* metric_name(Metric m);

struct SweepSpec {
  std::string name = "sweep";
  SweptVariable swept = SweptVariable::kRhoDb;
  std::vector<double> grid;  // strictly increasing
  SystemParams base;         // the swept field's value here is ignored
  std::vector<SchemeId> schemes;
  Metric metric = Metric::kEsc;
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 42;
  bool analytic = false;           // closed-form overlay columns (ESC only)
  SinrMode sinr_mode = SinrMode::kTheoremConsistent;
  bool optimize_theta = false;     // extra CNOMA_IHS_opt series (EE only)
  std::uint64_t theta_search_samples = 20'000;
};

// Reads every sweep key plus the embedded system parameters; rejects unknown
// keys so config typos surface immediately.
SweepSpec sweep_from_config(const KeyValueConfig& cfg);

// Loads only the SystemParams keys from a config (for validate/thetastar).
SystemParams params_from_config(const KeyValueConfig& cfg,
                                bool reject_unknown = true);

// Grid/scheme/sample-count checks plus a full parameter validation at every
// grid point; empty result means the sweep may run.
std::vector<Violation> validate_sweep(const SweepSpec& spec);

struct SweepRow {
  double swept_value = 0.0;
  std::string scheme;
  Metric metric = Metric::kEsc;
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> analytic_c1;
  std::optional<double> analytic_c2_printed;
  std::optional<double> analytic_c2_oracle;
  std::optional<double> analytic_sum;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // grid-major, then scheme listing order
  // Full comparison tables per grid point, for callers that need CIs of
  // paired differences; same order as the grid.
  std::vector<ComparisonTable> tables;
};

// Runs the Monte Carlo grid. Throws std::invalid_argument listing all sweep
// violations when validate_sweep is nonempty.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 0);

// swept_value,scheme,metric,mean,std_error[,analytic...] with 12 significant
// digits; byte-stable for a fixed spec and build.
void emit_csv(const SweepResult& result, std::ostream& out);
void write_csv(const SweepResult& result, const std::string& path);

// Self-contained SVG: one line series per scheme with 95% CI whiskers.
void emit_svg(const SweepResult& result, std::ostream& out);
void write_svg(const SweepResult& result, const std::string& path);

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cnoma
