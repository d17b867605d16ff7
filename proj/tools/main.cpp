// cnoma-lab: sweep runner and parameter checker for the CNOMA-IHS study.
//
// Subcommands:
//   run       execute a named preset (presets/<name>.cfg)
//   sweep     execute an arbitrary sweep config
//   validate  dry-run parameter / sweep checking, no computation
//   thetastar optimize the time-switching fraction for a parameter file
//
// Every flag can also be supplied through the environment with the CNOMA_
// prefix (e.g. CNOMA_SAMPLES). Flags win over the environment.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cnoma/config.hpp"
#include "cnoma/energy.hpp"
#include "cnoma/experiments.hpp"
#include "cnoma/params.hpp"
#include "cnoma/quadrature.hpp"
#include "cnoma/specfun.hpp"

#ifndef CNOMA_SOURCE_PRESET_DIR
#define CNOMA_SOURCE_PRESET_DIR "presets"
#endif

namespace {

struct CategorizedError {
  std::string category;
  int exit_code;
  std::string message;
};

// exit codes: 2 usage, 3 config, 4 validation, 5 io, 6 numeric, 7 internal
[[noreturn]] void fail(const std::string& category, int code,
                       const std::string& message) {
  throw CategorizedError{category, code, message};
}

struct CommonOpts {
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> sinr_mode;
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.samples, "Monte Carlo draws per grid point")
      ->envname("CNOMA_SAMPLES");
  cmd->add_option("--seed", o.seed, "master seed")->envname("CNOMA_SEED");
  cmd->add_option("--sinr-mode", o.sinr_mode, "printed|theorem")
      ->envname("CNOMA_SINR_MODE")
      ->check(CLI::IsMember({"printed", "theorem"}));
  cmd->add_option("--out", o.out_dir, "output directory")
      ->envname("CNOMA_OUT");
  cmd->add_option("--format", o.format, "csv|plot|both")
      ->envname("CNOMA_FORMAT")
      ->check(CLI::IsMember({"csv", "plot", "both"}));
  cmd->add_option("--workers", o.workers, "worker threads (0 = auto)")
      ->envname("CNOMA_WORKERS");
}

cnoma::KeyValueConfig load_config(const std::string& path) {
  try {
    return cnoma::KeyValueConfig::parse_file(path);
  } catch (const cnoma::ConfigError& e) {
    fail("config", 3, e.what());
  }
}

cnoma::SweepSpec spec_from_file(const std::string& path) {
  const cnoma::KeyValueConfig cfg = load_config(path);
  try {
    return cnoma::sweep_from_config(cfg);
  } catch (const cnoma::ConfigError& e) {
    fail("config", 3, e.what());
  }
}

void apply_overrides(cnoma::SweepSpec& spec, const CommonOpts& o) {
  if (o.samples) spec.n_samples = *o.samples;
  if (o.seed) spec.seed = *o.seed;
  if (o.sinr_mode) {
    spec.sinr_mode = *o.sinr_mode == "printed"
                         ? cnoma::SinrMode::kAsPrinted
                         : cnoma::SinrMode::kTheoremConsistent;
  }
}

void run_and_emit(const cnoma::SweepSpec& spec, const CommonOpts& o) {
  const auto violations = cnoma::validate_sweep(spec);
  if (!violations.empty()) {
    std::string msg = "sweep '" + spec.name + "' rejected:";
    for (const auto& v : violations) {
      msg += " [" + v.field + ": " + v.message + "]";
    }
    fail("validation", 4, msg);
  }
  const cnoma::SweepResult result = cnoma::run_sweep(spec, o.workers);
  namespace fs = std::filesystem;
  const fs::path dir(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);  // best effort, open() reports failures
  if (o.format == "csv" || o.format == "both") {
    const std::string path = (dir / (spec.name + ".csv")).string();
    cnoma::write_csv(result, path);
    std::cout << "wrote " << path << "\n";
  }
  if (o.format == "plot" || o.format == "both") {
    const std::string path = (dir / (spec.name + ".svg")).string();
    cnoma::write_svg(result, path);
    std::cout << "wrote " << path << "\n";
  }
}

std::string resolve_preset(const std::string& name,
                           const std::string& preset_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> tried;
  for (const fs::path& dir :
       {fs::path(preset_dir), fs::path(CNOMA_SOURCE_PRESET_DIR)}) {
    if (dir.empty()) continue;
    const fs::path candidate = dir / (name + ".cfg");
    if (fs::exists(candidate)) return candidate.string();
    tried.push_back(candidate.string());
  }
  std::string msg = "preset '" + name + "' not found; tried:";
  for (const auto& t : tried) msg += " " + t;
  fail("io", 5, msg);
}

int run_main(int argc, char** argv) {
  CLI::App app{"CNOMA-IHS downlink simulation laboratory"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "execute a named preset");
  std::string preset;
  std::string preset_dir = "presets";
  CommonOpts run_opts;
  run->add_option("--preset", preset, "preset name, e.g. figure3")
      ->required()
      ->envname("CNOMA_PRESET");
  run->add_option("--preset-dir", preset_dir, "directory holding presets")
      ->envname("CNOMA_PRESET_DIR");
  add_common(run, run_opts);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "execute a sweep config file");
  std::string sweep_config;
  CommonOpts sweep_opts;
  sweep->add_option("--config", sweep_config, "sweep configuration file")
      ->required()
      ->envname("CNOMA_CONFIG");
  add_common(sweep, sweep_opts);

  // validate
  auto* validate = app.add_subcommand(
      "validate", "check a parameter or sweep file without running");
  std::string validate_config;
  validate
      ->add_option("--config", validate_config, "file to check")
      ->required()
      ->envname("CNOMA_CONFIG");

  // thetastar
  auto* thetastar = app.add_subcommand(
      "thetastar", "optimize the time-switching fraction");
  std::string theta_config;
  std::string method = "grid";
  std::string theta_scheme = "CNOMA_IHS";
  CommonOpts theta_opts;
  thetastar->add_option("--config", theta_config, "parameter file")
      ->required()
      ->envname("CNOMA_CONFIG");
  thetastar->add_option("--method", method, "grid|fixedpoint")
      ->envname("CNOMA_METHOD")
      ->check(CLI::IsMember({"grid", "fixedpoint"}));
  thetastar->add_option("--scheme", theta_scheme, "scheme to optimize")
      ->envname("CNOMA_SCHEME");
  add_common(thetastar, theta_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error category=usage: " << e.what() << "\n";
    return 2;
  }

  if (*run) {
    const std::string path = resolve_preset(preset, preset_dir);
    cnoma::SweepSpec spec = spec_from_file(path);
    if (spec.name == "sweep") spec.name = preset;
    apply_overrides(spec, run_opts);
    run_and_emit(spec, run_opts);
    return 0;
  }

  if (*sweep) {
    cnoma::SweepSpec spec = spec_from_file(sweep_config);
    apply_overrides(spec, sweep_opts);
    run_and_emit(spec, sweep_opts);
    return 0;
  }

  if (*validate) {
    const cnoma::KeyValueConfig cfg = load_config(validate_config);
    std::vector<cnoma::Violation> violations;
    try {
      if (cfg.has("swept")) {
        violations = cnoma::validate_sweep(cnoma::sweep_from_config(cfg));
      } else {
        const cnoma::SystemParams p = cnoma::params_from_config(cfg, true);
        violations = cnoma::validate(p).violations;
      }
    } catch (const cnoma::ConfigError& e) {
      fail("config", 3, e.what());
    }
    if (violations.empty()) {
      std::cout << "ok\n";
      return 0;
    }
    for (const auto& v : violations) {
      std::cout << v.field << ": " << v.message << "\n";
    }
    fail("validation", 4, std::to_string(violations.size()) +
                              " violation(s) in " + validate_config);
  }

  if (*thetastar) {
    const cnoma::KeyValueConfig cfg = load_config(theta_config);
    // accept sweep-shaped files (presets) as well as bare parameter files
    cnoma::SystemParams raw;
    std::uint64_t samples_fallback = 20000;
    std::uint64_t seed_fallback = 42;
    try {
      if (cfg.has("swept")) {
        const cnoma::SweepSpec spec = cnoma::sweep_from_config(cfg);
        raw = spec.base;
        samples_fallback = spec.theta_search_samples;
        seed_fallback = spec.seed;
      } else {
        raw = cnoma::params_from_config(cfg, true);
      }
    } catch (const cnoma::ConfigError& e) {
      fail("config", 3, e.what());
    }
    const cnoma::ValidationOutcome outcome = cnoma::validate(raw);
    if (!outcome.ok()) fail("validation", 4, outcome.describe());
    const auto scheme_id = cnoma::scheme_from_name(theta_scheme);
    if (!scheme_id) fail("usage", 2, "unknown scheme '" + theta_scheme + "'");
    const cnoma::ValidatedParams vp = outcome.value();
    const cnoma::ThetaMethod m = method == "grid"
                                     ? cnoma::ThetaMethod::kGrid
                                     : cnoma::ThetaMethod::kFixedPoint;
    const cnoma::SinrMode mode =
        theta_opts.sinr_mode && *theta_opts.sinr_mode == "printed"
            ? cnoma::SinrMode::kAsPrinted
            : cnoma::SinrMode::kTheoremConsistent;
    const cnoma::ThetaStarResult r = cnoma::theta_star(
        vp, vp.lambda_s1, m, *scheme_id,
        theta_opts.samples.value_or(samples_fallback),
        cnoma::SeedSpec{theta_opts.seed.value_or(seed_fallback)}, mode,
        theta_opts.workers);
    std::printf("method=%s theta_star=%.6f ee=%.9g iterations=%u %s\n",
                method.c_str(), r.theta_star, r.ee_at_star, r.iterations,
                r.converged ? "converged=yes" : "converged=no");
    if (!r.converged) {
      fail("numeric", 6, "theta search did not converge (" + method + ")");
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const CategorizedError& e) {
    std::cerr << "error category=" << e.category << ": " << e.message << "\n";
    return e.exit_code;
  } catch (const cnoma::IoError& e) {
    std::cerr << "error category=io: " << e.what() << "\n";
    return 5;
  } catch (const cnoma::ConfigError& e) {
    std::cerr << "error category=config: " << e.what() << "\n";
    return 3;
  } catch (const cnoma::OracleFailure& e) {
    std::cerr << "error category=numeric: " << e.what() << "\n";
    return 6;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error category=validation: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error category=validation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error category=internal: " << e.what() << "\n";
    return 7;
  }
}
