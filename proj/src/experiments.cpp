#include "cnoma/experiments.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cnoma/analytic.hpp"
#include "cnoma/energy.hpp"

namespace cnoma {

const char* swept_variable_name(SweptVariable v) {
  switch (v) {
    case SweptVariable::kRhoDb: return "rho_db";
    case SweptVariable::kDS1: return "d_s1";
    case SweptVariable::kTheta: return "theta";
    case SweptVariable::kDelta: return "delta";
    case SweptVariable::kEta: return "eta";
  }
  return "?";
}

const char* metric_name(Metric m) {
  return m == Metric::kEsc ? "ESC" : "EE";
}

namespace {

SweptVariable swept_from_name(const std::string& name,
                              const std::string& origin) {
  for (SweptVariable v :
       {SweptVariable::kRhoDb, SweptVariable::kDS1, SweptVariable::kTheta,
        SweptVariable::kDelta, SweptVariable::kEta}) {
    if (name == swept_variable_name(v)) return v;
  }
  throw ConfigError(origin + ": unknown swept variable '" + name + "'");
}

void apply_swept(SystemParams& raw, SweptVariable v, double value) {
  switch (v) {
    case SweptVariable::kRhoDb: raw.rho_db = value; break;
    case SweptVariable::kDS1:
      raw.d_s1 = value;
      raw.d_12.reset();  // keep the d_s2 - d_s1 convention point by point
      break;
    case SweptVariable::kTheta: raw.theta = value; break;
    case SweptVariable::kDelta: raw.delta = value; break;
    case SweptVariable::kEta: raw.eta = value; break;
  }
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

SystemParams params_from_config(const KeyValueConfig& cfg,
                                bool reject_unknown) {
  SystemParams p;
  auto num = [&cfg](const char* key, double& field) {
    if (auto v = cfg.maybe_double(key)) field = *v;
  };
  num("d_s1", p.d_s1);
  num("d_s2", p.d_s2);
  if (auto v = cfg.maybe_double("d_12")) p.d_12 = *v;
  num("v", p.v);
  num("theta", p.theta);
  num("delta", p.delta);
  num("eta", p.eta);
  num("beta", p.beta);
  num("rho_db", p.rho_db);
  num("r_th1", p.r_th1);
  num("r_th2", p.r_th2);
  num("t_total", p.t_total);
  if (auto v = cfg.maybe_double("lambda_s1")) p.lambda_s1 = *v;
  if (auto v = cfg.maybe_double("lambda_s2")) p.lambda_s2 = *v;
  if (auto v = cfg.maybe_double("lambda_12")) p.lambda_12 = *v;
  if (auto v = cfg.maybe_string("ee_pn_term")) {
    if (*v == "literal") {
      p.ee_pn_term = EePnTerm::kLiteral;
    } else if (*v == "scaled") {
      p.ee_pn_term = EePnTerm::kScaled;
    } else {
      throw ConfigError(cfg.origin() +
                        ": ee_pn_term must be 'literal' or 'scaled'");
    }
  }
  if (auto v = cfg.maybe_string("ee_averaging")) {
    if (*v == "ratio_of_means") {
      p.ee_averaging = EeAveraging::kRatioOfMeans;
    } else if (*v == "mean_of_ratios") {
      p.ee_averaging = EeAveraging::kMeanOfRatios;
    } else {
      throw ConfigError(
          cfg.origin() +
          ": ee_averaging must be 'ratio_of_means' or 'mean_of_ratios'");
    }
  }
  if (reject_unknown) {
    const auto unknown = cfg.unknown_keys();
    if (!unknown.empty()) {
      std::ostringstream os;
      os << cfg.origin() << ": unknown key(s):";
      for (const auto& k : unknown) os << " '" << k << "'";
      throw ConfigError(os.str());
    }
  }
  return p;
}

SweepSpec sweep_from_config(const KeyValueConfig& cfg) {
  SweepSpec spec;
  if (auto v = cfg.maybe_string("name")) spec.name = *v;
  spec.swept = swept_from_name(cfg.get_string("swept"), cfg.origin());
  spec.grid = cfg.get_double_list("grid");
  const std::string metric = cfg.get_string("metric");
  if (metric == "ESC") {
    spec.metric = Metric::kEsc;
  } else if (metric == "EE") {
    spec.metric = Metric::kEe;
  } else {
    throw ConfigError(cfg.origin() + ": metric must be 'ESC' or 'EE'");
  }
  spec.schemes.clear();
  for (const std::string& name : cfg.get_string_list("schemes")) {
    auto id = scheme_from_name(name);
    if (!id) {
      throw ConfigError(cfg.origin() + ": unknown scheme '" + name + "'");
    }
    spec.schemes.push_back(*id);
  }
  if (auto v = cfg.maybe_u64("n_samples")) spec.n_samples = *v;
  if (auto v = cfg.maybe_u64("seed")) spec.seed = *v;
  if (auto v = cfg.maybe_bool("analytic")) spec.analytic = *v;
  if (auto v = cfg.maybe_string("sinr_mode")) {
    if (*v == "printed") {
      spec.sinr_mode = SinrMode::kAsPrinted;
    } else if (*v == "theorem") {
      spec.sinr_mode = SinrMode::kTheoremConsistent;
    } else {
      throw ConfigError(cfg.origin() +
                        ": sinr_mode must be 'printed' or 'theorem'");
    }
  }
  if (auto v = cfg.maybe_bool("optimize_theta")) spec.optimize_theta = *v;
  if (auto v = cfg.maybe_u64("theta_search_samples")) {
    spec.theta_search_samples = *v;
  }
  spec.base = params_from_config(cfg, false);
  const auto unknown = cfg.unknown_keys();
  if (!unknown.empty()) {
    std::ostringstream os;
    os << cfg.origin() << ": unknown key(s):";
    for (const auto& k : unknown) os << " '" << k << "'";
    throw ConfigError(os.str());
  }
  return spec;
}

std::vector<Violation> validate_sweep(const SweepSpec& spec) {
  std::vector<Violation> out;
  if (spec.grid.empty()) {
    out.push_back({"grid", "must be nonempty"});
  }
  for (std::size_t i = 0; i + 1 < spec.grid.size(); ++i) {
    if (!(spec.grid[i] < spec.grid[i + 1])) {
      out.push_back({"grid", "must be strictly increasing"});
      break;
    }
  }
  for (double g : spec.grid) {
    if (!std::isfinite(g)) {
      out.push_back({"grid", "holds a non-finite value"});
      break;
    }
  }
  if (spec.schemes.empty()) {
    out.push_back({"schemes", "must list at least one scheme"});
  }
  if (spec.n_samples < 1000) {
    out.push_back({"n_samples", "must be at least 1000"});
  }
  if (spec.optimize_theta) {
    if (spec.metric != Metric::kEe) {
      out.push_back({"optimize_theta", "only meaningful for metric = EE"});
    }
    if (spec.swept == SweptVariable::kTheta) {
      out.push_back({"optimize_theta", "cannot combine with a theta sweep"});
    }
    if (spec.theta_search_samples < 1000) {
      out.push_back({"theta_search_samples", "must be at least 1000"});
    }
  }
  if (spec.analytic && spec.metric != Metric::kEsc) {
    out.push_back({"analytic", "closed-form overlay applies to ESC only"});
  }
  // Every grid point must yield a valid parameter set before anything runs.
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    SystemParams raw = spec.base;
    apply_swept(raw, spec.swept, spec.grid[i]);
    ValidationOutcome v = validate(raw);
    if (!v.ok()) {
      std::ostringstream os;
      os << "grid[" << i << "]=" << spec.grid[i] << ": " << v.describe();
      out.push_back({swept_variable_name(spec.swept), os.str()});
    }
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  const std::vector<Violation> violations = validate_sweep(spec);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid sweep:";
    for (const auto& v : violations) {
      os << " [" << v.field << ": " << v.message << "]";
    }
    throw std::invalid_argument(os.str());
  }

  SweepResult result;
  result.spec = spec;
  const SeedSpec seed{spec.seed};
  for (double gv : spec.grid) {
    SystemParams raw = spec.base;
    apply_swept(raw, spec.swept, gv);
    const ValidatedParams vp = validate_or_throw(raw);
    ComparisonTable table = compare_schemes(spec.schemes, vp, spec.n_samples,
                                            seed, spec.sinr_mode, workers);
    for (std::size_t i = 0; i < spec.schemes.size(); ++i) {
      const ReportEstimates& est = table.per_scheme[i];
      SweepRow row;
      row.swept_value = gv;
      row.scheme = scheme_name(spec.schemes[i]);
      row.metric = spec.metric;
      if (spec.metric == Metric::kEsc) {
        row.mean = est.c_sum.mean;
        row.std_error = est.c_sum.std_error;
      } else if (spec.base.ee_averaging == EeAveraging::kMeanOfRatios) {
        row.mean = est.ee.mean;
        row.std_error = est.ee.std_error;
      } else {
        row.mean = est.ergodic_ee;
        row.std_error = est.ergodic_ee_std_error;
      }
      if (spec.analytic && spec.metric == Metric::kEsc &&
          spec.schemes[i] == SchemeId::kCnomaIhs) {
        const double c1 = ergodic_c1_closed_form(vp);
        const C2ClosedForm c2 = ergodic_c2_closed_form(vp);
        row.analytic_c1 = c1;
        row.analytic_c2_printed = c2.as_printed;
        row.analytic_c2_oracle = c2.oracle;
        row.analytic_sum = c1 + c2.oracle;
      }
      result.rows.push_back(std::move(row));
    }
    if (spec.optimize_theta) {
      const ThetaStarResult ts =
          theta_star(vp, vp.lambda_s1, ThetaMethod::kGrid, SchemeId::kCnomaIhs,
                     spec.theta_search_samples, seed, spec.sinr_mode, workers);
      SystemParams opt_raw = raw;
      opt_raw.theta = ts.theta_star;
      const ValidatedParams opt = validate_or_throw(opt_raw);
      const ReportEstimates est = estimate(SchemeId::kCnomaIhs, opt,
                                           spec.n_samples, seed,
                                           spec.sinr_mode, workers);
      SweepRow row;
      row.swept_value = gv;
      row.scheme = "CNOMA_IHS_opt";
      row.metric = spec.metric;
      if (spec.base.ee_averaging == EeAveraging::kMeanOfRatios) {
        row.mean = est.ee.mean;
        row.std_error = est.ee.std_error;
      } else {
        row.mean = est.ergodic_ee;
        row.std_error = est.ergodic_ee_std_error;
      }
      result.rows.push_back(std::move(row));
    }
    result.tables.push_back(std::move(table));
  }
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << "swept_value,scheme,metric,mean,std_error";
  if (result.spec.analytic) {
    out << ",analytic_c1,analytic_c2_printed,analytic_c2_oracle,analytic_sum";
  }
  out << "\n";
  for (const SweepRow& row : result.rows) {
    out << fmt12(row.swept_value) << ',' << row.scheme << ','
        << metric_name(row.metric) << ',' << fmt12(row.mean) << ','
        << fmt12(row.std_error);
    if (result.spec.analytic) {
      auto cell = [&out](const std::optional<double>& v) {
        out << ',';
        if (v) out << fmt12(*v);
      };
      cell(row.analytic_c1);
      cell(row.analytic_c2_printed);
      cell(row.analytic_c2_oracle);
      cell(row.analytic_sum);
    }
    out << "\n";
  }
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  }
  emit_csv(result, out);
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + path + "': " + std::strerror(errno));
  }
}

namespace {

// Heckbert's loose tick labeling.
double nice_num(double x, bool round_to) {
  const double expv = std::floor(std::log10(x));
  const double f = x / std::pow(10.0, expv);
  double nf;
  if (round_to) {
    nf = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
  } else {
    nf = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
  }
  return nf * std::pow(10.0, expv);
}

struct Ticks {
  double lo, hi, step;
};

Ticks loose_ticks(double lo, double hi, int n) {
  if (!(hi > lo)) {
    const double pad = std::max(1e-12, std::fabs(lo) * 0.1 + 1e-12);
    lo -= pad;
    hi += pad;
  }
  const double range = nice_num(hi - lo, false);
  const double step = nice_num(range / (n - 1), true);
  return Ticks{std::floor(lo / step) * step, std::ceil(hi / step) * step,
               step};
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

}  // namespace

void emit_svg(const SweepResult& result, std::ostream& out) {
  // series = distinct scheme labels in row order (analytic overlay appended)
  std::vector<std::string> series;
  for (const SweepRow& row : result.rows) {
    if (std::find(series.begin(), series.end(), row.scheme) == series.end()) {
      series.push_back(row.scheme);
    }
  }
  const bool has_analytic =
      result.spec.analytic &&
      std::any_of(result.rows.begin(), result.rows.end(),
                  [](const SweepRow& r) { return r.analytic_sum.has_value(); });

  double xmin = result.spec.grid.front(), xmax = result.spec.grid.back();
  double ymin = 0.0, ymax = -1e300;
  bool y_init = false;
  for (const SweepRow& row : result.rows) {
    const double half = 1.96 * row.std_error;
    const double lo = row.mean - half, hi = row.mean + half;
    if (!y_init) {
      ymin = lo;
      ymax = hi;
      y_init = true;
    } else {
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
    if (row.analytic_sum) {
      ymin = std::min(ymin, *row.analytic_sum);
      ymax = std::max(ymax, *row.analytic_sum);
    }
  }
  const Ticks xt = loose_ticks(xmin, xmax, 6);
  const Ticks yt = loose_ticks(ymin, ymax, 6);

  const double W = 860, H = 520;
  const double L = 70, R = 650, T = 40, B = 470;
  auto sx = [&](double x) {
    return L + (x - xt.lo) / (xt.hi - xt.lo) * (R - L);
  };
  auto sy = [&](double y) {
    return B - (y - yt.lo) / (yt.hi - yt.lo) * (B - T);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (L + (R - L) / 2) << "\" y=\"24\" text-anchor"
      << "=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << result.spec.name << ": " << metric_name(result.spec.metric) << " vs "
      << swept_variable_name(result.spec.swept) << "</text>\n";

  // axes, grid lines, tick labels
  for (double v = yt.lo; v <= yt.hi + 1e-9 * yt.step; v += yt.step) {
    out << "<line x1=\"" << L << "\" y1=\"" << sy(v) << "\" x2=\"" << R
        << "\" y2=\"" << sy(v) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << (L - 8) << "\" y=\"" << (sy(v) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt6(v) << "</text>\n";
  }
  for (double v = xt.lo; v <= xt.hi + 1e-9 * xt.step; v += xt.step) {
    out << "<line x1=\"" << sx(v) << "\" y1=\"" << B << "\" x2=\"" << sx(v)
        << "\" y2=\"" << (B + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << sx(v) << "\" y=\"" << (B + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt6(v) << "</text>\n";
  }
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L
      << "\" y2=\"" << B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << B << "\" x2=\"" << R
      << "\" y2=\"" << B << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (L + (R - L) / 2) << "\" y=\"" << (H - 10)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << swept_variable_name(result.spec.swept) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (T + (B - T) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << (T + (B - T) / 2) << ")\">"
      << (result.spec.metric == Metric::kEsc
              ? "ergodic sum capacity (bits/s/Hz)"
              : "energy efficiency (bits/s/Hz/W)")
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    std::ostringstream pts;
    std::ostringstream marks;
    for (const SweepRow& row : result.rows) {
      if (row.scheme != series[s]) continue;
      const double x = sx(row.swept_value), y = sy(row.mean);
      pts << fmt6(x) << ',' << fmt6(y) << ' ';
      const double half = 1.96 * row.std_error;
      const double y0 = sy(row.mean - half), y1 = sy(row.mean + half);
      marks << "<line x1=\"" << fmt6(x) << "\" y1=\"" << fmt6(y0)
            << "\" x2=\"" << fmt6(x) << "\" y2=\"" << fmt6(y1)
            << "\" stroke=\"" << color << "\"/>\n";
      marks << "<line x1=\"" << fmt6(x - 3) << "\" y1=\"" << fmt6(y0)
            << "\" x2=\"" << fmt6(x + 3) << "\" y2=\"" << fmt6(y0)
            << "\" stroke=\"" << color << "\"/>\n";
      marks << "<line x1=\"" << fmt6(x - 3) << "\" y1=\"" << fmt6(y1)
            << "\" x2=\"" << fmt6(x + 3) << "\" y2=\"" << fmt6(y1)
            << "\" stroke=\"" << color << "\"/>\n";
      marks << "<circle cx=\"" << fmt6(x) << "\" cy=\"" << fmt6(y)
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
    out << marks.str();
    const double ly = T + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << (R + 14) << "\" y1=\"" << ly << "\" x2=\""
        << (R + 38) << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << (R + 44) << "\" y=\"" << (ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s]
        << "</text>\n";
  }

  if (has_analytic) {
    std::ostringstream pts;
    for (const SweepRow& row : result.rows) {
      if (!row.analytic_sum) continue;
      pts << fmt6(sx(row.swept_value)) << ',' << fmt6(sy(*row.analytic_sum))
          << ' ';
    }
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"6 4\" points=\""
        << pts.str() << "\"/>\n";
    const double ly = T + 18.0 * static_cast<double>(series.size());
    out << "<line x1=\"" << (R + 14) << "\" y1=\"" << ly << "\" x2=\""
        << (R + 38) << "\" y2=\"" << ly
        << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
    out << "<text x=\"" << (R + 44) << "\" y=\"" << (ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">closed form"
        << "</text>\n";
  }
  out << "</svg>\n";
}

void write_svg(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  }
  emit_svg(result, out);
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + path + "': " + std::strerror(errno));
  }
}

}  // namespace cnoma
