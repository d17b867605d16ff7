#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace cnoma {

struct IntegrationResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace gk_detail {

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule
// on the even-indexed nodes. Values from the usual QUADPACK tables.
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

// One G7/K15 evaluation on [a,b] with the QUADPACK error inflation, which is
// deliberately pessimistic so that convergence is not declared off a fluke
// agreement between the two embedded rules.
template <typename F>
PanelEstimate evaluate_panel(F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(mid - half * kNodes[i]);
    fv[14 - i] = f(mid + half * kNodes[i]);
  }
  fv[7] = f(mid);

  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 7; ++i) {
    resk += kWeightsK[i] * (fv[i] + fv[14 - i]);
    resabs += kWeightsK[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
  }
  resk += kWeightsK[7] * fv[7];
  resabs += kWeightsK[7] * std::fabs(fv[7]);
  for (int i = 0; i < 3; ++i) {
    resg += kWeightsG[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  resg += kWeightsG[3] * fv[7];

  const double reskh = 0.5 * resk;
  double resasc = kWeightsK[7] * std::fabs(fv[7] - reskh);
  for (int i = 0; i < 7; ++i) {
    resasc += kWeightsK[i] *
              (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));
  }

  const double value = resk * half;
  double err = std::fabs((resk - resg) * half);
  resasc *= std::fabs(half);
  resabs *= std::fabs(half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
  return PanelEstimate{value, err};
}

struct Segment {
  double error;
  std::uint64_t seq;  // tie-break so the refinement order is deterministic
  double a, b;
  double value;
};

struct SegmentLess {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.seq > y.seq;
  }
};

}  // namespace gk_detail

// Adaptive bisection with the G7/K15 pair: the worst panel is split until the
// summed error estimate meets max(abs_tol, rel_tol * |integral|) or the panel
// budget runs out. Deterministic for a given integrand and tolerances.
template <typename F>
IntegrationResult adaptive_gauss_kronrod(F&& f, double a, double b,
                                         double abs_tol, double rel_tol,
                                         int max_panels = 20000) {
  using namespace gk_detail;
  IntegrationResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  std::priority_queue<Segment, std::vector<Segment>, SegmentLess> heap;
  std::uint64_t seq = 0;

  PanelEstimate first = evaluate_panel(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(Segment{first.error, seq++, a, b, first.value});
  out.panels = 1;

  const double min_width = 1e-300;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
         out.panels < max_panels) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < min_width) {
      // cannot split further; keep its contribution and give up on this panel
      total_err -= worst.error;
      heap.push(Segment{0.0, seq++, worst.a, worst.b, worst.value});
      if (heap.top().error == 0.0) break;
      continue;
    }
    PanelEstimate left = evaluate_panel(f, worst.a, mid);
    PanelEstimate right = evaluate_panel(f, mid, worst.b);
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(Segment{left.error, seq++, worst.a, mid, left.value});
    heap.push(Segment{right.error, seq++, mid, worst.b, right.value});
    out.panels += 2;
  }

  out.value = total;
  out.abs_error_estimate = total_err;
  out.converged =
      total_err <= std::max(abs_tol, rel_tol * std::fabs(total)) &&
      std::isfinite(total);
  return out;
}

}  // namespace cnoma
