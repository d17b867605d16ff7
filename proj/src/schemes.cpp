#include "cnoma/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cnoma/energy.hpp"

namespace cnoma {

namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

// pf * log2(1 + gamma); log1p keeps small-SINR capacities accurate.
inline double capacity(double prefactor, double gamma) {
  return prefactor * std::log1p(gamma) * kInvLn2;
}

inline void finish(CapacityReport& r, SchemeId id, const ValidatedParams& p) {
  r.c_ue1 = r.c_x2 + r.c_x4;
  r.c_ue2 = r.c_x1 + r.c_x3;
  r.c_sum = r.c_ue1 + r.c_ue2;
  r.ee = r.c_sum / energy_denominator(id, p, r.relay_power);
}

}  // namespace

const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::kCnomaIhs: return "CNOMA_IHS";
    case SchemeId::kCnomaHs: return "CNOMA_HS";
    case SchemeId::kCnomaPs: return "CNOMA_PS";
    case SchemeId::kCnomaTs: return "CNOMA_TS";
    case SchemeId::kWpCnoma: return "WP_CNOMA";
    case SchemeId::kOmaIhs: return "OMA_IHS";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_name(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (name == scheme_name(id)) return id;
  }
  return std::nullopt;
}

CapacityReport eval_cnoma_ihs(const ValidatedParams& p,
                              const ChannelRealization& ch, SinrMode mode,
                              SinrBreakdown* sinr) {
  const double rho = p.rho;
  const double delta = p.raw.delta;
  const double beta = p.raw.beta;
  const double p_n = p.power.p_n;
  const double p_f = p.power.p_f;
  const double theta = p.raw.theta;
  const double pf3 = (1.0 - theta) / 3.0;

  const double g_x1 = rho * ch.g_s2;
  double g_x2 = (1.0 - delta) * rho * ch.g_s1 * p_n;
  if (mode == SinrMode::kAsPrinted) {
    g_x2 /= (1.0 - delta) + 1.0;
  }
  const double id_power = (1.0 - delta) * rho * ch.g_s1;
  const double g_x3_ue1 = id_power * p_f / (beta * beta * id_power * p_n + 1.0);
  const double g_x3_dir = rho * ch.g_s2 * p_f / (rho * ch.g_s2 * p_n + 1.0);
  const EnergyReport eh = harvested_energy(p, ch.g_s1);
  const double g_x3_rel = ch.g_12 * eh.p1;
  const double g_x4 = p_n * rho * ch.g_s1;

  CapacityReport r;
  r.c_x1 = capacity(theta, g_x1);
  r.c_x2 = capacity(pf3, g_x2);
  r.c_x3 = capacity(pf3, std::min({g_x3_ue1, g_x3_dir, g_x3_rel}));
  r.c_x4 = capacity(pf3, g_x4);
  r.relay_power = eh.p1;
  finish(r, SchemeId::kCnomaIhs, p);

  if (sinr) {
    sinr->x1 = g_x1;
    sinr->x2 = g_x2;
    sinr->x3_at_ue1 = g_x3_ue1;
    sinr->x3_direct = g_x3_dir;
    sinr->x3_relay = g_x3_rel;
    sinr->x4 = g_x4;
  }
  return r;
}

CapacityReport eval_oma_ihs(const ValidatedParams& p,
                            const ChannelRealization& ch,
                            SinrBreakdown* sinr) {
  const double rho = p.rho;
  const double delta = p.raw.delta;
  constexpr double kSlot = 1.0 / 6.0;

  const double g_x1 = rho * ch.g_s2;
  const double g_x2 = (1.0 - delta) * rho * ch.g_s1;
  const double g_x3_ue1 = (1.0 - delta) * rho * ch.g_s1;
  const EnergyReport eh = harvested_energy_oma(p, ch.g_s1);
  const double g_x3_rel = ch.g_12 * eh.p1;
  const double g_x4 = rho * ch.g_s1;

  CapacityReport r;
  r.c_x1 = capacity(kSlot, g_x1);
  r.c_x2 = capacity(kSlot, g_x2);
  r.c_x3 = capacity(kSlot, std::min(g_x3_ue1, g_x3_rel));
  r.c_x4 = capacity(kSlot, g_x4);
  r.relay_power = eh.p1;
  finish(r, SchemeId::kOmaIhs, p);

  if (sinr) {
    sinr->x1 = g_x1;
    sinr->x2 = g_x2;
    sinr->x3_at_ue1 = g_x3_ue1;
    sinr->x3_relay = g_x3_rel;
    sinr->x4 = g_x4;
  }
  return r;
}

CapacityReport eval_baseline(SchemeId id, const ValidatedParams& p,
                             const ChannelRealization& ch,
                             SinrBreakdown* sinr) {
  const double rho = p.rho;
  const double beta = p.raw.beta;
  const double p_n = p.power.p_n;
  const double p_f = p.power.p_f;
  const double theta = p.raw.theta;

  double delta_eff;  // splitting applied during the information phase
  double prefactor;
  switch (id) {
    case SchemeId::kCnomaHs:
      delta_eff = p.raw.delta;
      prefactor = (1.0 - theta) / 2.0;
      break;
    case SchemeId::kCnomaTs:
    case SchemeId::kWpCnoma:
      delta_eff = 0.0;
      prefactor = (1.0 - theta) / 2.0;
      break;
    case SchemeId::kCnomaPs:
      delta_eff = p.raw.delta;
      prefactor = 0.5;
      break;
    default:
      throw std::invalid_argument("not a two-phase baseline scheme");
  }

  const double id_power = (1.0 - delta_eff) * rho * ch.g_s1;
  const double g_x2 = id_power * p_n;
  const double g_x3_ue1 = id_power * p_f / (beta * beta * id_power * p_n + 1.0);
  const double g_x3_dir = rho * ch.g_s2 * p_f / (rho * ch.g_s2 * p_n + 1.0);
  const EnergyReport eh = harvested_energy_baseline(id, p, ch.g_s1);
  const double g_x3_rel = ch.g_12 * eh.p1;

  CapacityReport r;
  r.c_x2 = capacity(prefactor, g_x2);
  r.c_x3 = capacity(prefactor, std::min({g_x3_ue1, g_x3_dir, g_x3_rel}));
  r.relay_power = eh.p1;
  finish(r, id, p);

  if (sinr) {
    sinr->x2 = g_x2;
    sinr->x3_at_ue1 = g_x3_ue1;
    sinr->x3_direct = g_x3_dir;
    sinr->x3_relay = g_x3_rel;
  }
  return r;
}

CapacityReport eval_scheme(SchemeId id, const ValidatedParams& p,
                           const ChannelRealization& ch, SinrMode mode,
                           SinrBreakdown* sinr) {
  switch (id) {
    case SchemeId::kCnomaIhs: return eval_cnoma_ihs(p, ch, mode, sinr);
    case SchemeId::kOmaIhs: return eval_oma_ihs(p, ch, sinr);
    default: return eval_baseline(id, p, ch, sinr);
  }
}

}  // namespace cnoma
