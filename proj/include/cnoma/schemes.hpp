#pragma once

#include <optional>
#include <string_view>

#include "cnoma/channel.hpp"
#include "cnoma/params.hpp"

namespace cnoma {

enum class SchemeId {
  kCnomaIhs,  // proposed improved hybrid SWIPT cooperative NOMA
  kCnomaHs,   // hybrid TS+PS SWIPT, two-phase
  kCnomaPs,   // power-splitting only, two equal phases
  kCnomaTs,   // time-switching only
  kWpCnoma,   // wireless-powered relaying (dedicated power slot)
  kOmaIhs,    // six-slot orthogonal counterpart
};

inline constexpr SchemeId kAllSchemes[] = {
    SchemeId::kCnomaIhs, SchemeId::kCnomaHs, SchemeId::kCnomaPs,
    SchemeId::kCnomaTs,  SchemeId::kWpCnoma, SchemeId::kOmaIhs};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(std::string_view name);

// Convention for the near user's own-symbol SINR after SIC. The printed form
// carries an extra (1-delta)+1 normalization in the denominator; the theorem
// form is the plain (1-delta)*rho*|h_S1|^2*p_n that the closed-form ergodic
// analysis integrates. Default everywhere is the theorem form.
enum class SinrMode { kAsPrinted, kTheoremConsistent };

// Per-branch SINRs of one realization; fields a scheme does not use stay
// empty.
struct SinrBreakdown {
  std::optional<double> x1;         // far symbol, direct broadcast slot
  std::optional<double> x2;         // near user's own NOMA symbol
  std::optional<double> x3_at_ue1;  // far symbol decoded at the near user
  std::optional<double> x3_direct;  // far symbol at the far user, direct link
  std::optional<double> x3_relay;   // far symbol at the far user, relayed
  std::optional<double> x4;         // near user's dedicated slot
};

struct CapacityReport {
  double c_x1 = 0.0;
  double c_x2 = 0.0;
  double c_x3 = 0.0;
  double c_x4 = 0.0;
  double c_ue1 = 0.0;  // c_x2 + c_x4
  double c_ue2 = 0.0;  // c_x1 + c_x3
  double c_sum = 0.0;
  double relay_power = 0.0;  // P1 spent by the near user while relaying
  double ee = 0.0;           // per-realization c_sum / power denominator
};

CapacityReport eval_cnoma_ihs(const ValidatedParams& p,
                              const ChannelRealization& ch,
                              SinrMode mode = SinrMode::kTheoremConsistent,
                              SinrBreakdown* sinr = nullptr);

CapacityReport eval_oma_ihs(const ValidatedParams& p,
                            const ChannelRealization& ch,
                            SinrBreakdown* sinr = nullptr);

// The four reconstructed two-phase baselines (kCnomaHs, kCnomaPs, kCnomaTs,
// kWpCnoma). Throws std::invalid_argument for other ids.
CapacityReport eval_baseline(SchemeId id, const ValidatedParams& p,
                             const ChannelRealization& ch,
                             SinrBreakdown* sinr = nullptr);

// Dispatch on the scheme id; `mode` only affects kCnomaIhs.
CapacityReport eval_scheme(SchemeId id, const ValidatedParams& p,
                           const ChannelRealization& ch,
                           SinrMode mode = SinrMode::kTheoremConsistent,
                           SinrBreakdown* sinr = nullptr);

}  // namespace cnoma
