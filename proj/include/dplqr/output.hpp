#pragma once

#include <string>
#include <vector>

#include "dplqr/bounds.hpp"
#include "dplqr/schedules.hpp"
#include "dplqr/sim.hpp"

namespace dplqr {

/// Long-format trace CSV: one row per (trial, t, agent). All numerics are
/// serialized with 15 significant digits. The file is written to a temporary
/// name and renamed into place on completion.
void write_trace_csv(const std::string& path, const SimConfig& cfg,
                     const std::vector<SimTrace>& traces);

std::string summary_json(const SimConfig& cfg, const ScheduleConstants& consts,
                         const GainTable& gains, const AssumptionReport& assumptions,
                         const BoundsReport& bounds, const MonteCarloSummary* mc,
                         const PrivacyLedger* ledger);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace dplqr
