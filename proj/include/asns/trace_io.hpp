#pragma once

#include <filesystem>
#include <string>

#include "asns/simulation.hpp"

namespace asns {

/// One row per (step, agent):
///   k,agent,epoch,role,flagged,x_1..x_n,sigma,hull_lo_1..n,hull_hi_1..n
std::string trace_csv(const SimTrace& t);
/// k,observer,flagged,residual
std::string flags_csv(const SimTrace& t);
/// k,attacker,receiver,magnitude
std::string lies_csv(const SimTrace& t);
/// Scenario name, outcome, convergence data, warnings and epoch records.
std::string summary_json(const SimTrace& t);

/// Writes trace.csv, flags.csv, lies.csv and summary.json into `dir`,
/// creating it if needed.
void write_trace(const SimTrace& t, const std::filesystem::path& dir);

/// 0 converged, 2 not converged or defense failure.
int exit_code(const SimSummary& s);

}  // namespace asns
