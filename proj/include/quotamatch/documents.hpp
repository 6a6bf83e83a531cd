#pragma once

#include <optional>
#include <string>

#include "quotamatch/assignment_lp.hpp"
#include "quotamatch/constraints.hpp"
#include "quotamatch/market.hpp"
#include "quotamatch/stability.hpp"

namespace quotamatch {

/// Output documents are deterministic: fixed key order, canonical numerals,
/// identical input produces byte-identical text.

/// Certificate for a solved instance: assignment, salary matrix, payoffs,
/// objective, duals keyed by row label, verdict flags.  Flags that would
/// exceed an enumeration budget are emitted as null.
std::string solve_certificate(const MarketInstance& inst, const PipelineResult& result,
                              bool r_mode, std::uint64_t enum_cap, std::uint64_t assign_cap);

/// Certificate for the one-firm construction (no LP section).
std::string one_firm_certificate(const MarketInstance& inst, const Arrangement& arr,
                                 std::uint64_t enum_cap, std::uint64_t assign_cap);

std::string check_report(const MarketInstance& inst, const StabilityVerdict& verdict,
                         const PayoffVector& payoffs, bool r_mode);

std::string analyze_report(const MarketInstance& inst, std::uint64_t enum_cap);

std::string exists_report(const MarketInstance& inst, const ExistenceVerdict& verdict);

std::string oracle_report(const MarketInstance& inst, const EfficientSet& result);

std::string demand_report(const MarketInstance& inst, int firm,
                          const std::vector<Rational>& salaries,
                          const std::vector<std::vector<int>>& demand);

}  // namespace quotamatch
