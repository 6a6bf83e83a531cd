#pragma once

#include <cstdint>

#include "quotamatch/market.hpp"
#include "quotamatch/stability.hpp"

namespace quotamatch {

/// Stable arrangement for a single-firm market under arbitrary quotas and
/// either preference mode: pick the feasible set (or the empty set)
/// maximizing the coalition value, pay each hired worker exactly the salary
/// that cancels their own value, and price every other pair strictly below
/// acceptance.  Ties break to the canonically smallest set.  Throws
/// MultiFirmError unless the market has exactly one firm.
Arrangement solve_one_firm(const MarketInstance& inst, std::uint64_t enum_cap = kDefaultEnumCap);

}  // namespace quotamatch
