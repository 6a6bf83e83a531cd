#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "quotamatch/lp.hpp"
#include "quotamatch/market.hpp"

namespace quotamatch {

/// Assignment LP plus the bookkeeping needed to interpret its rows and
/// columns: one column per (worker, firm) pair, one allocation row per
/// worker, one upper-quota row per constraint entry and, in the lower-bound
/// build, one lower-quota row per entry with a positive floor.
struct LpArtifacts {
  LpProblem problem;
  int num_firms = 0;
  std::vector<int> alloc_row;                // [worker]
  std::vector<std::vector<int>> upper_row;   // [firm][entry]
  std::vector<std::vector<int>> lower_row;   // [firm][entry]; -1 when absent

  int var_of(int w, int f) const { return w * num_firms + f; }
};

/// Maximize total match value subject to per-worker allocation rows and
/// upper quotas only.  Throws ModeError outside Linear mode and
/// LowerBoundPresent when any lower quota is positive.
LpArtifacts build_ub_lp(const MarketInstance& inst);

/// As build_ub_lp plus a >= row for every entry with a positive lower quota.
LpArtifacts build_lb_lp(const MarketInstance& inst);

struct FractionalCoordinate {
  int worker = 0;
  int firm = 0;
  Rational value;
};

struct FractionalReport {
  std::vector<FractionalCoordinate> coordinates;
};

/// Reads an assignment out of an optimal solution when every coordinate is
/// exactly 0 or 1; otherwise attempts the integral vertex search (when
/// enabled) and reports the surviving fractional coordinates on failure.
std::variant<Assignment, FractionalReport> extract_assignment(const LpArtifacts& art,
                                                              const LpSolution& sol,
                                                              bool vertex_fallback = true,
                                                              int max_nodes = 4096);

/// Worker payoffs are the allocation-row duals; firm payoffs aggregate each
/// firm's quota-row duals weighted by the quotas.
PayoffVector dual_to_payoffs(const MarketInstance& inst, const LpArtifacts& art,
                             const LpSolution& sol);

/// Matched pairs get salary u_w - a_{w,f}; every unmatched pair gets the
/// sentinel -(max over all pairs of a) - 1, strictly below every -a.
/// Throws MismatchError when the payoffs are not derivable from the
/// assignment (nonzero payoff on an unmatched agent, or a matched firm whose
/// payoff differs from its coalition value minus its workers' payoffs).
Arrangement payoffs_to_salaries(const MarketInstance& inst, const Assignment& assignment,
                                const PayoffVector& payoffs);

/// Full pipeline: build (with or without lower-bound rows), solve, extract,
/// derive payoffs and salaries.  Throws NoFeasibleAssignment when the
/// lower-bound LP is infeasible.
struct PipelineResult {
  LpArtifacts artifacts;
  LpSolution solution;
  bool integral = false;
  std::optional<Assignment> assignment;
  std::optional<FractionalReport> fractional;
  std::optional<PayoffVector> payoffs;
  std::optional<Arrangement> arrangement;
};

PipelineResult solve_assignment(const MarketInstance& inst, bool with_lower_bounds,
                                bool vertex_fallback = true);

}  // namespace quotamatch
