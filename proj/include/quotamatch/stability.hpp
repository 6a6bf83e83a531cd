#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch {

inline constexpr std::uint64_t kDefaultEnumCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultAssignCap = 10'000'000;

struct StabilityVerdict {
  enum class Failure { None, NotFeasible, WorkerIRViolated, FirmIRViolated, BlockingCoalition };

  bool stable = true;
  Failure failure = Failure::None;
  std::string detail;
  int worker = -1;              // WorkerIRViolated
  int firm = -1;                // FirmIRViolated / BlockingCoalition
  std::vector<int> coalition;   // BlockingCoalition
  Rational deficit;             // coalition value minus coalition payoff, > 0
};

/// Payoffs under an arrangement: matched workers get their value plus
/// salary, matched firms their coalition valuation minus salaries paid,
/// unmatched agents zero.
PayoffVector compute_payoffs(const MarketInstance& inst, const Arrangement& arr);

/// Sum of coalition values over matched firms; salary-independent.
Rational total_match_value(const MarketInstance& inst, const Assignment& assignment);

/// Stability check: feasible (a firm may be unmatched), individually
/// rational for workers and firms, and no firm plus feasible worker set is
/// worth more than its members' payoffs.  The first failure is reported.
StabilityVerdict check_stable(const MarketInstance& inst, const Arrangement& arr,
                              std::uint64_t enum_cap = kDefaultEnumCap);

/// Relaxed check: every firm's matched set must satisfy its quotas (an
/// unmatched firm passes only when the empty set does), firm individual
/// rationality is not required.
StabilityVerdict check_r_stable(const MarketInstance& inst, const Arrangement& arr,
                                std::uint64_t enum_cap = kDefaultEnumCap);

struct EfficientSet {
  Rational value;
  std::vector<Assignment> assignments;  // all maximizers, canonical order
  bool r_mode = false;
};

/// Exhaustive maximum of total match value over feasible (or r-feasible)
/// assignments.  Throws CapExceeded when (|F|+1)^|W| > cap and
/// NoFeasibleAssignment when r_mode finds no r-feasible assignment.
EfficientSet brute_force_efficient(const MarketInstance& inst, bool r_mode = false,
                                   std::uint64_t cap = kDefaultAssignCap);

bool check_efficient(const MarketInstance& inst, const Assignment& assignment, bool r_mode = false,
                     std::uint64_t cap = kDefaultAssignCap);

struct ExistenceVerdict {
  bool exists = false;
  std::optional<Arrangement> witness;
  /// Efficient assignments whose support systems were infeasible.
  std::vector<std::pair<Assignment, std::string>> obstructions;
};

/// Decides whether any stable arrangement exists: every stable arrangement's
/// assignment maximizes total match value, so it suffices to test, for each
/// brute-force maximizer, whether payoffs supporting it exist (a linear
/// feasibility system over u, v >= 0).
ExistenceVerdict stable_exists(const MarketInstance& inst,
                               std::uint64_t enum_cap = kDefaultEnumCap,
                               std::uint64_t assign_cap = kDefaultAssignCap);

/// All feasible sets (including the empty set) maximizing the firm's payoff
/// at the given prospective salaries; exact ties, canonical order.
std::vector<std::vector<int>> demand_correspondence(const MarketInstance& inst, int firm,
                                                    const std::vector<Rational>& salaries,
                                                    std::uint64_t enum_cap = kDefaultEnumCap);

struct SubstitutesVerdict {
  bool violated = false;
  std::vector<int> witness;  // demanded set whose other members get dropped
  std::vector<std::vector<int>> demand_before;
  std::vector<std::vector<int>> demand_after;
};

/// Checks the demand response to raising one worker's salary: a violation is
/// a demanded set D at the old salaries such that no new demanded set keeps
/// all of D except possibly the raised worker.  PreconditionError unless the
/// two salary vectors differ exactly in `worker` and the salary increased.
SubstitutesVerdict check_substitutes_violation(const MarketInstance& inst, int firm,
                                               const std::vector<Rational>& salaries,
                                               const std::vector<Rational>& raised, int worker,
                                               std::uint64_t enum_cap = kDefaultEnumCap);

}  // namespace quotamatch
