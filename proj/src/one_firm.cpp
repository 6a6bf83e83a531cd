#include "quotamatch/one_firm.hpp"

#include "quotamatch/constraints.hpp"
#include "quotamatch/errors.hpp"

namespace quotamatch {

Arrangement solve_one_firm(const MarketInstance& inst, std::uint64_t enum_cap) {
  if (inst.num_firms() != 1)
    throw MultiFirmError("the one-firm construction requires exactly one firm");

  FeasibilityCollection feasible = enumerate_feasible_sets(inst, 0, enum_cap);
  std::vector<int> best;  // the empty set is always a candidate, value 0
  Rational best_value(0);
  for (const std::vector<int>& set : feasible.sets) {
    if (set.empty()) continue;
    Rational value = coalition_value(inst, 0, set);
    if (value > best_value) {
      best_value = value;
      best = set;
    }
  }

  Arrangement arr;
  arr.assignment.firm_of.assign(inst.workers.size(), Assignment::kUnmatched);
  arr.salary.assign(1, std::vector<Rational>(inst.workers.size()));
  for (int w = 0; w < inst.num_workers(); ++w)
    arr.salary[0][w] = -inst.worker_value[w][0] - 1;
  for (int w : best) {
    arr.assignment.firm_of[w] = 0;
    arr.salary[0][w] = -inst.worker_value[w][0];
  }
  return arr;
}

}  // namespace quotamatch
