#pragma once

// Definition-level stability decision, kept independent of the library's
// checker: payoffs are recomputed from the salary matrix, quota satisfaction
// is tested arithmetically, and a blocking coalition is only reported after
// an explicit deviation salary vector has been constructed and verified to
// make every member weakly better off and one strictly.

#include <string>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch::testing {

struct OracleVerdict {
  bool stable = true;
  std::string reason;
};

inline bool oracle_set_allowed(const MarketInstance& inst, int firm,
                               const std::vector<bool>& members) {
  for (const QuotaEntry& entry : inst.constraints[firm].entries) {
    long long hit = 0;
    for (int w : entry.members)
      if (members[w]) ++hit;
    if (hit < entry.lower || hit > entry.upper) return false;
  }
  return true;
}

inline Rational oracle_firm_side_value(const MarketInstance& inst, int firm,
                                       const std::vector<bool>& members) {
  if (inst.mode == PreferenceMode::Linear) {
    Rational value(0);
    for (int w = 0; w < inst.num_workers(); ++w)
      if (members[w]) value += inst.firm_value[w][firm];
    return value;
  }
  std::vector<int> sorted;
  for (int w = 0; w < inst.num_workers(); ++w)
    if (members[w]) sorted.push_back(w);
  if (sorted.empty()) return Rational(0);
  return inst.general_values.at(sorted);
}

inline OracleVerdict oracle_check(const MarketInstance& inst, const Arrangement& arr,
                                  bool relaxed) {
  int nw = inst.num_workers();
  int nf = inst.num_firms();

  std::vector<Rational> u(nw, Rational(0));
  std::vector<Rational> v(nf, Rational(0));
  std::vector<std::vector<bool>> hired(nf, std::vector<bool>(nw, false));
  for (int w = 0; w < nw; ++w) {
    int f = arr.assignment.firm_of[w];
    if (f < 0) continue;
    hired[f][w] = true;
    u[w] = inst.worker_value[w][f] + arr.salary[f][w];
  }
  for (int f = 0; f < nf; ++f) {
    bool any = false;
    for (int w = 0; w < nw; ++w) any = any || hired[f][w];
    if (!any) continue;
    v[f] = oracle_firm_side_value(inst, f, hired[f]);
    for (int w = 0; w < nw; ++w)
      if (hired[f][w]) v[f] -= arr.salary[f][w];
  }

  for (int f = 0; f < nf; ++f) {
    bool empty = true;
    for (int w = 0; w < nw; ++w) empty = empty && !hired[f][w];
    if (empty && !relaxed) continue;
    if (!oracle_set_allowed(inst, f, hired[f]))
      return {false, "assignment violates quotas of firm " + inst.firms[f]};
  }

  for (int w = 0; w < nw; ++w)
    if (u[w] < 0) return {false, "worker " + inst.workers[w] + " would rather stay unmatched"};
  if (!relaxed)
    for (int f = 0; f < nf; ++f)
      if (v[f] < 0) return {false, "firm " + inst.firms[f] + " would rather stay unmatched"};

  for (int f = 0; f < nf; ++f) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nw); ++mask) {
      std::vector<bool> members(nw, false);
      std::vector<int> chosen;
      for (int w = 0; w < nw; ++w) {
        if (mask & (std::uint64_t{1} << w)) {
          members[w] = true;
          chosen.push_back(w);
        }
      }
      if (!oracle_set_allowed(inst, f, members)) continue;

      Rational pool = oracle_firm_side_value(inst, f, members);
      for (int w : chosen) pool += inst.worker_value[w][f];
      Rational held = v[f];
      for (int w : chosen) held += u[w];
      if (pool <= held) continue;

      // Construct the deviation explicitly and verify it member by member.
      Rational share = (pool - held) / Rational(static_cast<int>(chosen.size()) + 2);
      std::vector<Rational> offer(nw, Rational(0));
      for (int w : chosen) offer[w] = u[w] + share - inst.worker_value[w][f];
      Rational firm_after = oracle_firm_side_value(inst, f, members);
      for (int w : chosen) firm_after -= offer[w];
      bool genuine = firm_after > v[f];
      for (int w : chosen)
        genuine = genuine && inst.worker_value[w][f] + offer[w] > u[w];
      if (genuine)
        return {false, "firm " + inst.firms[f] + " can lure a coalition of " +
                           std::to_string(chosen.size()) + " workers"};
    }
  }
  return {};
}

}  // namespace quotamatch::testing
