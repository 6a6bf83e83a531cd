#include "quotamatch/stability.hpp"

#include <algorithm>

#include "quotamatch/assignment_lp.hpp"
#include "quotamatch/constraints.hpp"
#include "quotamatch/errors.hpp"
#include "quotamatch/lp.hpp"
#include "quotamatch/setops.hpp"

namespace quotamatch {

namespace {

bool assignment_less(const Assignment& a, const Assignment& b) { return a.firm_of < b.firm_of; }

StabilityVerdict check_arrangement(const MarketInstance& inst, const Arrangement& arr,
                                   bool relaxed, std::uint64_t enum_cap) {
  StabilityVerdict verdict;
  PayoffVector payoffs = compute_payoffs(inst, arr);

  for (int f = 0; f < inst.num_firms(); ++f) {
    std::vector<int> matched = arr.assignment.matched_set(f);
    bool ok = matched.empty() && !relaxed ? true : satisfies_family(inst.constraints[f], matched);
    if (!ok) {
      verdict.stable = false;
      verdict.failure = StabilityVerdict::Failure::NotFeasible;
      verdict.firm = f;
      verdict.detail = "firm '" + inst.firms[f] + "' is matched with " + set_label(inst, matched) +
                       ", which violates its quotas";
      return verdict;
    }
  }

  for (int w = 0; w < inst.num_workers(); ++w) {
    if (payoffs.worker[w] < 0) {
      verdict.stable = false;
      verdict.failure = StabilityVerdict::Failure::WorkerIRViolated;
      verdict.worker = w;
      verdict.detail = "worker '" + inst.workers[w] + "' has negative payoff " +
                       to_string_exact(payoffs.worker[w]);
      return verdict;
    }
  }
  if (!relaxed) {
    for (int f = 0; f < inst.num_firms(); ++f) {
      if (payoffs.firm[f] < 0) {
        verdict.stable = false;
        verdict.failure = StabilityVerdict::Failure::FirmIRViolated;
        verdict.firm = f;
        verdict.detail = "firm '" + inst.firms[f] + "' has negative payoff " +
                         to_string_exact(payoffs.firm[f]);
        return verdict;
      }
    }
  }

  for (int f = 0; f < inst.num_firms(); ++f) {
    FeasibilityCollection feasible = enumerate_feasible_sets(inst, f, enum_cap);
    for (const std::vector<int>& coalition : feasible.sets) {
      Rational value = coalition_value(inst, f, coalition);
      Rational payoff = payoffs.firm[f];
      for (int w : coalition) payoff += payoffs.worker[w];
      if (payoff < value) {
        verdict.stable = false;
        verdict.failure = StabilityVerdict::Failure::BlockingCoalition;
        verdict.firm = f;
        verdict.coalition = coalition;
        verdict.deficit = value - payoff;
        verdict.detail = "firm '" + inst.firms[f] + "' and " + set_label(inst, coalition) +
                         " gain " + to_string_exact(verdict.deficit) + " by deviating";
        return verdict;
      }
    }
  }
  return verdict;
}

bool assignment_feasible(const MarketInstance& inst, const Assignment& assignment, bool r_mode) {
  for (int f = 0; f < inst.num_firms(); ++f) {
    std::vector<int> matched = assignment.matched_set(f);
    if (matched.empty() && !r_mode) continue;
    if (!satisfies_family(inst.constraints[f], matched)) return false;
  }
  return true;
}

}  // namespace

PayoffVector compute_payoffs(const MarketInstance& inst, const Arrangement& arr) {
  PayoffVector payoffs;
  payoffs.worker.assign(inst.workers.size(), Rational(0));
  payoffs.firm.assign(inst.firms.size(), Rational(0));
  for (int w = 0; w < inst.num_workers(); ++w) {
    int f = arr.assignment.firm_of[w];
    if (f == Assignment::kUnmatched) continue;
    payoffs.worker[w] = inst.worker_value[w][f] + arr.salary[f][w];
  }
  for (int f = 0; f < inst.num_firms(); ++f) {
    std::vector<int> matched = arr.assignment.matched_set(f);
    if (matched.empty()) continue;
    Rational value = coalition_value(inst, f, matched);
    for (int w : matched) value -= inst.worker_value[w][f];  // firm-side value only
    for (int w : matched) value -= arr.salary[f][w];
    payoffs.firm[f] = value;
  }
  return payoffs;
}

Rational total_match_value(const MarketInstance& inst, const Assignment& assignment) {
  Rational total(0);
  for (int f = 0; f < inst.num_firms(); ++f) {
    std::vector<int> matched = assignment.matched_set(f);
    if (!matched.empty()) total += coalition_value(inst, f, matched);
  }
  return total;
}

StabilityVerdict check_stable(const MarketInstance& inst, const Arrangement& arr,
                              std::uint64_t enum_cap) {
  return check_arrangement(inst, arr, false, enum_cap);
}

StabilityVerdict check_r_stable(const MarketInstance& inst, const Arrangement& arr,
                                std::uint64_t enum_cap) {
  return check_arrangement(inst, arr, true, enum_cap);
}

EfficientSet brute_force_efficient(const MarketInstance& inst, bool r_mode, std::uint64_t cap) {
  int nw = inst.num_workers();
  std::uint64_t options = static_cast<std::uint64_t>(inst.num_firms()) + 1;
  std::uint64_t count = 1;
  for (int w = 0; w < nw; ++w) {
    if (count > cap / options)
      throw CapExceeded("assignment enumeration exceeds the budget");
    count *= options;
  }

  EfficientSet best;
  best.r_mode = r_mode;
  bool found = false;
  Assignment current;
  current.firm_of.assign(nw, Assignment::kUnmatched);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (int w = 0; w < nw; ++w) {
      current.firm_of[w] = static_cast<int>(rest % options) - 1;
      rest /= options;
    }
    if (!assignment_feasible(inst, current, r_mode)) continue;
    Rational value = total_match_value(inst, current);
    if (!found || value > best.value) {
      found = true;
      best.value = value;
      best.assignments.clear();
      best.assignments.push_back(current);
    } else if (value == best.value) {
      best.assignments.push_back(current);
    }
  }
  if (!found) throw NoFeasibleAssignment("no assignment satisfies every firm's quotas");
  std::sort(best.assignments.begin(), best.assignments.end(), assignment_less);
  return best;
}

bool check_efficient(const MarketInstance& inst, const Assignment& assignment, bool r_mode,
                     std::uint64_t cap) {
  EfficientSet best = brute_force_efficient(inst, r_mode, cap);
  return total_match_value(inst, assignment) == best.value;
}

ExistenceVerdict stable_exists(const MarketInstance& inst, std::uint64_t enum_cap,
                               std::uint64_t assign_cap) {
  ExistenceVerdict verdict;
  EfficientSet efficient = brute_force_efficient(inst, false, assign_cap);

  std::vector<FeasibilityCollection> feasible;
  feasible.reserve(inst.firms.size());
  for (int f = 0; f < inst.num_firms(); ++f)
    feasible.push_back(enumerate_feasible_sets(inst, f, enum_cap));

  for (const Assignment& assignment : efficient.assignments) {
    // Support system: payoffs u, v >= 0 with each matched coalition's payoff
    // pinned to its value, unmatched agents pinned to zero, and every
    // feasible coalition weakly dominated.
    int nw = inst.num_workers();
    int nf = inst.num_firms();
    LpProblem lp;
    lp.objective.assign(static_cast<std::size_t>(nw) + nf, Rational(0));
    auto u_var = [&](int w) { return w; };
    auto v_var = [&](int f) { return nw + f; };

    for (int f = 0; f < nf; ++f) {
      std::vector<int> matched = assignment.matched_set(f);
      LpRow row;
      row.coeffs.assign(lp.objective.size(), Rational(0));
      row.relation = Relation::Equal;
      row.coeffs[v_var(f)] = 1;
      if (matched.empty()) {
        row.rhs = 0;
        row.label = "unmatched[" + inst.firms[f] + "]";
      } else {
        for (int w : matched) row.coeffs[u_var(w)] = 1;
        row.rhs = coalition_value(inst, f, matched);
        row.label = "support[" + inst.firms[f] + "]";
      }
      lp.rows.push_back(std::move(row));
    }
    for (int w = 0; w < nw; ++w) {
      if (assignment.firm_of[w] != Assignment::kUnmatched) continue;
      LpRow row;
      row.coeffs.assign(lp.objective.size(), Rational(0));
      row.coeffs[u_var(w)] = 1;
      row.relation = Relation::Equal;
      row.rhs = 0;
      row.label = "unmatched[" + inst.workers[w] + "]";
      lp.rows.push_back(std::move(row));
    }
    for (int f = 0; f < nf; ++f) {
      for (const std::vector<int>& coalition : feasible[f].sets) {
        if (coalition.empty()) continue;  // v_f >= 0 is the variable bound
        LpRow row;
        row.coeffs.assign(lp.objective.size(), Rational(0));
        for (int w : coalition) row.coeffs[u_var(w)] = 1;
        row.coeffs[v_var(f)] = 1;
        row.relation = Relation::GreaterEq;
        row.rhs = coalition_value(inst, f, coalition);
        row.label = "coalition[" + inst.firms[f] + "][" + set_label(inst, coalition) + "]";
        lp.rows.push_back(std::move(row));
      }
    }

    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
      verdict.obstructions.emplace_back(assignment, "support system is infeasible");
      continue;
    }
    PayoffVector payoffs;
    payoffs.worker.assign(sol.primal.begin(), sol.primal.begin() + nw);
    payoffs.firm.assign(sol.primal.begin() + nw, sol.primal.end());
    verdict.exists = true;
    verdict.witness = payoffs_to_salaries(inst, assignment, payoffs);
    return verdict;
  }
  return verdict;
}

std::vector<std::vector<int>> demand_correspondence(const MarketInstance& inst, int firm,
                                                    const std::vector<Rational>& salaries,
                                                    std::uint64_t enum_cap) {
  if (static_cast<int>(salaries.size()) != inst.num_workers())
    throw DimensionMismatch("salary vector must cover every worker");

  auto firm_payoff = [&](const std::vector<int>& set) {
    Rational value = coalition_value(inst, firm, set);
    for (int w : set) value -= inst.worker_value[w][firm];  // firm-side value only
    for (int w : set) value -= salaries[w];
    return value;
  };

  FeasibilityCollection feasible = enumerate_feasible_sets(inst, firm, enum_cap);
  std::vector<std::vector<int>> candidates = feasible.sets;
  if (candidates.empty() || !candidates.front().empty())
    candidates.insert(candidates.begin(), std::vector<int>{});

  std::vector<std::vector<int>> demand;
  Rational best;
  bool first = true;
  for (const std::vector<int>& set : candidates) {
    Rational value = firm_payoff(set);
    if (first || value > best) {
      first = false;
      best = value;
      demand.clear();
      demand.push_back(set);
    } else if (value == best) {
      demand.push_back(set);
    }
  }
  return demand;  // candidates are already in canonical order
}

SubstitutesVerdict check_substitutes_violation(const MarketInstance& inst, int firm,
                                               const std::vector<Rational>& salaries,
                                               const std::vector<Rational>& raised, int worker,
                                               std::uint64_t enum_cap) {
  if (salaries.size() != raised.size())
    throw PreconditionError("salary vectors must have equal length");
  if (worker < 0 || worker >= static_cast<int>(salaries.size()))
    throw PreconditionError("raised worker is out of range");
  for (int w = 0; w < static_cast<int>(salaries.size()); ++w) {
    if (w == worker) continue;
    if (salaries[w] != raised[w])
      throw PreconditionError("salary vectors differ outside the raised worker");
  }
  if (raised[worker] <= salaries[worker])
    throw PreconditionError("the raised worker's salary must strictly increase");

  SubstitutesVerdict verdict;
  verdict.demand_before = demand_correspondence(inst, firm, salaries, enum_cap);
  verdict.demand_after = demand_correspondence(inst, firm, raised, enum_cap);
  for (const std::vector<int>& before : verdict.demand_before) {
    std::vector<int> kept = before;
    kept.erase(std::remove(kept.begin(), kept.end(), worker), kept.end());
    bool retained = false;
    for (const std::vector<int>& after : verdict.demand_after) {
      if (is_subset(kept, after)) {
        retained = true;
        break;
      }
    }
    if (!retained) {
      verdict.violated = true;
      verdict.witness = before;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace quotamatch
