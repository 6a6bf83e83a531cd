#include "quotamatch/assignment_lp.hpp"

#include <stdexcept>

#include "quotamatch/errors.hpp"

namespace quotamatch {

namespace {

LpArtifacts build_assignment_lp(const MarketInstance& inst, bool with_lower_bounds) {
  if (inst.mode != PreferenceMode::Linear)
    throw ModeError("assignment LP requires linear preferences");

  int nw = inst.num_workers();
  int nf = inst.num_firms();

  LpArtifacts art;
  art.num_firms = nf;
  LpProblem& lp = art.problem;
  lp.objective.resize(static_cast<std::size_t>(nw) * nf);
  lp.variable_labels.resize(lp.objective.size());
  for (int w = 0; w < nw; ++w) {
    for (int f = 0; f < nf; ++f) {
      lp.objective[art.var_of(w, f)] = match_value(inst, w, f);
      lp.variable_labels[art.var_of(w, f)] = "x[" + inst.workers[w] + ":" + inst.firms[f] + "]";
    }
  }

  art.alloc_row.resize(nw);
  for (int w = 0; w < nw; ++w) {
    LpRow row;
    row.coeffs.assign(lp.objective.size(), Rational(0));
    for (int f = 0; f < nf; ++f) row.coeffs[art.var_of(w, f)] = 1;
    row.relation = Relation::LessEq;
    row.rhs = 1;
    row.label = "alloc[" + inst.workers[w] + "]";
    art.alloc_row[w] = static_cast<int>(lp.rows.size());
    lp.rows.push_back(std::move(row));
  }

  art.upper_row.resize(nf);
  art.lower_row.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const ConstraintFamily& family = inst.constraints[f];
    art.upper_row[f].assign(family.entries.size(), -1);
    art.lower_row[f].assign(family.entries.size(), -1);
    for (std::size_t e = 0; e < family.entries.size(); ++e) {
      if (!with_lower_bounds && family.entries[e].lower > 0)
        throw LowerBoundPresent("firm '" + inst.firms[f] +
                                "' has a positive lower quota; use the lower-bound build");
      LpRow row;
      row.coeffs.assign(lp.objective.size(), Rational(0));
      for (int w : family.entries[e].members) row.coeffs[art.var_of(w, f)] = 1;
      row.relation = Relation::LessEq;
      row.rhs = family.entries[e].upper;
      row.label = "ub[" + inst.firms[f] + "][" + set_label(inst, family.entries[e].members) + "]";
      art.upper_row[f][e] = static_cast<int>(lp.rows.size());
      lp.rows.push_back(std::move(row));
    }
  }
  if (with_lower_bounds) {
    for (int f = 0; f < nf; ++f) {
      const ConstraintFamily& family = inst.constraints[f];
      for (std::size_t e = 0; e < family.entries.size(); ++e) {
        if (family.entries[e].lower <= 0) continue;
        LpRow row;
        row.coeffs.assign(lp.objective.size(), Rational(0));
        for (int w : family.entries[e].members) row.coeffs[art.var_of(w, f)] = 1;
        row.relation = Relation::GreaterEq;
        row.rhs = family.entries[e].lower;
        row.label = "lb[" + inst.firms[f] + "][" + set_label(inst, family.entries[e].members) + "]";
        art.lower_row[f][e] = static_cast<int>(lp.rows.size());
        lp.rows.push_back(std::move(row));
      }
    }
  }
  return art;
}

}  // namespace

LpArtifacts build_ub_lp(const MarketInstance& inst) { return build_assignment_lp(inst, false); }

LpArtifacts build_lb_lp(const MarketInstance& inst) { return build_assignment_lp(inst, true); }

std::variant<Assignment, FractionalReport> extract_assignment(const LpArtifacts& art,
                                                              const LpSolution& sol,
                                                              bool vertex_fallback, int max_nodes) {
  if (sol.status != LpStatus::Optimal)
    throw StatusError("extract_assignment requires an optimal solution");

  const LpSolution* chosen = &sol;
  std::optional<LpSolution> repaired;
  if (!check_integral(sol) && vertex_fallback) {
    repaired = integral_vertex_search(art.problem, sol, max_nodes);
    if (repaired) chosen = &*repaired;
  }

  int nf = art.num_firms;
  int nw = nf > 0 ? static_cast<int>(chosen->primal.size()) / nf : 0;
  FractionalReport report;
  Assignment assignment;
  assignment.firm_of.assign(nw, Assignment::kUnmatched);
  for (int w = 0; w < nw; ++w) {
    for (int f = 0; f < nf; ++f) {
      const Rational& x = chosen->primal[art.var_of(w, f)];
      if (x == 0) continue;
      if (x == 1)
        assignment.firm_of[w] = f;
      else
        report.coordinates.push_back({w, f, x});
    }
  }
  if (!report.coordinates.empty()) return report;
  return assignment;
}

PayoffVector dual_to_payoffs(const MarketInstance& inst, const LpArtifacts& art,
                             const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal)
    throw StatusError("dual_to_payoffs requires an optimal solution");

  PayoffVector payoffs;
  payoffs.worker.resize(inst.workers.size());
  payoffs.firm.assign(inst.firms.size(), Rational(0));
  for (int w = 0; w < inst.num_workers(); ++w) payoffs.worker[w] = sol.dual[art.alloc_row[w]];
  for (int f = 0; f < inst.num_firms(); ++f) {
    const ConstraintFamily& family = inst.constraints[f];
    for (std::size_t e = 0; e < family.entries.size(); ++e) {
      payoffs.firm[f] += sol.dual[art.upper_row[f][e]] * family.entries[e].upper;
      if (art.lower_row[f][e] >= 0)
        payoffs.firm[f] += sol.dual[art.lower_row[f][e]] * family.entries[e].lower;
    }
  }
  return payoffs;
}

Arrangement payoffs_to_salaries(const MarketInstance& inst, const Assignment& assignment,
                                const PayoffVector& payoffs) {
  for (int w = 0; w < inst.num_workers(); ++w)
    if (assignment.firm_of[w] == Assignment::kUnmatched && payoffs.worker[w] != 0)
      throw MismatchError("unmatched worker '" + inst.workers[w] + "' has a nonzero payoff");
  for (int f = 0; f < inst.num_firms(); ++f) {
    std::vector<int> matched = assignment.matched_set(f);
    if (matched.empty()) {
      if (payoffs.firm[f] != 0)
        throw MismatchError("unmatched firm '" + inst.firms[f] + "' has a nonzero payoff");
      continue;
    }
    Rational expected = coalition_value(inst, f, matched);
    for (int w : matched) expected -= payoffs.worker[w];
    if (payoffs.firm[f] != expected)
      throw MismatchError("payoffs for firm '" + inst.firms[f] +
                          "' are not derivable from the assignment");
  }

  Rational sentinel(0);
  bool first = true;
  for (int w = 0; w < inst.num_workers(); ++w) {
    for (int f = 0; f < inst.num_firms(); ++f) {
      if (first || inst.worker_value[w][f] > sentinel) {
        sentinel = inst.worker_value[w][f];
        first = false;
      }
    }
  }
  sentinel = -sentinel - 1;

  Arrangement arr;
  arr.assignment = assignment;
  arr.salary.assign(inst.firms.size(), std::vector<Rational>(inst.workers.size(), sentinel));
  for (int w = 0; w < inst.num_workers(); ++w) {
    int f = assignment.firm_of[w];
    if (f == Assignment::kUnmatched) continue;
    arr.salary[f][w] = payoffs.worker[w] - inst.worker_value[w][f];
  }
  return arr;
}

PipelineResult solve_assignment(const MarketInstance& inst, bool with_lower_bounds,
                                bool vertex_fallback) {
  PipelineResult result;
  result.artifacts = with_lower_bounds ? build_lb_lp(inst) : build_ub_lp(inst);
  result.solution = solve_lp(result.artifacts.problem);
  if (result.solution.status == LpStatus::Infeasible) {
    if (with_lower_bounds)
      throw NoFeasibleAssignment("the lower quotas admit no feasible assignment");
    throw std::logic_error("upper-bound assignment LP cannot be infeasible");
  }
  if (result.solution.status == LpStatus::Unbounded)
    throw std::logic_error("assignment LP cannot be unbounded");

  auto extracted = extract_assignment(result.artifacts, result.solution, vertex_fallback);
  if (auto* assignment = std::get_if<Assignment>(&extracted)) {
    result.integral = true;
    result.assignment = *assignment;
    // Replace the primal so downstream consumers see the integral optimum;
    // the duals stay valid for it.
    for (int w = 0; w < inst.num_workers(); ++w)
      for (int f = 0; f < inst.num_firms(); ++f)
        result.solution.primal[result.artifacts.var_of(w, f)] =
            assignment->firm_of[w] == f ? 1 : 0;
    result.payoffs = dual_to_payoffs(inst, result.artifacts, result.solution);
    result.arrangement = payoffs_to_salaries(inst, *assignment, *result.payoffs);
  } else {
    result.integral = false;
    result.fractional = std::get<FractionalReport>(extracted);
  }
  return result;
}

}  // namespace quotamatch
