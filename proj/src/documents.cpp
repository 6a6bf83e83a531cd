#include "quotamatch/documents.hpp"

#include <json.hpp>

#include "quotamatch/errors.hpp"

namespace quotamatch {

using nlohmann::ordered_json;

namespace {

ordered_json assignment_json(const MarketInstance& inst, const Assignment& assignment) {
  ordered_json node = ordered_json::object();
  for (int w = 0; w < inst.num_workers(); ++w) {
    int f = assignment.firm_of[w];
    if (f == Assignment::kUnmatched)
      node[inst.workers[w]] = nullptr;
    else
      node[inst.workers[w]] = inst.firms[f];
  }
  return node;
}

ordered_json salary_json(const MarketInstance& inst, const Arrangement& arr) {
  ordered_json node = ordered_json::object();
  for (int f = 0; f < inst.num_firms(); ++f) {
    ordered_json row = ordered_json::object();
    for (int w = 0; w < inst.num_workers(); ++w)
      row[inst.workers[w]] = to_string_exact(arr.salary[f][w]);
    node[inst.firms[f]] = std::move(row);
  }
  return node;
}

ordered_json payoff_json(const MarketInstance& inst, const PayoffVector& payoffs) {
  ordered_json node = ordered_json::object();
  ordered_json workers = ordered_json::object();
  for (int w = 0; w < inst.num_workers(); ++w)
    workers[inst.workers[w]] = to_string_exact(payoffs.worker[w]);
  ordered_json firms = ordered_json::object();
  for (int f = 0; f < inst.num_firms(); ++f)
    firms[inst.firms[f]] = to_string_exact(payoffs.firm[f]);
  node["workers"] = std::move(workers);
  node["firms"] = std::move(firms);
  return node;
}

ordered_json set_json(const MarketInstance& inst, const std::vector<int>& set) {
  ordered_json node = ordered_json::array();
  for (int w : set) node.push_back(inst.workers[w]);
  return node;
}

ordered_json verdict_json(const MarketInstance& inst, const StabilityVerdict& verdict) {
  ordered_json node;
  node["stable"] = verdict.stable;
  if (!verdict.stable) {
    ordered_json failure;
    switch (verdict.failure) {
      case StabilityVerdict::Failure::NotFeasible:
        failure["kind"] = "not_feasible";
        break;
      case StabilityVerdict::Failure::WorkerIRViolated:
        failure["kind"] = "worker_ir_violated";
        failure["worker"] = inst.workers[verdict.worker];
        break;
      case StabilityVerdict::Failure::FirmIRViolated:
        failure["kind"] = "firm_ir_violated";
        failure["firm"] = inst.firms[verdict.firm];
        break;
      case StabilityVerdict::Failure::BlockingCoalition:
        failure["kind"] = "blocking_coalition";
        failure["firm"] = inst.firms[verdict.firm];
        failure["set"] = set_json(inst, verdict.coalition);
        failure["deficit"] = to_string_exact(verdict.deficit);
        break;
      case StabilityVerdict::Failure::None:
        break;
    }
    failure["detail"] = verdict.detail;
    node["failure"] = std::move(failure);
  }
  return node;
}

ordered_json structure_json(const MarketInstance& inst, const StructureVerdict& verdict) {
  ordered_json node;
  switch (verdict.status) {
    case StructureStatus::Holds:
      node["status"] = "holds";
      break;
    case StructureStatus::Violated:
      node["status"] = "violated";
      break;
    case StructureStatus::Indeterminate:
      node["status"] = "indeterminate";
      break;
  }
  if (verdict.status != StructureStatus::Holds) {
    node["witness"] = ordered_json::array(
        {set_json(inst, verdict.witness_a), set_json(inst, verdict.witness_b)});
  }
  return node;
}

/// Stability, relaxed stability and efficiency of an arrangement; null when
/// the required enumeration exceeds its budget.
ordered_json flag_json(const MarketInstance& inst, const Arrangement& arr, bool integral,
                       bool r_mode, std::uint64_t enum_cap, std::uint64_t assign_cap) {
  ordered_json flags;
  flags["integral"] = integral;
  try {
    flags["stable"] = check_stable(inst, arr, enum_cap).stable;
  } catch (const CapExceeded&) {
    flags["stable"] = nullptr;
  }
  try {
    flags["r_stable"] = check_r_stable(inst, arr, enum_cap).stable;
  } catch (const CapExceeded&) {
    flags["r_stable"] = nullptr;
  }
  try {
    flags["efficient"] = check_efficient(inst, arr.assignment, r_mode, assign_cap);
  } catch (const CapExceeded&) {
    flags["efficient"] = nullptr;
  } catch (const NoFeasibleAssignment&) {
    flags["efficient"] = nullptr;
  }
  return flags;
}

std::string finish(ordered_json doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string solve_certificate(const MarketInstance& inst, const PipelineResult& result,
                              bool r_mode, std::uint64_t enum_cap, std::uint64_t assign_cap) {
  ordered_json doc;
  doc["kind"] = r_mode ? "solve-with-lower-bounds" : "solve";
  doc["objective"] = to_string_exact(result.solution.objective_value);

  if (result.integral) {
    doc["assignment"] = assignment_json(inst, *result.assignment);
    doc["salaries"] = salary_json(inst, *result.arrangement);
    doc["payoffs"] = payoff_json(inst, *result.payoffs);
  } else {
    ordered_json coords = ordered_json::array();
    for (const FractionalCoordinate& c : result.fractional->coordinates) {
      ordered_json node;
      node["worker"] = inst.workers[c.worker];
      node["firm"] = inst.firms[c.firm];
      node["value"] = to_string_exact(c.value);
      coords.push_back(std::move(node));
    }
    doc["fractional"] = std::move(coords);
  }

  ordered_json duals = ordered_json::object();
  for (std::size_t i = 0; i < result.artifacts.problem.rows.size(); ++i)
    duals[result.artifacts.problem.rows[i].label] = to_string_exact(result.solution.dual[i]);
  doc["dual_values"] = std::move(duals);

  if (result.integral) {
    doc["flags"] = flag_json(inst, *result.arrangement, true, r_mode, enum_cap, assign_cap);
  } else {
    ordered_json flags;
    flags["integral"] = false;
    flags["stable"] = false;
    flags["r_stable"] = false;
    flags["efficient"] = nullptr;
    doc["flags"] = std::move(flags);
  }
  return finish(std::move(doc));
}

std::string one_firm_certificate(const MarketInstance& inst, const Arrangement& arr,
                                 std::uint64_t enum_cap, std::uint64_t assign_cap) {
  ordered_json doc;
  doc["kind"] = "solve-one-firm";
  doc["objective"] = to_string_exact(total_match_value(inst, arr.assignment));
  doc["assignment"] = assignment_json(inst, arr.assignment);
  doc["salaries"] = salary_json(inst, arr);
  doc["payoffs"] = payoff_json(inst, compute_payoffs(inst, arr));
  doc["flags"] = flag_json(inst, arr, true, false, enum_cap, assign_cap);
  return finish(std::move(doc));
}

std::string check_report(const MarketInstance& inst, const StabilityVerdict& verdict,
                         const PayoffVector& payoffs, bool r_mode) {
  ordered_json doc;
  doc["kind"] = r_mode ? "check-r-stable" : "check-stable";
  ordered_json body = verdict_json(inst, verdict);
  for (auto& [key, value] : body.items()) doc[key] = value;
  doc["payoffs"] = payoff_json(inst, payoffs);
  return finish(std::move(doc));
}

std::string analyze_report(const MarketInstance& inst, std::uint64_t enum_cap) {
  ordered_json doc;
  doc["kind"] = "analyze";
  ordered_json firms = ordered_json::array();
  for (int f = 0; f < inst.num_firms(); ++f) {
    ordered_json node;
    node["firm"] = inst.firms[f];
    node["hierarchy"] = structure_json(inst, is_hierarchy(inst.constraints[f]));
    node["intersecting"] = structure_json(inst, is_intersecting_family(inst.constraints[f]));
    node["polymatroid"] = structure_json(inst, is_polymatroid(inst.constraints[f]));
    node["generalized_polymatroid"] =
        structure_json(inst, is_generalized_polymatroid(inst.constraints[f]));
    try {
      node["feasible_sets"] = enumerate_feasible_sets(inst, f, enum_cap).sets.size();
    } catch (const CapExceeded&) {
      node["feasible_sets"] = nullptr;
    }
    firms.push_back(std::move(node));
  }
  doc["firms"] = std::move(firms);
  return finish(std::move(doc));
}

std::string exists_report(const MarketInstance& inst, const ExistenceVerdict& verdict) {
  ordered_json doc;
  doc["kind"] = "exists";
  doc["exists"] = verdict.exists;
  if (verdict.witness) {
    ordered_json witness;
    witness["assignment"] = assignment_json(inst, verdict.witness->assignment);
    witness["salaries"] = salary_json(inst, *verdict.witness);
    witness["payoffs"] = payoff_json(inst, compute_payoffs(inst, *verdict.witness));
    doc["witness"] = std::move(witness);
  }
  if (!verdict.obstructions.empty()) {
    ordered_json obstructions = ordered_json::array();
    for (const auto& [assignment, reason] : verdict.obstructions) {
      ordered_json node;
      node["assignment"] = assignment_json(inst, assignment);
      node["reason"] = reason;
      obstructions.push_back(std::move(node));
    }
    doc["obstructions"] = std::move(obstructions);
  }
  return finish(std::move(doc));
}

std::string oracle_report(const MarketInstance& inst, const EfficientSet& result) {
  ordered_json doc;
  doc["kind"] = result.r_mode ? "oracle-r-feasible" : "oracle";
  doc["value"] = to_string_exact(result.value);
  ordered_json maximizers = ordered_json::array();
  for (const Assignment& assignment : result.assignments)
    maximizers.push_back(assignment_json(inst, assignment));
  doc["maximizers"] = std::move(maximizers);
  return finish(std::move(doc));
}

std::string demand_report(const MarketInstance& inst, int firm,
                          const std::vector<Rational>& salaries,
                          const std::vector<std::vector<int>>& demand) {
  ordered_json doc;
  doc["kind"] = "demand";
  doc["firm"] = inst.firms[firm];
  ordered_json salary_node = ordered_json::object();
  for (int w = 0; w < inst.num_workers(); ++w)
    salary_node[inst.workers[w]] = to_string_exact(salaries[w]);
  doc["salaries"] = std::move(salary_node);
  ordered_json sets = ordered_json::array();
  for (const std::vector<int>& set : demand) sets.push_back(set_json(inst, set));
  doc["demand"] = std::move(sets);
  return finish(std::move(doc));
}

}  // namespace quotamatch
