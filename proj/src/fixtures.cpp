#include "quotamatch/fixtures.hpp"

#include "quotamatch/assignment_lp.hpp"
#include "quotamatch/constraints.hpp"
#include "quotamatch/errors.hpp"
#include "quotamatch/lp.hpp"
#include "quotamatch/one_firm.hpp"
#include "quotamatch/stability.hpp"

namespace quotamatch {

namespace {

Rational rat(const char* text) { return parse_rational(text); }

std::vector<Rational> salary_vector(std::initializer_list<const char*> values) {
  std::vector<Rational> s;
  for (const char* v : values) s.push_back(rat(v));
  return s;
}

Arrangement one_firm_arrangement(const MarketInstance& inst, const std::vector<int>& matched,
                                 std::initializer_list<const char*> salaries) {
  Arrangement arr;
  arr.assignment.firm_of.assign(inst.workers.size(), Assignment::kUnmatched);
  for (int w : matched) arr.assignment.firm_of[w] = 0;
  arr.salary.assign(1, salary_vector(salaries));
  return arr;
}

Fixture make_example1() {
  Fixture fx;
  fx.name = "example1-substitutes";
  fx.description =
      "one firm, three workers, two overlapping pairwise caps; raising one "
      "salary evicts a worker from every optimal demand set";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1", "w2", "w3"],
    "firms": ["f"],
    "worker_values": {"w1": {"f": "-0.5"}, "w2": {"f": "-0.5"}, "w3": {"f": "-0.5"}},
    "firm_values": {"w1": {"f": "1.5"}, "w2": {"f": "2.5"}, "w3": {"f": "1.5"}},
    "constraints": {"f": [
      {"set": ["w1", "w2"], "upper": 1},
      {"set": ["w2", "w3"], "upper": 1}
    ]}
  })");
  fx.expectations.push_back(
      {"feasible sets are {}, {w1}, {w2}, {w3}, {w1,w3}", [](const MarketInstance& inst) {
         FeasibilityCollection fc = enumerate_feasible_sets(inst, 0);
         std::vector<std::vector<int>> expected = {{}, {0}, {1}, {2}, {0, 2}};
         return fc.sets == expected;
       }});
  fx.expectations.push_back(
      {"demand at salaries (0.5, 1, 0.5) is [{w1,w3}]", [](const MarketInstance& inst) {
         auto demand = demand_correspondence(inst, 0, salary_vector({"0.5", "1", "0.5"}));
         return demand == std::vector<std::vector<int>>{{0, 2}};
       }});
  fx.expectations.push_back(
      {"demand at salaries (1.1, 1, 0.5) is [{w2}]", [](const MarketInstance& inst) {
         auto demand = demand_correspondence(inst, 0, salary_vector({"1.1", "1", "0.5"}));
         return demand == std::vector<std::vector<int>>{{1}};
       }});
  fx.expectations.push_back(
      {"raising w1's salary 0.5 -> 1.1 drops w3 from the demand", [](const MarketInstance& inst) {
         auto verdict = check_substitutes_violation(inst, 0, salary_vector({"0.5", "1", "0.5"}),
                                                    salary_vector({"1.1", "1", "0.5"}), 0);
         return verdict.violated && verdict.witness == std::vector<int>{0, 2};
       }});
  return fx;
}

Fixture make_prop1() {
  Fixture fx;
  fx.name = "prop1-nonexistence";
  fx.description =
      "two firms, three workers, pairwise caps; the unique value-maximizing "
      "assignment admits no supporting payoffs, so no stable arrangement exists";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1", "w2", "w3"],
    "firms": ["f1", "f2"],
    "worker_values": {
      "w1": {"f1": "0", "f2": "0"},
      "w2": {"f1": "0", "f2": "0"},
      "w3": {"f1": "0", "f2": "0"}
    },
    "firm_values": {
      "w1": {"f1": "0.9", "f2": "0.8"},
      "w2": {"f1": "1.1", "f2": "1"},
      "w3": {"f1": "1", "f2": "1.1"}
    },
    "constraints": {
      "f1": [
        {"set": ["w1", "w2", "w3"], "upper": 2},
        {"set": ["w1", "w2"], "upper": 1},
        {"set": ["w2", "w3"], "upper": 1}
      ],
      "f2": [
        {"set": ["w1", "w2", "w3"], "upper": 2},
        {"set": ["w1", "w3"], "upper": 1},
        {"set": ["w2", "w3"], "upper": 1}
      ]
    }
  })");
  fx.expectations.push_back({"match value of (w2, f1) is 11/10", [](const MarketInstance& inst) {
                               return match_value(inst, 1, 0) == Rational(11, 10);
                             }});
  fx.expectations.push_back(
      {"maximum total match value is 29/10 with the unique assignment "
       "{w1->f1, w3->f1, w2->f2}",
       [](const MarketInstance& inst) {
         EfficientSet best = brute_force_efficient(inst);
         Assignment expected;
         expected.firm_of = {0, 1, 0};
         return best.value == Rational(29, 10) && best.assignments.size() == 1 &&
                best.assignments[0] == expected;
       }});
  fx.expectations.push_back({"no stable arrangement exists", [](const MarketInstance& inst) {
                               ExistenceVerdict verdict = stable_exists(inst);
                               return !verdict.exists && !verdict.obstructions.empty();
                             }});
  return fx;
}

Fixture make_example2() {
  Fixture fx;
  fx.name = "example2-hierarchy";
  fx.description =
      "one firm, four workers, nested-or-disjoint caps (at most two overall, "
      "at most one from each pair); the LP pipeline returns a stable outcome";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1", "w2", "w3", "w4"],
    "firms": ["f"],
    "worker_values": {
      "w1": {"f": "0.1"}, "w2": {"f": "0.2"}, "w3": {"f": "0.3"}, "w4": {"f": "0.4"}
    },
    "firm_values": {
      "w1": {"f": "0.9"}, "w2": {"f": "1.8"}, "w3": {"f": "2.7"}, "w4": {"f": "3.6"}
    },
    "constraints": {"f": [
      {"set": ["w1", "w2", "w3", "w4"], "upper": 2},
      {"set": ["w1", "w2"], "upper": 1},
      {"set": ["w3", "w4"], "upper": 1}
    ]}
  })");
  fx.expectations.push_back({"the family is a hierarchy", [](const MarketInstance& inst) {
                               return is_hierarchy(inst.constraints[0]).holds();
                             }});
  fx.expectations.push_back({"the quotas satisfy the polymatroid conditions",
                             [](const MarketInstance& inst) {
                               return is_polymatroid(inst.constraints[0]).holds();
                             }});
  fx.expectations.push_back(
      {"the LP pipeline yields an integral, stable, efficient outcome of value 6",
       [](const MarketInstance& inst) {
         PipelineResult result = solve_assignment(inst, false);
         if (!result.integral || !result.arrangement) return false;
         if (result.solution.objective_value != Rational(6)) return false;
         if (!check_stable(inst, *result.arrangement).stable) return false;
         return check_efficient(inst, *result.assignment);
       }});
  return fx;
}

Fixture make_b1() {
  Fixture fx;
  fx.name = "appB1-nonintegral";
  fx.description =
      "one firm, three workers, all three pairwise caps at one; the relaxed "
      "optimum is fractional at value 3/2 while the best integral value is 1";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1", "w2", "w3"],
    "firms": ["f"],
    "worker_values": {"w1": {"f": "0"}, "w2": {"f": "0"}, "w3": {"f": "0"}},
    "firm_values": {"w1": {"f": "1"}, "w2": {"f": "1"}, "w3": {"f": "1"}},
    "constraints": {"f": [
      {"set": ["w1", "w2"], "upper": 1},
      {"set": ["w2", "w3"], "upper": 1},
      {"set": ["w1", "w3"], "upper": 1}
    ]}
  })");
  fx.expectations.push_back(
      {"the relaxation peaks at 3/2 on the all-halves vertex", [](const MarketInstance& inst) {
         LpArtifacts art = build_ub_lp(inst);
         LpSolution sol = solve_lp(art.problem);
         if (sol.status != LpStatus::Optimal) return false;
         if (sol.objective_value != Rational(3, 2)) return false;
         Rational half(1, 2);
         return sol.primal == std::vector<Rational>{half, half, half} && !check_integral(sol);
       }});
  fx.expectations.push_back(
      {"no integral point matches the relaxed value, even after the vertex search",
       [](const MarketInstance& inst) {
         PipelineResult result = solve_assignment(inst, false);
         return !result.integral && result.fractional &&
                result.fractional->coordinates.size() == 3;
       }});
  fx.expectations.push_back({"the best integral assignment is worth 1", [](const MarketInstance& inst) {
                               return brute_force_efficient(inst).value == Rational(1);
                             }});
  return fx;
}

Fixture make_b2() {
  Fixture fx;
  fx.name = "appB2-nonunique";
  fx.description =
      "one worker at value 0.5 for the firm's 1, cap of two; the dual route "
      "prices the firm at zero, yet other salaries are also stable";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1"],
    "firms": ["f1"],
    "worker_values": {"w1": {"f1": "0.5"}},
    "firm_values": {"w1": {"f1": "1"}},
    "constraints": {"f1": [{"set": ["w1"], "upper": 2}]}
  })");
  fx.expectations.push_back(
      {"dual payoffs are u = 3/2, v = 0 with matched salary 1", [](const MarketInstance& inst) {
         PipelineResult result = solve_assignment(inst, false);
         if (!result.integral || !result.payoffs || !result.arrangement) return false;
         return result.payoffs->worker[0] == Rational(3, 2) && result.payoffs->firm[0] == 0 &&
                result.arrangement->salary[0][0] == Rational(1);
       }});
  fx.expectations.push_back(
      {"salary 1/2 is also stable, with firm payoff 1/2 off the dual route",
       [](const MarketInstance& inst) {
         Arrangement arr = one_firm_arrangement(inst, {0}, {"0.5"});
         PayoffVector payoffs = compute_payoffs(inst, arr);
         return payoffs.worker[0] == Rational(1) && payoffs.firm[0] == Rational(1, 2) &&
                check_stable(inst, arr).stable;
       }});
  return fx;
}

Fixture make_b3() {
  Fixture fx;
  fx.name = "appB3-ir-odds";
  fx.description =
      "one worker the firm must hire at a negative match value; the forced "
      "outcome is r-stable but not stable";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1"],
    "firms": ["f1"],
    "worker_values": {"w1": {"f1": "0"}},
    "firm_values": {"w1": {"f1": "-1"}},
    "constraints": {"f1": [{"set": ["w1"], "lower": 1, "upper": 1}]}
  })");
  fx.expectations.push_back({"hiring the worker is the only feasible set", [](const MarketInstance& inst) {
                               FeasibilityCollection fc = enumerate_feasible_sets(inst, 0);
                               return fc.sets == std::vector<std::vector<int>>{{0}};
                             }});
  fx.expectations.push_back(
      {"the lower-bound pipeline forces the match and prices the firm at -1",
       [](const MarketInstance& inst) {
         PipelineResult result = solve_assignment(inst, true);
         if (!result.integral || !result.payoffs) return false;
         if (result.solution.objective_value != Rational(-1)) return false;
         return result.payoffs->worker[0] == 0 && result.payoffs->firm[0] == Rational(-1);
       }});
  fx.expectations.push_back(
      {"salary 0 is r-stable but fails firm rationality", [](const MarketInstance& inst) {
         Arrangement arr = one_firm_arrangement(inst, {0}, {"0"});
         StabilityVerdict relaxed = check_r_stable(inst, arr);
         StabilityVerdict strict = check_stable(inst, arr);
         return relaxed.stable && !strict.stable &&
                strict.failure == StabilityVerdict::Failure::FirmIRViolated;
       }});
  return fx;
}

Fixture make_nonlattice() {
  Fixture fx;
  fx.name = "app-nonlattice";
  fx.description =
      "one firm must hire both workers; two stable salary profiles whose "
      "coordinatewise best payoffs sum past the total value, so they support "
      "no arrangement";
  fx.instance = parse_instance(R"({
    "version": 1,
    "mode": "linear",
    "workers": ["w1", "w2"],
    "firms": ["f1"],
    "worker_values": {"w1": {"f1": "0"}, "w2": {"f1": "0"}},
    "firm_values": {"w1": {"f1": "2.5"}, "w2": {"f1": "0.5"}},
    "constraints": {"f1": [{"set": ["w1", "w2"], "lower": 2, "upper": 2}]}
  })");
  fx.expectations.push_back(
      {"the lower-bound pipeline hires both workers at value 3", [](const MarketInstance& inst) {
         PipelineResult result = solve_assignment(inst, true);
         if (!result.integral || !result.assignment) return false;
         Assignment expected;
         expected.firm_of = {0, 0};
         return *result.assignment == expected && result.solution.objective_value == Rational(3);
       }});
  fx.expectations.push_back(
      {"salaries (1,1) and (2.5,0.5) are both stable", [](const MarketInstance& inst) {
         Arrangement a = one_firm_arrangement(inst, {0, 1}, {"1", "1"});
         Arrangement b = one_firm_arrangement(inst, {0, 1}, {"2.5", "0.5"});
         PayoffVector pa = compute_payoffs(inst, a);
         PayoffVector pb = compute_payoffs(inst, b);
         bool payoffs_ok = pa.worker == std::vector<Rational>{Rational(1), Rational(1)} &&
                           pa.firm[0] == Rational(1) &&
                           pb.worker == std::vector<Rational>{Rational(5, 2), Rational(1, 2)} &&
                           pb.firm[0] == 0;
         return payoffs_ok && check_stable(inst, a).stable && check_stable(inst, b).stable;
       }});
  fx.expectations.push_back(
      {"combining the best worker payoffs with the worst firm payoff breaks "
       "the payoff identity (2.5 + 1 + 0 != 3)",
       [](const MarketInstance& inst) {
         Assignment both;
         both.firm_of = {0, 0};
         Rational combined = Rational(5, 2) + Rational(1) + Rational(0);
         return combined != total_match_value(inst, both);
       }});
  return fx;
}

}  // namespace

Fixture load_fixture(const std::string& name) {
  if (name == "example1-substitutes") return make_example1();
  if (name == "prop1-nonexistence") return make_prop1();
  if (name == "example2-hierarchy") return make_example2();
  if (name == "appB1-nonintegral") return make_b1();
  if (name == "appB2-nonunique") return make_b2();
  if (name == "appB3-ir-odds") return make_b3();
  if (name == "app-nonlattice") return make_nonlattice();
  throw UnknownFixture("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"example1-substitutes", "prop1-nonexistence", "example2-hierarchy",
          "appB1-nonintegral",    "appB2-nonunique",    "appB3-ir-odds",
          "app-nonlattice"};
}

}  // namespace quotamatch
