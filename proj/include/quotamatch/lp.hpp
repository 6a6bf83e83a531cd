#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quotamatch/rational.hpp"

namespace quotamatch {

enum class Relation { LessEq, GreaterEq, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
  std::string label;
};

/// Maximization problem in inequality form.  Variables are non-negative
/// unless listed in free_vars (lower bound -inf).
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<bool> free_vars;  // empty means all bounded below by 0
  std::vector<std::string> variable_labels;

  int num_vars() const { return static_cast<int>(objective.size()); }
  bool is_free(int var) const { return var < static_cast<int>(free_vars.size()) && free_vars[var]; }
};

/// Exact basic optimum.  Duals are signed per row relation: >= 0 for <=
/// rows, <= 0 for >= rows, free for = rows.  On Optimal results strong
/// duality holds with rational equality.  basis lists the basic columns of
/// the final tableau: values < num_vars are structural variables, num_vars+i
/// is the slack/surplus of row i (meaningful when no variable is free).
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective_value;
  std::vector<int> basis;
};

/// Two-phase primal simplex over exact rationals with Bland's anti-cycling
/// rule; deterministic for identical input.  Throws DimensionMismatch when a
/// row's width differs from the objective's.
LpSolution solve_lp(const LpProblem& problem);

/// True iff every primal coordinate is an integer.  StatusError unless
/// Optimal.
bool check_integral(const LpSolution& solution);

/// Independent audit: every row with a nonzero dual is tight, and every
/// variable with a nonzero value has zero reduced cost.  StatusError unless
/// Optimal.
bool check_complementary_slackness(const LpProblem& problem, const LpSolution& solution);

bool check_primal_feasible(const LpProblem& problem, const std::vector<Rational>& x);
bool check_dual_feasible(const LpProblem& problem, const std::vector<Rational>& y);

/// Searches for an integral optimum of the same value as `base` by fixing
/// fractional variables to neighbouring integers and re-solving, depth-first
/// over at most max_nodes re-solves.  Intended for problems whose integral
/// optima lie in the unit box (each fractional variable is tried at floor
/// and ceiling).  The result keeps `base`'s duals: optimal duals remain
/// optimal for every optimal primal.
std::optional<LpSolution> integral_vertex_search(const LpProblem& problem, const LpSolution& base,
                                                 int max_nodes = 4096);

/// JSON rendering of the problem for inspection.
std::string dump_lp(const LpProblem& problem);

}  // namespace quotamatch
