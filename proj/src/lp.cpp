#include "quotamatch/lp.hpp"

#include <json.hpp>

#include "quotamatch/errors.hpp"

namespace quotamatch {

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;  // truncates toward zero
  if (q * den != num && ((num < 0) != (den < 0))) --q;
  return q;
}

BigInt rational_floor(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

// Dense tableau with one slack/surplus column per inequality row and one
// artificial column per >= or = row.  Artificial columns never enter the
// basis; they double as unit markers so duals can be read off the final
// reduced-cost row.
struct Simplex {
  const LpProblem& problem;
  int n_orig;
  int n_struct = 0;                // after free-variable splitting
  std::vector<int> pos_col, neg_col;

  int m;
  std::vector<bool> flipped;
  std::vector<Relation> rel;       // post-flip relation
  std::vector<std::vector<Rational>> tab;
  std::vector<Rational> rhs;
  std::vector<int> basis;
  std::vector<bool> row_deleted;

  int n_cols = 0;
  std::vector<int> slack_col;      // -1 when absent
  std::vector<int> art_col;        // -1 when absent
  std::vector<bool> is_artificial;

  std::vector<Rational> obj;       // reduced costs of the current phase
  Rational obj_value;

  explicit Simplex(const LpProblem& p) : problem(p), n_orig(p.num_vars()) {
    pos_col.resize(n_orig);
    neg_col.assign(n_orig, -1);
    for (int v = 0; v < n_orig; ++v) {
      pos_col[v] = n_struct++;
      if (problem.is_free(v)) neg_col[v] = n_struct++;
    }

    m = static_cast<int>(p.rows.size());
    flipped.assign(m, false);
    rel.resize(m);
    rhs.resize(m);
    row_deleted.assign(m, false);
    slack_col.assign(m, -1);
    art_col.assign(m, -1);

    n_cols = n_struct;
    for (int i = 0; i < m; ++i) {
      const LpRow& row = p.rows[i];
      if (static_cast<int>(row.coeffs.size()) != n_orig)
        throw DimensionMismatch("row '" + row.label + "' has " +
                                std::to_string(row.coeffs.size()) + " coefficients, expected " +
                                std::to_string(n_orig));
      flipped[i] = row.rhs < 0;
      rel[i] = row.relation;
      if (flipped[i]) {
        if (row.relation == Relation::LessEq) rel[i] = Relation::GreaterEq;
        if (row.relation == Relation::GreaterEq) rel[i] = Relation::LessEq;
      }
      if (rel[i] != Relation::Equal) slack_col[i] = n_cols++;
      if (rel[i] != Relation::LessEq) art_col[i] = n_cols++;
    }

    is_artificial.assign(n_cols, false);
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) is_artificial[art_col[i]] = true;

    tab.assign(m, std::vector<Rational>(n_cols, Rational(0)));
    basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
      const LpRow& row = p.rows[i];
      Rational sign = flipped[i] ? Rational(-1) : Rational(1);
      for (int v = 0; v < n_orig; ++v) {
        if (row.coeffs[v] == 0) continue;
        Rational a = sign * row.coeffs[v];
        tab[i][pos_col[v]] = a;
        if (neg_col[v] >= 0) tab[i][neg_col[v]] = -a;
      }
      rhs[i] = sign * row.rhs;
      if (slack_col[i] >= 0) tab[i][slack_col[i]] = rel[i] == Relation::LessEq ? 1 : -1;
      if (art_col[i] >= 0) tab[i][art_col[i]] = 1;
      basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    }
  }

  void pivot(int r, int c) {
    Rational p = tab[r][c];
    for (int j = 0; j < n_cols; ++j) tab[r][j] /= p;
    rhs[r] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || row_deleted[i] || tab[i][c] == 0) continue;
      Rational factor = tab[i][c];
      for (int j = 0; j < n_cols; ++j)
        if (tab[r][j] != 0) tab[i][j] -= factor * tab[r][j];
      rhs[i] -= factor * rhs[r];
    }
    if (obj[c] != 0) {
      Rational factor = obj[c];
      for (int j = 0; j < n_cols; ++j)
        if (tab[r][j] != 0) obj[j] -= factor * tab[r][j];
      obj_value += factor * rhs[r];
    }
    basis[r] = c;
  }

  // Bland's rule: entering = lowest-index improving column, leaving =
  // lowest-index basic variable among the minimum ratios.  Returns false on
  // an unbounded direction.
  bool run_phase() {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < n_cols; ++j) {
        if (is_artificial[j]) continue;
        if (obj[j] > 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      int leaving = -1;
      Rational best_ratio;
      for (int i = 0; i < m; ++i) {
        if (row_deleted[i] || tab[i][entering] <= 0) continue;
        Rational ratio = rhs[i] / tab[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void price_out(const std::vector<Rational>& cost) {
    obj = cost;
    obj_value = 0;
    for (int i = 0; i < m; ++i) {
      if (row_deleted[i] || cost[basis[i]] == 0) continue;
      Rational factor = cost[basis[i]];
      for (int j = 0; j < n_cols; ++j)
        if (tab[i][j] != 0) obj[j] -= factor * tab[i][j];
      obj_value += factor * rhs[i];
    }
  }

  LpSolution solve() {
    bool have_artificials = false;
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) have_artificials = true;

    if (have_artificials) {
      std::vector<Rational> cost(n_cols, Rational(0));
      for (int j = 0; j < n_cols; ++j)
        if (is_artificial[j]) cost[j] = -1;
      price_out(cost);
      run_phase();  // phase-one objective is bounded above by zero
      if (obj_value < 0) return {LpStatus::Infeasible, {}, {}, Rational(0), {}};

      // Evict basic artificials; an all-zero row is a redundant equation.
      for (int i = 0; i < m; ++i) {
        if (row_deleted[i] || !is_artificial[basis[i]]) continue;
        int target = -1;
        for (int j = 0; j < n_cols; ++j) {
          if (is_artificial[j]) continue;
          if (tab[i][j] != 0) {
            target = j;
            break;
          }
        }
        if (target >= 0)
          pivot(i, target);
        else
          row_deleted[i] = true;
      }
    }

    std::vector<Rational> cost(n_cols, Rational(0));
    for (int v = 0; v < n_orig; ++v) {
      cost[pos_col[v]] = problem.objective[v];
      if (neg_col[v] >= 0) cost[neg_col[v]] = -problem.objective[v];
    }
    price_out(cost);
    if (!run_phase()) return {LpStatus::Unbounded, {}, {}, Rational(0), {}};

    LpSolution sol;
    sol.status = LpStatus::Optimal;

    std::vector<Rational> x(n_cols, Rational(0));
    for (int i = 0; i < m; ++i)
      if (!row_deleted[i]) x[basis[i]] = rhs[i];
    sol.primal.resize(n_orig);
    for (int v = 0; v < n_orig; ++v) {
      sol.primal[v] = x[pos_col[v]];
      if (neg_col[v] >= 0) sol.primal[v] -= x[neg_col[v]];
    }
    sol.objective_value = 0;
    for (int v = 0; v < n_orig; ++v) sol.objective_value += problem.objective[v] * sol.primal[v];

    // Duals come off the reduced costs of each row's unit marker column;
    // redundant rows get zero.
    sol.dual.assign(m, Rational(0));
    for (int i = 0; i < m; ++i) {
      if (row_deleted[i]) continue;
      Rational y;
      if (rel[i] == Relation::LessEq)
        y = -obj[slack_col[i]];
      else
        y = -obj[art_col[i]];
      sol.dual[i] = flipped[i] ? -y : y;
    }

    for (int i = 0; i < m; ++i) {
      if (row_deleted[i]) continue;
      int c = basis[i];
      for (int v = 0; v < n_orig; ++v) {
        if (c == pos_col[v] || c == neg_col[v]) {
          sol.basis.push_back(v);
          c = -1;
          break;
        }
      }
      if (c >= 0)
        for (int k = 0; k < m; ++k)
          if (c == slack_col[k]) sol.basis.push_back(n_orig + k);
    }
    return sol;
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  Simplex simplex(problem);
  return simplex.solve();
}

bool check_integral(const LpSolution& solution) {
  if (solution.status != LpStatus::Optimal)
    throw StatusError("check_integral requires an optimal solution");
  for (const Rational& x : solution.primal)
    if (!is_integer(x)) return false;
  return true;
}

bool check_complementary_slackness(const LpProblem& problem, const LpSolution& solution) {
  if (solution.status != LpStatus::Optimal)
    throw StatusError("check_complementary_slackness requires an optimal solution");
  int n = problem.num_vars();
  int m = static_cast<int>(problem.rows.size());
  for (int i = 0; i < m; ++i) {
    if (solution.dual[i] == 0) continue;
    Rational lhs(0);
    for (int v = 0; v < n; ++v) lhs += problem.rows[i].coeffs[v] * solution.primal[v];
    if (lhs != problem.rows[i].rhs) return false;
  }
  for (int v = 0; v < n; ++v) {
    if (solution.primal[v] == 0) continue;
    Rational reduced = problem.objective[v];
    for (int i = 0; i < m; ++i) reduced -= solution.dual[i] * problem.rows[i].coeffs[v];
    if (reduced != 0) return false;
  }
  return true;
}

bool check_primal_feasible(const LpProblem& problem, const std::vector<Rational>& x) {
  int n = problem.num_vars();
  if (static_cast<int>(x.size()) != n) return false;
  for (int v = 0; v < n; ++v)
    if (!problem.is_free(v) && x[v] < 0) return false;
  for (const LpRow& row : problem.rows) {
    Rational lhs(0);
    for (int v = 0; v < n; ++v) lhs += row.coeffs[v] * x[v];
    switch (row.relation) {
      case Relation::LessEq:
        if (lhs > row.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < row.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
    }
  }
  return true;
}

bool check_dual_feasible(const LpProblem& problem, const std::vector<Rational>& y) {
  int m = static_cast<int>(problem.rows.size());
  if (static_cast<int>(y.size()) != m) return false;
  for (int i = 0; i < m; ++i) {
    if (problem.rows[i].relation == Relation::LessEq && y[i] < 0) return false;
    if (problem.rows[i].relation == Relation::GreaterEq && y[i] > 0) return false;
  }
  for (int v = 0; v < problem.num_vars(); ++v) {
    Rational reduced = problem.objective[v];
    for (int i = 0; i < m; ++i) reduced -= y[i] * problem.rows[i].coeffs[v];
    if (problem.is_free(v) ? reduced != 0 : reduced > 0) return false;
  }
  return true;
}

namespace {

struct VertexSearch {
  const LpProblem& problem;
  const Rational target;
  int nodes_left;

  std::optional<std::vector<Rational>> run(std::vector<std::pair<int, BigInt>>& pins) {
    if (nodes_left-- <= 0) return std::nullopt;
    LpProblem pinned = problem;
    for (const auto& [var, value] : pins) {
      LpRow row;
      row.coeffs.assign(problem.num_vars(), Rational(0));
      row.coeffs[var] = 1;
      row.relation = Relation::Equal;
      row.rhs = Rational(value);
      row.label = "pin";
      pinned.rows.push_back(std::move(row));
    }
    LpSolution sol = solve_lp(pinned);
    if (sol.status != LpStatus::Optimal || sol.objective_value != target) return std::nullopt;

    int fractional = -1;
    for (int v = 0; v < problem.num_vars(); ++v) {
      if (!is_integer(sol.primal[v])) {
        fractional = v;
        break;
      }
    }
    if (fractional < 0) return sol.primal;

    BigInt lo = rational_floor(sol.primal[fractional]);
    for (int step = 0; step <= 1; ++step) {
      pins.emplace_back(fractional, lo + step);
      auto result = run(pins);
      pins.pop_back();
      if (result) return result;
      if (nodes_left <= 0) return std::nullopt;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<LpSolution> integral_vertex_search(const LpProblem& problem, const LpSolution& base,
                                                 int max_nodes) {
  if (base.status != LpStatus::Optimal)
    throw StatusError("integral_vertex_search requires an optimal base solution");

  bool fractional = false;
  for (const Rational& x : base.primal)
    if (!is_integer(x)) fractional = true;
  if (!fractional) return base;

  VertexSearch search{problem, base.objective_value, max_nodes};
  std::vector<std::pair<int, BigInt>> pins;
  auto primal = search.run(pins);
  if (!primal) return std::nullopt;

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.primal = std::move(*primal);
  sol.dual = base.dual;  // optimal duals pair with every optimal primal
  sol.objective_value = base.objective_value;
  return sol;
}

std::string dump_lp(const LpProblem& problem) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json objective = nlohmann::ordered_json::array();
  for (const Rational& c : problem.objective) objective.push_back(to_string_exact(c));
  doc["maximize"] = std::move(objective);
  nlohmann::ordered_json vars = nlohmann::ordered_json::array();
  for (int v = 0; v < problem.num_vars(); ++v) {
    std::string label = v < static_cast<int>(problem.variable_labels.size())
                            ? problem.variable_labels[v]
                            : "x" + std::to_string(v);
    vars.push_back(label + (problem.is_free(v) ? " free" : " >= 0"));
  }
  doc["variables"] = std::move(vars);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const LpRow& row : problem.rows) {
    nlohmann::ordered_json node;
    node["label"] = row.label;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const Rational& a : row.coeffs) coeffs.push_back(to_string_exact(a));
    node["coeffs"] = std::move(coeffs);
    node["relation"] = row.relation == Relation::LessEq   ? "<="
                       : row.relation == Relation::GreaterEq ? ">="
                                                             : "=";
    node["rhs"] = to_string_exact(row.rhs);
    rows.push_back(std::move(node));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace quotamatch
