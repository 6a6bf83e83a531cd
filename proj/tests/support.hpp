#pragma once

// Deterministic instance generators shared by the unit and acceptance
// suites.  All randomness flows through mt19937_64 with explicit seeds, so a
// given seed reproduces the same instance on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "quotamatch/constraints.hpp"
#include "quotamatch/errors.hpp"
#include "quotamatch/market.hpp"
#include "quotamatch/stability.hpp"

namespace quotamatch::testing {

struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t next(std::uint64_t bound) { return engine() % bound; }
  int range(int lo, int hi) { return lo + static_cast<int>(next(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(int num, int den) { return next(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

  Rational rational(int max_abs_num, int max_den) {
    return Rational(range(-max_abs_num, max_abs_num), range(1, max_den));
  }

  std::vector<int> shuffled(int n) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[static_cast<int>(next(i + 1))]);
    return order;
  }

  /// Random non-empty subset of {0..n-1}, sorted.
  std::vector<int> subset(int n) {
    std::vector<int> members;
    while (members.empty()) {
      members.clear();
      for (int w = 0; w < n; ++w)
        if (chance(1, 2)) members.push_back(w);
    }
    return members;
  }
};

/// Nested-or-disjoint family built by recursive splitting.  Upper quotas are
/// arbitrary; lower quotas are zero unless with_lower.
inline ConstraintFamily random_hierarchy_family(Rng& rng, int num_workers, bool with_lower) {
  ConstraintFamily family;
  std::vector<int> pool = rng.shuffled(num_workers);
  int keep = rng.range(1, num_workers);
  pool.resize(keep);
  std::sort(pool.begin(), pool.end());

  auto emit = [&](const std::vector<int>& block) {
    QuotaEntry entry;
    entry.members = block;
    entry.upper = rng.range(0, static_cast<int>(block.size()));
    entry.lower = with_lower ? rng.range(0, static_cast<int>(entry.upper)) : 0;
    family.entries.push_back(std::move(entry));
  };

  std::vector<std::vector<int>> stack = {pool};
  while (!stack.empty()) {
    std::vector<int> block = std::move(stack.back());
    stack.pop_back();
    if (block.empty()) continue;
    if (rng.chance(2, 3)) emit(block);
    if (block.size() >= 2 && rng.chance(1, 2)) {
      int split = rng.range(1, static_cast<int>(block.size()) - 1);
      stack.emplace_back(block.begin(), block.begin() + split);
      stack.emplace_back(block.begin() + split, block.end());
    }
  }
  return family;
}

/// Disjoint blocks plus (optionally) all their unions, with quotas that are
/// additive across blocks.  Closed under union, intersection and difference,
/// so every structural test evaluates without leaving the family.
inline ConstraintFamily random_block_union_family(Rng& rng, int num_workers, bool with_lower) {
  int block_count = rng.range(1, std::min(3, num_workers));
  std::vector<int> order = rng.shuffled(num_workers);
  std::vector<std::vector<int>> blocks(block_count);
  int used = rng.range(block_count, num_workers);
  for (int i = 0; i < used; ++i) blocks[i % block_count].push_back(order[i]);
  for (auto& block : blocks) std::sort(block.begin(), block.end());

  std::vector<long long> hi(block_count), lo(block_count, 0);
  for (int b = 0; b < block_count; ++b) {
    hi[b] = rng.range(0, static_cast<int>(blocks[b].size()));
    if (with_lower) lo[b] = rng.range(0, static_cast<int>(hi[b]));
  }

  bool unions = block_count > 1 && rng.chance(1, 2);
  ConstraintFamily family;
  int combos = (1 << block_count) - 1;
  for (int mask = 1; mask <= combos; ++mask) {
    if (!unions && __builtin_popcount(static_cast<unsigned>(mask)) != 1) continue;
    QuotaEntry entry;
    for (int b = 0; b < block_count; ++b) {
      if (!(mask & (1 << b))) continue;
      entry.members.insert(entry.members.end(), blocks[b].begin(), blocks[b].end());
      entry.upper += hi[b];
      entry.lower += lo[b];
    }
    std::sort(entry.members.begin(), entry.members.end());
    if (entry.members.empty()) continue;
    family.entries.push_back(std::move(entry));
  }
  return family;
}

inline std::vector<std::string> make_names(const std::string& prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

inline MarketInstance make_linear_instance(int num_workers, int num_firms,
                                           std::vector<ConstraintFamily> families) {
  MarketInstance inst;
  inst.mode = PreferenceMode::Linear;
  inst.workers = make_names("w", num_workers);
  inst.firms = make_names("f", num_firms);
  inst.worker_value.assign(num_workers, std::vector<Rational>(num_firms, Rational(0)));
  inst.firm_value.assign(num_workers, std::vector<Rational>(num_firms, Rational(0)));
  inst.constraints = std::move(families);
  inst.constraints.resize(num_firms);
  return inst;
}

inline void randomize_values(Rng& rng, MarketInstance& inst, int max_abs_num, int max_den) {
  for (int w = 0; w < inst.num_workers(); ++w) {
    for (int f = 0; f < inst.num_firms(); ++f) {
      inst.worker_value[w][f] = rng.rational(max_abs_num, max_den);
      inst.firm_value[w][f] = rng.rational(max_abs_num, max_den);
    }
  }
}

/// Instance whose every family passes the polymatroid test with zero lower
/// quotas: a mix of hierarchies and additive block-union families.
inline MarketInstance random_polymatroid_instance(Rng& rng) {
  int nw = rng.range(1, 8);
  int nf = rng.range(1, 3);
  std::vector<ConstraintFamily> families;
  for (int f = 0; f < nf; ++f) {
    ConstraintFamily family = rng.chance(1, 2) ? random_hierarchy_family(rng, nw, false)
                                               : random_block_union_family(rng, nw, false);
    if (!is_polymatroid(family).holds()) throw std::logic_error("generator broke the invariant");
    families.push_back(std::move(family));
  }
  MarketInstance inst = make_linear_instance(nw, nf, std::move(families));
  randomize_values(rng, inst, 3, 10);
  return inst;
}

/// Instance whose every family passes the generalized-polymatroid test with
/// status Holds and which admits at least one assignment satisfying all
/// quotas.  Draws until the lower bounds are jointly satisfiable.
inline MarketInstance random_gpolymatroid_instance(Rng& rng) {
  for (;;) {
    int nw = rng.range(2, 8);
    int nf = rng.range(1, 3);
    std::vector<ConstraintFamily> families;
    bool ok = true;
    for (int f = 0; f < nf; ++f) {
      ConstraintFamily family = random_block_union_family(rng, nw, true);
      StructureVerdict verdict = is_generalized_polymatroid(family);
      if (verdict.status != StructureStatus::Holds) {
        ok = false;
        break;
      }
      families.push_back(std::move(family));
    }
    if (!ok) continue;
    MarketInstance inst = make_linear_instance(nw, nf, std::move(families));
    randomize_values(rng, inst, 3, 10);
    try {
      brute_force_efficient(inst, true);
    } catch (const NoFeasibleAssignment&) {
      continue;
    }
    return inst;
  }
}

/// Single firm, arbitrary (possibly non-intersecting) quota entries, and a
/// set-valuation table covering exactly the feasible sets.
inline MarketInstance random_one_firm_general(Rng& rng) {
  int nw = rng.range(1, 8);
  ConstraintFamily family;
  int entries = rng.range(0, 4);
  for (int e = 0; e < entries; ++e) {
    std::vector<int> members = rng.subset(nw);
    bool duplicate = false;
    for (const QuotaEntry& existing : family.entries)
      if (existing.members == members) duplicate = true;
    if (duplicate) continue;
    QuotaEntry entry;
    entry.members = std::move(members);
    entry.upper = rng.range(0, static_cast<int>(entry.members.size()));
    entry.lower = rng.range(0, static_cast<int>(entry.upper));
    if (rng.chance(1, 4)) {
      // occasionally demand more than allowed elsewhere to stress T_f = {}
      entry.lower = rng.range(0, static_cast<int>(entry.members.size()));
      entry.upper = std::max(entry.upper, entry.lower);
    }
    family.entries.push_back(std::move(entry));
  }

  MarketInstance inst;
  inst.mode = PreferenceMode::General;
  inst.workers = make_names("w", nw);
  inst.firms = {"f1"};
  inst.worker_value.assign(nw, std::vector<Rational>(1, Rational(0)));
  for (int w = 0; w < nw; ++w) inst.worker_value[w][0] = rng.rational(3, 6);
  inst.constraints = {std::move(family)};

  FeasibilityCollection feasible = enumerate_feasible_sets(inst, 0);
  for (const std::vector<int>& set : feasible.sets) {
    if (set.empty()) continue;
    inst.general_values.emplace(set, rng.rational(6, 6));
  }
  return inst;
}

/// Random full salary matrix.
inline Arrangement random_arrangement(Rng& rng, const MarketInstance& inst) {
  Arrangement arr;
  arr.assignment.firm_of.resize(inst.workers.size());
  for (int w = 0; w < inst.num_workers(); ++w)
    arr.assignment.firm_of[w] = rng.range(-1, inst.num_firms() - 1);
  arr.salary.assign(inst.firms.size(), std::vector<Rational>(inst.workers.size()));
  for (int f = 0; f < inst.num_firms(); ++f)
    for (int w = 0; w < inst.num_workers(); ++w) arr.salary[f][w] = rng.rational(3, 4);
  return arr;
}

}  // namespace quotamatch::testing
