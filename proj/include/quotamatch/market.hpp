#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quotamatch/rational.hpp"

namespace quotamatch {

enum class PreferenceMode { Linear, General };

/// One hiring quota: lower <= |hired ∩ members| <= upper.
struct QuotaEntry {
  std::vector<int> members;  // sorted worker indices, non-empty
  long long lower = 0;
  long long upper = 0;

  bool operator==(const QuotaEntry&) const = default;
};

struct ConstraintFamily {
  std::vector<QuotaEntry> entries;

  bool operator==(const ConstraintFamily&) const = default;
};

/// A two-sided market: workers, firms, their pairwise values and the per-firm
/// hiring quotas.  Immutable after construction; all operations are pure.
struct MarketInstance {
  std::vector<std::string> workers;
  std::vector<std::string> firms;
  PreferenceMode mode = PreferenceMode::Linear;

  // worker_value[w][f]: value a worker gets from joining a firm.
  std::vector<std::vector<Rational>> worker_value;
  // firm_value[w][f]: per-worker value to the firm (Linear mode).
  std::vector<std::vector<Rational>> firm_value;
  // General mode (single firm): valuation per worker set, keyed by sorted
  // worker indices.  The empty set implicitly has value 0.
  std::map<std::vector<int>, Rational> general_values;

  std::vector<ConstraintFamily> constraints;  // one family per firm

  int num_workers() const { return static_cast<int>(workers.size()); }
  int num_firms() const { return static_cast<int>(firms.size()); }
  /// -1 when the id is unknown.
  int worker_id(std::string_view name) const;
  int firm_id(std::string_view name) const;

  bool operator==(const MarketInstance&) const = default;
};

struct Assignment {
  static constexpr int kUnmatched = -1;

  /// firm_of[w] is the firm index of worker w, or kUnmatched.
  std::vector<int> firm_of;

  std::vector<int> matched_set(int firm) const;  // sorted
  bool operator==(const Assignment&) const = default;
};

/// An assignment together with the full prospective salary matrix: a salary
/// exists for every (firm, worker) pair whether matched or not.
struct Arrangement {
  Assignment assignment;
  std::vector<std::vector<Rational>> salary;  // [firm][worker]
};

struct PayoffVector {
  std::vector<Rational> worker;
  std::vector<Rational> firm;

  bool operator==(const PayoffVector&) const = default;
};

/// Parses the versioned instance document (JSON).  Throws SchemaError,
/// ValueError or ReferenceError on invalid input.
MarketInstance parse_instance(std::string_view text);

/// Canonical serialization; parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const MarketInstance& inst);

/// Arrangement document: {"assignment": {worker: firm|null},
/// "salaries": {firm: {worker: numeral}}} with a total salary matrix.
Arrangement parse_arrangement(const MarketInstance& inst, std::string_view text);
std::string serialize_arrangement(const MarketInstance& inst, const Arrangement& arr);

/// Joint surplus of one pair under linear preferences.  ModeError in General
/// mode.
Rational match_value(const MarketInstance& inst, int w, int f);

/// Value of a firm matched with the (sorted) worker set plus the workers' own
/// values; the empty set is worth 0.  UnknownSetError when a General-mode
/// table lacks the set.
Rational coalition_value(const MarketInstance& inst, int f, const std::vector<int>& workers);

std::string set_label(const MarketInstance& inst, const std::vector<int>& workers);

}  // namespace quotamatch
