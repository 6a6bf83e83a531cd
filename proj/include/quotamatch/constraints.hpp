#pragma once

#include <cstdint>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch {

enum class StructureStatus { Holds, Violated, Indeterminate };

/// Outcome of a structural test on a constraint family.  When the test fails,
/// the offending pair of sets is reported so the violation can be re-checked
/// against the definition.
struct StructureVerdict {
  StructureStatus status = StructureStatus::Holds;
  std::vector<int> witness_a;
  std::vector<int> witness_b;

  bool holds() const { return status == StructureStatus::Holds; }
};

/// Every pair of member sets is nested or disjoint.
StructureVerdict is_hierarchy(const ConstraintFamily& family);

/// For every pair A, B with A∩B, A\B, B\A all non-empty, both A∩B and A∪B
/// are members.  The empty set is never a member (enforced at parse time).
StructureVerdict is_intersecting_family(const ConstraintFamily& family);

/// Intersecting family whose upper quotas are submodular on intersecting
/// pairs.  Lower quotas are ignored.
StructureVerdict is_polymatroid(const ConstraintFamily& family);

/// Intersecting family with submodular upper quotas, supermodular lower
/// quotas, and the cross-inequality
///   lower(D) - lower(D\D') <= upper(D') - upper(D'\D)
/// for all member pairs.  Set functions are only defined on members and the
/// empty set (value 0); a cross-inequality whose difference set is a
/// non-empty non-member is skipped and the verdict reports Indeterminate.
StructureVerdict is_generalized_polymatroid(const ConstraintFamily& family);

/// All subsets of workers satisfying one firm's quotas, canonically ordered
/// (size, then lexicographic).  The empty set appears exactly when every
/// lower quota is zero.
struct FeasibilityCollection {
  int firm = 0;
  std::vector<std::vector<int>> sets;
};

/// Refuses with CapExceeded when 2^|W| > cap.
FeasibilityCollection enumerate_feasible_sets(const MarketInstance& inst, int firm,
                                              std::uint64_t cap = std::uint64_t{1} << 20);

/// True when |set ∩ entry.members| lies within every entry's quotas.
bool satisfies_family(const ConstraintFamily& family, const std::vector<int>& set);

}  // namespace quotamatch
