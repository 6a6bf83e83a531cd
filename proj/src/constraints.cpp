#include "quotamatch/constraints.hpp"

#include <algorithm>
#include <map>

#include "quotamatch/errors.hpp"
#include "quotamatch/setops.hpp"

namespace quotamatch {

namespace {

bool sets_intersecting(const std::vector<int>& a, const std::vector<int>& b) {
  return !set_intersection(a, b).empty() && !set_difference(a, b).empty() &&
         !set_difference(b, a).empty();
}

StructureVerdict violated(const std::vector<int>& a, const std::vector<int>& b) {
  return {StructureStatus::Violated, a, b};
}

// Member lookup for quota functions; nullopt when the set is not a member.
struct QuotaTable {
  std::map<std::vector<int>, const QuotaEntry*> by_members;

  explicit QuotaTable(const ConstraintFamily& family) {
    for (const QuotaEntry& entry : family.entries) by_members.emplace(entry.members, &entry);
  }

  const QuotaEntry* find(const std::vector<int>& set) const {
    auto it = by_members.find(set);
    return it == by_members.end() ? nullptr : it->second;
  }
};

}  // namespace

StructureVerdict is_hierarchy(const ConstraintFamily& family) {
  const auto& entries = family.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i].members;
      const auto& b = entries[j].members;
      if (is_subset(a, b) || is_subset(b, a) || set_intersection(a, b).empty()) continue;
      return violated(a, b);
    }
  }
  return {};
}

StructureVerdict is_intersecting_family(const ConstraintFamily& family) {
  QuotaTable table(family);
  const auto& entries = family.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i].members;
      const auto& b = entries[j].members;
      if (!sets_intersecting(a, b)) continue;
      if (!table.find(set_intersection(a, b)) || !table.find(set_union(a, b)))
        return violated(a, b);
    }
  }
  return {};
}

StructureVerdict is_polymatroid(const ConstraintFamily& family) {
  StructureVerdict intersecting = is_intersecting_family(family);
  if (!intersecting.holds()) return intersecting;

  QuotaTable table(family);
  const auto& entries = family.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i].members;
      const auto& b = entries[j].members;
      if (!sets_intersecting(a, b)) continue;
      const QuotaEntry* meet = table.find(set_intersection(a, b));
      const QuotaEntry* join = table.find(set_union(a, b));
      if (entries[i].upper + entries[j].upper < join->upper + meet->upper)
        return violated(a, b);
    }
  }
  return {};
}

StructureVerdict is_generalized_polymatroid(const ConstraintFamily& family) {
  StructureVerdict base = is_polymatroid(family);
  if (!base.holds()) return base;

  QuotaTable table(family);
  const auto& entries = family.entries;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      const auto& a = entries[i].members;
      const auto& b = entries[j].members;
      if (!sets_intersecting(a, b)) continue;
      const QuotaEntry* meet = table.find(set_intersection(a, b));
      const QuotaEntry* join = table.find(set_union(a, b));
      // lower quotas must be supermodular on intersecting pairs
      if (entries[i].lower + entries[j].lower > join->lower + meet->lower)
        return violated(a, b);
    }
  }

  bool indeterminate = false;
  StructureVerdict skipped;
  for (const QuotaEntry& d : family.entries) {
    for (const QuotaEntry& d_prime : family.entries) {
      std::vector<int> d_minus = set_difference(d.members, d_prime.members);
      std::vector<int> prime_minus = set_difference(d_prime.members, d.members);
      long long lower_of_diff = 0;
      long long upper_of_diff = 0;
      bool known = true;
      if (!d_minus.empty()) {
        const QuotaEntry* e = table.find(d_minus);
        if (e)
          lower_of_diff = e->lower;
        else
          known = false;
      }
      if (!prime_minus.empty()) {
        const QuotaEntry* e = table.find(prime_minus);
        if (e)
          upper_of_diff = e->upper;
        else
          known = false;
      }
      if (!known) {
        if (!indeterminate) {
          indeterminate = true;
          skipped = {StructureStatus::Indeterminate, d.members, d_prime.members};
        }
        continue;
      }
      if (d.lower - lower_of_diff > d_prime.upper - upper_of_diff)
        return violated(d.members, d_prime.members);
    }
  }
  if (indeterminate) return skipped;
  return {};
}

bool satisfies_family(const ConstraintFamily& family, const std::vector<int>& set) {
  for (const QuotaEntry& entry : family.entries) {
    long long hit = static_cast<long long>(set_intersection(set, entry.members).size());
    if (hit < entry.lower || hit > entry.upper) return false;
  }
  return true;
}

FeasibilityCollection enumerate_feasible_sets(const MarketInstance& inst, int firm,
                                              std::uint64_t cap) {
  int n = inst.num_workers();
  if (n >= 63 || (std::uint64_t{1} << n) > cap)
    throw CapExceeded("2^" + std::to_string(n) + " subsets exceed the enumeration budget");

  const ConstraintFamily& family = inst.constraints[firm];
  std::vector<std::uint64_t> entry_masks;
  entry_masks.reserve(family.entries.size());
  for (const QuotaEntry& entry : family.entries) {
    std::uint64_t mask = 0;
    for (int w : entry.members) mask |= std::uint64_t{1} << w;
    entry_masks.push_back(mask);
  }

  FeasibilityCollection result;
  result.firm = firm;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t e = 0; e < entry_masks.size(); ++e) {
      long long hit = static_cast<long long>(__builtin_popcountll(mask & entry_masks[e]));
      if (hit < family.entries[e].lower || hit > family.entries[e].upper) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<int> members;
    for (int w = 0; w < n; ++w)
      if (mask & (std::uint64_t{1} << w)) members.push_back(w);
    result.sets.push_back(std::move(members));
  }
  std::sort(result.sets.begin(), result.sets.end(), canonical_set_less);
  return result;
}

}  // namespace quotamatch
