#include "quotamatch/market.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "quotamatch/errors.hpp"
#include "quotamatch/setops.hpp"

namespace quotamatch {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("document is not valid JSON");
  return doc;
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> parse_id_list(const json& node, const char* what) {
  if (!node.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<std::string> ids;
  for (const auto& item : node) {
    if (!item.is_string()) throw SchemaError(std::string(what) + " entries must be strings");
    ids.push_back(item.get<std::string>());
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j]) throw ValueError(std::string("duplicate ") + what + " id '" + ids[i] + "'");
  if (ids.empty() && std::string(what) == "firms")
    throw ValueError("at least one firm is required");
  return ids;
}

Rational parse_value(const json& node, const std::string& context) {
  if (!node.is_string()) throw SchemaError("value for " + context + " must be a numeral string");
  return parse_rational(node.get<std::string>());
}

// {worker: {firm: numeral}}, required to be total.
std::vector<std::vector<Rational>> parse_value_table(const json& node, const MarketInstance& inst,
                                                     const char* what) {
  if (!node.is_object()) throw SchemaError(std::string(what) + " must be an object");
  for (const auto& [wname, row] : node.items()) {
    if (inst.worker_id(wname) < 0) throw ReferenceError("unknown worker '" + wname + "' in " + what);
    if (!row.is_object()) throw SchemaError(std::string(what) + " rows must be objects");
    for (const auto& [fname, cell] : row.items()) {
      (void)cell;
      if (inst.firm_id(fname) < 0) throw ReferenceError("unknown firm '" + fname + "' in " + what);
    }
  }
  std::vector<std::vector<Rational>> table(
      inst.workers.size(), std::vector<Rational>(inst.firms.size()));
  for (int w = 0; w < inst.num_workers(); ++w) {
    auto row = node.find(inst.workers[w]);
    if (row == node.end())
      throw SchemaError(std::string(what) + " is missing worker '" + inst.workers[w] + "'");
    for (int f = 0; f < inst.num_firms(); ++f) {
      auto cell = row->find(inst.firms[f]);
      if (cell == row->end())
        throw SchemaError(std::string(what) + " is missing pair ('" + inst.workers[w] + "', '" +
                          inst.firms[f] + "')");
      table[w][f] = parse_value(*cell, "(" + inst.workers[w] + ", " + inst.firms[f] + ")");
    }
  }
  return table;
}

std::vector<int> parse_worker_set(const json& node, const MarketInstance& inst,
                                  const std::string& context) {
  if (!node.is_array()) throw SchemaError("set in " + context + " must be an array");
  std::vector<int> members;
  for (const auto& item : node) {
    if (!item.is_string()) throw SchemaError("set members in " + context + " must be strings");
    int w = inst.worker_id(item.get<std::string>());
    if (w < 0)
      throw ReferenceError("unknown worker '" + item.get<std::string>() + "' in " + context);
    members.push_back(w);
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw ValueError("set in " + context + " has a duplicate member");
  return members;
}

long long parse_quota(const json& node, const char* which, const std::string& context) {
  if (!node.is_number_integer()) throw SchemaError(std::string(which) + " in " + context + " must be an integer");
  long long v = node.get<long long>();
  if (v < 0) throw ValueError(std::string(which) + " in " + context + " must be non-negative");
  return v;
}

}  // namespace

int MarketInstance::worker_id(std::string_view name) const {
  for (int w = 0; w < num_workers(); ++w)
    if (workers[w] == name) return w;
  return -1;
}

int MarketInstance::firm_id(std::string_view name) const {
  for (int f = 0; f < num_firms(); ++f)
    if (firms[f] == name) return f;
  return -1;
}

std::vector<int> Assignment::matched_set(int firm) const {
  std::vector<int> set;
  for (int w = 0; w < static_cast<int>(firm_of.size()); ++w)
    if (firm_of[w] == firm) set.push_back(w);
  return set;
}

MarketInstance parse_instance(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("document must be an object");

  const json& version = require(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw SchemaError("unsupported document version");

  MarketInstance inst;
  const json& mode = require(doc, "mode");
  if (!mode.is_string()) throw SchemaError("mode must be a string");
  std::string mode_name = mode.get<std::string>();
  if (mode_name == "linear") {
    inst.mode = PreferenceMode::Linear;
  } else if (mode_name == "general") {
    inst.mode = PreferenceMode::General;
  } else {
    throw SchemaError("mode must be 'linear' or 'general'");
  }

  inst.workers = parse_id_list(require(doc, "workers"), "workers");
  inst.firms = parse_id_list(require(doc, "firms"), "firms");

  inst.worker_value = parse_value_table(require(doc, "worker_values"), inst, "worker_values");

  const json& firm_values = require(doc, "firm_values");
  if (inst.mode == PreferenceMode::Linear) {
    inst.firm_value = parse_value_table(firm_values, inst, "firm_values");
  } else {
    if (inst.num_firms() != 1)
      throw ValueError("general firm valuations require exactly one firm");
    if (!firm_values.is_object()) throw SchemaError("firm_values must be an object");
    auto it = firm_values.find(inst.firms[0]);
    if (it == firm_values.end())
      throw SchemaError("firm_values is missing firm '" + inst.firms[0] + "'");
    for (const auto& [fname, cell] : firm_values.items()) {
      (void)cell;
      if (inst.firm_id(fname) < 0)
        throw ReferenceError("unknown firm '" + fname + "' in firm_values");
    }
    if (!it->is_array()) throw SchemaError("general firm_values must be an array of set entries");
    for (const auto& entry : *it) {
      if (!entry.is_object()) throw SchemaError("firm_values entries must be objects");
      std::vector<int> members =
          parse_worker_set(require(entry, "set"), inst, "firm_values for '" + inst.firms[0] + "'");
      Rational value = parse_value(require(entry, "value"), "set valuation");
      if (inst.general_values.count(members))
        throw ValueError("duplicate set in firm_values for '" + inst.firms[0] + "'");
      inst.general_values.emplace(std::move(members), std::move(value));
    }
  }

  inst.constraints.resize(inst.firms.size());
  const json& constraints = require(doc, "constraints");
  if (!constraints.is_object()) throw SchemaError("constraints must be an object");
  for (const auto& [fname, entries] : constraints.items()) {
    int f = inst.firm_id(fname);
    if (f < 0) throw ReferenceError("unknown firm '" + fname + "' in constraints");
    if (!entries.is_array()) throw SchemaError("constraints for '" + fname + "' must be an array");
    for (const auto& entry : entries) {
      if (!entry.is_object()) throw SchemaError("constraint entries must be objects");
      std::string context = "constraints for '" + fname + "'";
      QuotaEntry quota;
      quota.members = parse_worker_set(require(entry, "set"), inst, context);
      if (quota.members.empty()) throw ValueError("constraint set in " + context + " is empty");
      quota.lower = entry.contains("lower") ? parse_quota(entry["lower"], "lower", context) : 0;
      quota.upper = entry.contains("upper") ? parse_quota(entry["upper"], "upper", context)
                                            : static_cast<long long>(quota.members.size());
      if (quota.lower > quota.upper)
        throw ValueError("lower quota exceeds upper quota in " + context);
      for (const QuotaEntry& existing : inst.constraints[f].entries)
        if (existing.members == quota.members)
          throw ValueError("duplicate constraint set in " + context);
      inst.constraints[f].entries.push_back(std::move(quota));
    }
  }

  return inst;
}

std::string serialize_instance(const MarketInstance& inst) {
  ordered_json doc;
  doc["version"] = 1;
  doc["mode"] = inst.mode == PreferenceMode::Linear ? "linear" : "general";
  doc["workers"] = inst.workers;
  doc["firms"] = inst.firms;

  ordered_json worker_values = ordered_json::object();
  for (int w = 0; w < inst.num_workers(); ++w) {
    ordered_json row = ordered_json::object();
    for (int f = 0; f < inst.num_firms(); ++f) row[inst.firms[f]] = to_string_exact(inst.worker_value[w][f]);
    worker_values[inst.workers[w]] = std::move(row);
  }
  doc["worker_values"] = std::move(worker_values);

  if (inst.mode == PreferenceMode::Linear) {
    ordered_json firm_values = ordered_json::object();
    for (int w = 0; w < inst.num_workers(); ++w) {
      ordered_json row = ordered_json::object();
      for (int f = 0; f < inst.num_firms(); ++f) row[inst.firms[f]] = to_string_exact(inst.firm_value[w][f]);
      firm_values[inst.workers[w]] = std::move(row);
    }
    doc["firm_values"] = std::move(firm_values);
  } else {
    ordered_json entries = ordered_json::array();
    for (const auto& [members, value] : inst.general_values) {
      ordered_json entry;
      ordered_json set = ordered_json::array();
      for (int w : members) set.push_back(inst.workers[w]);
      entry["set"] = std::move(set);
      entry["value"] = to_string_exact(value);
      entries.push_back(std::move(entry));
    }
    ordered_json firm_values = ordered_json::object();
    firm_values[inst.firms[0]] = std::move(entries);
    doc["firm_values"] = std::move(firm_values);
  }

  ordered_json constraints = ordered_json::object();
  for (int f = 0; f < inst.num_firms(); ++f) {
    ordered_json entries = ordered_json::array();
    for (const QuotaEntry& quota : inst.constraints[f].entries) {
      ordered_json entry;
      ordered_json set = ordered_json::array();
      for (int w : quota.members) set.push_back(inst.workers[w]);
      entry["set"] = std::move(set);
      entry["lower"] = quota.lower;
      entry["upper"] = quota.upper;
      entries.push_back(std::move(entry));
    }
    constraints[inst.firms[f]] = std::move(entries);
  }
  doc["constraints"] = std::move(constraints);

  return doc.dump(2) + "\n";
}

Arrangement parse_arrangement(const MarketInstance& inst, std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw SchemaError("arrangement document must be an object");

  Arrangement arr;
  arr.assignment.firm_of.assign(inst.workers.size(), Assignment::kUnmatched);
  const json& assignment = require(doc, "assignment");
  if (!assignment.is_object()) throw SchemaError("assignment must be an object");
  for (const auto& [wname, target] : assignment.items()) {
    if (inst.worker_id(wname) < 0)
      throw ReferenceError("unknown worker '" + wname + "' in assignment");
    (void)target;
  }
  for (int w = 0; w < inst.num_workers(); ++w) {
    auto it = assignment.find(inst.workers[w]);
    if (it == assignment.end())
      throw SchemaError("assignment is missing worker '" + inst.workers[w] + "'");
    if (it->is_null()) continue;
    if (!it->is_string()) throw SchemaError("assignment targets must be firm ids or null");
    int f = inst.firm_id(it->get<std::string>());
    if (f < 0) throw ReferenceError("unknown firm '" + it->get<std::string>() + "' in assignment");
    arr.assignment.firm_of[w] = f;
  }

  arr.salary.assign(inst.firms.size(), std::vector<Rational>(inst.workers.size()));
  const json& salaries = require(doc, "salaries");
  if (!salaries.is_object()) throw SchemaError("salaries must be an object");
  for (const auto& [fname, row] : salaries.items()) {
    if (inst.firm_id(fname) < 0) throw ReferenceError("unknown firm '" + fname + "' in salaries");
    if (!row.is_object()) throw SchemaError("salary rows must be objects");
    for (const auto& [wname, cell] : row.items()) {
      (void)cell;
      if (inst.worker_id(wname) < 0)
        throw ReferenceError("unknown worker '" + wname + "' in salaries");
    }
  }
  for (int f = 0; f < inst.num_firms(); ++f) {
    auto row = salaries.find(inst.firms[f]);
    if (row == salaries.end())
      throw SchemaError("salaries are missing firm '" + inst.firms[f] + "'");
    for (int w = 0; w < inst.num_workers(); ++w) {
      auto cell = row->find(inst.workers[w]);
      if (cell == row->end())
        throw SchemaError("salaries for '" + inst.firms[f] + "' are missing worker '" +
                          inst.workers[w] + "'");
      arr.salary[f][w] = parse_value(*cell, "salary (" + inst.firms[f] + ", " + inst.workers[w] + ")");
    }
  }
  return arr;
}

std::string serialize_arrangement(const MarketInstance& inst, const Arrangement& arr) {
  ordered_json doc;
  ordered_json assignment = ordered_json::object();
  for (int w = 0; w < inst.num_workers(); ++w) {
    int f = arr.assignment.firm_of[w];
    if (f == Assignment::kUnmatched)
      assignment[inst.workers[w]] = nullptr;
    else
      assignment[inst.workers[w]] = inst.firms[f];
  }
  doc["assignment"] = std::move(assignment);
  ordered_json salaries = ordered_json::object();
  for (int f = 0; f < inst.num_firms(); ++f) {
    ordered_json row = ordered_json::object();
    for (int w = 0; w < inst.num_workers(); ++w)
      row[inst.workers[w]] = to_string_exact(arr.salary[f][w]);
    salaries[inst.firms[f]] = std::move(row);
  }
  doc["salaries"] = std::move(salaries);
  return doc.dump(2) + "\n";
}

Rational match_value(const MarketInstance& inst, int w, int f) {
  if (inst.mode != PreferenceMode::Linear)
    throw ModeError("match_value requires linear preferences");
  return inst.worker_value[w][f] + inst.firm_value[w][f];
}

Rational coalition_value(const MarketInstance& inst, int f, const std::vector<int>& workers) {
  if (workers.empty()) return Rational(0);
  Rational total(0);
  for (int w : workers) total += inst.worker_value[w][f];
  if (inst.mode == PreferenceMode::Linear) {
    for (int w : workers) total += inst.firm_value[w][f];
    return total;
  }
  auto it = inst.general_values.find(workers);
  if (it == inst.general_values.end())
    throw UnknownSetError("no valuation for set " + set_label(inst, workers));
  return total + it->second;
}

std::string set_label(const MarketInstance& inst, const std::vector<int>& workers) {
  std::string label = "{";
  for (std::size_t i = 0; i < workers.size(); ++i) {
    if (i) label += ",";
    label += inst.workers[workers[i]];
  }
  return label + "}";
}

}  // namespace quotamatch
