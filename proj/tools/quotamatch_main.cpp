#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "quotamatch/assignment_lp.hpp"
#include "quotamatch/constraints.hpp"
#include "quotamatch/documents.hpp"
#include "quotamatch/errors.hpp"
#include "quotamatch/fixtures.hpp"
#include "quotamatch/one_firm.hpp"
#include "quotamatch/stability.hpp"

namespace {

using namespace quotamatch;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalidInstance = 2;
constexpr int kExitNoStableArrangement = 3;
constexpr int kExitFractional = 4;
constexpr int kExitCapExceeded = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + output_path + "'");
  out << text;
}

MarketInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::vector<Rational> load_salary_vector(const MarketInstance& inst, const std::string& path) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw SchemaError("salary document must be a JSON object");
  for (const auto& [name, cell] : doc.items()) {
    (void)cell;
    if (inst.worker_id(name) < 0) throw ReferenceError("unknown worker '" + name + "' in salaries");
  }
  std::vector<Rational> salaries(inst.workers.size());
  for (int w = 0; w < inst.num_workers(); ++w) {
    auto it = doc.find(inst.workers[w]);
    if (it == doc.end())
      throw SchemaError("salary document is missing worker '" + inst.workers[w] + "'");
    if (!it->is_string()) throw SchemaError("salaries must be numeral strings");
    salaries[w] = parse_rational(it->get<std::string>());
  }
  return salaries;
}

bool quota_condition_holds(const MarketInstance& inst, bool r_mode) {
  for (const ConstraintFamily& family : inst.constraints) {
    if (r_mode) {
      if (!is_generalized_polymatroid(family).holds()) return false;
    } else {
      if (!is_polymatroid(family).holds()) return false;
    }
  }
  return true;
}

struct Options {
  std::string instance_path;
  std::string arrangement_path;
  std::string salaries_path;
  std::string firm;
  std::string output_path;
  std::string dump_lp_path;
  std::string fixture;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::uint64_t assign_cap = kDefaultAssignCap;
  bool r_mode = false;
  bool one_firm = false;
  bool no_fallback = false;
};

int run_validate(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  std::cerr << "ok: " << inst.workers.size() << " workers, " << inst.firms.size() << " firms\n";
  emit(serialize_instance(inst), opt.output_path);
  return kExitOk;
}

int run_analyze(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  emit(analyze_report(inst, opt.enum_cap), opt.output_path);
  return kExitOk;
}

int run_solve(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);

  if (opt.one_firm || (inst.mode == PreferenceMode::General && inst.num_firms() == 1)) {
    Arrangement arr = solve_one_firm(inst, opt.enum_cap);
    emit(one_firm_certificate(inst, arr, opt.enum_cap, opt.assign_cap), opt.output_path);
    return kExitOk;
  }
  if (inst.mode == PreferenceMode::General) {
    std::cerr << "error: general valuations are supported for single-firm markets only; "
                 "multi-firm solving requires linear preferences\n";
    return kExitInvalidInstance;
  }

  PipelineResult result = solve_assignment(inst, opt.r_mode, !opt.no_fallback);
  if (!opt.dump_lp_path.empty()) emit(dump_lp(result.artifacts.problem), opt.dump_lp_path);
  emit(solve_certificate(inst, result, opt.r_mode, opt.enum_cap, opt.assign_cap),
       opt.output_path);
  if (!result.integral) {
    std::cerr << "fractional optimum; no assignment extracted\n";
    return quota_condition_holds(inst, opt.r_mode) ? kExitNoStableArrangement : kExitFractional;
  }
  return kExitOk;
}

int run_check(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  Arrangement arr = parse_arrangement(inst, read_file(opt.arrangement_path));
  StabilityVerdict verdict =
      opt.r_mode ? check_r_stable(inst, arr, opt.enum_cap) : check_stable(inst, arr, opt.enum_cap);
  emit(check_report(inst, verdict, compute_payoffs(inst, arr), opt.r_mode), opt.output_path);
  return kExitOk;
}

int run_demand(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  int firm = inst.firm_id(opt.firm);
  if (firm < 0) throw ReferenceError("unknown firm '" + opt.firm + "'");
  std::vector<Rational> salaries = load_salary_vector(inst, opt.salaries_path);
  emit(demand_report(inst, firm, salaries, demand_correspondence(inst, firm, salaries, opt.enum_cap)),
       opt.output_path);
  return kExitOk;
}

int run_exists(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  ExistenceVerdict verdict = stable_exists(inst, opt.enum_cap, opt.assign_cap);
  emit(exists_report(inst, verdict), opt.output_path);
  return verdict.exists ? kExitOk : kExitNoStableArrangement;
}

int run_oracle(const Options& opt) {
  MarketInstance inst = load_instance(opt.instance_path);
  EfficientSet result = brute_force_efficient(inst, opt.r_mode, opt.assign_cap);
  emit(oracle_report(inst, result), opt.output_path);
  return kExitOk;
}

int run_reproduce(const Options& opt) {
  Fixture fixture = load_fixture(opt.fixture);
  std::cout << fixture.name << ": " << fixture.description << "\n";
  bool all_ok = true;
  for (const Expectation& expectation : fixture.expectations) {
    bool ok = false;
    try {
      ok = expectation.run(fixture.instance);
    } catch (const Error& e) {
      std::cout << "  [fail] " << expectation.description << " (" << e.what() << ")\n";
      all_ok = false;
      continue;
    }
    std::cout << (ok ? "  [pass] " : "  [fail] ") << expectation.description << "\n";
    all_ok = all_ok && ok;
  }
  return all_ok ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver and verifier for quota-constrained matching markets with transfers"};
  app.require_subcommand(1);

  Options opt;

  auto add_caps = [&](CLI::App* cmd) {
    cmd->add_option("--enum-cap", opt.enum_cap, "subset enumeration budget (default 2^20)");
    cmd->add_option("--assign-cap", opt.assign_cap, "assignment enumeration budget (default 1e7)");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", opt.output_path, "write the output document here");
  };

  CLI::App* validate = app.add_subcommand("validate", "parse and re-serialize an instance");
  validate->add_option("instance", opt.instance_path)->required();
  add_output(validate);

  CLI::App* analyze = app.add_subcommand("analyze", "classify each firm's constraint family");
  analyze->add_option("instance", opt.instance_path)->required();
  add_caps(analyze);
  add_output(analyze);

  CLI::App* solve = app.add_subcommand("solve", "compute a stable arrangement");
  solve->add_option("instance", opt.instance_path)->required();
  solve->add_flag("--r", opt.r_mode, "relaxed mode: enforce lower quotas, drop firm rationality");
  solve->add_flag("--one-firm", opt.one_firm, "use the single-firm construction");
  solve->add_flag("--no-fallback", opt.no_fallback, "disable the integral vertex search");
  solve->add_option("--dump-lp", opt.dump_lp_path, "also write the LP in explicit form");
  add_caps(solve);
  add_output(solve);

  CLI::App* check = app.add_subcommand("check", "verify an arrangement document");
  check->add_option("instance", opt.instance_path)->required();
  check->add_option("--arrangement", opt.arrangement_path, "arrangement document")->required();
  check->add_flag("--r", opt.r_mode, "check relaxed stability");
  add_caps(check);
  add_output(check);

  CLI::App* demand = app.add_subcommand("demand", "optimal worker sets at given salaries");
  demand->add_option("instance", opt.instance_path)->required();
  demand->add_option("--firm", opt.firm, "firm id")->required();
  demand->add_option("--salaries", opt.salaries_path, "salary document {worker: numeral}")
      ->required();
  add_caps(demand);
  add_output(demand);

  CLI::App* exists = app.add_subcommand("exists", "decide whether a stable arrangement exists");
  exists->add_option("instance", opt.instance_path)->required();
  add_caps(exists);
  add_output(exists);

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive maximum total match value");
  oracle->add_option("instance", opt.instance_path)->required();
  oracle->add_flag("--r", opt.r_mode, "restrict to assignments satisfying all quotas");
  add_caps(oracle);
  add_output(oracle);

  CLI::App* reproduce = app.add_subcommand("reproduce", "run a bundled fixture's expectations");
  reproduce->add_option("fixture", opt.fixture)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(opt);
    if (analyze->parsed()) return run_analyze(opt);
    if (solve->parsed()) return run_solve(opt);
    if (check->parsed()) return run_check(opt);
    if (demand->parsed()) return run_demand(opt);
    if (exists->parsed()) return run_exists(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (reproduce->parsed()) return run_reproduce(opt);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const NoFeasibleAssignment& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoStableArrangement;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const ValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const ReferenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const ModeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const LowerBoundPresent& e) {
    std::cerr << "error: " << e.what() << " (run with --r)\n";
    return kExitInvalidInstance;
  } catch (const MultiFirmError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const UnknownFixture& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInstance;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
