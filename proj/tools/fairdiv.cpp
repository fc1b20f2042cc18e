// fairdiv: generate instances, run the allocation procedures, check fairness
// notions, run the exhaustive verifiers and export graphs.
//
// Exit codes: 0 success / property holds, 1 property fails, 2 usage or
// valuation-class error, 3 enumeration budget or feasibility trip.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/instances.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracles.hpp"

namespace {

using namespace fairdiv;
using io::Json;

enum Exit { kOk = 0, kFails = 1, kUsage = 2, kTrip = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Json parse_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) {
  try {
    return io::instance_from_json(parse_json(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Allocation load_allocation(const Instance& inst, const std::string& path) {
  Allocation x;
  try {
    x = io::allocation_from_json(parse_json(path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (auto bad = validate_allocation(inst, x)) throw UsageError(path + ": " + bad->message);
  return x;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Requirement parse_requirement(const std::string& text) {
  if (text == "any") return Requirement::kAny;
  if (text == "yes") return Requirement::kYes;
  if (text == "no") return Requirement::kNo;
  throw UsageError("requirement must be any, yes or no, got " + text);
}

// -- gen --------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  int n = 2;
  int m = 4;
  std::uint64_t seed = 0;
  bool no_zero_b = false;
  int max_value = 9;
  std::string monotone = "any";
  std::string normalized = "yes";
  std::uint64_t rejection_limit = 100'000;
  std::string out;
};

int run_gen(const GenArgs& args) {
  auto kind = parse_generator_kind(args.kind);
  if (!kind) throw UsageError("unknown generator kind '" + args.kind + "'");
  GeneratorSpec spec;
  spec.kind = *kind;
  spec.seed = args.seed;
  spec.params.n = args.n;
  spec.params.m = args.m;
  spec.params.allow_zero_b = !args.no_zero_b;
  spec.params.max_value = args.max_value;
  spec.params.monotone = parse_requirement(args.monotone);
  spec.params.normalized = parse_requirement(args.normalized);
  spec.params.rejection_limit = args.rejection_limit;
  const auto sample = sample_random(spec);
  if (spec.kind == GeneratorKind::kRandomBinaryMmsFeasible) {
    std::cerr << "rejections: " << sample.rejections << "\n";
  }
  write_output(args.out, io::dump(io::instance_to_json(sample.instance)));
  return kOk;
}

// -- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string algo;
  std::string in;
  std::string out;
  bool trace = false;
  std::string trace_file;
  int leftover_owner = 0;
};

int run_solve(const SolveArgs& args) {
  const auto inst = load_instance(args.in);
  Allocation x;
  std::string trace;
  if (args.algo == "maf") {
    auto r = match_and_freeze(inst);
    x = std::move(r.allocation);
    trace = format_trace(r.trace);
  } else if (args.algo == "ccg") {
    const auto budget = EnumerationBudget::from_env();
    for (Agent i = 0; i < inst.agent_count(); ++i) {
      if (!is_binary_valued(inst.valuation(i))) {
        throw UnsupportedValuation("cut-and-choose needs binary valuations; agent " +
                                   std::to_string(i) + " is not binary-valued");
      }
      if (!check_mms_feasible(inst.valuation(i), budget)) {
        std::cerr << "error: agent " << i
                  << " is not MMS-feasible; cut-and-choose is not guaranteed to terminate\n";
        return kTrip;
      }
    }
    try {
      auto r = cut_and_choose_graph_procedure(inst);
      x = std::move(r.allocation);
      trace = format_trace(r.trace);
    } catch (const NonTermination& e) {
      std::cerr << "error: " << e.what() << " (input suspected not MMS-feasible)\n";
      return kTrip;
    }
  } else if (args.algo == "rrr") {
    auto r = reversed_round_robin(inst, args.leftover_owner);
    x = std::move(r.allocation);
    std::ostringstream ss;
    ss << "reversed-round-robin padded=" << r.padded_item_count << "\n";
    ss << "first";
    for (Item g : r.first_picks) ss << ' ' << g;
    ss << "\nsecond";
    for (Item g : r.second_picks) ss << ' ' << g;
    ss << "\nleftover-owner " << args.leftover_owner << "\n";
    trace = ss.str();
  } else {
    throw UsageError("unknown algorithm '" + args.algo + "' (expected maf, ccg or rrr)");
  }
  write_output(args.out, io::dump(io::allocation_to_json(x)));
  if (args.trace || !args.trace_file.empty()) {
    if (args.trace_file.empty()) {
      std::cerr << trace;
    } else {
      write_output(args.trace_file, trace);
    }
  }
  return kOk;
}

// -- check ------------------------------------------------------------------

struct CheckArgs {
  std::string notion;
  std::string in;
  std::string alloc;
};

int run_check(const CheckArgs& args) {
  const auto inst = load_instance(args.in);
  const auto budget = EnumerationBudget::from_env();
  if (args.notion == "feasible") {
    Json infeasible = Json::array();
    for (Agent i = 0; i < inst.agent_count(); ++i) {
      if (!check_mms_feasible(inst.valuation(i), budget)) infeasible.push_back(i);
    }
    const bool holds = infeasible.empty();
    std::cout << io::dump({{"notion", "feasible"}, {"holds", holds}, {"infeasible_agents", infeasible}});
    return holds ? kOk : kFails;
  }
  const auto notion = parse_fairness_notion(args.notion);
  if (!notion) throw UsageError("unknown notion '" + args.notion + "'");
  if (args.alloc.empty()) throw UsageError("--alloc is required for --notion " + args.notion);
  const auto x = load_allocation(inst, args.alloc);
  const auto report = check(inst, x, *notion, budget);
  std::cout << io::dump(io::report_to_json(report));
  return report.holds ? kOk : kFails;
}

// -- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string claim;
  std::string in;
};

int run_verify(const VerifyArgs& args) {
  const auto inst = load_instance(args.in);
  const auto budget = EnumerationBudget::from_env();
  const auto start = std::chrono::steady_clock::now();
  Json out = {{"claim", args.claim}};
  bool holds = false;

  if (args.claim == "no-pmms") {
    const auto r = exists_fair_allocation(inst, FairnessNotion::kPMMS, budget);
    out["scanned"] = r.scanned;
    out["found"] = r.found ? io::allocation_to_json(*r.found) : Json(nullptr);
    holds = !r.found;
    const int n = inst.agent_count();
    const int m = inst.item_count();
    if (n > 0 && m % n == 0 && saturating_pow(n, m) <= budget.max_evaluations) {
      const auto balanced = balanced_allocations(n, m);
      FairShareCache cache(inst, budget);
      std::size_t failing = 0;
      for (const auto& x : balanced) failing += check_pmms(inst, x, cache).holds ? 0 : 1;
      out["balanced"] = {{"count", balanced.size()}, {"failing", failing}};
    }
  } else if (args.claim == "mms-exists") {
    Json shares = Json::array();
    for (Agent i = 0; i < inst.agent_count(); ++i) {
      shares.push_back(io::rational_to_json(
          mu(inst.valuation(i), Bundle::full(inst.item_count()), inst.agent_count(), budget).mu));
    }
    const auto r = exists_fair_allocation(inst, FairnessNotion::kMMS, budget);
    out["mms"] = std::move(shares);
    out["scanned"] = r.scanned;
    out["found"] = r.found ? io::allocation_to_json(*r.found) : Json(nullptr);
    holds = r.found.has_value();
  } else if (args.claim == "mnw-not-efx") {
    const auto r = nash_welfare_maximizers(inst, budget);
    Json maximizers = Json::array();
    holds = !r.argmax.empty();
    for (const auto& x : r.argmax) {
      const bool efx = check_efx(inst, x).holds;
      holds = holds && !efx;
      auto entry = io::allocation_to_json(x);
      entry["efx"] = efx;
      maximizers.push_back(std::move(entry));
    }
    out["scanned"] = r.scanned;
    out["max_nw"] = io::rational_to_json(r.max_nw);
    out["maximizers"] = std::move(maximizers);
  } else if (args.claim == "triangle-free") {
    const auto graph = pair_compatibility_graph(inst, budget);
    const auto degree = graph.degrees();
    const auto triangle = graph.find_triangle();
    out["nodes"] = graph.nodes.size();
    out["nodes_with_edges"] = std::count_if(degree.begin(), degree.end(), [](int d) { return d > 0; });
    out["edges"] = graph.edges.size();
    if (triangle) {
      Json nodes = Json::array();
      for (int p : *triangle) {
        nodes.push_back({{"agent", graph.nodes[p].agent}, {"pair", graph.nodes[p].pair.items()}});
      }
      out["triangle"] = std::move(nodes);
    } else {
      out["triangle"] = nullptr;
    }
    holds = !triangle;
  } else {
    throw UsageError("unknown claim '" + args.claim +
                     "' (expected no-pmms, mms-exists, mnw-not-efx or triangle-free)");
  }
  out["holds"] = holds;
  out["time_ms"] = elapsed_ms(start);
  std::cout << io::dump(out);
  return holds ? kOk : kFails;
}

// -- export-graph -----------------------------------------------------------

struct ExportArgs {
  std::string in;
  std::string kind;
  std::string dot;
  std::string alloc;
  int iteration = 0;
};

int run_export(const ExportArgs& args) {
  const auto inst = load_instance(args.in);
  const auto budget = EnumerationBudget::from_env();
  std::string text;
  if (args.kind == "compat") {
    text = io::compatibility_graph_dot(inst, pair_compatibility_graph(inst, budget));
  } else if (args.kind == "ccg") {
    const auto initial = args.alloc.empty() ? round_robin_allocation(inst.agent_count(), inst.item_count())
                                            : load_allocation(inst, args.alloc);
    std::optional<CcgTrace> trace;
    try {
      trace = cut_and_choose_graph_procedure(inst, initial).trace;
    } catch (const NonTermination& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kTrip;
    }
    if (trace->iterations.empty()) {
      // Already PMMS: every agent points at agent 0.
      text = io::cut_and_choose_dot(build_cut_and_choose_graph(inst, initial, 0), 0);
    } else {
      if (args.iteration < 0 || args.iteration >= static_cast<int>(trace->iterations.size())) {
        throw UsageError("iteration " + std::to_string(args.iteration) + " out of range; the run has " +
                         std::to_string(trace->iterations.size()) + " iterations");
      }
      const auto& it = trace->iterations[args.iteration];
      text = io::cut_and_choose_dot(it.pi, it.s);
    }
  } else {
    throw UsageError("unknown graph kind '" + args.kind + "' (expected compat or ccg)");
  }
  write_output(args.dot, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair division of indivisible goods: EFX, PMMS and MMS tooling"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write an instance document");
  gen_cmd->add_option("--kind", gen.kind,
                      "stars, separation3, mnw, pmms-not-efx, table1, random-bivalued, "
                      "random-factored-bivalued, random-pair-demand, random-binary-mms-feasible, "
                      "random-binary-additive")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Agents");
  gen_cmd->add_option("--m", gen.m, "Items (random kinds)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_flag("--no-zero-b", gen.no_zero_b, "Random bivalued: forbid b = 0");
  gen_cmd->add_option("--max-value", gen.max_value, "Largest integer item value");
  gen_cmd->add_option("--monotone", gen.monotone, "Binary tables: any, yes or no");
  gen_cmd->add_option("--normalized", gen.normalized, "Binary tables: any, yes or no");
  gen_cmd->add_option("--rejection-limit", gen.rejection_limit, "Binary sampler proposal cap");
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run an allocation procedure");
  solve_cmd->add_option("--algo", solve.algo, "maf, ccg or rrr")->required();
  solve_cmd->add_option("--in", solve.in, "Instance document")->required();
  solve_cmd->add_option("--out", solve.out, "Allocation output (default stdout)");
  solve_cmd->add_flag("--trace", solve.trace, "Write the execution trace to stderr");
  solve_cmd->add_option("--trace-file", solve.trace_file, "Write the execution trace to a file");
  solve_cmd->add_option("--leftover-owner", solve.leftover_owner, "rrr: receiver of unpicked items");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Check a fairness notion");
  check_cmd->add_option("--notion", chk.notion, "efx, efx+, pmms, mms or feasible")->required();
  check_cmd->add_option("--in", chk.in, "Instance document")->required();
  check_cmd->add_option("--alloc", chk.alloc, "Allocation document");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive verifier");
  verify_cmd->add_option("--claim", verify.claim, "no-pmms, mms-exists, mnw-not-efx or triangle-free")
      ->required();
  verify_cmd->add_option("--in", verify.in, "Instance document")->required();

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export-graph", "Export a graph as DOT");
  export_cmd->add_option("--in", exp.in, "Instance document")->required();
  export_cmd->add_option("--kind", exp.kind, "compat or ccg")->required();
  export_cmd->add_option("--dot", exp.dot, "Output file (default stdout)");
  export_cmd->add_option("--alloc", exp.alloc, "ccg: starting allocation (default round robin)");
  export_cmd->add_option("--iteration", exp.iteration, "ccg: iteration whose graph is exported");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*check_cmd) return run_check(chk);
    if (*verify_cmd) return run_verify(verify);
    if (*export_cmd) return run_export(exp);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTrip;
  } catch (const RejectionLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTrip;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fairdiv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
