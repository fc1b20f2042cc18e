// Thin JSON-string bindings; python/fairdiv wraps them with dicts and Fractions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/instances.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracles.hpp"

namespace py = pybind11;
using namespace fairdiv;

namespace {

Instance load_instance(const std::string& text) { return io::instance_from_json(io::Json::parse(text)); }

Allocation load_allocation(const std::string& text) { return io::allocation_from_json(io::Json::parse(text)); }

Requirement parse_requirement(const std::string& text) {
  if (text == "any") return Requirement::kAny;
  if (text == "yes") return Requirement::kYes;
  if (text == "no") return Requirement::kNo;
  throw std::invalid_argument("requirement must be any, yes or no, got " + text);
}

FairnessNotion notion_of(const std::string& text) {
  auto notion = parse_fairness_notion(text);
  if (!notion) throw std::invalid_argument("unknown notion '" + text + "'");
  return *notion;
}

std::string generate(const std::string& kind, int n, int m, std::uint64_t seed, bool allow_zero_b, int max_value,
                     const std::string& monotone, const std::string& normalized, std::uint64_t rejection_limit) {
  auto parsed = parse_generator_kind(kind);
  if (!parsed) throw std::invalid_argument("unknown generator kind '" + kind + "'");
  GeneratorSpec spec;
  spec.kind = *parsed;
  spec.seed = seed;
  spec.params.n = n;
  spec.params.m = m;
  spec.params.allow_zero_b = allow_zero_b;
  spec.params.max_value = max_value;
  spec.params.monotone = parse_requirement(monotone);
  spec.params.normalized = parse_requirement(normalized);
  spec.params.rejection_limit = rejection_limit;
  return io::dump(io::instance_to_json(sample_random(spec).instance));
}

std::pair<std::string, std::string> solve(const std::string& instance, const std::string& algo, Agent leftover_owner) {
  const auto inst = load_instance(instance);
  if (algo == "maf") {
    const auto r = match_and_freeze(inst);
    return {io::dump(io::allocation_to_json(r.allocation)), format_trace(r.trace)};
  }
  if (algo == "ccg") {
    const auto r = cut_and_choose_graph_procedure(inst);
    return {io::dump(io::allocation_to_json(r.allocation)), format_trace(r.trace)};
  }
  if (algo == "rrr") {
    const auto r = reversed_round_robin(inst, leftover_owner);
    return {io::dump(io::allocation_to_json(r.allocation)), ""};
  }
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

std::string check_allocation(const std::string& instance, const std::string& allocation, const std::string& notion) {
  const auto inst = load_instance(instance);
  const auto x = load_allocation(allocation);
  if (auto bad = validate_allocation(inst, x)) throw std::invalid_argument("invalid allocation");
  return io::dump(io::report_to_json(check(inst, x, notion_of(notion), EnumerationBudget::from_env())));
}

std::string maximin_share(const std::string& instance, Agent agent, const std::vector<Item>& items, int k) {
  const auto inst = load_instance(instance);
  if (agent < 0 || agent >= inst.agent_count()) throw std::invalid_argument("agent out of range");
  Bundle s;
  for (Item g : items) {
    if (g < 0 || g >= inst.item_count()) throw std::invalid_argument("item out of range");
    s = s | Bundle::of({g});
  }
  return to_string(mu(inst.valuation(agent), s, k, EnumerationBudget::from_env()).mu);
}

std::pair<std::optional<std::string>, std::uint64_t> find_fair(const std::string& instance, const std::string& notion) {
  const auto r = exists_fair_allocation(load_instance(instance), notion_of(notion), EnumerationBudget::from_env());
  std::optional<std::string> found;
  if (r.found) found = io::dump(io::allocation_to_json(*r.found));
  return {found, r.scanned};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto error = py::register_exception<Error>(m, "FairDivError", PyExc_RuntimeError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<UnsupportedValuation>(m, "UnsupportedValuation", error.ptr());
  py::register_exception<InvalidInstance>(m, "InvalidInstance", error.ptr());
  py::register_exception<NonTermination>(m, "NonTermination", error.ptr());
  py::register_exception<RejectionLimit>(m, "RejectionLimit", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const io::Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("generate", &generate, py::arg("kind"), py::arg("n") = 2, py::arg("m") = 4, py::arg("seed") = 0,
        py::arg("allow_zero_b") = true, py::arg("max_value") = 9, py::arg("monotone") = "any",
        py::arg("normalized") = "yes", py::arg("rejection_limit") = 100'000);
  m.def("solve", &solve, py::arg("instance"), py::arg("algo"), py::arg("leftover_owner") = 0);
  m.def("check", &check_allocation, py::arg("instance"), py::arg("allocation"), py::arg("notion"));
  m.def("maximin_share", &maximin_share, py::arg("instance"), py::arg("agent"), py::arg("items"), py::arg("k"));
  m.def("find_fair", &find_fair, py::arg("instance"), py::arg("notion"));
}
