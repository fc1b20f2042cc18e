#pragma once

// JSON documents for instances, allocations and reports, plus DOT export.
// Rationals are written as JSON integers when integral and as "p/q" strings
// otherwise; floats are rejected on input.

#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/oracles.hpp"

namespace fairdiv::io {

using Json = nlohmann::json;

Json rational_to_json(const Rational& q);
/// Accepts integers and strings ("p/q", "p", "2.5"). Throws std::invalid_argument.
Rational rational_from_json(const Json& j);

Json instance_to_json(const Instance& inst);
/// Throws std::invalid_argument on malformed documents and InvalidInstance
/// when the decoded instance violates its invariants.
Instance instance_from_json(const Json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

Json allocation_to_json(const Allocation& x);
Allocation allocation_from_json(const Json& j);

Json report_to_json(const FairnessReport& report);

/// Undirected graph of the compatible (agent, pair) nodes; isolated nodes are
/// left out. Item names come from the instance labels when present.
std::string compatibility_graph_dot(const Instance& inst, const CompatibilityGraph& graph);

/// Directed graph with one out-edge i -> pi[i] per agent; s is highlighted.
std::string cut_and_choose_dot(const std::vector<Agent>& pi, Agent s);

}  // namespace fairdiv::io
