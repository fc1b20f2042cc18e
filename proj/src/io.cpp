#include "fairdiv/io.hpp"

#include <sstream>
#include <stdexcept>

#include "fairdiv/error.hpp"

namespace fairdiv::io {

Json rational_to_json(const Rational& q) {
  if (is_integer(q)) return q.numerator();
  return to_string(q);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    throw std::invalid_argument("rational values must be integers or \"p/q\" strings, got float " +
                                j.dump());
  }
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

namespace {

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(rational_to_json(q));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json bundle_to_json(Bundle b) { return b.items(); }

Bundle bundle_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of item indices");
  Bundle b;
  for (const auto& e : j) {
    const auto g = e.get<int>();
    if (g < 0 || g >= kMaxItems) throw std::invalid_argument("item index out of range");
    b.insert(g);
  }
  return b;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Json valuation_to_json(const Valuation& v) {
  Json out;
  out["type"] = std::string(to_string(v.kind()));
  std::visit(
      [&](const auto& repr) {
        using T = std::decay_t<decltype(repr)>;
        if constexpr (std::is_same_v<T, Additive> || std::is_same_v<T, PairDemand>) {
          out["values"] = rationals_to_json(repr.values);
        } else if constexpr (std::is_same_v<T, PersonalizedBivalued>) {
          out["a"] = rational_to_json(repr.a);
          out["b"] = rational_to_json(repr.b);
          out["high"] = bundle_to_json(repr.high);
        } else if constexpr (std::is_same_v<T, ExplicitTable>) {
          out["values"] = rationals_to_json(repr.table);
        } else {
          Json ones = Json::array();
          for (std::size_t s = 0; s < repr.ones.size(); ++s) {
            if (repr.ones[s]) ones.push_back(s);
          }
          out["ones"] = std::move(ones);
        }
      },
      v.repr());
  return out;
}

Valuation valuation_from_json(const Json& j, int m) {
  const auto type = field(j, "type").get<std::string>();
  if (type == "additive" || type == "pair_demand") {
    auto values = rationals_from_json(field(j, "values"));
    if (static_cast<int>(values.size()) != m) {
      throw std::invalid_argument(type + " valuation lists " + std::to_string(values.size()) +
                                  " values for m=" + std::to_string(m));
    }
    return type == "additive" ? Valuation::additive(std::move(values))
                              : Valuation::pair_demand(std::move(values));
  }
  if (type == "personalized_bivalued") {
    return Valuation::personalized_bivalued(m, rational_from_json(field(j, "a")),
                                            rational_from_json(field(j, "b")),
                                            bundle_from_json(field(j, "high")));
  }
  if (type == "table") return Valuation::table(m, rationals_from_json(field(j, "values")));
  if (type == "binary_table") {
    if (m < 0 || m > kMaxTableItems) throw InvalidInstance("binary table over too many items");
    std::vector<bool> ones(std::size_t{1} << m, false);
    for (const auto& e : field(j, "ones")) {
      const auto s = e.get<std::uint64_t>();
      if (s >= ones.size()) throw std::invalid_argument("binary table mask out of range");
      ones[s] = true;
    }
    return Valuation::binary_table(m, std::move(ones));
  }
  throw std::invalid_argument("unknown valuation type \"" + type + "\"");
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json out;
  out["n"] = inst.agent_count();
  out["m"] = inst.item_count();
  Json valuations = Json::array();
  for (const auto& v : inst.valuations()) valuations.push_back(valuation_to_json(v));
  out["valuations"] = std::move(valuations);
  out["flags"] = {{"monotone_required", inst.flags().monotone_required},
                  {"normalized_required", inst.flags().normalized_required}};
  if (!inst.labels().empty()) out["labels"] = inst.labels();
  return out;
}

Instance instance_from_json(const Json& j) {
  try {
    const int n = field(j, "n").get<int>();
    const int m = field(j, "m").get<int>();
    const auto& vals = field(j, "valuations");
    if (!vals.is_array()) throw std::invalid_argument("\"valuations\" must be an array");
    std::vector<Valuation> valuations;
    for (const auto& v : vals) valuations.push_back(valuation_from_json(v, m));
    InstanceFlags flags;
    if (j.contains("flags")) {
      const auto& f = j.at("flags");
      flags.monotone_required = f.value("monotone_required", true);
      flags.normalized_required = f.value("normalized_required", true);
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Instance(n, m, std::move(valuations), flags, std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json allocation_to_json(const Allocation& x) {
  Json bundles = Json::array();
  for (Bundle b : x.bundles) bundles.push_back(bundle_to_json(b));
  return {{"bundles", std::move(bundles)}};
}

Allocation allocation_from_json(const Json& j) {
  try {
    Allocation x;
    for (const auto& b : field(j, "bundles")) x.bundles.push_back(bundle_from_json(b));
    return x;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed allocation document: ") + e.what());
  }
}

Json report_to_json(const FairnessReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json entry = {{"envier", v.envier},
                  {"envier_value", rational_to_json(v.envier_value)},
                  {"threshold", rational_to_json(v.threshold)}};
    if (v.envied >= 0) entry["envied"] = v.envied;
    if (v.item) entry["item"] = *v.item;
    if (!v.partition.empty()) {
      Json parts = Json::array();
      for (Bundle b : v.partition) parts.push_back(bundle_to_json(b));
      entry["partition"] = std::move(parts);
    }
    violations.push_back(std::move(entry));
  }
  return {{"notion", std::string(to_string(report.notion))},
          {"holds", report.holds},
          {"violations", std::move(violations)}};
}

namespace {

constexpr const char* kAgentColors[] = {"blue", "green", "yellow", "orange", "pink", "cyan"};

std::string node_id(const CompatibilityNode& node) {
  std::string out = "a" + std::to_string(node.agent);
  for (Item g : node.pair.items()) out += "_" + std::to_string(g);
  return out;
}

std::string pair_label(const Instance& inst, Bundle pair) {
  std::string out = "{";
  bool first = true;
  for (Item g : pair.items()) {
    if (!first) out += ",";
    out += inst.labels().empty() ? std::to_string(g) : inst.labels()[g];
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string compatibility_graph_dot(const Instance& inst, const CompatibilityGraph& graph) {
  const auto degree = graph.degrees();
  std::ostringstream out;
  out << "graph compat {\n";
  out << "  node [style=filled];\n";
  for (std::size_t p = 0; p < graph.nodes.size(); ++p) {
    if (degree[p] == 0) continue;
    const auto& node = graph.nodes[p];
    out << "  " << node_id(node) << " [label=\"" << pair_label(inst, node.pair)
        << "\", fillcolor=" << kAgentColors[node.agent % std::size(kAgentColors)] << "];\n";
  }
  for (auto [p, q] : graph.edges) {
    out << "  " << node_id(graph.nodes[p]) << " -- " << node_id(graph.nodes[q]) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string cut_and_choose_dot(const std::vector<Agent>& pi, Agent s) {
  std::ostringstream out;
  out << "digraph ccg {\n";
  for (std::size_t i = 0; i < pi.size(); ++i) {
    out << "  " << i << " [label=\"" << i << "\"" << (static_cast<Agent>(i) == s ? ", shape=doublecircle" : "")
        << "];\n";
  }
  for (std::size_t i = 0; i < pi.size(); ++i) out << "  " << i << " -> " << pi[i] << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace fairdiv::io
