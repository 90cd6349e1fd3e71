#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "xlogic/io/json_util.hpp"
#include "xlogic/logic.hpp"

namespace xlogic::io {

struct FormulaProperties {
  std::optional<bool> test_once;  // of the graph the formula came from, if any
};

// Nodes are listed children-first with dense ids; the root is the last one.
inline json formula_to_json(Formula f, std::optional<std::string> class_label = std::nullopt,
                            FormulaProperties props = {}) {
  const auto& table = f.table();
  std::unordered_map<std::uint32_t, std::size_t> ids;
  json nodes = json::array();
  for (Formula g : xlogic::detail::topological(f)) {
    json n{{"id", nodes.size()}};
    switch (g.kind()) {
      case NodeKind::top: n["type"] = "true"; break;
      case NodeKind::bottom: n["type"] = "false"; break;
      case NodeKind::literal:
        n["type"] = "literal";
        n["var"] = table[g.var()].name;
        n["states"] = states_to_json(table, g.var(), g.states());
        break;
      case NodeKind::conj:
      case NodeKind::disj: {
        n["type"] = g.is_and() ? "and" : "or";
        json kids = json::array();
        for (Formula c : g.children()) kids.push_back(ids.at(c.id()));
        n["children"] = kids;
        break;
      }
    }
    ids.emplace(g.id(), nodes.size());
    nodes.push_back(n);
  }
  json doc{{"format", "xlogic-formula"},
           {"version", 1},
           {"variables", variables_to_json(table)},
           {"root", ids.at(f.id())},
           {"nodes", nodes},
           {"properties",
            {{"or_decomposable", is_or_decomposable(f)},
             {"test_once", props.test_once ? json(*props.test_once) : json()},
             {"node_count", node_count(f)},
             {"edge_count", edge_count(f)}}}};
  if (class_label) doc["class"] = *class_label;
  return doc;
}

// Rebuilds a formula document inside `m`; variables are matched by name and
// must agree on their states.
inline Formula formula_from_json(const json& doc, Manager& m) {
  using namespace detail;
  if (string_of(field(doc, "format", "formula document"), "format") != "xlogic-formula")
    shape_error("formula document", "format must be 'xlogic-formula'");
  if (integer_of(field(doc, "version", "formula document"), "version") != 1)
    shape_error("formula document", "unsupported version");
  const auto& table = m.table();
  auto declared = variables_from_json(field(doc, "variables", "formula document"));
  for (const auto& v : declared.variables()) {
    auto idx = table.var(v.name);
    if (table[idx].states != v.states)
      throw error(errc::validation, "variable '" + v.name + "' has different states in the document");
  }
  const auto& nodes = array_of(field(doc, "nodes", "formula document"), "nodes");
  std::vector<std::optional<Formula>> built(nodes.size());
  for (const auto& n : nodes) {
    auto id = static_cast<std::size_t>(integer_of(field(n, "id", "node"), "node id"));
    const std::string where = "node " + std::to_string(id);
    if (id >= nodes.size() || built[id]) throw error(errc::validation, where + ": duplicate or out-of-range id");
    auto type = string_of(field(n, "type", where), where + " type");
    Formula f;
    if (type == "true") {
      f = m.top();
    } else if (type == "false") {
      f = m.bottom();
    } else if (type == "literal") {
      auto var = table.var(string_of(field(n, "var", where), where + " var"));
      f = m.literal(Literal(table, var, states_from_json(table, var, field(n, "states", where))));
    } else if (type == "and" || type == "or") {
      std::vector<Formula> kids;
      for (const auto& c : array_of(field(n, "children", where), where + " children")) {
        auto k = static_cast<std::size_t>(integer_of(c, where + " child"));
        if (k >= built.size() || !built[k])
          throw error(errc::validation, where + ": child " + std::to_string(k) + " is not defined before use");
        kids.push_back(*built[k]);
      }
      f = type == "and" ? m.conj(kids) : m.disj(kids);
    } else {
      shape_error(where, "unknown node type '" + type + "'");
    }
    built[id] = f;
  }
  auto root = static_cast<std::size_t>(integer_of(field(doc, "root", "formula document"), "root"));
  if (root >= built.size() || !built[root]) throw error(errc::validation, "root refers to an undefined node");
  return *built[root];
}

// Reads a standalone document into a fresh manager over its own variables.
inline std::pair<std::shared_ptr<Manager>, Formula> formula_from_json(const json& doc) {
  auto m = Manager::create(variables_from_json(detail::field(doc, "variables", "formula document")));
  Formula f = formula_from_json(doc, *m);
  return {m, f};
}

}  // namespace xlogic::io
