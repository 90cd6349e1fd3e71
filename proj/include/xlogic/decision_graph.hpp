#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xlogic/classifier.hpp"

namespace xlogic {

struct GraphEdge {
  StateSet states;
  std::uint32_t child;
};

struct GraphNode {
  std::string id;
  std::optional<std::uint32_t> var;  // empty for leaves
  std::vector<GraphEdge> edges;
  std::uint32_t leaf_class = 0;

  bool is_leaf() const { return !var.has_value(); }

  static GraphNode leaf(std::string id, std::uint32_t cls) { return {std::move(id), std::nullopt, {}, cls}; }
  static GraphNode test(std::string id, std::uint32_t var, std::vector<GraphEdge> edges) {
    return {std::move(id), var, std::move(edges), 0};
  }
};

// Rooted DAG whose internal nodes test one variable; edge state sets at each
// node partition the variable's domain. Validated on construction.
class DecisionGraph {
 public:
  DecisionGraph(std::shared_ptr<const VariableTable> table, std::vector<std::string> classes,
                std::vector<GraphNode> nodes, std::uint32_t root)
      : table_(std::move(table)), classes_(std::move(classes)), nodes_(std::move(nodes)), root_(root) {
    validate();
  }

  const VariableTable& table() const { return *table_; }
  std::shared_ptr<const VariableTable> shared_table() const { return table_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(std::uint32_t i) const { return nodes_.at(i); }
  std::uint32_t root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& nd : nodes_) n += nd.edges.size();
    return n;
  }

  std::size_t classify(std::span<const std::uint32_t> world) const {
    std::uint32_t n = root_;
    while (!nodes_[n].is_leaf()) {
      const auto& nd = nodes_[n];
      auto s = world[*nd.var];
      for (const auto& e : nd.edges)
        if ((e.states >> s) & 1U) {
          n = e.child;
          break;
        }
    }
    return nodes_[n].leaf_class;
  }

  std::size_t classify(const Instance& inst) const { return classify(inst.states()); }

  // Children before parents, over nodes reachable from the root.
  std::vector<std::uint32_t> bottom_up_order() const {
    std::vector<std::uint32_t> order;
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root_, 0}};
    seen[root_] = 1;
    while (!stack.empty()) {
      auto& [n, next] = stack.back();
      if (next < nodes_[n].edges.size()) {
        auto c = nodes_[n].edges[next++].child;
        if (!seen[c]) {
          seen[c] = 1;
          stack.emplace_back(c, 0);
        }
      } else {
        order.push_back(n);
        stack.pop_back();
      }
    }
    return order;
  }

 private:
  void validate() const {
    std::vector<std::string> issues;
    const auto& t = *table_;
    if (nodes_.empty()) throw error(errc::validation, "decision graph has no nodes");
    if (root_ >= nodes_.size()) throw error(errc::validation, "root index out of range");
    for (const auto& nd : nodes_) {
      const std::string where = "node '" + nd.id + "': ";
      if (nd.is_leaf()) {
        if (nd.leaf_class >= classes_.size()) issues.push_back(where + "leaf class index out of range");
        continue;
      }
      if (*nd.var >= t.size()) {
        issues.push_back(where + "unknown variable");
        continue;
      }
      if (nd.edges.empty()) issues.push_back(where + "no outgoing edges");
      StateSet seen = 0;
      for (const auto& e : nd.edges) {
        if (e.child >= nodes_.size()) issues.push_back(where + "edge to unknown node");
        if (e.states == 0) issues.push_back(where + "edge with no states");
        if ((e.states & ~t.domain(*nd.var)) != 0) issues.push_back(where + "edge names a state outside the domain");
        if ((seen & e.states) != 0) issues.push_back(where + "edges overlap on '" + t[*nd.var].name + "'");
        seen |= e.states;
      }
      if (seen != t.domain(*nd.var) && !nd.edges.empty())
        issues.push_back(where + "edges do not cover every state of '" + t[*nd.var].name + "'");
    }
    if (issues.empty()) check_acyclic(issues);
    if (!issues.empty()) throw error(errc::validation, "invalid decision graph", std::move(issues));
  }

  void check_acyclic(std::vector<std::string>& issues) const {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<char> color(nodes_.size(), 0);
    for (std::uint32_t start = 0; start < nodes_.size(); ++start) {
      if (color[start]) continue;
      std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
      color[start] = 1;
      while (!stack.empty()) {
        auto& [n, next] = stack.back();
        if (next < nodes_[n].edges.size()) {
          auto c = nodes_[n].edges[next++].child;
          if (color[c] == 1) {
            issues.push_back("node '" + nodes_[c].id + "': cycle through this node");
            return;
          }
          if (color[c] == 0) {
            color[c] = 1;
            stack.emplace_back(c, 0);
          }
        } else {
          color[n] = 2;
          stack.pop_back();
        }
      }
    }
  }

  std::shared_ptr<const VariableTable> table_;
  std::vector<std::string> classes_;
  std::vector<GraphNode> nodes_;
  std::uint32_t root_;
};

// Disjunction of one term per root-to-leaf path ending in `cls`. Repeated
// tests on a path intersect; inconsistent paths are dropped.
inline Formula class_formula_dnf(Manager& m, const DecisionGraph& g, std::size_t cls, const Limits& limits = {}) {
  const auto& t = g.table();
  std::vector<Formula> terms;
  std::vector<StateSet> path(t.size());
  for (std::uint32_t v = 0; v < t.size(); ++v) path[v] = t.domain(v);
  std::size_t paths = 0;
  auto walk = [&](auto&& self, std::uint32_t n) -> void {
    const auto& nd = g.node(n);
    if (nd.is_leaf()) {
      if (++paths > limits.paths)
        throw error(errc::capacity, "decision graph has more than " + std::to_string(limits.paths) + " paths");
      if (nd.leaf_class != cls) return;
      std::vector<Formula> lits;
      for (std::uint32_t v = 0; v < t.size(); ++v) lits.push_back(m.literal(v, path[v]));
      terms.push_back(m.conj(lits));
      return;
    }
    auto v = *nd.var;
    StateSet saved = path[v];
    for (const auto& e : nd.edges) {
      path[v] = saved & e.states;
      if (path[v] != 0) self(self, e.child);
    }
    path[v] = saved;
  };
  walk(walk, g.root());
  return m.disj(terms);
}

// nnf(N) = ⋀ (ℓ'_i ∨ nnf(C_i)) over N's edges, ℓ'_i the complement of the
// edge literal; leaves map to ⊤ for `cls` and ⊥ otherwise. Linear in the
// graph size.
inline Formula class_formula_complement_nnf(Manager& m, const DecisionGraph& g, std::size_t cls) {
  const auto& t = g.table();
  std::vector<Formula> nnf(g.node_count());
  for (auto n : g.bottom_up_order()) {
    const auto& nd = g.node(n);
    if (nd.is_leaf()) {
      nnf[n] = m.constant(nd.leaf_class == cls);
      continue;
    }
    std::vector<Formula> parts;
    for (const auto& e : nd.edges)
      parts.push_back(m.disj({m.literal(*nd.var, t.domain(*nd.var) & ~e.states), nnf[e.child]}));
    nnf[n] = m.conj(parts);
  }
  return nnf[g.root()];
}

// The standard construction nnf(N) = ⋁ (ℓ_i ∧ nnf(C_i)) for the union of
// the given classes.
inline Formula class_formula_path_nnf(Manager& m, const DecisionGraph& g, std::span<const std::size_t> classes) {
  std::vector<Formula> nnf(g.node_count());
  for (auto n : g.bottom_up_order()) {
    const auto& nd = g.node(n);
    if (nd.is_leaf()) {
      nnf[n] = m.constant(std::find(classes.begin(), classes.end(), nd.leaf_class) != classes.end());
      continue;
    }
    std::vector<Formula> parts;
    for (const auto& e : nd.edges) parts.push_back(m.conj({m.literal(*nd.var, e.states), nnf[e.child]}));
    nnf[n] = m.disj(parts);
  }
  return nnf[g.root()];
}

// No root-to-leaf path tests a variable twice.
inline bool check_test_once(const DecisionGraph& g) {
  const auto words = (g.table().size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> below(g.node_count(), std::vector<std::uint64_t>(words, 0));
  for (auto n : g.bottom_up_order()) {
    const auto& nd = g.node(n);
    if (nd.is_leaf()) continue;
    auto v = *nd.var;
    auto& mine = below[n];
    for (const auto& e : nd.edges) {
      const auto& child = below[e.child];
      if ((child[v / 64] >> (v % 64)) & 1U) return false;
      for (std::size_t w = 0; w < words; ++w) mine[w] |= child[w];
    }
    mine[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  return true;
}

enum class GraphMethod { dnf, complement_nnf };

inline Classifier graph_classifier(std::shared_ptr<Manager> m, const DecisionGraph& g,
                                   GraphMethod method = GraphMethod::complement_nnf, const Limits& limits = {}) {
  if (&m->table() != &g.table()) throw error(errc::invalid_argument, "manager and graph use different tables");
  std::vector<Formula> fs;
  for (std::size_t c = 0; c < g.classes().size(); ++c)
    fs.push_back(method == GraphMethod::dnf ? class_formula_dnf(*m, g, c, limits)
                                            : class_formula_complement_nnf(*m, g, c));
  return Classifier(std::move(m), g.classes(), std::move(fs));
}

// ---------------------------------------------------------------------------
// Numeric threshold trees

struct NumericFeature {
  std::string name;
  std::optional<Decimal> min;
  std::optional<Decimal> max;
  std::string state_prefix;  // states are named prefix1, prefix2, ...
};

// Internal nodes split `feature < threshold` (child `below`) versus
// `feature >= threshold` (child `at_or_above`).
struct NumericNode {
  std::string id;
  bool leaf = false;
  std::uint32_t leaf_class = 0;
  std::uint32_t feature = 0;
  Decimal threshold;
  std::uint32_t below = 0;
  std::uint32_t at_or_above = 0;
};

struct NumericTree {
  std::vector<NumericFeature> features;
  std::vector<std::string> classes;
  std::vector<NumericNode> nodes;
  std::uint32_t root = 0;
};

struct DiscretizedTree {
  std::shared_ptr<const VariableTable> table;
  std::vector<std::uint32_t> feature_var;  // feature index -> table variable
  DecisionGraph graph;
};

// Each feature's sorted distinct thresholds cut its range into half-open
// intervals, which become the states of a discrete variable. Features the
// tree never tests are left out of the table.
inline DiscretizedTree discretize_numeric_tree(const NumericTree& tree) {
  std::vector<std::string> issues;
  if (tree.nodes.empty()) throw error(errc::validation, "numeric tree has no nodes");
  std::vector<std::vector<Decimal>> cuts(tree.features.size());
  for (const auto& nd : tree.nodes) {
    if (nd.leaf) continue;
    if (nd.feature >= tree.features.size()) {
      issues.push_back("node '" + nd.id + "': unknown feature");
      continue;
    }
    const auto& f = tree.features[nd.feature];
    if ((f.min && !(*f.min < nd.threshold)) || (f.max && !(nd.threshold < *f.max)))
      issues.push_back("node '" + nd.id + "': threshold " + nd.threshold.to_string() + " outside the range of '" +
                       f.name + "'");
    cuts[nd.feature].push_back(nd.threshold);
  }
  if (!issues.empty()) throw error(errc::validation, "invalid numeric tree", std::move(issues));

  auto table = std::make_shared<VariableTable>();
  std::vector<std::uint32_t> feature_var(tree.features.size(), unassigned);
  for (std::size_t i = 0; i < tree.features.size(); ++i) {
    auto& c = cuts[i];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.empty()) continue;
    const auto& f = tree.features[i];
    Variable v{f.name, {}, std::vector<Interval>{}};
    for (std::size_t k = 0; k <= c.size(); ++k) {
      v.states.push_back(f.state_prefix + std::to_string(k + 1));
      Interval iv{k == 0 ? f.min : std::optional<Decimal>(c[k - 1]), k == c.size() ? f.max : std::optional<Decimal>(c[k])};
      v.intervals->push_back(iv);
    }
    feature_var[i] = table->add(std::move(v));
  }

  std::vector<GraphNode> nodes;
  for (const auto& nd : tree.nodes) {
    if (nd.leaf) {
      nodes.push_back(GraphNode::leaf(nd.id, nd.leaf_class));
      continue;
    }
    const auto& c = cuts[nd.feature];
    auto p = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), nd.threshold) - c.begin());
    auto var = feature_var[nd.feature];
    StateSet below = full_set(p + 1);
    StateSet above = table->domain(var) & ~below;
    nodes.push_back(GraphNode::test(nd.id, var, {{below, nd.below}, {above, nd.at_or_above}}));
  }
  std::shared_ptr<const VariableTable> frozen = table;
  DecisionGraph g(frozen, tree.classes, std::move(nodes), tree.root);
  return DiscretizedTree{frozen, std::move(feature_var), std::move(g)};
}

// The state whose interval contains `value`.
inline std::uint32_t discretize_value(const VariableTable& table, std::uint32_t var, const Decimal& value) {
  const auto& v = table[var];
  if (!v.intervals) throw error(errc::invalid_argument, "variable '" + v.name + "' has no interval metadata");
  for (std::uint32_t s = 0; s < v.intervals->size(); ++s)
    if ((*v.intervals)[s].contains(value)) return s;
  throw error(errc::invalid_argument, "value " + value.to_string() + " lies outside every interval of '" + v.name + "'");
}

// ---------------------------------------------------------------------------
// Random forests

enum class TieRule { none, first, second };

class Forest {
 public:
  Forest(std::shared_ptr<const VariableTable> table, std::vector<std::string> classes, std::vector<DecisionGraph> trees,
         TieRule tie)
      : table_(std::move(table)), classes_(std::move(classes)), trees_(std::move(trees)), tie_(tie) {
    if (classes_.size() != 2) throw error(errc::validation, "forests must have exactly two classes");
    if (trees_.empty()) throw error(errc::validation, "forest has no trees");
    for (const auto& t : trees_) {
      if (&t.table() != table_.get()) throw error(errc::validation, "forest trees must share one variable table");
      if (t.classes() != classes_) throw error(errc::validation, "forest trees must share the forest's classes");
    }
    if (trees_.size() % 2 == 0 && tie_ == TieRule::none)
      throw error(errc::configuration, "even number of trees (" + std::to_string(trees_.size()) + ") needs a tie rule");
  }

  const VariableTable& table() const { return *table_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<DecisionGraph>& trees() const { return trees_; }
  TieRule tie_rule() const { return tie_; }

  // Votes class `cls` needs to win.
  std::size_t votes_needed(std::size_t cls) const {
    auto n = trees_.size();
    if (n % 2 == 1) return (n + 1) / 2;
    bool favored = (tie_ == TieRule::first && cls == 0) || (tie_ == TieRule::second && cls == 1);
    return favored ? n / 2 : n / 2 + 1;
  }

  std::size_t classify(std::span<const std::uint32_t> world) const {
    std::size_t votes0 = 0;
    for (const auto& t : trees_) votes0 += t.classify(world) == 0;
    return votes0 >= votes_needed(0) ? 0 : 1;
  }

  std::size_t classify(const Instance& inst) const { return classify(inst.states()); }

 private:
  std::shared_ptr<const VariableTable> table_;
  std::vector<std::string> classes_;
  std::vector<DecisionGraph> trees_;
  TieRule tie_;
};

// At-least-k-of-T majority circuit over the trees' complement-NNF formulas.
inline Formula forest_class_formula(Manager& m, const Forest& f, std::size_t cls) {
  std::vector<Formula> votes;
  for (const auto& t : f.trees()) votes.push_back(class_formula_complement_nnf(m, t, cls));
  const std::size_t n = votes.size();
  const std::size_t k = f.votes_needed(cls);
  // at_least[j] for the suffix starting at tree i, rolled over i.
  std::vector<Formula> at_least(k + 1, m.bottom());
  at_least[0] = m.top();
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = k; j >= 1; --j) at_least[j] = m.disj({m.conj({votes[i], at_least[j - 1]}), at_least[j]});
  }
  return at_least[k];
}

inline Classifier forest_classifier(std::shared_ptr<Manager> m, const Forest& f) {
  if (&m->table() != &f.table()) throw error(errc::invalid_argument, "manager and forest use different tables");
  std::vector<Formula> fs{forest_class_formula(*m, f, 0), forest_class_formula(*m, f, 1)};
  return Classifier(std::move(m), f.classes(), std::move(fs));
}

}  // namespace xlogic
