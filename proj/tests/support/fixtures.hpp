#pragma once

// Worked examples used across the test suites.

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "xlogic/xlogic.hpp"

namespace fixtures {

using namespace xlogic;

using LiteralSpec = std::pair<std::string, std::vector<std::string>>;

inline std::vector<Literal> literals(const VariableTable& t, std::initializer_list<LiteralSpec> spec) {
  std::vector<Literal> out;
  for (const auto& [var, states] : spec) {
    auto v = t.var(var);
    out.emplace_back(t, v, t.states(v, states));
  }
  return out;
}

inline Term term(const VariableTable& t, std::initializer_list<LiteralSpec> spec) { return Term(literals(t, spec)); }
inline Clause clause(const VariableTable& t, std::initializer_list<LiteralSpec> spec) { return Clause(literals(t, spec)); }

inline Formula lit(Manager& m, const std::string& var, std::vector<std::string> states) {
  auto v = m.table().var(var);
  return m.literal(v, m.table().states(v, states));
}

inline Instance instance(const VariableTable& t, std::initializer_list<std::pair<std::string, std::string>> spec) {
  std::vector<std::uint32_t> s(t.size(), 0);
  for (const auto& [var, state] : spec) {
    auto v = t.var(var);
    s[v] = t.state(v, state);
  }
  return Instance(t, s);
}

template <class Tag>
std::vector<LiteralSet<Tag>> sorted(std::vector<LiteralSet<Tag>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Three ternary features X, Y, Z.
inline std::shared_ptr<const VariableTable> xyz_table() {
  VariableTable t;
  t.add("X", {"x1", "x2", "x3"});
  t.add("Y", {"y1", "y2", "y3"});
  t.add("Z", {"z1", "z2", "z3"});
  return std::make_shared<const VariableTable>(std::move(t));
}

// X: x1x2 → c1, x3 → Y; Y: y1 → Z1, y2y3 → Z2; Z1: z1z3 → c1, z2 → c2;
// Z2: z2 → c2 (shared leaf), z1z3 → c3.
inline DecisionGraph xyz_graph(std::shared_ptr<const VariableTable> t) {
  const auto& tb = *t;
  auto X = tb.var("X"), Y = tb.var("Y"), Z = tb.var("Z");
  auto st = [&](std::uint32_t v, std::vector<std::string> names) { return tb.states(v, names); };
  std::vector<GraphNode> nodes{
      GraphNode::test("X", X, {{st(X, {"x1", "x2"}), 1}, {st(X, {"x3"}), 2}}),
      GraphNode::leaf("c1a", 0),
      GraphNode::test("Y", Y, {{st(Y, {"y1"}), 3}, {st(Y, {"y2", "y3"}), 4}}),
      GraphNode::test("Z1", Z, {{st(Z, {"z1", "z3"}), 5}, {st(Z, {"z2"}), 6}}),
      GraphNode::test("Z2", Z, {{st(Z, {"z2"}), 6}, {st(Z, {"z1", "z3"}), 7}}),
      GraphNode::leaf("c1b", 0),
      GraphNode::leaf("c2", 1),
      GraphNode::leaf("c3", 2),
  };
  return DecisionGraph(std::move(t), {"c1", "c2", "c3"}, std::move(nodes), 0);
}

inline std::shared_ptr<const VariableTable> disease_table() {
  VariableTable t;
  t.add("Db", {"y", "n"});
  t.add("W", {"over", "under", "normal"});
  t.add("BT", {"A", "B", "AB", "O"});
  return std::make_shared<const VariableTable>(std::move(t));
}

// Db: n → no, y → W; W: over → yes, under → BT1, normal → BT2;
// BT1: A,B,AB → yes, O → no; BT2: A,B → yes, AB,O → no.
inline DecisionGraph disease_tree(std::shared_ptr<const VariableTable> t) {
  const auto& tb = *t;
  auto Db = tb.var("Db"), W = tb.var("W"), BT = tb.var("BT");
  auto st = [&](std::uint32_t v, std::vector<std::string> names) { return tb.states(v, names); };
  std::vector<GraphNode> nodes{
      GraphNode::test("Db", Db, {{st(Db, {"y"}), 1}, {st(Db, {"n"}), 2}}),
      GraphNode::test("W", W, {{st(W, {"over"}), 3}, {st(W, {"under"}), 4}, {st(W, {"normal"}), 5}}),
      GraphNode::leaf("no1", 1),
      GraphNode::leaf("yes1", 0),
      GraphNode::test("BT1", BT, {{st(BT, {"A", "B", "AB"}), 6}, {st(BT, {"O"}), 7}}),
      GraphNode::test("BT2", BT, {{st(BT, {"A", "B"}), 8}, {st(BT, {"AB", "O"}), 9}}),
      GraphNode::leaf("yes2", 0),
      GraphNode::leaf("no2", 1),
      GraphNode::leaf("yes3", 0),
      GraphNode::leaf("no3", 1),
  };
  return DecisionGraph(std::move(t), {"yes", "no"}, std::move(nodes), 0);
}

inline Classifier disease_classifier(GraphMethod method = GraphMethod::complement_nnf) {
  auto t = disease_table();
  auto m = std::make_shared<Manager>(t);
  return graph_classifier(m, disease_tree(t), method);
}

inline Instance lara(const VariableTable& t) { return instance(t, {{"Db", "y"}, {"W", "over"}, {"BT", "A"}}); }
inline Instance rob(const VariableTable& t) { return instance(t, {{"Db", "y"}, {"W", "under"}, {"BT", "A"}}); }

// Age < 18 → (BMI < 30 → no, else yes); Age ≥ 18 → Age < 40 → (BMI < 27 →
// no, else yes); Age ≥ 40 → (BMI ≥ 25 → yes, else no).
inline NumericTree age_bmi_tree() {
  NumericTree t;
  t.features = {{"Age", Decimal(0), std::nullopt, "a"}, {"BMI", Decimal(0), std::nullopt, "b"}};
  t.classes = {"yes", "no"};
  auto split = [](std::string id, std::uint32_t f, int thr, std::uint32_t lo, std::uint32_t hi) {
    NumericNode n;
    n.id = std::move(id);
    n.feature = f;
    n.threshold = Decimal(thr);
    n.below = lo;
    n.at_or_above = hi;
    return n;
  };
  auto leaf = [](std::string id, std::uint32_t cls) {
    NumericNode n;
    n.id = std::move(id);
    n.leaf = true;
    n.leaf_class = cls;
    return n;
  };
  t.nodes = {split("age18", 0, 18, 1, 2),  split("bmi30", 1, 30, 3, 4), split("age40", 0, 40, 5, 6),
             leaf("no1", 1),                leaf("yes1", 0),             split("bmi27", 1, 27, 7, 8),
             split("bmi25", 1, 25, 9, 10), leaf("no2", 1),              leaf("yes2", 0),
             leaf("no3", 1),                leaf("yes3", 0)};
  t.root = 0;
  return t;
}

// Binary X, Y and ternary Z, with x / ¬x written as states "x" / "~x".
inline std::shared_ptr<const VariableTable> xyz_mixed_table() {
  VariableTable t;
  t.add("X", {"x", "~x"});
  t.add("Y", {"y", "~y"});
  t.add("Z", {"z1", "z2", "z3"});
  return std::make_shared<const VariableTable>(std::move(t));
}

inline std::shared_ptr<const VariableTable> xyz_binary_table() {
  VariableTable t;
  t.add("X", {"x", "~x"});
  t.add("Y", {"y", "~y"});
  t.add("Z", {"z", "~z"});
  return std::make_shared<const VariableTable>(std::move(t));
}

// (x ∧ z1 ∨ z2) ∧ (x ∧ z3 ∨ y)
inline Formula delta_d(Manager& m) {
  return m.conj({m.disj({m.conj({lit(m, "X", {"x"}), lit(m, "Z", {"z1"})}), lit(m, "Z", {"z2"})}),
                 m.disj({m.conj({lit(m, "X", {"x"}), lit(m, "Z", {"z3"})}), lit(m, "Y", {"y"})})});
}

// (x ∨ ¬z) ∧ (x ∧ z ∨ y)
inline Formula delta_b(Manager& m) {
  return m.conj({m.disj({lit(m, "X", {"x"}), lit(m, "Z", {"~z"})}),
                 m.disj({m.conj({lit(m, "X", {"x"}), lit(m, "Z", {"z"})}), lit(m, "Y", {"y"})})});
}

// x23 ∧ (x2 ∨ y23) ∧ (y23 ∨ z1) over xyz_table().
inline Formula delta_2(Manager& m) {
  return m.conj({lit(m, "X", {"x2", "x3"}), m.disj({lit(m, "X", {"x2"}), lit(m, "Y", {"y2", "y3"})}),
                 m.disj({lit(m, "Y", {"y2", "y3"}), lit(m, "Z", {"z1"})})});
}

inline Classifier two_class(std::shared_ptr<Manager> m, Formula f) {
  return Classifier(m, {"in", "out"}, {f, negate(f)});
}

}  // namespace fixtures
