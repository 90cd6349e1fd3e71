#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "xlogic/io/json_util.hpp"
#include "xlogic/linear.hpp"

namespace xlogic::io {

// An instance the model document claims belongs to a class.
struct Check {
  std::vector<std::uint32_t> world;
  std::size_t class_index;
};

struct NumericModel {
  NumericTree source;
  DiscretizedTree discretized;
};

using ModelVariant =
    std::variant<DecisionGraph, NumericModel, NaiveBayesSpec, LinearClassifierSpec, Forest, StepNetworkSpec>;

enum class CompileMethod { dnf, complement_nnf };

class Model {
 public:
  Model(std::string type, std::shared_ptr<const VariableTable> table, std::vector<std::string> classes, ModelVariant body)
      : type_(std::move(type)), table_(std::move(table)), classes_(std::move(classes)), body_(std::move(body)) {}

  const std::string& type() const { return type_; }
  const VariableTable& table() const { return *table_; }
  std::shared_ptr<const VariableTable> shared_table() const { return table_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const ModelVariant& body() const { return body_; }
  const std::vector<Check>& checks() const { return checks_; }
  void set_checks(std::vector<Check> checks) { checks_ = std::move(checks); }

  std::size_t class_index(std::string_view label) const {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i] == label) return i;
    throw error(errc::invalid_argument, "unknown class '" + std::string(label) + "'");
  }

  // Decision of the source model, computed without any compilation. Numeric
  // trees are evaluated on a representative point of each interval.
  std::size_t decide(std::span<const std::uint32_t> world) const {
    return std::visit(
        [&](const auto& b) -> std::size_t {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, NumericModel>) {
            return decide_numeric(b, world);
          } else {
            return b.classify(world);
          }
        },
        body_);
  }

  // The decision graph behind the model: the graph itself, the discretized
  // tree, or the compiled graph of a linear or Naïve Bayes model.
  std::optional<DecisionGraph> graph(std::optional<std::vector<std::size_t>> order = {}) const {
    if (auto* g = std::get_if<DecisionGraph>(&body_)) return *g;
    if (auto* n = std::get_if<NumericModel>(&body_)) return n->discretized.graph;
    if (auto* nb = std::get_if<NaiveBayesSpec>(&body_)) return compile_linear(nbc_to_linear(*nb), order);
    if (auto* l = std::get_if<LinearClassifierSpec>(&body_)) return compile_linear(*l, order);
    return std::nullopt;
  }

  Classifier classifier(CompileMethod method = CompileMethod::complement_nnf, const Limits& limits = {}) const {
    auto m = std::make_shared<Manager>(table_);
    if (auto* f = std::get_if<Forest>(&body_)) {
      if (method == CompileMethod::dnf) throw error(errc::configuration, "forests compile through complement NNF only");
      return forest_classifier(m, *f);
    }
    if (auto* n = std::get_if<StepNetworkSpec>(&body_)) {
      if (method == CompileMethod::dnf)
        throw error(errc::configuration, "step networks compile through complement NNF only");
      return step_network_classifier(m, *n);
    }
    return graph_classifier(m, *graph(), method == CompileMethod::dnf ? GraphMethod::dnf : GraphMethod::complement_nnf,
                            limits);
  }

  // Instances map variable names to state names. Variables with interval
  // metadata also accept numeric values, which are discretized. Features of
  // a numeric tree that the tree never tests are accepted and ignored.
  Instance instance(const json& j) const {
    if (!j.is_object()) detail::shape_error("instance", "expected an object of variable: state pairs");
    std::vector<std::uint32_t> states(table_->size(), unassigned);
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto var = table_->find(it.key());
      if (!var) {
        if (ignorable_feature(it.key())) continue;
        throw error(errc::unknown_variable, "instance names unknown variable '" + it.key() + "'");
      }
      const auto& v = (*table_)[*var];
      const auto& val = it.value();
      if (val.is_string()) {
        auto name = val.get<std::string>();
        if (std::find(v.states.begin(), v.states.end(), name) != v.states.end()) {
          states[*var] = table_->state(*var, name);
          continue;
        }
      }
      if (v.intervals && (val.is_number() || val.is_string())) {
        states[*var] = discretize_value(*table_, *var, detail::decimal_of(val, "value of '" + v.name + "'"));
        continue;
      }
      if (val.is_string()) throw error(errc::unknown_state, "'" + val.get<std::string>() + "' is not a state of '" + v.name + "'");
      detail::shape_error("instance", "value of '" + v.name + "' must be a state name");
    }
    std::vector<std::string> missing;
    for (std::uint32_t v = 0; v < states.size(); ++v)
      if (states[v] == unassigned) missing.push_back((*table_)[v].name);
    if (!missing.empty()) throw error(errc::invalid_argument, "instance is not total", std::move(missing));
    return Instance(*table_, std::move(states));
  }

 private:
  bool ignorable_feature(const std::string& name) const {
    auto* n = std::get_if<NumericModel>(&body_);
    if (!n) return false;
    for (const auto& f : n->source.features)
      if (f.name == name) return true;
    return false;
  }

  std::size_t decide_numeric(const NumericModel& n, std::span<const std::uint32_t> world) const {
    const auto& tree = n.source;
    std::uint32_t at = tree.root;
    while (!tree.nodes[at].leaf) {
      const auto& nd = tree.nodes[at];
      auto var = n.discretized.feature_var[nd.feature];
      const auto& iv = (*(*table_)[var].intervals)[world[var]];
      // Any point of the interval works; take its lower end, or just below
      // the upper end when it is unbounded below.
      Decimal point = iv.lo ? *iv.lo : Decimal(iv.hi->mantissa() - 1, iv.hi->exponent());
      at = point < nd.threshold ? nd.below : nd.at_or_above;
    }
    return tree.nodes[at].leaf_class;
  }

  std::string type_;
  std::shared_ptr<const VariableTable> table_;
  std::vector<std::string> classes_;
  ModelVariant body_;
  std::vector<Check> checks_;
};

namespace detail {

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& s : array_of(j, where)) out.push_back(string_of(s, where));
  return out;
}

inline std::uint32_t index_of(const std::vector<std::string>& names, const std::string& name, const std::string& what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<std::uint32_t>(i);
  throw error(errc::validation, "unknown " + what + " '" + name + "'");
}

// Node ids are resolved in two passes so children may be listed in any order.
inline DecisionGraph graph_from_json(const json& j, std::shared_ptr<const VariableTable> table,
                                     const std::vector<std::string>& classes, const std::string& where) {
  const auto& nodes = array_of(field(j, "nodes", where), where + " nodes");
  std::map<std::string, std::uint32_t> ids;
  for (const auto& n : nodes) {
    auto id = string_of(field(n, "id", where + " node"), where + " node id");
    if (!ids.emplace(id, static_cast<std::uint32_t>(ids.size())).second)
      throw error(errc::validation, where + ": duplicate node id '" + id + "'");
  }
  auto ref = [&](const json& r, const std::string& ctx) {
    auto name = string_of(r, ctx);
    auto it = ids.find(name);
    if (it == ids.end()) throw error(errc::validation, ctx + ": unknown node '" + name + "'");
    return it->second;
  };
  std::vector<GraphNode> out;
  for (const auto& n : nodes) {
    auto id = n["id"].get<std::string>();
    const std::string ctx = where + " node '" + id + "'";
    if (const auto* cls = optional_field(n, "class")) {
      out.push_back(GraphNode::leaf(id, index_of(classes, string_of(*cls, ctx), "class")));
      continue;
    }
    auto var = table->var(string_of(field(n, "var", ctx), ctx));
    std::vector<GraphEdge> edges;
    for (const auto& e : array_of(field(n, "edges", ctx), ctx + " edges"))
      edges.push_back({states_from_json(*table, var, field(e, "states", ctx)), ref(field(e, "child", ctx), ctx)});
    out.push_back(GraphNode::test(id, var, std::move(edges)));
  }
  return DecisionGraph(std::move(table), classes, std::move(out), ref(field(j, "root", where), where + " root"));
}

inline NumericTree numeric_tree_from_json(const json& j, const std::vector<std::string>& classes) {
  const std::string where = "decision_tree_numeric";
  NumericTree t;
  t.classes = classes;
  std::vector<std::string> feature_names;
  for (const auto& f : array_of(field(j, "features", where), where + " features")) {
    NumericFeature nf;
    nf.name = string_of(field(f, "name", where + " feature"), where + " feature name");
    if (const auto* lo = optional_field(f, "min")) nf.min = decimal_of(*lo, "min of '" + nf.name + "'");
    if (const auto* hi = optional_field(f, "max")) nf.max = decimal_of(*hi, "max of '" + nf.name + "'");
    nf.state_prefix = nf.name;
    if (const auto* p = optional_field(f, "state_prefix")) nf.state_prefix = string_of(*p, "state_prefix");
    feature_names.push_back(nf.name);
    t.features.push_back(std::move(nf));
  }
  const auto& nodes = array_of(field(j, "nodes", where), where + " nodes");
  std::map<std::string, std::uint32_t> ids;
  for (const auto& n : nodes) {
    auto id = string_of(field(n, "id", where + " node"), where + " node id");
    if (!ids.emplace(id, static_cast<std::uint32_t>(ids.size())).second)
      throw error(errc::validation, where + ": duplicate node id '" + id + "'");
  }
  auto ref = [&](const json& r, const std::string& ctx) {
    auto it = ids.find(string_of(r, ctx));
    if (it == ids.end()) throw error(errc::validation, ctx + ": unknown node '" + r.get<std::string>() + "'");
    return it->second;
  };
  for (const auto& n : nodes) {
    NumericNode nn;
    nn.id = n["id"].get<std::string>();
    const std::string ctx = where + " node '" + nn.id + "'";
    if (const auto* cls = optional_field(n, "class")) {
      nn.leaf = true;
      nn.leaf_class = index_of(classes, string_of(*cls, ctx), "class");
    } else {
      // splits read `feature < threshold`; other predicates have no interval form
      if (const auto* op = optional_field(n, "op"); op && string_of(*op, ctx + " op") != "<")
        throw error(errc::unsupported_split, ctx + ": split '" + op->get<std::string>() + "' is not a '<' threshold");
      nn.feature = index_of(feature_names, string_of(field(n, "feature", ctx), ctx), "feature");
      nn.threshold = decimal_of(field(n, "threshold", ctx), ctx + " threshold");
      nn.below = ref(field(n, "below", ctx), ctx);
      nn.at_or_above = ref(field(n, "at_or_above", ctx), ctx);
    }
    t.nodes.push_back(std::move(nn));
  }
  t.root = ref(field(j, "root", where), where + " root");
  return t;
}

inline std::vector<std::uint32_t> feature_vars(const json& features, const VariableTable& table, const std::string& where) {
  std::vector<std::uint32_t> out;
  for (const auto& f : array_of(features, where)) out.push_back(table.var(string_of(field(f, "var", where), where)));
  return out;
}

inline std::vector<double> probabilities(const json& j, const std::string& where) {
  std::vector<double> out;
  for (const auto& p : array_of(j, where)) out.push_back(number_of(p, where));
  return out;
}

}  // namespace detail

struct LoadOptions {
  std::optional<int> precision;  // overrides a Naïve Bayes model's own setting
};

inline Model model_from_json(const json& doc, const LoadOptions& opts = {}) {
  using namespace detail;
  const std::string where = "model document";
  if (string_of(field(doc, "format", where), "format") != "xlogic-model")
    shape_error(where, "format must be 'xlogic-model'");
  if (integer_of(field(doc, "version", where), "version") != 1) shape_error(where, "unsupported version");
  auto classes = string_list(field(doc, "classes", where), "classes");
  const auto& body = field(doc, "model", where);
  auto type = string_of(field(body, "type", "model"), "model type");

  std::shared_ptr<const VariableTable> table;
  if (type != "decision_tree_numeric")
    table = std::make_shared<const VariableTable>(variables_from_json(field(doc, "variables", where)));

  auto make = [&]() -> Model {
    if (type == "decision_graph") return Model(type, table, classes, graph_from_json(body, table, classes, type));
    if (type == "decision_tree_numeric") {
      auto tree = numeric_tree_from_json(body, classes);
      auto disc = discretize_numeric_tree(tree);
      auto t = disc.table;
      return Model(type, t, classes, NumericModel{std::move(tree), std::move(disc)});
    }
    if (type == "naive_bayes") {
      NaiveBayesSpec nb;
      nb.table = table;
      nb.classes = classes;
      nb.prior = number_of(field(body, "prior", type), "prior");
      nb.threshold = number_of(field(body, "threshold", type), "threshold");
      if (const auto* p = optional_field(body, "precision")) nb.precision = static_cast<int>(integer_of(*p, "precision"));
      if (opts.precision) nb.precision = *opts.precision;
      const auto& fs = field(body, "features", type);
      nb.features = feature_vars(fs, *table, type + " features");
      for (const auto& f : fs) {
        nb.given_positive.push_back(probabilities(field(f, "positive", type), type + " positive"));
        nb.given_negative.push_back(probabilities(field(f, "negative", type), type + " negative"));
      }
      nb.validate();
      return Model(type, table, classes, nb);
    }
    if (type == "linear") {
      LinearClassifierSpec l;
      l.table = table;
      l.classes = classes;
      l.threshold = integer_of(field(body, "threshold", type), "threshold");
      const auto& fs = field(body, "features", type);
      l.features = feature_vars(fs, *table, type + " features");
      for (const auto& f : fs) {
        std::vector<std::int64_t> row;
        for (const auto& w : array_of(field(f, "weights", type), type + " weights")) row.push_back(integer_of(w, "weight"));
        l.weights.push_back(std::move(row));
      }
      l.validate();
      return Model(type, table, classes, l);
    }
    if (type == "forest") {
      std::vector<DecisionGraph> trees;
      std::size_t k = 0;
      for (const auto& t : array_of(field(body, "trees", type), "trees"))
        trees.push_back(graph_from_json(t, table, classes, "tree " + std::to_string(k++)));
      TieRule tie = TieRule::none;
      if (const auto* tr = optional_field(body, "tie")) {
        auto s = string_of(*tr, "tie");
        if (s == "first") tie = TieRule::first;
        else if (s == "second") tie = TieRule::second;
        else if (s != "none") shape_error("forest", "tie must be none, first or second");
      }
      return Model(type, table, classes, Forest(table, classes, std::move(trees), tie));
    }
    if (type == "step_network") {
      StepNetworkSpec net;
      net.table = table;
      net.classes = classes;
      std::vector<std::string> input_names = string_list(field(body, "inputs", type), "inputs");
      for (const auto& n : input_names) net.inputs.push_back(table->var(n));
      const auto& neurons = array_of(field(body, "neurons", type), "neurons");
      std::vector<std::string> neuron_ids;
      for (const auto& n : neurons) neuron_ids.push_back(string_of(field(n, "id", "neuron"), "neuron id"));
      for (std::size_t i = 0; i < neuron_ids.size(); ++i) {
        const auto& n = neurons[i];
        const std::string ctx = "neuron '" + neuron_ids[i] + "'";
        Neuron nr;
        nr.id = neuron_ids[i];
        for (const auto& r : string_list(field(n, "inputs", ctx), ctx + " inputs")) {
          bool is_input = std::find(input_names.begin(), input_names.end(), r) != input_names.end();
          bool is_neuron = std::find(neuron_ids.begin(), neuron_ids.end(), r) != neuron_ids.end();
          if (is_input == is_neuron)
            throw error(errc::validation, ctx + ": input '" + r + "' " + (is_input ? "is ambiguous" : "is undefined"));
          nr.inputs.push_back(is_input ? SignalRef{true, index_of(input_names, r, "input")}
                                       : SignalRef{false, index_of(neuron_ids, r, "neuron")});
        }
        for (const auto& w : array_of(field(n, "weights", ctx), ctx + " weights")) nr.weights.push_back(integer_of(w, "weight"));
        nr.threshold = integer_of(field(n, "threshold", ctx), ctx + " threshold");
        net.neurons.push_back(std::move(nr));
      }
      net.output = index_of(neuron_ids, string_of(field(body, "output", type), "output"), "neuron");
      net.evaluation_order();
      return Model(type, table, classes, net);
    }
    shape_error("model", "unknown model type '" + type + "'");
  };
  Model model = make();

  std::vector<Check> checks;
  if (const auto* cs = optional_field(doc, "checks")) {
    for (const auto& c : array_of(*cs, "checks")) {
      auto inst = model.instance(field(c, "instance", "check"));
      checks.push_back({std::vector<std::uint32_t>(inst.states().begin(), inst.states().end()), model.class_index(string_of(field(c, "class", "check"), "check class"))});
    }
  }
  model.set_checks(std::move(checks));
  return model;
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::invalid_argument, origin + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::invalid_argument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline Model load_model(const std::string& path, const LoadOptions& opts = {}) {
  return model_from_json(read_json_file(path), opts);
}

// A decision graph as a model document of type decision_graph.
inline json graph_to_json(const DecisionGraph& g) {
  const auto& table = g.table();
  json nodes = json::array();
  for (const auto& n : g.nodes()) {
    if (n.is_leaf()) {
      nodes.push_back({{"id", n.id}, {"class", g.classes()[n.leaf_class]}});
      continue;
    }
    json edges = json::array();
    for (const auto& e : n.edges)
      edges.push_back({{"states", states_to_json(table, *n.var, e.states)}, {"child", g.node(e.child).id}});
    nodes.push_back({{"id", n.id}, {"var", table[*n.var].name}, {"edges", edges}});
  }
  return {{"format", "xlogic-model"},
          {"version", 1},
          {"variables", variables_to_json(table)},
          {"classes", g.classes()},
          {"model", {{"type", "decision_graph"}, {"root", g.node(g.root()).id}, {"nodes", nodes}}}};
}

}  // namespace xlogic::io
