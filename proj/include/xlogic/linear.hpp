#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xlogic/decision_graph.hpp"

namespace xlogic {

// Decides the first class iff Σ weights[i][state of features[i]] >= threshold.
struct LinearClassifierSpec {
  std::shared_ptr<const VariableTable> table;
  std::vector<std::string> classes;  // {positive, negative}
  std::vector<std::uint32_t> features;
  std::vector<std::vector<std::int64_t>> weights;
  std::int64_t threshold = 0;
  std::int64_t scale = 1;  // multiplier applied to real weights before truncation

  void validate() const {
    if (!table) throw error(errc::validation, "linear classifier without a variable table");
    if (classes.size() != 2) throw error(errc::validation, "linear classifiers have exactly two classes");
    if (features.size() != weights.size()) throw error(errc::validation, "one weight row per feature required");
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (features[i] >= table->size()) throw error(errc::validation, "unknown feature variable");
      if (weights[i].size() != table->state_count(features[i]))
        throw error(errc::validation, "feature '" + (*table)[features[i]].name + "' needs one weight per state");
    }
  }

  std::int64_t score(std::span<const std::uint32_t> world) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < features.size(); ++i) s += weights[i][world[features[i]]];
    return s;
  }

  bool positive(std::span<const std::uint32_t> world) const { return score(world) >= threshold; }
  std::size_t classify(std::span<const std::uint32_t> world) const { return positive(world) ? 0 : 1; }

  // W = |T| + Σ_i max_s |w_i(s)|.
  std::int64_t weight_bound() const {
    std::int64_t w = threshold < 0 ? -threshold : threshold;
    for (const auto& row : weights) {
      std::int64_t m = 0;
      for (auto x : row) m = std::max(m, x < 0 ? -x : x);
      if (__builtin_add_overflow(w, m, &w)) throw error(errc::capacity, "weight bound overflows 64 bits");
    }
    return w;
  }
};

// Two-class Naïve Bayes: decide the positive class iff
// Pr(positive | instance) >= threshold.
struct NaiveBayesSpec {
  std::shared_ptr<const VariableTable> table;
  std::vector<std::string> classes;  // {positive, negative}
  double prior = 0.5;                // Pr(positive)
  std::vector<std::uint32_t> features;
  std::vector<std::vector<double>> given_positive;  // Pr(state | positive) per feature
  std::vector<std::vector<double>> given_negative;  // Pr(state | negative) per feature
  double threshold = 0.5;
  int precision = 6;

  void validate() const {
    if (!table) throw error(errc::validation, "naive bayes model without a variable table");
    if (classes.size() != 2) throw error(errc::validation, "naive bayes models have exactly two classes");
    if (!(prior > 0 && prior < 1)) throw error(errc::invalid_distribution, "prior must lie strictly between 0 and 1");
    if (!(threshold > 0 && threshold < 1)) throw error(errc::invalid_distribution, "threshold must lie in (0,1)");
    if (precision < 0 || precision > 15) throw error(errc::configuration, "precision must be within 0..15 digits");
    if (features.size() != given_positive.size() || features.size() != given_negative.size())
      throw error(errc::validation, "one conditional table per feature and class required");
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (features[i] >= table->size()) throw error(errc::validation, "unknown feature variable");
      const auto& name = (*table)[features[i]].name;
      for (const auto* row : {&given_positive[i], &given_negative[i]}) {
        if (row->size() != table->state_count(features[i]))
          throw error(errc::validation, "conditional table of '" + name + "' needs one entry per state");
        double sum = 0;
        for (double p : *row) {
          if (!(p > 0)) throw error(errc::invalid_distribution, "zero or negative probability for '" + name + "'");
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6)
          throw error(errc::invalid_distribution, "conditional table of '" + name + "' does not sum to 1");
      }
    }
  }

  double posterior(std::span<const std::uint32_t> world) const {
    double pos = prior, neg = 1 - prior;
    for (std::size_t i = 0; i < features.size(); ++i) {
      pos *= given_positive[i][world[features[i]]];
      neg *= given_negative[i][world[features[i]]];
    }
    return pos / (pos + neg);
  }

  std::size_t classify(std::span<const std::uint32_t> world) const { return posterior(world) >= threshold ? 0 : 1; }
};

// Log-odds form: weights are log-likelihood ratios, the prior log-odds move
// into the threshold, and everything is scaled by 10^precision and truncated.
inline LinearClassifierSpec nbc_to_linear(const NaiveBayesSpec& nb) {
  nb.validate();
  const double scale = std::pow(10.0, nb.precision);
  auto integerize = [](double x) {
    if (!(std::abs(x) < 9.0e18)) throw error(errc::capacity, "scaled weight does not fit in 64 bits");
    return static_cast<std::int64_t>(x);
  };
  LinearClassifierSpec out;
  out.table = nb.table;
  out.classes = nb.classes;
  out.features = nb.features;
  out.scale = static_cast<std::int64_t>(scale);
  for (std::size_t i = 0; i < nb.features.size(); ++i) {
    std::vector<std::int64_t> row;
    for (std::size_t s = 0; s < nb.given_positive[i].size(); ++s)
      row.push_back(integerize(std::trunc(scale * std::log(nb.given_positive[i][s] / nb.given_negative[i][s]))));
    out.weights.push_back(std::move(row));
  }
  double t = std::log(nb.threshold / (1 - nb.threshold)) - std::log(nb.prior / (1 - nb.prior));
  out.threshold = integerize(std::ceil(scale * t));
  return out;
}

namespace detail {

// Sorted distinct sums reachable by the features at positions >= d.
inline std::vector<std::vector<std::int64_t>> suffix_sums(const LinearClassifierSpec& spec,
                                                          std::span<const std::size_t> order) {
  constexpr std::size_t cap = std::size_t{1} << 22;
  std::vector<std::vector<std::int64_t>> sums(order.size() + 1);
  sums[order.size()] = {0};
  for (std::size_t d = order.size(); d-- > 0;) {
    std::vector<std::int64_t> acc;
    for (auto w : spec.weights[order[d]])
      for (auto x : sums[d + 1]) {
        std::int64_t y;
        if (__builtin_add_overflow(x, w, &y)) throw error(errc::capacity, "weight sums overflow 64 bits");
        acc.push_back(y);
      }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    if (acc.size() > cap) throw error(errc::capacity, "too many distinct partial sums to compile");
    sums[d] = std::move(acc);
  }
  return sums;
}

}  // namespace detail

// Depth-first compilation into an ordered decision graph. A partial
// instantiation at depth d with residual threshold r is identified by the
// number of achievable suffix sums >= r; residuals with equal counts lie in
// the same equivalence interval and share one sub-graph. Features whose
// states all lead to the same sub-graph are not tested.
inline DecisionGraph compile_linear(const LinearClassifierSpec& spec, std::optional<std::vector<std::size_t>> order = {}) {
  spec.validate();
  std::vector<std::size_t> ord;
  if (order) {
    ord = *order;
    auto check = ord;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i)
      if (check[i] != i || check.size() != spec.features.size())
        throw error(errc::invalid_argument, "feature order must be a permutation of the features");
  } else {
    for (std::size_t i = 0; i < spec.features.size(); ++i) ord.push_back(i);
  }
  const auto sums = detail::suffix_sums(spec, ord);
  const auto& table = *spec.table;

  std::vector<GraphNode> nodes{GraphNode::leaf("positive", 0), GraphNode::leaf("negative", 1)};
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> memo;

  auto visit = [&](auto&& self, std::size_t d, std::int64_t residual) -> std::uint32_t {
    const auto& s = sums[d];
    auto above = static_cast<std::size_t>(s.end() - std::lower_bound(s.begin(), s.end(), residual));
    if (above == 0) return 1;
    if (above == s.size()) return 0;
    auto key = std::make_pair(d, above);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto feature = ord[d];
    const auto& w = spec.weights[feature];
    std::vector<std::pair<std::uint32_t, StateSet>> groups;
    for (std::uint32_t st = 0; st < w.size(); ++st) {
      std::int64_t next;
      if (__builtin_sub_overflow(residual, w[st], &next)) throw error(errc::capacity, "residual threshold overflows");
      auto child = self(self, d + 1, next);
      auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& p) { return p.first == child; });
      if (g == groups.end())
        groups.emplace_back(child, single_state(st));
      else
        g->second |= single_state(st);
    }
    std::uint32_t result;
    if (groups.size() == 1) {
      result = groups.front().first;
    } else {
      std::vector<GraphEdge> edges;
      for (const auto& [child, states] : groups) edges.push_back({states, child});
      result = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(GraphNode::test("n" + std::to_string(result), spec.features[feature], std::move(edges)));
    }
    memo.emplace(key, result);
    return result;
  };
  auto root = visit(visit, 0, spec.threshold);
  (void)table;

  // Drop the unreachable leaf, if any, and renumber.
  DecisionGraph full(spec.table, spec.classes, nodes, root);
  auto reach = full.bottom_up_order();
  std::vector<std::uint32_t> remap(nodes.size(), unassigned);
  std::vector<GraphNode> kept;
  for (auto n : reach) {
    remap[n] = static_cast<std::uint32_t>(kept.size());
    kept.push_back(nodes[n]);
  }
  for (auto& nd : kept)
    for (auto& e : nd.edges) e.child = remap[e.child];
  return DecisionGraph(spec.table, spec.classes, std::move(kept), remap[root]);
}

// ---------------------------------------------------------------------------
// Binary step-activation networks

struct SignalRef {
  bool from_input;      // true: network input, false: neuron output
  std::uint32_t index;  // into StepNetworkSpec::inputs or ::neurons
};

// Outputs 1 iff Σ weights[i] * signal[i] >= threshold.
struct Neuron {
  std::string id;
  std::vector<SignalRef> inputs;
  std::vector<std::int64_t> weights;
  std::int64_t threshold = 0;
};

// Inputs are binary table variables whose state index is the signal value.
struct StepNetworkSpec {
  std::shared_ptr<const VariableTable> table;
  std::vector<std::string> classes;  // {output = 1, output = 0}
  std::vector<std::uint32_t> inputs;
  std::vector<Neuron> neurons;
  std::uint32_t output = 0;

  // Neuron indices with every neuron after the neurons it reads.
  std::vector<std::uint32_t> evaluation_order() const {
    std::vector<std::string> issues;
    if (!table) throw error(errc::validation, "step network without a variable table");
    if (classes.size() != 2) issues.push_back("step networks have exactly two classes");
    for (auto v : inputs)
      if (v >= table->size() || table->state_count(v) != 2) issues.push_back("network inputs must be binary variables");
    if (output >= neurons.size()) issues.push_back("output neuron index out of range");
    for (const auto& n : neurons) {
      if (n.inputs.size() != n.weights.size()) issues.push_back("neuron '" + n.id + "': one weight per input required");
      for (const auto& r : n.inputs)
        if ((r.from_input && r.index >= inputs.size()) || (!r.from_input && r.index >= neurons.size()))
          issues.push_back("neuron '" + n.id + "': input reference out of range");
    }
    if (!issues.empty()) throw error(errc::validation, "invalid step network", std::move(issues));

    std::vector<std::uint32_t> order;
    std::vector<char> color(neurons.size(), 0);
    auto dfs = [&](auto&& self, std::uint32_t n) -> void {
      if (color[n] == 2) return;
      if (color[n] == 1) throw error(errc::validation, "cyclic reference through neuron '" + neurons[n].id + "'");
      color[n] = 1;
      for (const auto& r : neurons[n].inputs)
        if (!r.from_input) self(self, r.index);
      color[n] = 2;
      order.push_back(n);
    };
    for (std::uint32_t n = 0; n < neurons.size(); ++n) dfs(dfs, n);
    return order;
  }

  std::vector<bool> forward_all(std::span<const std::uint32_t> world) const {
    std::vector<bool> out(neurons.size(), false);
    for (auto n : evaluation_order()) {
      std::int64_t s = 0;
      const auto& nr = neurons[n];
      for (std::size_t i = 0; i < nr.inputs.size(); ++i) {
        const auto& r = nr.inputs[i];
        bool on = r.from_input ? world[inputs[r.index]] == 1 : out[r.index];
        if (on) s += nr.weights[i];
      }
      out[n] = s >= nr.threshold;
    }
    return out;
  }

  bool forward(std::span<const std::uint32_t> world) const { return forward_all(world)[output]; }
  std::size_t classify(std::span<const std::uint32_t> world) const { return forward(world) ? 0 : 1; }
};

namespace detail {

// Rebuilds a formula from another manager, replacing each literal via `map`.
template <class Map>
Formula translate(Formula src, Manager& dst, Map&& map) {
  std::unordered_map<std::uint32_t, Formula> memo;
  for (Formula g : topological(src)) {
    Formula r;
    switch (g.kind()) {
      case NodeKind::top: r = dst.top(); break;
      case NodeKind::bottom: r = dst.bottom(); break;
      case NodeKind::literal: r = map(g.var(), g.states()); break;
      case NodeKind::conj:
      case NodeKind::disj: {
        std::vector<Formula> kids;
        for (Formula c : g.children()) kids.push_back(memo.at(c.id()));
        r = g.is_and() ? dst.conj(kids) : dst.disj(kids);
        break;
      }
    }
    memo.emplace(g.id(), r);
  }
  return memo.at(src.id());
}

}  // namespace detail

// Each neuron is compiled with compile_linear over its fan-in, turned into
// a complement-NNF formula, and composed by substituting the formulas of
// the neurons it reads (negated where the fan-in literal is the 0 state).
// Returns {formula for output 1, formula for output 0}.
inline std::vector<Formula> compile_step_network(Manager& m, const StepNetworkSpec& net) {
  if (&m.table() != net.table.get()) throw error(errc::invalid_argument, "manager and network use different tables");
  auto order = net.evaluation_order();
  std::vector<Formula> on(net.neurons.size()), off(net.neurons.size());
  std::vector<Formula> input_on, input_off;
  for (auto v : net.inputs) {
    input_on.push_back(m.state(v, 1));
    input_off.push_back(m.state(v, 0));
  }
  for (auto n : order) {
    const auto& nr = net.neurons[n];
    VariableTable local;
    for (std::size_t i = 0; i < nr.inputs.size(); ++i) local.add("in" + std::to_string(i), {"0", "1"});
    auto local_table = std::make_shared<const VariableTable>(std::move(local));
    LinearClassifierSpec spec{local_table, {"1", "0"}, {}, {}, nr.threshold, 1};
    for (std::uint32_t i = 0; i < nr.inputs.size(); ++i) {
      spec.features.push_back(i);
      spec.weights.push_back({0, nr.weights[i]});
    }
    auto graph = compile_linear(spec);
    Manager local_m(local_table);
    Formula local_f = class_formula_complement_nnf(local_m, graph, 0);
    auto signal = [&](std::uint32_t i, bool value) {
      const auto& r = nr.inputs[i];
      if (r.from_input) return value ? input_on[r.index] : input_off[r.index];
      return value ? on[r.index] : off[r.index];
    };
    on[n] = detail::translate(local_f, m, [&](std::uint32_t var, StateSet states) {
      return signal(var, states == single_state(1));
    });
    off[n] = negate(on[n]);
  }
  return {on[net.output], off[net.output]};
}

inline Classifier step_network_classifier(std::shared_ptr<Manager> m, const StepNetworkSpec& net) {
  auto fs = compile_step_network(*m, net);
  return Classifier(std::move(m), net.classes, std::move(fs));
}

inline Classifier linear_classifier(std::shared_ptr<Manager> m, const LinearClassifierSpec& spec,
                                    GraphMethod method = GraphMethod::complement_nnf) {
  return graph_classifier(std::move(m), compile_linear(spec), method);
}

}  // namespace xlogic
