// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit when
// any criterion fails. Randomized criteria are seeded and report case counts.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace xlogic;
namespace o = xlogic::oracle;
using fixtures::clause;
using fixtures::lit;
using fixtures::sorted;
using fixtures::term;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failed = 0;

void criterion(const std::string& name, const std::function<Outcome()>& fn) {
  auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r = {false, std::string("threw: ") + e.what()};
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << (r.ok ? "[PASS] " : "[FAIL] ") << name;
  if (!r.detail.empty()) std::cout << " | " << r.detail;
  std::cout << " | " << ms << " ms" << std::endl;
  failed += !r.ok;
}

Outcome check(bool ok, std::string detail = {}) { return {ok, std::move(detail)}; }

// Runs `n` seeded cases; a case returns false on any violation.
Outcome cases(std::size_t n, std::uint64_t seed, const std::function<bool(gen::Rng&)>& body) {
  gen::Rng rng(seed);
  std::size_t bad = 0, first = n;
  for (std::size_t i = 0; i < n; ++i)
    if (!body(rng)) {
      if (bad++ == 0) first = i;
    }
  std::ostringstream s;
  s << n << " cases, seed " << seed;
  if (bad) s << ", " << bad << " failed (first: case " << first << ")";
  return {bad == 0, s.str()};
}

template <class Fn>
void all_worlds(const VariableTable& t, Fn&& fn) {
  std::vector<std::uint32_t> world(t.size(), 0);
  for_each_world(t, t.all_vars(), world, [&](const auto& w) {
    fn(w);
    return true;
  });
}

// Worlds that keep the instance outside the clause and move every clause
// variable to a state outside its literal.
std::vector<Instance> violations(const VariableTable& t, const Instance& inst, const Clause& c) {
  std::vector<Instance> out;
  std::vector<std::uint32_t> world(inst.states().begin(), inst.states().end());
  auto go = [&](auto&& self, std::size_t k) -> void {
    if (k == c.size()) {
      out.emplace_back(t, world);
      return;
    }
    const auto& l = *(c.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::uint32_t s = 0; s < t.state_count(l.var()); ++s)
      if (!l.contains(s)) {
        world[l.var()] = s;
        self(self, k + 1);
      }
    world[l.var()] = inst[l.var()];
  };
  go(go, 0);
  return out;
}

bool satisfies(const Instance& inst, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return inst.consistent_with(l); });
}

struct Case {
  Classifier c;
  Instance inst;
};

// At most 5 variables of at most 4 states; trees or DAGs.
Case random_case(gen::Rng& rng, std::size_t classes) {
  auto t = gen::table(rng, 5, 4, 2);
  auto m = std::make_shared<Manager>(t);
  auto g = gen::uniform(rng, 0, 2) ? gen::tree(rng, t, classes) : gen::dag(rng, t, classes, gen::uniform(rng, 1, 6));
  return {graph_classifier(m, g), gen::instance(rng, *t)};
}

std::size_t random_classes(gen::Rng& rng) { return gen::uniform(rng, 2, 3); }

void goldens() {
  auto lara_case = [] {
    auto c = fixtures::disease_classifier();
    auto inst = fixtures::lara(c.table());
    return Case{c, inst};
  };

  criterion("golden: Lara complete reason", [&] {
    auto [c, inst] = lara_case();
    auto& m = c.manager();
    auto expected = m.conj({lit(m, "Db", {"y"}), m.disj({lit(m, "W", {"over"}), lit(m, "BT", {"A"})})});
    return check(c.label(c.classify(inst)) == "yes" && equivalent(complete_reason(c, inst).formula, expected));
  });

  criterion("golden: Lara sufficient reasons", [&] {
    auto [c, inst] = lara_case();
    const auto& t = c.table();
    std::vector<Term> expected{term(t, {{"Db", {"y"}}, {"W", {"over"}}}), term(t, {{"Db", {"y"}}, {"BT", {"A"}}})};
    return check(sorted(sufficient_reasons(c, inst).terms) == sorted(expected));
  });

  criterion("golden: Lara general reason", [&] {
    auto [c, inst] = lara_case();
    auto& m = c.manager();
    auto expected = m.conj({lit(m, "Db", {"y"}),
                            m.disj({lit(m, "W", {"over"}), lit(m, "BT", {"A", "B"}),
                                    m.conj({lit(m, "W", {"under", "over"}), lit(m, "BT", {"A", "B", "AB"})})})});
    return check(equivalent(general_reason(c, inst).formula, expected));
  });

  criterion("golden: Lara general sufficient reasons, non-variable-minimal implicant excluded", [&] {
    auto [c, inst] = lara_case();
    const auto& t = c.table();
    std::vector<Term> expected{term(t, {{"Db", {"y"}}, {"W", {"over"}}}),
                               term(t, {{"Db", {"y"}}, {"BT", {"A", "B"}}})};
    auto third = term(t, {{"Db", {"y"}}, {"W", {"under", "over"}}, {"BT", {"A", "B", "AB"}}});
    auto pis = prime_implicants(general_reason(c, inst).formula);
    auto gsr = general_sufficient_reasons(c, inst).terms;
    bool third_is_prime = std::find(pis.begin(), pis.end(), third) != pis.end();
    bool third_excluded = std::find(gsr.begin(), gsr.end(), third) == gsr.end();
    return check(sorted(gsr) == sorted(expected) && third_is_prime && third_excluded && pis.size() == 3);
  });

  criterion("golden: Lara necessary reasons", [&] {
    auto [c, inst] = lara_case();
    const auto& t = c.table();
    std::vector<Clause> expected{clause(t, {{"Db", {"y"}}}), clause(t, {{"W", {"over"}}, {"BT", {"A"}}})};
    return check(sorted(necessary_reasons(c, inst).clauses) == sorted(expected));
  });

  criterion("golden: Lara general necessary reasons", [&] {
    auto [c, inst] = lara_case();
    const auto& t = c.table();
    std::vector<Clause> expected{clause(t, {{"Db", {"y"}}}), clause(t, {{"W", {"over"}}, {"BT", {"A", "B", "AB"}}}),
                                 clause(t, {{"W", {"under", "over"}}, {"BT", {"A", "B"}}})};
    return check(sorted(general_necessary_reasons(c, inst).clauses) == sorted(expected));
  });

  criterion("golden: Rob complete and general reasons", [&] {
    auto c = fixtures::disease_classifier();
    auto& m = c.manager();
    auto inst = fixtures::rob(c.table());
    auto cr = m.conj({lit(m, "Db", {"y"}), lit(m, "BT", {"A"})});
    auto gr = m.conj({lit(m, "Db", {"y"}), lit(m, "BT", {"A", "B", "AB"}),
                      m.disj({lit(m, "W", {"under", "over"}), lit(m, "BT", {"A", "B"})})});
    return check(c.label(c.classify(inst)) == "yes" && equivalent(complete_reason(c, inst).formula, cr) &&
                 equivalent(general_reason(c, inst).formula, gr));
  });

  criterion("golden: numeric tree at Age=42, BMI=28", [&] {
    auto d = discretize_numeric_tree(fixtures::age_bmi_tree());
    auto m = std::make_shared<Manager>(d.table);
    const auto& t = *d.table;
    auto age = t.var("Age"), bmi = t.var("BMI");
    std::vector<std::uint32_t> w(t.size(), 0);
    w[age] = discretize_value(t, age, Decimal(42));
    w[bmi] = discretize_value(t, bmi, Decimal(28));
    Instance inst(t, w);
    auto c = graph_classifier(m, d.graph);
    auto cr = m->conj({lit(*m, "Age", {"a3"}), lit(*m, "BMI", {"b3"})});
    auto gr = m->disj({m->conj({lit(*m, "Age", {"a2", "a3"}), lit(*m, "BMI", {"b3", "b4"})}),
                       m->conj({lit(*m, "Age", {"a3"}), lit(*m, "BMI", {"b2", "b3", "b4"})})});
    return check(c.label(c.classify(inst)) == "yes" && equivalent(complete_reason(c, inst).formula, cr) &&
                 equivalent(general_reason(c, inst).formula, gr));
  });

  criterion("golden: ternary classifier complete reason of x2 y2 z1", [&] {
    auto m = std::make_shared<Manager>(fixtures::xyz_table());
    auto inst = fixtures::instance(m->table(), {{"X", "x2"}, {"Y", "y2"}, {"Z", "z1"}});
    auto c = fixtures::two_class(m, fixtures::delta_2(*m));
    auto expected = m->conj({lit(*m, "X", {"x2"}), m->disj({lit(*m, "Y", {"y2"}), lit(*m, "Z", {"z1"})})});
    return check(c.classify(inst) == 0 && equivalent(complete_reason(c, inst).formula, expected));
  });

  criterion("golden: example graph class DNFs and model counts 20/3/4 of 27", [&] {
    auto t = fixtures::xyz_table();
    auto m = std::make_shared<Manager>(t);
    auto g = fixtures::xyz_graph(t);
    auto d1 = m->disj({lit(*m, "X", {"x1", "x2"}),
                       m->conj({lit(*m, "X", {"x3"}), lit(*m, "Y", {"y1"}), lit(*m, "Z", {"z1", "z3"})})});
    auto d2 = m->conj({lit(*m, "X", {"x3"}), lit(*m, "Z", {"z2"})});
    auto d3 = m->conj({lit(*m, "X", {"x3"}), lit(*m, "Y", {"y2", "y3"}), lit(*m, "Z", {"z1", "z3"})});
    bool ok = class_formula_dnf(*m, g, 0) == d1 && equivalent(class_formula_dnf(*m, g, 1), d2) &&
              class_formula_dnf(*m, g, 2) == d3;
    std::ostringstream s;
    for (std::size_t k = 0; k < 3; ++k) s << (k ? "/" : "counts ") << model_count(class_formula_dnf(*m, g, k));
    ok = ok && t->world_count() == 27 && model_count(class_formula_dnf(*m, g, 0)) == 20 &&
         model_count(class_formula_dnf(*m, g, 1)) == 3 && model_count(class_formula_dnf(*m, g, 2)) == 4;
    return check(ok, s.str());
  });

  criterion("golden: discrete and Boolean prime implicants", [&] {
    auto md = std::make_shared<Manager>(fixtures::xyz_mixed_table());
    auto pd = prime_implicants(fixtures::delta_d(*md));
    const auto& td = md->table();
    auto has = [](const std::vector<Term>& v, const Term& x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    auto mb = std::make_shared<Manager>(fixtures::xyz_binary_table());
    auto pb = prime_implicants(fixtures::delta_b(*mb));
    const auto& tb = mb->table();
    return check(has(pd, term(td, {{"X", {"x"}}, {"Y", {"y"}}, {"Z", {"z1", "z2"}}})) &&
                 !has(pd, term(td, {{"X", {"x"}}, {"Y", {"y"}}, {"Z", {"z1"}}})) &&
                 has(pb, term(tb, {{"Y", {"y"}}, {"Z", {"~z"}}})));
  });
}

void properties() {
  const std::size_t n = 200;

  criterion("property: entailment chain instance |= CR |= GR |= class formula", [&] {
    return cases(n, 101, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      o::WorldSpace space(c.table());
      auto delta = o::truth_table(c.formula(c.classify(inst)), space);
      auto cr = o::truth_table(complete_reason(c, inst).formula, space);
      auto gr = o::truth_table(general_reason(c, inst).formula, space);
      return cr.test(space.index(inst.states())) && cr.subset_of(gr) && gr.subset_of(delta);
    });
  });

  criterion("property: complete reason equals selection-semantics oracle", [&] {
    return cases(n, 102, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      o::WorldSpace space(c.table());
      auto delta = o::truth_table(c.formula(c.classify(inst)), space);
      auto m = std::make_shared<Manager>(gen::table(rng, 5, 4));
      auto f = gen::formula(rng, *m, 4);
      auto i2 = gen::instance(rng, m->table());
      o::WorldSpace s2(m->table());
      return o::truth_table(complete_reason(c, inst).formula, space) ==
                 o::complete_reason_models(delta, space, inst.states()) &&
             o::truth_table(forall_instance(f, i2), s2) ==
                 o::complete_reason_models(o::truth_table(f, s2), s2, i2.states());
    });
  });

  criterion("property: general reason equals selection-semantics oracle", [&] {
    return cases(n, 103, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      o::WorldSpace space(c.table());
      auto delta = o::truth_table(c.formula(c.classify(inst)), space);
      auto m = std::make_shared<Manager>(gen::table(rng, 5, 4));
      auto f = gen::formula(rng, *m, 4);
      auto i2 = gen::instance(rng, m->table());
      o::WorldSpace s2(m->table());
      return o::truth_table(general_reason(c, inst).formula, space) ==
                 o::general_reason_models(delta, space, inst.states()) &&
             o::truth_table(forall_bar_instance(f, i2), s2) ==
                 o::general_reason_models(o::truth_table(f, s2), s2, i2.states());
    });
  });

  criterion("property: prime implicants and implicates equal oracle prime sets", [&] {
    return cases(n, 104, [](gen::Rng& rng) {
      auto m = std::make_shared<Manager>(gen::table(rng, 4, 4));
      auto f = gen::formula(rng, *m, 4);
      o::WorldSpace space(m->table());
      auto tt = o::truth_table(f, space);
      return o::sorted(prime_implicants(f)) == o::sorted(o::prime_implicants(tt, space)) &&
             o::sorted(prime_implicates(f)) == o::sorted(o::prime_implicates(tt, space));
    });
  });

  criterion("property: SR, GSR, NR, GNR equal oracle prime sets of the reasons", [&] {
    return cases(n, 105, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      o::WorldSpace space(c.table());
      auto delta = o::truth_table(c.formula(c.classify(inst)), space);
      auto cr = o::complete_reason_models(delta, space, inst.states());
      auto gr = o::general_reason_models(delta, space, inst.states());
      return o::sorted(sufficient_reasons(c, inst).terms) == o::sorted(o::prime_implicants(cr, space)) &&
             o::sorted(general_sufficient_reasons(c, inst).terms) ==
                 o::sorted(o::variable_minimal(o::prime_implicants(gr, space))) &&
             o::sorted(necessary_reasons(c, inst).clauses) == o::sorted(o::prime_implicates(cr, space)) &&
             o::sorted(general_necessary_reasons(c, inst).clauses) ==
                 o::sorted(o::variable_minimal(o::prime_implicates(gr, space)));
    });
  });

  criterion("property: fixated shortcut equals full prime-implicate pipeline", [&] {
    return cases(n, 106, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      auto gr = general_reason(c, inst).formula;
      return sorted(fixated_prime_implicates(c.table(), to_cnf(gr), inst)) ==
             sorted(variable_minimal(prime_implicates(gr)));
    });
  });

  criterion("property: SR are the instance intersections of GSR", [&] {
    return cases(n, 107, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      std::set<Term> from_gsr;
      for (const auto& g : general_sufficient_reasons(c, inst).terms)
        from_gsr.insert(intersect_with_instance(c.table(), g, inst));
      auto sr = sufficient_reasons(c, inst).terms;
      return std::set<Term>(sr.begin(), sr.end()) == from_gsr;
    });
  });

  criterion("property: binary features give SR = GSR and NR = GNR", [&] {
    return cases(n, 108, [](gen::Rng& rng) {
      auto t = gen::binary_table(rng, 5, 2);
      auto m = std::make_shared<Manager>(t);
      auto g = gen::uniform(rng, 0, 2) ? gen::tree(rng, t, 2) : gen::dag(rng, t, 2, gen::uniform(rng, 1, 6));
      auto c = graph_classifier(m, g);
      auto inst = gen::instance(rng, *t);
      return sorted(sufficient_reasons(c, inst).terms) == sorted(general_sufficient_reasons(c, inst).terms) &&
             sorted(necessary_reasons(c, inst).clauses) == sorted(general_necessary_reasons(c, inst).clauses);
    });
  });

  criterion("property: every violation of a GNR leaves the decided class", [&] {
    std::size_t worlds = 0;
    auto r = cases(n, 109, [&](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      auto cls = c.classify(inst);
      for (const auto& g : general_necessary_reasons(c, inst).clauses)
        for (const auto& w : violations(c.table(), inst, g)) {
          ++worlds;
          if (c.classify(w) == cls) return false;
        }
      return true;
    });
    r.detail += ", " + std::to_string(worlds) + " violation worlds";
    r.ok = r.ok && worlds > 0;
    return r;
  });

  criterion("property: some violation of each NR flips, and no strict subset of its changes does", [&] {
    std::size_t witnesses = 0;
    auto r = cases(n, 110, [&](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      auto cls = c.classify(inst);
      const auto& t = c.table();
      for (const auto& nr : necessary_reasons(c, inst).clauses) {
        auto vars = nr.vars();
        bool flipped = false;
        for (const auto& w : violations(t, inst, nr)) {
          if (c.classify(w) == cls) continue;
          flipped = true;
          ++witnesses;
          for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << vars.size()); ++mask) {
            std::vector<std::uint32_t> partial(inst.states().begin(), inst.states().end());
            for (std::size_t k = 0; k < vars.size(); ++k)
              if ((mask >> k) & 1U) partial[vars[k]] = w[vars[k]];
            if (c.classify(Instance(t, partial)) != cls) return false;
          }
        }
        if (!flipped) return false;
      }
      return true;
    });
    r.detail += ", " + std::to_string(witnesses) + " flipping witnesses";
    r.ok = r.ok && witnesses > 0;
    return r;
  });

  criterion("property: targeted GNR violations land in the target class (3 classes)", [&] {
    std::size_t worlds = 0;
    auto r = cases(n, 111, [&](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, 3);
      auto cls = c.classify(inst);
      for (std::size_t j = 0; j < c.class_count(); ++j) {
        if (j == cls) continue;
        for (const auto& g : explain(c, inst, ExplanationKind::general_necessary, j).clauses)
          for (const auto& w : violations(c.table(), inst, g)) {
            ++worlds;
            if (c.classify(w) != j) return false;
          }
      }
      return true;
    });
    r.detail += ", " + std::to_string(worlds) + " violation worlds";
    r.ok = r.ok && worlds > 0;
    return r;
  });

  criterion("property: explanation outputs are consistent with the instance", [&] {
    return cases(n, 112, [](gen::Rng& rng) {
      auto [c, inst] = random_case(rng, random_classes(rng));
      for (const auto& g : general_necessary_reasons(c, inst).clauses)
        if (!satisfies(inst, g)) return false;
      for (const auto& s : sufficient_reasons(c, inst).terms)
        for (const auto& l : s)
          if (!inst.consistent_with(l)) return false;
      return true;
    });
  });
}

std::size_t internal_nodes(const DecisionGraph& g) {
  return static_cast<std::size_t>(
      std::count_if(g.nodes().begin(), g.nodes().end(), [](const GraphNode& x) { return !x.is_leaf(); }));
}

void compilation() {
  criterion("compile: 100 naive Bayes classifiers (<= 10 features) match direct evaluation", [] {
    std::size_t borderline = 0, largest = 0;
    bool bound = true;
    auto r = cases(100, 201, [&](gen::Rng& rng) {
      auto nb = gen::naive_bayes(rng, 10, 3);
      auto lin = nbc_to_linear(nb);
      auto g = compile_linear(lin);
      auto n = static_cast<std::int64_t>(lin.features.size());
      bound = bound && static_cast<std::int64_t>(internal_nodes(g)) <= n * (2 * lin.weight_bound() + 1);
      largest = std::max(largest, g.node_count());
      // truncating log-odds to `precision` digits moves the margin by at
      // most (features + 1) units of 10^-precision
      const double slack = static_cast<double>(nb.features.size() + 1) / std::pow(10.0, nb.precision);
      bool ok = true;
      all_worlds(*nb.table, [&](const auto& w) {
        if (g.classify(w) != lin.classify(w)) ok = false;
        if (g.classify(w) == nb.classify(w)) return;
        ++borderline;
        double lo = std::log(nb.prior / (1 - nb.prior)) - std::log(nb.threshold / (1 - nb.threshold));
        for (std::size_t i = 0; i < nb.features.size(); ++i)
          lo += std::log(nb.given_positive[i][w[nb.features[i]]] / nb.given_negative[i][w[nb.features[i]]]);
        if (std::abs(lo) > slack) ok = false;
      });
      return ok;
    });
    r.detail += ", borderline worlds " + std::to_string(borderline) + ", largest graph " + std::to_string(largest);
    r.ok = r.ok && bound;
    return r;
  });

  criterion("compile: 100 integer linear specs (n <= 12) match and have <= n(2W+1) nodes", [] {
    std::size_t largest = 0;
    auto r = cases(100, 202, [&](gen::Rng& rng) {
      auto spec = gen::linear(rng, 12, 3, 6);
      auto g = compile_linear(spec);
      auto n = static_cast<std::int64_t>(spec.features.size());
      largest = std::max(largest, g.node_count());
      if (static_cast<std::int64_t>(internal_nodes(g)) > n * (2 * spec.weight_bound() + 1)) return false;
      bool ok = true;
      all_worlds(*spec.table, [&](const auto& w) { ok = ok && g.classify(w) == spec.classify(w); });
      return ok;
    });
    r.detail += ", largest graph " + std::to_string(largest);
    return r;
  });

  criterion("compile: 50 two-layer step networks (<= 8 inputs) match the forward pass", [] {
    return cases(50, 203, [](gen::Rng& rng) {
      auto net = gen::step_network(rng, 8, 3);
      auto m = std::make_shared<Manager>(net.table);
      auto c = step_network_classifier(m, net);
      bool ok = true;
      all_worlds(*net.table, [&](const auto& w) { ok = ok && c.classify(Instance(*net.table, w)) == net.classify(w); });
      return ok;
    });
  });
}

struct NamedGraph {
  std::string name;
  DecisionGraph graph;
};

std::vector<NamedGraph> fixture_graphs() {
  std::vector<NamedGraph> out;
  auto xyz = fixtures::xyz_table();
  out.push_back({"example graph", fixtures::xyz_graph(xyz)});
  auto dt = fixtures::disease_table();
  out.push_back({"disease tree", fixtures::disease_tree(dt)});
  out.push_back({"numeric tree", discretize_numeric_tree(fixtures::age_bmi_tree()).graph});
  gen::Rng rng(300);
  for (int i = 0; i < 100; ++i) {
    auto t = gen::table(rng, 5, 4, 2);
    out.push_back({"random tree", gen::tree(rng, t, 3)});
    out.push_back({"random dag", gen::dag(rng, t, 3, gen::uniform(rng, 1, 8))});
    out.push_back({"compiled linear", compile_linear(gen::linear(rng, 5, 3, 4))});
  }
  return out;
}

void structure() {
  auto graphs = fixture_graphs();

  criterion("structure: complement NNF of every test-once graph is or-decomposable", [&] {
    std::size_t test_once = 0;
    for (const auto& [name, g] : graphs) {
      if (!check_test_once(g)) continue;
      ++test_once;
      Manager m(g.shared_table());
      for (std::size_t c = 0; c < g.classes().size(); ++c)
        if (!is_or_decomposable(class_formula_complement_nnf(m, g, c))) return check(false, name);
    }
    return check(test_once > 0, std::to_string(test_once) + " test-once graphs of " + std::to_string(graphs.size()));
  });

  criterion("structure: complement NNF size <= 4 x (nodes + edges)", [&] {
    double worst = 0;
    for (const auto& [name, g] : graphs) {
      Manager m(g.shared_table());
      auto bound = 4 * (g.node_count() + g.edge_count());
      for (std::size_t c = 0; c < g.classes().size(); ++c) {
        auto size = node_count(class_formula_complement_nnf(m, g, c));
        worst = std::max(worst, static_cast<double>(size) / static_cast<double>(bound));
        if (size > bound) return check(false, name);
      }
    }
    std::ostringstream s;
    s << graphs.size() << " graphs, worst size/bound " << worst;
    return check(true, s.str());
  });

  criterion("structure: path DNF and complement NNF are model-equal", [&] {
    for (const auto& [name, g] : graphs) {
      Manager m(g.shared_table());
      for (std::size_t c = 0; c < g.classes().size(); ++c)
        if (!equivalent(class_formula_dnf(m, g, c), class_formula_complement_nnf(m, g, c))) return check(false, name);
    }
    return check(true, std::to_string(graphs.size()) + " graphs");
  });
}

}  // namespace

int main() {
  goldens();
  properties();
  compilation();
  structure();
  std::cout << "[SKIP] numeric values of the naive Bayes figure | its conditional probability tables are not given, "
               "so the decision-equivalence criterion for naive Bayes stands in for it"
            << std::endl;
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
