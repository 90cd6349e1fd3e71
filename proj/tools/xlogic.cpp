// xlogic: explain, compile and verify classifiers given as model documents.

#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "xlogic/xlogic.hpp"

using namespace xlogic;
using io::json;

namespace {

enum exit_code { ok = 0, verify_failed = 1, input_error = 2, integrity_error = 3, capacity_error = 4 };

int exit_for(errc code) {
  switch (code) {
    case errc::capacity: return capacity_error;
    case errc::validation:
    case errc::classifier_integrity:
    case errc::invalid_distribution:
    case errc::unsupported_split:
    case errc::configuration: return integrity_error;
    default: return input_error;
  }
}

struct Common {
  std::string model;
  std::optional<int> precision;
  std::uint64_t budget = Limits{}.worlds;
  std::string method = "cnnf";

  Limits limits() const {
    Limits l;
    l.worlds = budget;
    return l;
  }
  io::LoadOptions load_options() const { return {precision}; }
  io::CompileMethod compile_method() const {
    return method == "dnf" ? io::CompileMethod::dnf : io::CompileMethod::complement_nnf;
  }
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--model", c.model, "model document")->required();
  cmd.add_option("--precision", c.precision, "decimal digits kept when integerizing Naive Bayes weights");
  cmd.add_option("--budget", c.budget, "maximum number of worlds enumerated by exhaustive checks");
}

json read_instance(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return io::parse_json_text(arg, "--instance");
  return io::read_json_file(arg);
}

std::string render_world(const VariableTable& table, std::span<const std::uint32_t> world) {
  std::string out;
  for (std::uint32_t v = 0; v < table.size(); ++v)
    out += (v ? ", " : "") + table[v].name + "=" + table[v].states[world[v]];
  return out;
}

json world_json(const VariableTable& table, std::span<const std::uint32_t> world) {
  json out = json::object();
  for (std::uint32_t v = 0; v < table.size(); ++v) out[table[v].name] = table[v].states[world[v]];
  return out;
}

ExplanationKind explanation_kind(const std::string& k) {
  if (k == "sr") return ExplanationKind::sufficient;
  if (k == "gsr") return ExplanationKind::general_sufficient;
  if (k == "nr") return ExplanationKind::necessary;
  return ExplanationKind::general_necessary;
}

template <class Tag>
std::vector<LiteralSet<Tag>> presentation_sorted(std::vector<LiteralSet<Tag>> v) {
  std::sort(v.begin(), v.end(), presentation_less<Tag>);
  return v;
}

// ---------------------------------------------------------------------------

struct ExplainArgs {
  Common common;
  std::string instance;
  std::vector<std::string> kinds{"cr"};
  std::optional<std::string> target;
  std::string format = "text";
};

int run_explain(const ExplainArgs& a) {
  auto model = io::load_model(a.common.model, a.common.load_options());
  auto limits = a.common.limits();
  auto c = model.classifier(a.common.compile_method(), limits);
  if (auto bad = c.partition_violation(limits))
    throw error(errc::classifier_integrity, "class formulas do not partition the worlds; witness " +
                                                 render_world(c.table(), *bad));
  auto inst = model.instance(read_instance(a.instance));
  const auto& table = c.table();
  const bool phrases = io::has_intervals(table);
  std::optional<std::size_t> target;
  if (a.target) target = c.class_index(*a.target);
  auto cls = c.classify(inst);

  std::ostringstream text;
  json machine{{"instance", world_json(table, inst.states())}, {"decision", c.label(cls)}, {"results", json::array()}};
  text << "instance: " << render_world(table, inst.states()) << "\n";
  text << "decision: " << c.label(cls) << "\n";
  if (target) {
    text << "target: " << c.label(*target) << "\n";
    machine["target"] = c.label(*target);
  }

  for (const auto& k : a.kinds) {
    json entry;
    if (k == "cr" || k == "gr") {
      auto rk = k == "cr" ? ReasonKind::complete : ReasonKind::general;
      Reason r = target ? targeted_reason(c, inst, *target, rk) : reason(c, inst, rk);
      auto cover = presentation_sorted(prime_implicants(r.formula, limits));
      std::string label = k == "cr" ? "CR" : "GR";
      text << label << ": " << io::render_symbolic(table, cover) << "\n";
      if (phrases) text << "    " << io::render_phrase(table, cover) << "\n";
      json items = json::array();
      for (const auto& t : cover) items.push_back(io::literal_set_to_json(table, t));
      entry = {{"kind", label},
               {"rendered", io::render_symbolic(table, cover)},
               {"prime_implicant_cover", items},
               {"formula", io::formula_to_json(r.formula)}};
      if (phrases) entry["phrase"] = io::render_phrase(table, cover);
    } else {
      auto kind = explanation_kind(k);
      auto set = explain(c, inst, kind, target, limits);
      json items = json::array();
      json rendered = json::array();
      text << to_string(kind) << " (" << (is_term_kind(kind) ? set.terms.size() : set.clauses.size()) << "):\n";
      auto emit = [&](const auto& item) {
        auto sym = io::render_symbolic(table, item);
        text << "  " << sym << "\n";
        if (phrases) text << "      " << io::render_phrase(table, item) << "\n";
        items.push_back(io::literal_set_to_json(table, item));
        rendered.push_back(sym);
      };
      if (is_term_kind(kind))
        for (const auto& t : presentation_sorted(set.terms)) emit(t);
      else
        for (const auto& cl : presentation_sorted(set.clauses)) emit(cl);
      entry = {{"kind", to_string(kind)}, {"items", items}, {"rendered", rendered}};
    }
    machine["results"].push_back(entry);
  }
  if (a.format == "machine")
    std::cout << machine.dump(2) << "\n";
  else
    std::cout << text.str();
  return ok;
}

// ---------------------------------------------------------------------------

struct CompileArgs {
  Common common;
  std::optional<std::string> cls;
  std::optional<std::string> out;
};

int run_compile(const CompileArgs& a) {
  auto model = io::load_model(a.common.model, a.common.load_options());
  json doc;
  if (a.common.method == "graph") {
    auto g = model.graph();
    if (!g) throw error(errc::configuration, "model type '" + model.type() + "' has no decision graph form");
    doc = io::graph_to_json(*g);
  } else {
    if (!a.cls) throw error(errc::invalid_argument, "--class is required for formula output");
    auto c = model.classifier(a.common.compile_method(), a.common.limits());
    auto k = c.class_index(*a.cls);
    io::FormulaProperties props;
    if (auto g = model.graph()) props.test_once = check_test_once(*g);
    doc = io::formula_to_json(c.formula(k), c.label(k), props);
  }
  if (a.out) {
    std::ofstream f(*a.out);
    if (!f) throw error(errc::invalid_argument, "cannot write '" + *a.out + "'");
    f << doc.dump(2) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return ok;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::uint64_t seed = 1;
  std::size_t samples = 8;
};

class Report {
 public:
  void pass(const std::string& what) { std::cout << "[PASS] " << what << "\n"; }
  void skip(const std::string& what, const std::string& why) { std::cout << "[SKIP] " << what << ": " << why << "\n"; }
  void fail(const std::string& what, const std::string& witness) {
    std::cout << "[FAIL] " << what << "\n       witness: " << witness << "\n";
    failed_ = true;
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

int run_verify(const VerifyArgs& a) {
  auto model = io::load_model(a.common.model, a.common.load_options());
  auto limits = a.common.limits();
  auto c = model.classifier(a.common.compile_method(), limits);
  const auto& table = c.table();
  Report report;

  std::optional<oracle::WorldSpace> space;
  try {
    space.emplace(table, static_cast<std::size_t>(a.common.budget));
  } catch (const error& e) {
    if (e.code() != errc::capacity) throw;
  }

  if (auto bad = c.partition_violation(limits))
    report.fail("partition", render_world(table, *bad));
  else
    report.pass("partition");

  for (std::size_t i = 0; i < model.checks().size(); ++i) {
    const auto& chk = model.checks()[i];
    Instance inst(table, chk.world);
    auto name = "check " + std::to_string(i + 1) + " (" + model.classes()[chk.class_index] + ")";
    if (model.decide(chk.world) != chk.class_index || c.classify(inst) != chk.class_index)
      report.fail(name, render_world(table, chk.world) + " is classified " + model.classes()[model.decide(chk.world)]);
    else
      report.pass(name);
  }

  if (!space) {
    report.skip("decision equivalence", "world count exceeds the budget");
    report.skip("reason oracles", "world count exceeds the budget");
    return report.failed() ? verify_failed : ok;
  }

  auto formulas = c.formulas();
  if (auto w = oracle::first_disagreement(formulas, *space, [&](auto world) { return model.decide(world); }))
    report.fail("decision equivalence", render_world(table, *w));
  else
    report.pass("decision equivalence");

  if (auto g = model.graph()) {
    try {
      auto m = std::make_shared<Manager>(model.shared_table());
      auto dnf = graph_classifier(m, *g, GraphMethod::dnf, limits);
      auto cnnf = graph_classifier(m, *g, GraphMethod::complement_nnf, limits);
      std::optional<std::string> bad;
      for (std::size_t k = 0; k < dnf.class_count() && !bad; ++k)
        if (!(oracle::truth_table(dnf.formula(k), *space) == oracle::truth_table(cnnf.formula(k), *space)))
          bad = "class " + dnf.label(k);
      if (bad)
        report.fail("dnf and complement NNF agree", *bad);
      else
        report.pass("dnf and complement NNF agree");
    } catch (const error& e) {
      if (e.code() != errc::capacity) throw;
      report.skip("dnf and complement NNF agree", e.what());
    }
  }

  // Reasons and prime sets for a seeded sample of instances.
  std::mt19937_64 rng(a.seed);
  std::vector<oracle::Bits> tables;
  for (Formula f : formulas) tables.push_back(oracle::truth_table(f, *space));
  std::size_t term_space = 1;
  for (auto v : table.all_vars()) term_space = std::min<std::size_t>(term_space << table.state_count(v), 1 << 30);
  std::size_t reason_failures = 0, prime_failures = 0, prime_runs = 0;
  std::string reason_witness, prime_witness;
  for (std::size_t s = 0; s < a.samples; ++s) {
    auto world = space->world(std::uniform_int_distribution<std::size_t>(0, space->size() - 1)(rng));
    Instance inst(table, world);
    auto cls = c.classify(inst);
    for (auto rk : {ReasonKind::complete, ReasonKind::general}) {
      Reason r = reason(c, inst, rk);
      auto expect = rk == ReasonKind::complete ? oracle::complete_reason_models(tables[cls], *space, world)
                                               : oracle::general_reason_models(tables[cls], *space, world);
      if (!(oracle::truth_table(r.formula, *space) == expect)) {
        ++reason_failures;
        reason_witness = std::string(to_string(rk)) + " reason of " + render_world(table, world);
      }
      if (term_space > (1 << 20)) continue;
      ++prime_runs;
      auto pis = prime_implicants(r.formula, limits);
      auto pcs = prime_implicates(r.formula, limits);
      auto bits = oracle::truth_table(r.formula, *space);
      std::sort(pis.begin(), pis.end());
      std::sort(pcs.begin(), pcs.end());
      if (pis != oracle::sorted(oracle::prime_implicants(bits, *space)) ||
          pcs != oracle::sorted(oracle::prime_implicates(bits, *space))) {
        ++prime_failures;
        prime_witness = std::string(to_string(rk)) + " reason of " + render_world(table, world);
      }
    }
  }
  auto sample_note = " (" + std::to_string(a.samples) + " instances, seed " + std::to_string(a.seed) + ")";
  if (reason_failures)
    report.fail("reason oracles" + sample_note, reason_witness);
  else
    report.pass("reason oracles" + sample_note);
  if (!prime_runs)
    report.skip("prime sets", "term space too large for exhaustive enumeration");
  else if (prime_failures)
    report.fail("prime sets" + sample_note, prime_witness);
  else
    report.pass("prime sets" + sample_note);
  return report.failed() ? verify_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explain classifier decisions through their class formulas"};
  app.require_subcommand(1);

  ExplainArgs ex;
  auto* explain_cmd = app.add_subcommand("explain", "reasons for the decision on one instance");
  add_common(*explain_cmd, ex.common);
  explain_cmd->add_option("--instance", ex.instance, "instance document or inline JSON object")->required();
  explain_cmd->add_option("--kind", ex.kinds, "cr, gr, sr, gsr, nr, gnr (repeatable or comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"cr", "gr", "sr", "gsr", "nr", "gnr"}));
  explain_cmd->add_option("--target-class", ex.target, "explain against every class except this one");
  explain_cmd->add_option("--format", ex.format)->check(CLI::IsMember({"text", "machine"}));
  explain_cmd->add_option("--method", ex.common.method)->check(CLI::IsMember({"dnf", "cnnf"}));

  CompileArgs co;
  auto* compile_cmd = app.add_subcommand("compile", "emit a class formula or compiled graph");
  add_common(*compile_cmd, co.common);
  compile_cmd->add_option("--class", co.cls, "class label");
  compile_cmd->add_option("--method", co.common.method)->check(CLI::IsMember({"dnf", "cnnf", "graph"}));
  compile_cmd->add_option("--out", co.out, "output path (default stdout)");

  VerifyArgs ve;
  auto* verify_cmd = app.add_subcommand("verify", "run the exhaustive oracle checks");
  add_common(*verify_cmd, ve.common);
  verify_cmd->add_option("--seed", ve.seed, "seed for sampled instances");
  verify_cmd->add_option("--samples", ve.samples, "number of sampled instances");
  verify_cmd->add_option("--method", ve.common.method)->check(CLI::IsMember({"dnf", "cnnf"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*explain_cmd) return run_explain(ex);
    if (*compile_cmd) return run_compile(co);
    return run_verify(ve);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) std::cerr << "  " << d << "\n";
    return exit_for(e.code());
  }
}
