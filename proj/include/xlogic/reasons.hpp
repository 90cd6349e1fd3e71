#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xlogic/primes.hpp"
#include "xlogic/quantify.hpp"

namespace xlogic {

enum class ExplanationKind { sufficient, general_sufficient, necessary, general_necessary };

inline const char* to_string(ExplanationKind k) {
  switch (k) {
    case ExplanationKind::sufficient: return "SR";
    case ExplanationKind::general_sufficient: return "GSR";
    case ExplanationKind::necessary: return "NR";
    case ExplanationKind::general_necessary: return "GNR";
  }
  return "?";
}

inline bool is_term_kind(ExplanationKind k) {
  return k == ExplanationKind::sufficient || k == ExplanationKind::general_sufficient;
}

inline ReasonKind reason_kind_for(ExplanationKind k) {
  return k == ExplanationKind::sufficient || k == ExplanationKind::necessary ? ReasonKind::complete
                                                                              : ReasonKind::general;
}

// Terms for SR/GSR, clauses for NR/GNR; the other vector stays empty.
struct ExplanationSet {
  ExplanationKind kind;
  std::vector<Term> terms;
  std::vector<Clause> clauses;
  Instance instance;
  std::size_t class_index;
  std::string class_label;
  std::optional<std::size_t> target;
};

namespace detail {
inline void expect_kind(const Reason& r, ReasonKind k) {
  if (r.kind != k)
    throw error(errc::invalid_argument, std::string("expected a ") + to_string(k) + " reason, got " + to_string(r.kind));
}

inline ExplanationSet explanation_from(const Reason& r, ExplanationKind kind) {
  return ExplanationSet{kind, {}, {}, r.instance, r.class_index, r.class_label, r.target};
}
}  // namespace detail

// Prime implicants of a complete reason.
inline ExplanationSet sufficient_reasons(const Reason& complete, const Limits& limits = {}) {
  detail::expect_kind(complete, ReasonKind::complete);
  auto out = detail::explanation_from(complete, ExplanationKind::sufficient);
  out.terms = prime_implicants(complete.formula, limits);
  return out;
}

// Variable-minimal prime implicants of a general reason.
inline ExplanationSet general_sufficient_reasons(const Reason& general, const Limits& limits = {}) {
  detail::expect_kind(general, ReasonKind::general);
  auto out = detail::explanation_from(general, ExplanationKind::general_sufficient);
  out.terms = variable_minimal(prime_implicants(general.formula, limits));
  return out;
}

// Prime implicates of a complete reason.
inline ExplanationSet necessary_reasons(const Reason& complete, const Limits& limits = {}) {
  detail::expect_kind(complete, ReasonKind::complete);
  auto out = detail::explanation_from(complete, ExplanationKind::necessary);
  out.clauses = prime_implicates(complete.formula, limits);
  return out;
}

// Variable-minimal prime implicates of a general reason, computed with the
// in-loop discard that locally fixated CNFs allow.
inline ExplanationSet general_necessary_reasons(const Reason& general, const Limits& limits = {}) {
  detail::expect_kind(general, ReasonKind::general);
  auto out = detail::explanation_from(general, ExplanationKind::general_necessary);
  const auto& table = general.formula.table();
  out.clauses = fixated_prime_implicates(table, to_cnf(general.formula, limits), general.instance, limits);
  return out;
}

inline ExplanationSet explain(const Reason& r, ExplanationKind kind, const Limits& limits = {}) {
  switch (kind) {
    case ExplanationKind::sufficient: return sufficient_reasons(r, limits);
    case ExplanationKind::general_sufficient: return general_sufficient_reasons(r, limits);
    case ExplanationKind::necessary: return necessary_reasons(r, limits);
    case ExplanationKind::general_necessary: return general_necessary_reasons(r, limits);
  }
  throw error(errc::invalid_argument, "unknown explanation kind");
}

// Computes the matching reason first; with a target the reason is taken
// against the merged formula of all classes but the target.
inline ExplanationSet explain(const Classifier& c, const Instance& inst, ExplanationKind kind,
                              std::optional<std::size_t> target = std::nullopt, const Limits& limits = {}) {
  auto rk = reason_kind_for(kind);
  Reason r = target ? targeted_reason(c, inst, *target, rk) : reason(c, inst, rk);
  return explain(r, kind, limits);
}

inline ExplanationSet sufficient_reasons(const Classifier& c, const Instance& inst, const Limits& limits = {}) {
  return explain(c, inst, ExplanationKind::sufficient, std::nullopt, limits);
}
inline ExplanationSet general_sufficient_reasons(const Classifier& c, const Instance& inst, const Limits& limits = {}) {
  return explain(c, inst, ExplanationKind::general_sufficient, std::nullopt, limits);
}
inline ExplanationSet necessary_reasons(const Classifier& c, const Instance& inst, const Limits& limits = {}) {
  return explain(c, inst, ExplanationKind::necessary, std::nullopt, limits);
}
inline ExplanationSet general_necessary_reasons(const Classifier& c, const Instance& inst, const Limits& limits = {}) {
  return explain(c, inst, ExplanationKind::general_necessary, std::nullopt, limits);
}

// The smallest sub-term of the instance that implies `t`: the instance's
// characteristics restricted to vars(t).
inline Term intersect_with_instance(const VariableTable& table, const Term& t, const Instance& inst) {
  std::vector<Literal> lits;
  for (const auto& l : t) {
    if (!inst.consistent_with(l))
      throw error(errc::invalid_argument, "term is inconsistent with the instance on '" + table[l.var()].name + "'");
    lits.emplace_back(table, l.var(), single_state(inst[l.var()]));
  }
  return Term(std::move(lits));
}

}  // namespace xlogic
