#pragma once

#include <optional>
#include <string>

#include "xlogic/classifier.hpp"

namespace xlogic {

namespace detail {

inline void check_state(const VariableTable& table, std::uint32_t var, std::uint32_t state) {
  if (var >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(var));
  if (state >= table.state_count(var))
    throw error(errc::unknown_state, "state index " + std::to_string(state) + " for '" + table[var].name + "'");
}

inline std::size_t children_mentioning(Formula g, std::uint32_t var) {
  std::size_t n = 0;
  for (Formula c : g.children()) n += c.mentions(var);
  return n;
}

}  // namespace detail

// ∀x_i·Δ = Δ|x_i ∧ ⋀_{j≠i} (x_i ∨ Δ|x_j), applied literally at the root.
inline Formula expand_forall_state(Formula f, std::uint32_t var, std::uint32_t state) {
  Manager& m = f.manager();
  detail::check_state(m.table(), var, state);
  std::vector<Formula> parts{condition(f, var, state)};
  Formula xi = m.state(var, state);
  for (std::uint32_t j = 0; j < m.table().state_count(var); ++j)
    if (j != state) parts.push_back(m.disj({xi, condition(f, var, j)}));
  return m.conj(parts);
}

// ∀̄x_i·Δ = Δ|x_i ∧ Δ, applied literally at the root.
inline Formula expand_forall_bar_state(Formula f, std::uint32_t var, std::uint32_t state) {
  Manager& m = f.manager();
  detail::check_state(m.table(), var, state);
  return m.conj({condition(f, var, state), f});
}

// Universal literal quantification of one state. Distributes over every AND
// and over any OR in which at most one disjunct mentions the variable; other
// OR nodes are expanded by definition.
inline Formula forall_state(Formula f, std::uint32_t var, std::uint32_t state) {
  Manager& m = f.manager();
  detail::check_state(m.table(), var, state);
  return detail::rebuild(
      f, [&](Formula g) { return !g.mentions(var); },
      [&](Formula g, std::vector<Formula> kids) -> Formula {
        switch (g.kind()) {
          case NodeKind::literal: return (g.states() >> state) & 1U ? m.state(var, state) : m.bottom();
          case NodeKind::conj: return m.conj(kids);
          case NodeKind::disj:
            if (detail::children_mentioning(g, var) <= 1) return m.disj(kids);
            return expand_forall_state(g, var, state);
          default: return g;
        }
      });
}

// Same distribution rules as forall_state, with base case ℓ ↦ ℓ if x_i ∈ ℓ
// and ⊥ otherwise.
inline Formula forall_bar_state(Formula f, std::uint32_t var, std::uint32_t state) {
  Manager& m = f.manager();
  detail::check_state(m.table(), var, state);
  return detail::rebuild(
      f, [&](Formula g) { return !g.mentions(var); },
      [&](Formula g, std::vector<Formula> kids) -> Formula {
        switch (g.kind()) {
          case NodeKind::literal: return (g.states() >> state) & 1U ? g : m.bottom();
          case NodeKind::conj: return m.conj(kids);
          case NodeKind::disj:
            if (detail::children_mentioning(g, var) <= 1) return m.disj(kids);
            return expand_forall_bar_state(g, var, state);
          default: return g;
        }
      });
}

// Quantifies every characteristic of the instance, in table order unless an
// explicit variable order is given.
inline Formula forall_instance(Formula f, const Instance& inst, std::span<const std::uint32_t> order = {}) {
  auto vars = order.empty() ? f.table().all_vars() : std::vector<std::uint32_t>(order.begin(), order.end());
  for (auto v : vars) f = forall_state(f, v, inst[v]);
  return f;
}

inline Formula forall_bar_instance(Formula f, const Instance& inst, std::span<const std::uint32_t> order = {}) {
  auto vars = order.empty() ? f.table().all_vars() : std::vector<std::uint32_t>(order.begin(), order.end());
  for (auto v : vars) f = forall_bar_state(f, v, inst[v]);
  return f;
}

enum class ReasonKind { complete, general };

inline const char* to_string(ReasonKind k) { return k == ReasonKind::complete ? "complete" : "general"; }

struct Reason {
  Formula formula;
  ReasonKind kind;
  Instance instance;
  std::size_t class_index;
  std::string class_label;
  // Set for targeted reasons: the formula explains membership in the merged
  // class of every label except this one.
  std::optional<std::size_t> target;
};

namespace detail {
inline Reason make_reason(const Classifier& c, const Instance& inst, Formula base, ReasonKind kind,
                          std::size_t cls, std::optional<std::size_t> target) {
  Formula f = kind == ReasonKind::complete ? forall_instance(base, inst) : forall_bar_instance(base, inst);
  return Reason{f, kind, inst, cls, c.label(cls), target};
}
}  // namespace detail

inline Reason complete_reason(const Classifier& c, const Instance& inst) {
  auto cls = c.classify(inst);
  return detail::make_reason(c, inst, c.formula(cls), ReasonKind::complete, cls, std::nullopt);
}

inline Reason general_reason(const Classifier& c, const Instance& inst) {
  auto cls = c.classify(inst);
  return detail::make_reason(c, inst, c.formula(cls), ReasonKind::general, cls, std::nullopt);
}

inline Reason reason(const Classifier& c, const Instance& inst, ReasonKind kind) {
  return kind == ReasonKind::complete ? complete_reason(c, inst) : general_reason(c, inst);
}

// Reason for the instance against the disjunction of every class except
// `target`. Flips suggested by its necessary reasons land in `target`.
inline Reason targeted_reason(const Classifier& c, const Instance& inst, std::size_t target, ReasonKind kind) {
  if (target >= c.class_count()) throw error(errc::invalid_argument, "target class index out of range");
  auto cls = c.classify(inst);
  if (cls == target)
    throw error(errc::invalid_argument, "instance is already in target class '" + c.label(target) + "'");
  std::vector<Formula> others;
  for (std::size_t k = 0; k < c.class_count(); ++k)
    if (k != target) others.push_back(c.formula(k));
  return detail::make_reason(c, inst, c.manager().disj(others), kind, cls, target);
}

// Light semantic-preserving cleanup: absorption a ∧ (a ∨ b) = a and
// a ∨ (a ∧ b) = a on top of the constant folding done at construction.
inline Formula simplify(Formula f) {
  Manager& m = f.manager();
  return detail::rebuild(
      f, [](Formula g) { return g.children().empty(); },
      [&](Formula g, std::vector<Formula> kids) -> Formula {
        if (!g.is_and() && !g.is_or()) return g;
        const NodeKind inner = g.is_and() ? NodeKind::disj : NodeKind::conj;
        std::vector<Formula> kept;
        for (Formula k : kids) {
          bool absorbed = false;
          if (k.kind() == inner) {
            for (Formula other : kids) {
              if (other == k) continue;
              auto parts = k.children();
              if (std::find(parts.begin(), parts.end(), other) != parts.end()) {
                absorbed = true;
                break;
              }
            }
          }
          if (!absorbed) kept.push_back(k);
        }
        return g.is_and() ? m.conj(kept) : m.disj(kept);
      });
}

}  // namespace xlogic
