#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xlogic/formula.hpp"

namespace xlogic {

inline constexpr std::uint32_t unassigned = std::numeric_limits<std::uint32_t>::max();

namespace detail {

// Post-order over the DAG reachable from root; each node appears once.
inline std::vector<Formula> topological(Formula root) {
  std::vector<Formula> order;
  std::unordered_set<std::uint32_t> seen;
  std::vector<std::pair<Formula, std::size_t>> stack{{root, 0}};
  seen.insert(root.id());
  while (!stack.empty()) {
    auto& [f, next] = stack.back();
    auto kids = f.children();
    if (next < kids.size()) {
      Formula c = kids[next++];
      if (seen.insert(c.id()).second) stack.emplace_back(c, 0);
    } else {
      order.push_back(f);
      stack.pop_back();
    }
  }
  return order;
}

// Bottom-up rebuild with a per-node rewrite; `rewrite(node, rebuilt_children)`
// returns the replacement. Nodes not mentioning any variable of interest can
// be short-circuited by `keep`.
template <class Keep, class Rewrite>
Formula rebuild(Formula root, Keep&& keep, Rewrite&& rewrite) {
  std::unordered_map<std::uint32_t, Formula> memo;
  for (Formula f : topological(root)) {
    if (keep(f)) {
      memo.emplace(f.id(), f);
      continue;
    }
    std::vector<Formula> kids;
    kids.reserve(f.children().size());
    for (Formula c : f.children()) kids.push_back(memo.at(c.id()));
    memo.emplace(f.id(), rewrite(f, std::move(kids)));
  }
  return memo.at(root.id());
}

inline bool disjoint_sorted(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

}  // namespace detail

// Substitutes each assigned variable's state: an X-literal becomes top if it
// contains the assigned state and bottom otherwise. `assignment` is indexed
// by variable; `unassigned` leaves a variable free.
inline Formula condition(Formula f, std::span<const std::uint32_t> assignment) {
  Manager& m = f.manager();
  if (assignment.size() != m.table().size())
    throw error(errc::invalid_argument, "assignment must be indexed by every table variable");
  auto touched = [&](Formula g) {
    for (auto v : g.vars())
      if (assignment[v] != unassigned) return true;
    return false;
  };
  return detail::rebuild(
      f, [&](Formula g) { return !touched(g); },
      [&](Formula g, std::vector<Formula> kids) -> Formula {
        switch (g.kind()) {
          case NodeKind::literal: return m.constant((g.states() >> assignment[g.var()]) & 1U);
          case NodeKind::conj: return m.conj(kids);
          case NodeKind::disj: return m.disj(kids);
          default: return g;
        }
      });
}

inline Formula condition(Formula f, std::uint32_t var, std::uint32_t state) {
  const auto& table = f.table();
  if (var >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(var));
  if (state >= table.state_count(var)) throw error(errc::unknown_state, "state index " + std::to_string(state));
  std::vector<std::uint32_t> a(table.size(), unassigned);
  a[var] = state;
  return condition(f, a);
}

// Conditioning on a simple term.
inline Formula condition(Formula f, const Term& t) {
  const auto& table = f.table();
  std::vector<std::uint32_t> a(table.size(), unassigned);
  for (const auto& l : t) {
    if (l.var() >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(l.var()));
    if (!l.simple()) throw error(errc::invalid_argument, "conditioning term has a non-simple literal on '" + table[l.var()].name + "'");
    a[l.var()] = static_cast<std::uint32_t>(std::countr_zero(l.states()));
  }
  return condition(f, a);
}

// Precompiled evaluator for repeated evaluation of one formula.
class Evaluator {
 public:
  explicit Evaluator(Formula root) : order_(detail::topological(root)), value_(order_.size()) {
    std::unordered_map<std::uint32_t, std::uint32_t> pos;
    for (std::uint32_t i = 0; i < order_.size(); ++i) pos.emplace(order_[i].id(), i);
    child_index_.resize(order_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i)
      for (Formula c : order_[i].children()) child_index_[i].push_back(pos.at(c.id()));
    auto v = root.vars();
    vars_.assign(v.begin(), v.end());
    table_size_ = root.table().size();
  }

  // `world` is indexed by variable and must assign every variable the
  // formula mentions.
  bool operator()(std::span<const std::uint32_t> world) const {
    if (world.size() != table_size_) throw error(errc::invalid_argument, "world must be indexed by every table variable");
    for (auto v : vars_)
      if (world[v] == unassigned) throw error(errc::invalid_argument, "world leaves variable index " + std::to_string(v) + " unassigned");
    return run(world);
  }

  // Skips the totality check; for tight enumeration loops.
  bool run(std::span<const std::uint32_t> world) const {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      Formula f = order_[i];
      bool v = false;
      switch (f.kind()) {
        case NodeKind::top: v = true; break;
        case NodeKind::bottom: v = false; break;
        case NodeKind::literal: v = (f.states() >> world[f.var()]) & 1U; break;
        case NodeKind::conj:
          v = true;
          for (auto c : child_index_[i])
            if (!value_[c]) {
              v = false;
              break;
            }
          break;
        case NodeKind::disj:
          v = false;
          for (auto c : child_index_[i])
            if (value_[c]) {
              v = true;
              break;
            }
          break;
      }
      value_[i] = v;
    }
    return value_.back();
  }

 private:
  std::vector<Formula> order_;
  std::vector<std::vector<std::uint32_t>> child_index_;
  mutable std::vector<char> value_;
  std::vector<std::uint32_t> vars_;
  std::size_t table_size_ = 0;
};

inline bool evaluate(Formula f, std::span<const std::uint32_t> world) { return Evaluator(f)(world); }
inline bool evaluate(Formula f, const Instance& inst) { return Evaluator(f)(inst.states()); }

// NNF negation by De Morgan; literals complement within their domain.
inline Formula negate(Formula f) {
  Manager& m = f.manager();
  return detail::rebuild(
      f, [](Formula) { return false; },
      [&](Formula g, std::vector<Formula> kids) -> Formula {
        switch (g.kind()) {
          case NodeKind::top: return m.bottom();
          case NodeKind::bottom: return m.top();
          case NodeKind::literal: return m.literal(g.var(), m.table().domain(g.var()) & ~g.states());
          case NodeKind::conj: return m.disj(kids);
          case NodeKind::disj: return m.conj(kids);
        }
        return g;
      });
}

inline std::vector<std::uint32_t> union_vars(Formula a, Formula b) {
  std::vector<std::uint32_t> out;
  std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(), std::back_inserter(out));
  return out;
}

// models(a) ⊆ models(b), decided by enumerating the joint scope.
inline bool entails(Formula a, Formula b, const Limits& limits = {}) {
  if (&a.manager() != &b.manager()) throw error(errc::invalid_argument, "formulas from different managers");
  if (a.is_bottom() || b.is_top() || a == b) return true;
  const auto& table = a.table();
  auto scope = union_vars(a, b);
  check_world_budget(table, scope, limits);
  Evaluator ea(a), eb(b);
  std::vector<std::uint32_t> world(table.size(), 0);
  return for_each_world(table, scope, world, [&](const auto& w) { return !ea.run(w) || eb.run(w); });
}

inline bool equivalent(Formula a, Formula b, const Limits& limits = {}) {
  if (a == b) return true;
  const auto& table = a.table();
  auto scope = union_vars(a, b);
  check_world_budget(table, scope, limits);
  Evaluator ea(a), eb(b);
  std::vector<std::uint32_t> world(table.size(), 0);
  return for_each_world(table, scope, world, [&](const auto& w) { return ea.run(w) == eb.run(w); });
}

// Syntactic entailment between terms: a ⊨ b.
inline bool subsumes(const Term& a, const Term& b) {
  for (const auto& lb : b) {
    const Literal* la = a.find(lb.var());
    if (!la || (la->states() & ~lb.states()) != 0) return false;
  }
  return true;
}

// Syntactic entailment between clauses: a ⊨ b.
inline bool subsumes(const Clause& a, const Clause& b) {
  for (const auto& la : a) {
    const Literal* lb = b.find(la.var());
    if (!lb || (la.states() & ~lb->states()) != 0) return false;
  }
  return true;
}

struct ModelSet {
  std::vector<std::uint32_t> scope;
  std::vector<std::vector<std::uint32_t>> models;  // each indexed by variable; entries outside scope are 0
  std::uint64_t count = 0;
};

inline ModelSet enumerate_models(Formula f, std::span<const std::uint32_t> scope, const Limits& limits = {}) {
  const auto& table = f.table();
  std::vector<std::uint32_t> sorted(scope.begin(), scope.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto v : sorted)
    if (v >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(v));
  for (auto v : f.vars())
    if (!std::binary_search(sorted.begin(), sorted.end(), v))
      throw error(errc::invalid_argument, "scope omits '" + table[v].name + "' which the formula mentions");
  check_world_budget(table, sorted, limits);
  ModelSet out;
  out.scope = sorted;
  Evaluator e(f);
  std::vector<std::uint32_t> world(table.size(), 0);
  for_each_world(table, sorted, world, [&](const auto& w) {
    if (e.run(w)) out.models.push_back(w);
    return true;
  });
  out.count = out.models.size();
  return out;
}

// Model count over the whole table.
inline std::uint64_t model_count(Formula f, const Limits& limits = {}) {
  const auto& table = f.table();
  auto scope = table.all_vars();
  check_world_budget(table, scope, limits);
  Evaluator e(f);
  std::uint64_t n = 0;
  std::vector<std::uint32_t> world(table.size(), 0);
  for_each_world(table, scope, world, [&](const auto& w) {
    n += e.run(w);
    return true;
  });
  return n;
}

// Every OR node's children mention pairwise disjoint variables.
inline bool is_or_decomposable(Formula f) {
  for (Formula g : detail::topological(f)) {
    if (!g.is_or()) continue;
    auto kids = g.children();
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j)
        if (!detail::disjoint_sorted(kids[i].vars(), kids[j].vars())) return false;
  }
  return true;
}

inline std::vector<Formula> literals_of(Formula f) {
  std::vector<Formula> out;
  for (Formula g : detail::topological(f))
    if (g.is_literal()) out.push_back(g);
  return out;
}

inline bool is_simple(Formula f) {
  for (Formula l : literals_of(f))
    if (!std::has_single_bit(l.states())) return false;
  return true;
}

// For each variable, all of its literals are simple and identical.
inline bool is_monotone(Formula f) {
  std::unordered_map<std::uint32_t, StateSet> seen;
  for (Formula l : literals_of(f)) {
    if (!std::has_single_bit(l.states())) return false;
    auto [it, inserted] = seen.try_emplace(l.var(), l.states());
    if (!inserted && it->second != l.states()) return false;
  }
  return true;
}

// Every literal is consistent with the instance.
inline bool is_locally_fixated(Formula f, const Instance& inst) {
  for (Formula l : literals_of(f))
    if (!((l.states() >> inst[l.var()]) & 1U)) return false;
  return true;
}

inline std::size_t node_count(Formula f) { return detail::topological(f).size(); }

inline std::size_t edge_count(Formula f) {
  std::size_t n = 0;
  for (Formula g : detail::topological(f)) n += g.children().size();
  return n;
}

}  // namespace xlogic
