#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "xlogic/logic.hpp"

namespace xlogic {

namespace detail {

// Per-variable merge of two literal sets. Under disjunctive reading states
// are united; a full-domain result makes the set valid (nullopt). Under
// conjunctive reading states are intersected; an empty result makes the set
// inconsistent (nullopt).
template <class Tag>
std::optional<LiteralSet<Tag>> merge(const VariableTable& table, const LiteralSet<Tag>& a, const LiteralSet<Tag>& b) {
  constexpr bool disjunctive = std::is_same_v<Tag, disjunctive_tag>;
  std::vector<Literal> out;
  auto ia = a.begin(), ib = b.begin();
  auto push = [&](std::uint32_t var, StateSet s) {
    if (disjunctive ? s == table.domain(var) : s == 0) return false;
    out.emplace_back(table, var, s);
    return true;
  };
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->var() < ib->var())) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->var() < ia->var()) {
      out.push_back(*ib++);
    } else {
      StateSet s = disjunctive ? (ia->states() | ib->states()) : (ia->states() & ib->states());
      if (!push(ia->var(), s)) return std::nullopt;
      ++ia;
      ++ib;
    }
  }
  return LiteralSet<Tag>(std::move(out));
}

// "a is at least as strong as b" for clauses, "a is at least as weak as b"
// for terms: the element that makes b redundant in an antichain.
inline bool dominates(const Clause& a, const Clause& b) { return subsumes(a, b); }
inline bool dominates(const Term& a, const Term& b) { return subsumes(b, a); }

// Keeps the non-redundant elements: strongest clauses, weakest terms.
template <class Tag>
std::vector<LiteralSet<Tag>> reduce(std::vector<LiteralSet<Tag>> items) {
  std::sort(items.begin(), items.end(), presentation_less<Tag>);
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::vector<LiteralSet<Tag>> kept;
  for (auto& c : items) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return dominates(k, c); });
    if (redundant) continue;
    std::erase_if(kept, [&](const auto& k) { return dominates(c, k); });
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(), presentation_less<Tag>);
  return kept;
}

template <class Tag>
std::vector<LiteralSet<Tag>> product(const VariableTable& table, const std::vector<LiteralSet<Tag>>& a,
                                     const std::vector<LiteralSet<Tag>>& b, const Limits& limits) {
  if (a.size() * b.size() > limits.clauses * 16)
    throw error(errc::capacity, "normal-form distribution of " + std::to_string(a.size()) + " x " +
                                    std::to_string(b.size()) + " items exceeds the guardrail");
  std::vector<LiteralSet<Tag>> out;
  for (const auto& x : a)
    for (const auto& y : b)
      if (auto m = merge(table, x, y)) out.push_back(std::move(*m));
  out = reduce(std::move(out));
  if (out.size() > limits.clauses)
    throw error(errc::capacity, "normal form has " + std::to_string(out.size()) + " items; guardrail is " +
                                    std::to_string(limits.clauses));
  return out;
}

// CNF (Tag = disjunctive) or DNF (Tag = conjunctive) by distribution.
template <class Tag>
std::vector<LiteralSet<Tag>> normal_form(Formula f, const Limits& limits) {
  constexpr bool cnf = std::is_same_v<Tag, disjunctive_tag>;
  using Item = LiteralSet<Tag>;
  const auto& table = f.table();
  std::unordered_map<std::uint32_t, std::vector<Item>> memo;
  for (Formula g : topological(f)) {
    std::vector<Item> r;
    switch (g.kind()) {
      case NodeKind::top:
        if (!cnf) r.push_back(Item{});
        break;
      case NodeKind::bottom:
        if (cnf) r.push_back(Item{});
        break;
      case NodeKind::literal: r.push_back(Item({Literal(table, g.var(), g.states())})); break;
      case NodeKind::conj:
      case NodeKind::disj: {
        const bool concatenates = g.is_and() == cnf;
        if (concatenates) {
          for (Formula c : g.children()) {
            const auto& cr = memo.at(c.id());
            r.insert(r.end(), cr.begin(), cr.end());
          }
          r = reduce(std::move(r));
          if (r.size() > limits.clauses)
            throw error(errc::capacity, "normal form has " + std::to_string(r.size()) + " items; guardrail is " +
                                            std::to_string(limits.clauses));
        } else {
          bool first = true;
          for (Formula c : g.children()) {
            if (first) {
              r = memo.at(c.id());
              first = false;
            } else {
              r = product(table, r, memo.at(c.id()), limits);
            }
          }
        }
        break;
      }
    }
    memo.emplace(g.id(), std::move(r));
  }
  return memo.at(f.id());
}

template <class Tag>
std::vector<std::uint32_t> shared_vars(const LiteralSet<Tag>& a, const LiteralSet<Tag>& b) {
  std::vector<std::uint32_t> out;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->var() == ib->var()) {
      out.push_back(ia->var());
      ++ia;
      ++ib;
    } else if (ia->var() < ib->var()) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return out;
}

template <class Tag>
bool var_subset_strict(const LiteralSet<Tag>& a, const LiteralSet<Tag>& b) {
  if (a.size() >= b.size()) return false;
  for (const auto& l : a)
    if (!b.find(l.var())) return false;
  return true;
}

}  // namespace detail

// Clauses whose conjunction is model-equal to f; one literal per variable per
// clause and no tautologies. The empty clause stands for ⊥.
inline std::vector<Clause> to_cnf(Formula f, const Limits& limits = {}) {
  return detail::normal_form<disjunctive_tag>(f, limits);
}

// Terms whose disjunction is model-equal to f. The empty term stands for ⊤.
inline std::vector<Term> to_dnf(Formula f, const Limits& limits = {}) {
  return detail::normal_form<conjunctive_tag>(f, limits);
}

// Discrete resolution on `var`: from ℓ∨α and ℓ'∨β derive (ℓ∩ℓ')∨α∨β, with
// the X-literal omitted when the intersection is empty. Returns nullopt when
// the resolvent is tautologous or equal to one of the inputs.
inline std::optional<Clause> resolve(const VariableTable& table, const Clause& a, const Clause& b, std::uint32_t var) {
  const Literal* la = a.find(var);
  const Literal* lb = b.find(var);
  if (!la || !lb) throw error(errc::invalid_argument, "both clauses must mention the resolved variable");
  std::vector<Literal> rest_a, rest_b;
  for (const auto& l : a)
    if (l.var() != var) rest_a.push_back(l);
  for (const auto& l : b)
    if (l.var() != var) rest_b.push_back(l);
  auto merged = detail::merge(table, Clause(std::move(rest_a)), Clause(std::move(rest_b)));
  if (!merged) return std::nullopt;
  std::vector<Literal> lits(merged->begin(), merged->end());
  if (StateSet common = la->states() & lb->states()) lits.emplace_back(table, var, common);
  Clause r(std::move(lits));
  if (r == a || r == b) return std::nullopt;
  return r;
}

namespace detail {

template <class Tag>
std::vector<LiteralSet<Tag>> drop_non_variable_minimal(std::vector<LiteralSet<Tag>> items) {
  std::vector<LiteralSet<Tag>> out;
  for (const auto& s : items) {
    bool minimal = std::none_of(items.begin(), items.end(), [&](const auto& o) { return var_subset_strict(o, s); });
    if (minimal) out.push_back(s);
  }
  return out;
}

// Round-based closure under resolution; subsumed clauses are swept after
// every round. With `variable_minimal_only` clauses that are not
// variable-minimal are discarded after every round as well.
inline std::vector<Clause> resolution_closure(const VariableTable& table, std::vector<Clause> cnf,
                                              bool variable_minimal_only, const Limits& limits) {
  auto current = reduce(std::move(cnf));
  if (variable_minimal_only) current = drop_non_variable_minimal(std::move(current));
  std::set<Clause> previous;
  while (true) {
    std::vector<Clause> fresh;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        if (previous.count(current[i]) && previous.count(current[j])) continue;
        for (auto v : shared_vars(current[i], current[j])) {
          auto r = resolve(table, current[i], current[j], v);
          if (!r) continue;
          bool redundant = std::any_of(current.begin(), current.end(), [&](const Clause& c) { return subsumes(c, *r); });
          if (!redundant) fresh.push_back(std::move(*r));
        }
      }
      if (fresh.size() > limits.clauses)
        throw error(errc::capacity, "resolution produced more than " + std::to_string(limits.clauses) + " clauses");
    }
    if (fresh.empty()) break;
    previous = std::set<Clause>(current.begin(), current.end());
    auto next = current;
    next.insert(next.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
    next = reduce(std::move(next));
    if (variable_minimal_only) next = drop_non_variable_minimal(std::move(next));
    if (next.size() > limits.clauses)
      throw error(errc::capacity, "prime implicate set exceeds " + std::to_string(limits.clauses) + " clauses");
    if (next == current) break;
    current = std::move(next);
  }
  std::sort(current.begin(), current.end(), presentation_less<disjunctive_tag>);
  return current;
}

}  // namespace detail

inline std::vector<Clause> prime_implicates(Formula f, const Limits& limits = {}) {
  return detail::resolution_closure(f.table(), to_cnf(f, limits), false, limits);
}

inline std::vector<Clause> prime_implicates_of_cnf(const VariableTable& table, std::vector<Clause> cnf,
                                                   const Limits& limits = {}) {
  return detail::resolution_closure(table, std::move(cnf), false, limits);
}

// Members whose variable set has no strict subset among the other members'
// variable sets.
template <class Tag>
std::vector<LiteralSet<Tag>> variable_minimal(const std::vector<LiteralSet<Tag>>& items) {
  return detail::drop_non_variable_minimal(items);
}

// Variable-minimal prime implicates of a CNF that is locally fixated on the
// instance, discarding non-variable-minimal clauses during resolution.
inline std::vector<Clause> fixated_prime_implicates(const VariableTable& table, std::vector<Clause> cnf,
                                                    const Instance& inst, const Limits& limits = {}) {
  for (const auto& c : cnf)
    for (const auto& l : c)
      if (!inst.consistent_with(l)) {
        std::string states;
        for (std::uint32_t s = 0; s < table.state_count(l.var()); ++s)
          if (l.contains(s)) states += (states.empty() ? "" : ",") + table[l.var()].states[s];
        throw error(errc::invalid_argument,
                    "CNF is not locally fixated: literal " + table[l.var()].name + "∈{" + states + "} excludes the instance");
      }
  return detail::resolution_closure(table, std::move(cnf), true, limits);
}

inline Term complement_clause(const VariableTable& table, const Clause& c) {
  std::vector<Literal> lits;
  for (const auto& l : c) lits.push_back(l.complement(table));
  return Term(std::move(lits));
}

inline Clause complement_term(const VariableTable& table, const Term& t) {
  std::vector<Literal> lits;
  for (const auto& l : t) lits.push_back(l.complement(table));
  return Clause(std::move(lits));
}

// Prime implicants by dualization: complements of the prime implicates of ¬f.
inline std::vector<Term> prime_implicants_by_duality(Formula f, const Limits& limits = {}) {
  const auto& table = f.table();
  std::vector<Term> out;
  for (const auto& c : prime_implicates(negate(f), limits)) out.push_back(complement_clause(table, c));
  std::sort(out.begin(), out.end(), presentation_less<conjunctive_tag>);
  return out;
}

// Prime implicants of a monotone formula: its DNF closed under absorption.
inline std::vector<Term> prime_implicants_monotone(Formula f, const Limits& limits = {}) {
  if (!is_monotone(f)) throw error(errc::invalid_argument, "formula is not monotone");
  return to_dnf(f, limits);
}

inline std::vector<Term> prime_implicants(Formula f, const Limits& limits = {}) {
  return is_monotone(f) ? prime_implicants_monotone(f, limits) : prime_implicants_by_duality(f, limits);
}

}  // namespace xlogic
