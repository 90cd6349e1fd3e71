#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "xlogic/decimal.hpp"
#include "xlogic/error.hpp"

namespace xlogic {

// Bit i set <=> state i is in the set.
using StateSet = std::uint64_t;
inline constexpr std::size_t max_states = 64;

inline StateSet full_set(std::size_t state_count) {
  return state_count == 64 ? ~StateSet{0} : (StateSet{1} << state_count) - 1;
}

inline StateSet single_state(std::uint32_t state) { return StateSet{1} << state; }

inline int state_count_of(StateSet s) { return std::popcount(s); }

// Half-open [lo, hi); an absent bound is infinite.
struct Interval {
  std::optional<Decimal> lo;
  std::optional<Decimal> hi;

  bool contains(const Decimal& v) const { return (!lo || *lo <= v) && (!hi || v < *hi); }
};

struct Variable {
  std::string name;
  std::vector<std::string> states;
  std::optional<std::vector<Interval>> intervals;
};

class VariableTable {
 public:
  VariableTable() = default;

  std::uint32_t add(Variable v) {
    if (v.name.empty()) throw error(errc::invalid_argument, "variable name must be nonempty");
    if (index_.count(v.name)) throw error(errc::invalid_argument, "duplicate variable '" + v.name + "'");
    if (v.states.size() < 2) throw error(errc::invalid_argument, "variable '" + v.name + "' needs at least two states");
    if (v.states.size() > max_states)
      throw error(errc::capacity, "variable '" + v.name + "' has " + std::to_string(v.states.size()) +
                                      " states; at most 64 are supported");
    for (std::size_t i = 0; i < v.states.size(); ++i)
      for (std::size_t j = i + 1; j < v.states.size(); ++j)
        if (v.states[i] == v.states[j])
          throw error(errc::invalid_argument, "duplicate state '" + v.states[i] + "' in variable '" + v.name + "'");
    if (v.intervals) check_intervals(v);
    auto id = static_cast<std::uint32_t>(vars_.size());
    index_.emplace(v.name, id);
    vars_.push_back(std::move(v));
    return id;
  }

  std::uint32_t add(std::string name, std::vector<std::string> states) {
    return add(Variable{std::move(name), std::move(states), std::nullopt});
  }

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::uint32_t var) const { return vars_.at(var); }
  std::span<const Variable> variables() const { return vars_; }

  std::size_t state_count(std::uint32_t var) const { return vars_.at(var).states.size(); }
  StateSet domain(std::uint32_t var) const { return full_set(state_count(var)); }

  std::optional<std::uint32_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t var(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw error(errc::unknown_variable, "unknown variable '" + std::string(name) + "'");
  }

  std::uint32_t state(std::uint32_t var, std::string_view name) const {
    const auto& states = vars_.at(var).states;
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<std::uint32_t>(i);
    throw error(errc::unknown_state,
                "unknown state '" + std::string(name) + "' for variable '" + vars_.at(var).name + "'");
  }

  StateSet states(std::uint32_t var, std::span<const std::string> names) const {
    StateSet s = 0;
    for (const auto& n : names) s |= single_state(state(var, n));
    return s;
  }

  // Number of worlds over the given scope, saturating at UINT64_MAX.
  std::uint64_t world_count(std::span<const std::uint32_t> scope) const {
    std::uint64_t n = 1;
    for (auto v : scope) {
      if (__builtin_mul_overflow(n, state_count(v), &n)) return UINT64_MAX;
    }
    return n;
  }

  std::vector<std::uint32_t> all_vars() const {
    std::vector<std::uint32_t> out(vars_.size());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

  std::uint64_t world_count() const { return world_count(all_vars()); }

 private:
  static void check_intervals(const Variable& v) {
    const auto& iv = *v.intervals;
    auto bad = [&](const std::string& why) {
      throw error(errc::invalid_argument, "intervals of '" + v.name + "': " + why);
    };
    if (iv.size() != v.states.size()) bad("one interval per state required");
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (i > 0 && !iv[i].lo) bad("only the first interval may be unbounded below");
      if (i + 1 < iv.size() && !iv[i].hi) bad("only the last interval may be unbounded above");
      if (iv[i].lo && iv[i].hi && !(*iv[i].lo < *iv[i].hi)) bad("empty interval");
      if (i > 0 && !(*iv[i - 1].hi == *iv[i].lo)) bad("intervals must be contiguous and ordered");
    }
  }

  std::vector<Variable> vars_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// A nonempty proper subset of one variable's states.
class Literal {
 public:
  Literal(const VariableTable& table, std::uint32_t var, StateSet states) : var_(var), states_(states) {
    if (var >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(var));
    if (states == 0) throw error(errc::invalid_argument, "empty literal on '" + table[var].name + "'");
    if ((states & ~table.domain(var)) != 0)
      throw error(errc::unknown_state, "literal on '" + table[var].name + "' names a state outside the domain");
    if (states == table.domain(var))
      throw error(errc::invalid_argument, "literal on '" + table[var].name + "' covers the whole domain");
  }

  std::uint32_t var() const { return var_; }
  StateSet states() const { return states_; }
  bool simple() const { return std::has_single_bit(states_); }
  bool contains(std::uint32_t state) const { return (states_ >> state) & 1U; }

  // Set complement within the variable's domain.
  Literal complement(const VariableTable& table) const { return {table, var_, table.domain(var_) & ~states_}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;

 private:
  std::uint32_t var_;
  StateSet states_;
};

struct conjunctive_tag {};
struct disjunctive_tag {};

// Literals over pairwise distinct variables, kept sorted by variable.
// Read as a conjunction (Term) or a disjunction (Clause); the empty Term is
// valid and the empty Clause is unsatisfiable.
template <class Tag>
class LiteralSet {
 public:
  LiteralSet() = default;

  explicit LiteralSet(std::vector<Literal> literals) : lits_(std::move(literals)) {
    std::sort(lits_.begin(), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i)
      if (lits_[i].var() == lits_[i - 1].var())
        throw error(errc::invalid_argument, "two literals on the same variable");
  }

  std::span<const Literal> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  const Literal* find(std::uint32_t var) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), var,
                               [](const Literal& l, std::uint32_t v) { return l.var() < v; });
    return it != lits_.end() && it->var() == var ? &*it : nullptr;
  }

  std::vector<std::uint32_t> vars() const {
    std::vector<std::uint32_t> out;
    out.reserve(lits_.size());
    for (const auto& l : lits_) out.push_back(l.var());
    return out;
  }

  bool simple() const {
    return std::all_of(lits_.begin(), lits_.end(), [](const Literal& l) { return l.simple(); });
  }

  friend bool operator==(const LiteralSet&, const LiteralSet&) = default;
  friend auto operator<=>(const LiteralSet&, const LiteralSet&) = default;

 private:
  std::vector<Literal> lits_;
};

using Term = LiteralSet<conjunctive_tag>;
using Clause = LiteralSet<disjunctive_tag>;

// Deterministic presentation order: fewer variables first, then table order.
template <class Tag>
bool presentation_less(const LiteralSet<Tag>& a, const LiteralSet<Tag>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// A total assignment of one state per table variable.
class Instance {
 public:
  Instance() = default;

  Instance(const VariableTable& table, std::vector<std::uint32_t> states) : states_(std::move(states)) {
    if (states_.size() != table.size())
      throw error(errc::invalid_argument, "instance assigns " + std::to_string(states_.size()) + " of " +
                                              std::to_string(table.size()) + " variables");
    for (std::uint32_t v = 0; v < states_.size(); ++v)
      if (states_[v] >= table.state_count(v))
        throw error(errc::unknown_state, "state index " + std::to_string(states_[v]) + " for '" + table[v].name + "'");
  }

  std::uint32_t operator[](std::uint32_t var) const { return states_.at(var); }
  std::span<const std::uint32_t> states() const { return states_; }
  std::size_t size() const { return states_.size(); }

  bool consistent_with(const Literal& l) const { return l.contains(states_.at(l.var())); }

  Term as_term(const VariableTable& table) const {
    std::vector<Literal> lits;
    for (std::uint32_t v = 0; v < states_.size(); ++v) lits.emplace_back(table, v, single_state(states_[v]));
    return Term(std::move(lits));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::uint32_t> states_;
};

// Calls fn(world) for every assignment of `scope`; variables outside the
// scope keep whatever `world` holds. Returns false if fn asked to stop.
template <class Fn>
bool for_each_world(const VariableTable& table, std::span<const std::uint32_t> scope, std::vector<std::uint32_t>& world,
                    Fn&& fn) {
  for (auto v : scope) world[v] = 0;
  while (true) {
    if (!fn(static_cast<const std::vector<std::uint32_t>&>(world))) return false;
    std::size_t i = 0;
    for (; i < scope.size(); ++i) {
      auto v = scope[i];
      if (++world[v] < table.state_count(v)) break;
      world[v] = 0;
    }
    if (i == scope.size()) return true;
  }
}

inline void check_world_budget(const VariableTable& table, std::span<const std::uint32_t> scope, const Limits& limits) {
  auto n = table.world_count(scope);
  if (n > limits.worlds)
    throw error(errc::capacity, "enumeration of " + (n == UINT64_MAX ? std::string(">2^64") : std::to_string(n)) +
                                    " worlds exceeds the budget of " + std::to_string(limits.worlds));
}

}  // namespace xlogic
