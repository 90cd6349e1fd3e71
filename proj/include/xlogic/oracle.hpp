#pragma once

// Brute-force reference semantics. Nothing here calls the quantification,
// prime or compilation code; formulas are evaluated through their own truth
// tables over an explicit world space.

#include <bit>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "xlogic/classifier.hpp"

namespace xlogic::oracle {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n, bool value = false) : n_(n), w_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) { trim(); }

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }

  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits operator~() const {
    Bits r = *this;
    for (auto& x : r.w_) x = ~x;
    r.trim();
    return r;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend bool operator==(const Bits&, const Bits&) = default;

  // this ⊆ o
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool none() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }

 private:
  void trim() {
    if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// All joint states of `scope`, indexed in mixed radix with the first scope
// variable varying fastest. Variables outside the scope read as state 0.
class WorldSpace {
 public:
  WorldSpace(const VariableTable& table, std::vector<std::uint32_t> scope, std::size_t max_worlds = Limits{}.worlds)
      : table_(&table), scope_(std::move(scope)) {
    std::sort(scope_.begin(), scope_.end());
    scope_.erase(std::unique(scope_.begin(), scope_.end()), scope_.end());
    for (auto v : scope_) {
      if (v >= table.size()) throw error(errc::unknown_variable, "variable index " + std::to_string(v));
      stride_.push_back(count_);
      count_ *= table.state_count(v);
      if (count_ > max_worlds) throw error(errc::capacity, "oracle world space exceeds " + std::to_string(max_worlds));
    }
  }
  explicit WorldSpace(const VariableTable& table, std::size_t max_worlds = Limits{}.worlds)
      : WorldSpace(table, table.all_vars(), max_worlds) {}

  const VariableTable& table() const { return *table_; }
  const std::vector<std::uint32_t>& scope() const { return scope_; }
  std::size_t size() const { return count_; }
  bool covers(std::uint32_t var) const { return std::binary_search(scope_.begin(), scope_.end(), var); }

  std::uint32_t state(std::size_t world, std::uint32_t var) const {
    auto it = std::lower_bound(scope_.begin(), scope_.end(), var);
    if (it == scope_.end() || *it != var) return 0;
    auto k = static_cast<std::size_t>(it - scope_.begin());
    return static_cast<std::uint32_t>((world / stride_[k]) % table_->state_count(var));
  }

  std::vector<std::uint32_t> world(std::size_t index) const {
    std::vector<std::uint32_t> w(table_->size(), 0);
    for (auto v : scope_) w[v] = state(index, v);
    return w;
  }

  std::size_t index(std::span<const std::uint32_t> world) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < scope_.size(); ++k) i += world[scope_[k]] * stride_[k];
    return i;
  }

  // Index of `world` with variable `var` replaced by `s`.
  std::size_t with(std::size_t world, std::uint32_t var, std::uint32_t s) const {
    auto k = static_cast<std::size_t>(std::lower_bound(scope_.begin(), scope_.end(), var) - scope_.begin());
    return world - state(world, var) * stride_[k] + s * stride_[k];
  }

  Bits literal(std::uint32_t var, StateSet states) const {
    Bits b(count_);
    for (std::size_t w = 0; w < count_; ++w)
      if ((states >> state(w, var)) & 1U) b.set(w);
    return b;
  }

 private:
  const VariableTable* table_;
  std::vector<std::uint32_t> scope_;
  std::vector<std::size_t> stride_;
  std::size_t count_ = 1;
};

inline Bits truth_table(Formula f, const WorldSpace& space) {
  std::unordered_map<std::uint32_t, Bits> memo;
  std::function<const Bits&(Formula)> go = [&](Formula g) -> const Bits& {
    if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
    Bits b;
    switch (g.kind()) {
      case NodeKind::top: b = Bits(space.size(), true); break;
      case NodeKind::bottom: b = Bits(space.size(), false); break;
      case NodeKind::literal:
        if (!space.covers(g.var()))
          throw error(errc::invalid_argument, "world space does not cover '" + space.table()[g.var()].name + "'");
        b = space.literal(g.var(), g.states());
        break;
      case NodeKind::conj:
        b = Bits(space.size(), true);
        for (Formula c : g.children()) b &= go(c);
        break;
      case NodeKind::disj:
        b = Bits(space.size(), false);
        for (Formula c : g.children()) b |= go(c);
        break;
    }
    return memo.emplace(g.id(), std::move(b)).first->second;
  };
  return go(f);
}

// Selection semantics of the two reasons for instance I, over the space's
// variables. A world w is a model of the complete reason iff every world
// that keeps the characteristics w shares with I, and varies the rest
// arbitrarily, satisfies Δ. It is a model of the general reason iff Δ holds
// after resetting any subset of the disagreeing variables to I's states.
inline Bits complete_reason_models(const Bits& delta, const WorldSpace& space, std::span<const std::uint32_t> inst) {
  Bits out(space.size());
  for (std::size_t w = 0; w < space.size(); ++w) {
    std::vector<std::uint32_t> free;
    for (auto v : space.scope())
      if (space.state(w, v) != inst[v]) free.push_back(v);
    bool all = true;
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (all) {
      std::size_t x = w;
      for (std::size_t k = 0; k < free.size(); ++k) x = space.with(x, free[k], digits[k]);
      all = delta.test(x);
      std::size_t k = 0;
      while (k < free.size() && ++digits[k] == space.table().state_count(free[k])) digits[k++] = 0;
      if (k == free.size()) break;
    }
    if (all) out.set(w);
  }
  return out;
}

inline Bits general_reason_models(const Bits& delta, const WorldSpace& space, std::span<const std::uint32_t> inst) {
  Bits out(space.size());
  for (std::size_t w = 0; w < space.size(); ++w) {
    std::vector<std::uint32_t> diff;
    for (auto v : space.scope())
      if (space.state(w, v) != inst[v]) diff.push_back(v);
    if (diff.size() > 20) throw error(errc::capacity, "too many disagreeing variables for the oracle");
    bool all = true;
    for (std::uint32_t mask = 0; all && mask < (1U << diff.size()); ++mask) {
      std::size_t x = w;
      for (std::size_t k = 0; k < diff.size(); ++k)
        if ((mask >> k) & 1U) x = space.with(x, diff[k], inst[diff[k]]);
      all = delta.test(x);
    }
    if (all) out.set(w);
  }
  return out;
}

// Every prime implicant of the function `f`, by exhaustive search over
// terms on the space's variables. A term is prime iff it is an implicant
// and no single-state widening of one of its literals is.
inline std::vector<Term> prime_implicants(const Bits& f, const WorldSpace& space) {
  const auto& table = space.table();
  const auto& scope = space.scope();
  // literal bits per scope position and state mask (index 0 unused)
  std::vector<std::vector<Bits>> lit(scope.size());
  for (std::size_t k = 0; k < scope.size(); ++k) {
    auto full = full_set(table.state_count(scope[k]));
    lit[k].resize(full);
    for (StateSet m = 1; m < full; ++m) lit[k][m] = space.literal(scope[k], m);
  }
  std::vector<StateSet> masks(scope.size(), 0);  // 0 = variable absent
  std::vector<Term> out;

  auto implicant = [&](const std::vector<StateSet>& ms) {
    Bits b(space.size(), true);
    for (std::size_t k = 0; k < ms.size(); ++k)
      if (ms[k]) b &= lit[k][ms[k]];
    return b.subset_of(f);
  };
  auto dfs = [&](auto&& self, std::size_t k, const Bits& acc) -> void {
    if (k == scope.size()) {
      if (!acc.subset_of(f)) return;
      for (std::size_t j = 0; j < scope.size(); ++j) {
        if (!masks[j]) continue;
        auto full = full_set(table.state_count(scope[j]));
        for (std::uint32_t s = 0; s < table.state_count(scope[j]); ++s) {
          if ((masks[j] >> s) & 1U) continue;
          auto wider = masks;
          wider[j] |= single_state(s);
          if (wider[j] == full) wider[j] = 0;
          if (implicant(wider)) return;
        }
      }
      std::vector<Literal> lits;
      for (std::size_t j = 0; j < scope.size(); ++j)
        if (masks[j]) lits.emplace_back(table, scope[j], masks[j]);
      out.emplace_back(std::move(lits));
      return;
    }
    masks[k] = 0;
    self(self, k + 1, acc);
    auto full = full_set(table.state_count(scope[k]));
    for (StateSet m = 1; m < full; ++m) {
      masks[k] = m;
      Bits next = acc & lit[k][m];
      if (!next.none()) self(self, k + 1, next);
    }
    masks[k] = 0;
  };
  dfs(dfs, 0, Bits(space.size(), true));
  return out;
}

// Prime implicates are the complements of the prime implicants of ¬f.
inline std::vector<Clause> prime_implicates(const Bits& f, const WorldSpace& space) {
  const auto& table = space.table();
  std::vector<Clause> out;
  for (const auto& t : prime_implicants(~f, space)) {
    std::vector<Literal> lits;
    for (const auto& l : t)
      lits.emplace_back(table, l.var(), full_set(table.state_count(l.var())) & ~l.states());
    out.emplace_back(std::move(lits));
  }
  return out;
}

// Keeps the sets whose variable set is not a strict superset of another's.
template <class Tag>
std::vector<LiteralSet<Tag>> variable_minimal(const std::vector<LiteralSet<Tag>>& sets) {
  std::vector<LiteralSet<Tag>> out;
  for (const auto& a : sets) {
    auto va = a.vars();
    bool dominated = false;
    for (const auto& b : sets) {
      auto vb = b.vars();
      if (vb.size() < va.size() && std::includes(va.begin(), va.end(), vb.begin(), vb.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

template <class Tag>
std::vector<LiteralSet<Tag>> sorted(std::vector<LiteralSet<Tag>> sets) {
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return sets;
}

// First world of `space` on which the class formulas fail to single out
// exactly the class chosen by `decide`, or nothing if they agree everywhere.
template <class Decide>
std::optional<std::vector<std::uint32_t>> first_disagreement(std::span<const Formula> class_formulas,
                                                             const WorldSpace& space, Decide&& decide) {
  std::vector<Bits> tables;
  for (Formula f : class_formulas) tables.push_back(truth_table(f, space));
  for (std::size_t w = 0; w < space.size(); ++w) {
    auto world = space.world(w);
    std::size_t expected = decide(std::span<const std::uint32_t>(world));
    for (std::size_t k = 0; k < tables.size(); ++k)
      if (tables[k].test(w) != (k == expected)) return world;
  }
  return std::nullopt;
}

}  // namespace xlogic::oracle
