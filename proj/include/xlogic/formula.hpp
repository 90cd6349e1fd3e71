#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "xlogic/variables.hpp"

namespace xlogic {

enum class NodeKind : std::uint8_t { top, bottom, literal, conj, disj };

class Manager;

namespace detail {
struct Node;
}

// Handle to an interned NNF node. Two handles compare equal iff they point to
// the same node, which implies structural (not semantic) equality.
class Formula {
 public:
  Formula() = default;

  bool valid() const { return node_ != nullptr; }
  NodeKind kind() const;
  std::uint32_t id() const;
  bool is_top() const { return kind() == NodeKind::top; }
  bool is_bottom() const { return kind() == NodeKind::bottom; }
  bool is_literal() const { return kind() == NodeKind::literal; }
  bool is_and() const { return kind() == NodeKind::conj; }
  bool is_or() const { return kind() == NodeKind::disj; }

  // Valid only for literal nodes.
  std::uint32_t var() const;
  StateSet states() const;

  std::span<const Formula> children() const;
  // Sorted variables mentioned anywhere below this node.
  std::span<const std::uint32_t> vars() const;
  bool mentions(std::uint32_t var) const {
    auto v = vars();
    return std::binary_search(v.begin(), v.end(), var);
  }

  Manager& manager() const;
  const VariableTable& table() const;

  friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }

 private:
  friend class Manager;
  explicit Formula(const detail::Node* n) : node_(n) {}
  const detail::Node* node_ = nullptr;
};

namespace detail {
struct Node {
  NodeKind kind;
  std::uint32_t id;
  std::uint32_t var;
  StateSet states;
  std::vector<Formula> children;
  std::vector<std::uint32_t> vars;
  Manager* owner;
};

struct NodeKey {
  NodeKind kind;
  std::uint32_t var;
  StateSet states;
  std::vector<std::uint32_t> children;

  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9E3779B97F4A7C15ULL;
    auto mix = [&h](std::uint64_t v) { h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2); };
    mix(k.var);
    mix(k.states);
    for (auto c : k.children) mix(c);
    return h;
  }
};
}  // namespace detail

// Owns the variable table and the intern table for every formula built over
// it. Node construction is serialized by a mutex; nodes are immutable once
// created, so formulas can be read from any thread.
class Manager {
 public:
  explicit Manager(std::shared_ptr<const VariableTable> table) : table_(std::move(table)) {
    top_ = intern(detail::NodeKey{NodeKind::top, 0, 0, {}}, {});
    bottom_ = intern(detail::NodeKey{NodeKind::bottom, 0, 0, {}}, {});
  }

  static std::shared_ptr<Manager> create(VariableTable table) {
    return std::make_shared<Manager>(std::make_shared<const VariableTable>(std::move(table)));
  }

  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  const VariableTable& table() const { return *table_; }
  std::shared_ptr<const VariableTable> shared_table() const { return table_; }

  Formula top() const { return top_; }
  Formula bottom() const { return bottom_; }
  Formula constant(bool v) const { return v ? top_ : bottom_; }

  // Empty state sets fold to bottom and full domains to top.
  Formula literal(std::uint32_t var, StateSet states) {
    if (var >= table_->size()) throw error(errc::unknown_variable, "variable index " + std::to_string(var));
    auto dom = table_->domain(var);
    if ((states & ~dom) != 0) throw error(errc::unknown_state, "state outside the domain of '" + (*table_)[var].name + "'");
    if (states == 0) return bottom_;
    if (states == dom) return top_;
    return intern(detail::NodeKey{NodeKind::literal, var, states, {}}, {});
  }

  Formula literal(const Literal& l) { return literal(l.var(), l.states()); }
  Formula state(std::uint32_t var, std::uint32_t s) { return literal(var, single_state(s)); }

  Formula conj(std::span<const Formula> parts) { return nary(NodeKind::conj, parts); }
  Formula disj(std::span<const Formula> parts) { return nary(NodeKind::disj, parts); }
  Formula conj(std::initializer_list<Formula> parts) { return nary(NodeKind::conj, {parts.begin(), parts.size()}); }
  Formula disj(std::initializer_list<Formula> parts) { return nary(NodeKind::disj, {parts.begin(), parts.size()}); }

  Formula term(const Term& t) {
    std::vector<Formula> parts;
    for (const auto& l : t) parts.push_back(literal(l));
    return conj(parts);
  }

  Formula clause(const Clause& c) {
    std::vector<Formula> parts;
    for (const auto& l : c) parts.push_back(literal(l));
    return disj(parts);
  }

  Formula instance(const Instance& inst) { return term(inst.as_term(*table_)); }

  std::size_t node_total() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

 private:
  // Flattens same-kind children, folds constants, merges literals on one
  // variable (intersection under AND, union under OR), dedupes, and sorts
  // children by node id.
  Formula nary(NodeKind kind, std::span<const Formula> parts) {
    const bool is_and = kind == NodeKind::conj;
    const Formula absorbing = is_and ? bottom_ : top_;
    const Formula neutral = is_and ? top_ : bottom_;

    std::vector<Formula> flat;
    std::unordered_map<std::uint32_t, StateSet> lits;
    std::vector<std::uint32_t> lit_order;
    auto add_literal = [&](Formula f) {
      auto [it, inserted] = lits.try_emplace(f.var(), f.states());
      if (inserted)
        lit_order.push_back(f.var());
      else
        it->second = is_and ? (it->second & f.states()) : (it->second | f.states());
    };
    for (Formula f : parts) {
      check_owner(f);
      if (f == absorbing) return absorbing;
      if (f == neutral) continue;
      if (f.kind() == kind) {
        for (Formula c : f.children()) {
          if (c.is_literal())
            add_literal(c);
          else
            flat.push_back(c);
        }
      } else if (f.is_literal()) {
        add_literal(f);
      } else {
        flat.push_back(f);
      }
    }
    for (auto v : lit_order) {
      Formula l = literal(v, lits[v]);
      if (l == absorbing) return absorbing;
      if (l != neutral) flat.push_back(l);
    }
    std::sort(flat.begin(), flat.end(), [](Formula a, Formula b) { return a.id() < b.id(); });
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return neutral;
    if (flat.size() == 1) return flat.front();

    detail::NodeKey key{kind, 0, 0, {}};
    key.children.reserve(flat.size());
    for (Formula f : flat) key.children.push_back(f.id());
    return intern(std::move(key), std::move(flat));
  }

  void check_owner(Formula f) const {
    if (!f.valid()) throw error(errc::invalid_argument, "null formula");
    if (&f.manager() != this) throw error(errc::invalid_argument, "formula belongs to a different manager");
  }

  Formula intern(detail::NodeKey key, std::vector<Formula> children) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) return Formula(it->second);
    detail::Node node{key.kind, static_cast<std::uint32_t>(nodes_.size()), key.var, key.states, std::move(children),
                      {}, this};
    if (node.kind == NodeKind::literal) {
      node.vars = {node.var};
    } else {
      for (Formula c : node.children) {
        auto cv = c.vars();
        std::vector<std::uint32_t> merged;
        merged.reserve(node.vars.size() + cv.size());
        std::set_union(node.vars.begin(), node.vars.end(), cv.begin(), cv.end(), std::back_inserter(merged));
        node.vars = std::move(merged);
      }
    }
    nodes_.push_back(std::move(node));
    const detail::Node* p = &nodes_.back();
    index_.emplace(std::move(key), p);
    return Formula(p);
  }

  std::shared_ptr<const VariableTable> table_;
  mutable std::mutex mutex_;
  std::deque<detail::Node> nodes_;
  std::unordered_map<detail::NodeKey, const detail::Node*, detail::NodeKeyHash> index_;
  Formula top_;
  Formula bottom_;
};

inline NodeKind Formula::kind() const { return node_->kind; }
inline std::uint32_t Formula::id() const { return node_->id; }
inline std::uint32_t Formula::var() const { return node_->var; }
inline StateSet Formula::states() const { return node_->states; }
inline std::span<const Formula> Formula::children() const { return node_->children; }
inline std::span<const std::uint32_t> Formula::vars() const { return node_->vars; }
inline Manager& Formula::manager() const { return *node_->owner; }
inline const VariableTable& Formula::table() const { return node_->owner->table(); }

}  // namespace xlogic

template <>
struct std::hash<xlogic::Formula> {
  std::size_t operator()(xlogic::Formula f) const noexcept { return f.id(); }
};
