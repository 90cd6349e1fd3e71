#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xlogic/logic.hpp"

namespace xlogic {

// Class formulas Δ1..Δn with labels c1..cn. The formulas are expected to be
// mutually exclusive and exhaustive; `check_partition` verifies it.
class Classifier {
 public:
  Classifier(std::shared_ptr<Manager> manager, std::vector<std::string> labels, std::vector<Formula> formulas)
      : manager_(std::move(manager)), labels_(std::move(labels)), formulas_(std::move(formulas)) {
    if (labels_.size() != formulas_.size())
      throw error(errc::invalid_argument, "one class formula per label required");
    if (labels_.size() < 2) throw error(errc::invalid_argument, "a classifier needs at least two classes");
    for (Formula f : formulas_)
      if (!f.valid() || &f.manager() != manager_.get())
        throw error(errc::invalid_argument, "class formula does not belong to the classifier's manager");
  }

  Manager& manager() const { return *manager_; }
  std::shared_ptr<Manager> shared_manager() const { return manager_; }
  const VariableTable& table() const { return manager_->table(); }
  std::size_t class_count() const { return labels_.size(); }
  const std::string& label(std::size_t c) const { return labels_.at(c); }
  const std::vector<std::string>& labels() const { return labels_; }
  Formula formula(std::size_t c) const { return formulas_.at(c); }
  const std::vector<Formula>& formulas() const { return formulas_; }

  std::optional<std::size_t> find_class(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::size_t class_index(std::string_view label) const {
    if (auto c = find_class(label)) return *c;
    throw error(errc::invalid_argument, "unknown class '" + std::string(label) + "'");
  }

  // The unique class whose formula the instance satisfies.
  std::size_t classify(const Instance& inst) const {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < formulas_.size(); ++i)
      if (evaluate(formulas_[i], inst)) hits.push_back(i);
    if (hits.size() != 1)
      throw error(errc::classifier_integrity,
                  "instance satisfies " + std::to_string(hits.size()) + " class formulas; exactly one expected");
    return hits.front();
  }

  // Exhaustive partition check. Returns a world violating exclusivity or
  // exhaustiveness, if any.
  std::optional<std::vector<std::uint32_t>> partition_violation(const Limits& limits = {}) const {
    const auto& t = table();
    auto scope = t.all_vars();
    check_world_budget(t, scope, limits);
    std::vector<Evaluator> evals;
    for (Formula f : formulas_) evals.emplace_back(f);
    std::optional<std::vector<std::uint32_t>> bad;
    std::vector<std::uint32_t> world(t.size(), 0);
    for_each_world(t, scope, world, [&](const auto& w) {
      int hits = 0;
      for (const auto& e : evals) hits += e.run(w);
      if (hits != 1) {
        bad = w;
        return false;
      }
      return true;
    });
    return bad;
  }

  bool check_partition(const Limits& limits = {}) const { return !partition_violation(limits); }

 private:
  std::shared_ptr<Manager> manager_;
  std::vector<std::string> labels_;
  std::vector<Formula> formulas_;
};

}  // namespace xlogic
