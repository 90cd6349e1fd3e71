#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xlogic/formula.hpp"

namespace xlogic::io {

// Symbolic forms: `Db=y`, `BT∈{A,B}`.
inline std::string render_symbolic(const VariableTable& table, std::uint32_t var, StateSet states) {
  const auto& v = table[var];
  std::vector<std::string> names;
  for (std::uint32_t s = 0; s < v.states.size(); ++s)
    if ((states >> s) & 1U) names.push_back(v.states[s]);
  if (names.size() == 1) return v.name + "=" + names[0];
  std::string out = v.name + "∈{";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

inline std::string render_symbolic(const VariableTable& table, const Literal& l) {
  return render_symbolic(table, l.var(), l.states());
}

inline std::string render_symbolic(const VariableTable& table, const Term& t) {
  if (t.empty()) return "⊤";
  std::string out;
  for (const auto& l : t) out += (out.empty() ? "" : " ∧ ") + render_symbolic(table, l);
  return out;
}

inline std::string render_symbolic(const VariableTable& table, const Clause& c) {
  if (c.empty()) return "⊥";
  std::string out;
  for (const auto& l : c) out += (out.empty() ? "" : " ∨ ") + render_symbolic(table, l);
  return out;
}

// Infix rendering of an NNF; shared sub-formulas are printed again at each use.
inline std::string render_symbolic(Formula f) {
  const auto& table = f.table();
  auto go = [&](auto&& self, Formula g, bool nested) -> std::string {
    switch (g.kind()) {
      case NodeKind::top: return "⊤";
      case NodeKind::bottom: return "⊥";
      case NodeKind::literal: return render_symbolic(table, g.var(), g.states());
      default: break;
    }
    std::string out;
    for (Formula c : g.children()) out += (out.empty() ? "" : g.is_and() ? " ∧ " : " ∨ ") + self(self, c, true);
    return nested ? "(" + out + ")" : out;
  };
  return go(go, f, false);
}

// Threshold phrases for variables with interval metadata: `Age ≥ 18`,
// `18 ≤ Age < 40`, `Age < 18`, and `Age ∈ [0,18) ∪ [40,∞)` when the states do
// not form one contiguous run. Variables without intervals fall back to the
// symbolic form.
inline std::string render_phrase(const VariableTable& table, std::uint32_t var, StateSet states) {
  const auto& v = table[var];
  if (!v.intervals) return render_symbolic(table, var, states);
  const auto& iv = *v.intervals;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;  // inclusive state ranges
  for (std::uint32_t s = 0; s < iv.size(); ++s) {
    if (!((states >> s) & 1U)) continue;
    if (!runs.empty() && runs.back().second + 1 == s)
      runs.back().second = s;
    else
      runs.emplace_back(s, s);
  }
  const auto last = static_cast<std::uint32_t>(iv.size() - 1);
  if (runs.size() == 1) {
    auto [a, b] = runs[0];
    if (a == 0) return v.name + " < " + iv[b].hi->to_string();
    if (b == last) return v.name + " ≥ " + iv[a].lo->to_string();
    return iv[a].lo->to_string() + " ≤ " + v.name + " < " + iv[b].hi->to_string();
  }
  std::string out = v.name + " ∈ ";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& lo = iv[runs[i].first].lo;
    const auto& hi = iv[runs[i].second].hi;
    out += (i ? " ∪ " : "");
    out += lo ? "[" + lo->to_string() : "(-∞";
    out += ",";
    out += hi ? hi->to_string() + ")" : "∞)";
  }
  return out;
}

inline bool has_intervals(const VariableTable& table) {
  for (const auto& v : table.variables())
    if (v.intervals) return true;
  return false;
}

inline std::string render_phrase(const VariableTable& table, const Term& t) {
  if (t.empty()) return "TRUE";
  std::string out;
  for (const auto& l : t) out += (out.empty() ? "" : " AND ") + render_phrase(table, l.var(), l.states());
  return out;
}

inline std::string render_phrase(const VariableTable& table, const Clause& c) {
  if (c.empty()) return "FALSE";
  std::string out;
  for (const auto& l : c) out += (out.empty() ? "" : " OR ") + render_phrase(table, l.var(), l.states());
  return out;
}

// Disjunction of terms, e.g. `(Age ≥ 18 AND BMI ≥ 27) OR (Age ≥ 40 AND BMI ≥ 25)`.
inline std::string render_phrase(const VariableTable& table, const std::vector<Term>& cover) {
  if (cover.empty()) return "FALSE";
  if (cover.size() == 1) return render_phrase(table, cover[0]);
  std::string out;
  for (const auto& t : cover) {
    auto p = render_phrase(table, t);
    out += (out.empty() ? "" : " OR ") + (t.size() > 1 ? "(" + p + ")" : p);
  }
  return out;
}

inline std::string render_symbolic(const VariableTable& table, const std::vector<Term>& cover) {
  if (cover.empty()) return "⊥";
  std::string out;
  for (const auto& t : cover) {
    auto p = render_symbolic(table, t);
    out += (out.empty() ? "" : " ∨ ") + (t.size() > 1 && cover.size() > 1 ? "(" + p + ")" : p);
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// States whose intervals lie inside [lo, hi); every state must lie fully
// inside or fully outside.
inline StateSet states_within(const Variable& v, std::optional<Decimal> lo, std::optional<Decimal> hi,
                              std::string_view phrase) {
  StateSet out = 0;
  for (std::uint32_t s = 0; s < v.intervals->size(); ++s) {
    const auto& iv = (*v.intervals)[s];
    bool lo_in = !lo || (iv.lo && *lo <= *iv.lo);
    bool hi_in = !hi || (iv.hi && *iv.hi <= *hi);
    bool lo_out = hi && iv.lo && *hi <= *iv.lo;
    bool hi_out = lo && iv.hi && *iv.hi <= *lo;
    if (lo_in && hi_in)
      out |= single_state(s);
    else if (!lo_out && !hi_out)
      throw error(errc::invalid_argument, "phrase '" + std::string(phrase) + "' splits a state of '" + v.name + "'");
  }
  return out;
}

}  // namespace detail

// Inverse of render_phrase (and of the symbolic form) for one literal.
inline Literal parse_phrase(const VariableTable& table, std::string_view phrase) {
  using detail::trim;
  auto text = trim(phrase);
  auto fail = [&](const std::string& why) -> Literal {
    throw error(errc::invalid_argument, "cannot parse '" + std::string(phrase) + "': " + why);
  };
  auto variable = [&](std::string_view name) -> std::uint32_t { return table.var(trim(name)); };
  auto with_intervals = [&](std::uint32_t var) -> const Variable& {
    if (!table[var].intervals) fail("'" + table[var].name + "' has no interval metadata");
    return table[var];
  };
  auto number = [&](std::string_view s) { return Decimal::parse(trim(s)); };

  if (auto eq = text.find('='); eq != std::string_view::npos && text.find("≤") == std::string_view::npos &&
                                text.find("≥") == std::string_view::npos) {
    auto var = variable(text.substr(0, eq));
    return Literal(table, var, single_state(table.state(var, trim(text.substr(eq + 1)))));
  }
  if (auto in = text.find("∈"); in != std::string_view::npos) {
    auto var = variable(text.substr(0, in));
    auto rest = trim(text.substr(in + std::string_view("∈").size()));
    StateSet states = 0;
    if (!rest.empty() && rest.front() == '{') {
      if (rest.back() != '}') fail("unterminated state set");
      rest = rest.substr(1, rest.size() - 2);
      while (!rest.empty()) {
        auto comma = rest.find(',');
        states |= single_state(table.state(var, trim(rest.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      return Literal(table, var, states);
    }
    const auto& v = with_intervals(var);
    while (!rest.empty()) {
      auto cup = rest.find("∪");
      auto piece = trim(rest.substr(0, cup));
      if (piece.size() < 4 || piece.back() != ')') fail("expected a half-open interval");
      auto comma = piece.find(',');
      if (comma == std::string_view::npos) fail("expected a half-open interval");
      auto lo_text = trim(piece.substr(1, comma - 1));
      auto hi_text = trim(piece.substr(comma + 1, piece.size() - comma - 2));
      std::optional<Decimal> lo, hi;
      if (piece.front() == '[')
        lo = number(lo_text);
      else if (!(piece.front() == '(' && lo_text == "-∞"))
        fail("bad lower bound");
      if (hi_text != "∞") hi = number(hi_text);
      states |= detail::states_within(v, lo, hi, phrase);
      if (cup == std::string_view::npos) break;
      rest = rest.substr(cup + std::string_view("∪").size());
    }
    return Literal(table, var, states);
  }
  if (auto ge = text.find("≥"); ge != std::string_view::npos) {
    auto var = variable(text.substr(0, ge));
    return Literal(table, var,
                   detail::states_within(with_intervals(var), number(text.substr(ge + std::string_view("≥").size())),
                                         std::nullopt, phrase));
  }
  if (auto le = text.find("≤"); le != std::string_view::npos) {
    auto lo = number(text.substr(0, le));
    auto rest = text.substr(le + std::string_view("≤").size());
    auto lt = rest.find('<');
    if (lt == std::string_view::npos) fail("expected 'lo ≤ X < hi'");
    auto var = variable(rest.substr(0, lt));
    return Literal(table, var, detail::states_within(with_intervals(var), lo, number(rest.substr(lt + 1)), phrase));
  }
  if (auto lt = text.find('<'); lt != std::string_view::npos) {
    auto var = variable(text.substr(0, lt));
    return Literal(table, var, detail::states_within(with_intervals(var), std::nullopt, number(text.substr(lt + 1)), phrase));
  }
  return fail("no comparison found");
}

}  // namespace xlogic::io
