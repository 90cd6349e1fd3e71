#pragma once

#include <json.hpp>
#include <string>

#include "xlogic/variables.hpp"

namespace xlogic::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void shape_error(const std::string& where, const std::string& what) {
  throw error(errc::invalid_argument, where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) shape_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape_error(where, std::string("missing field '") + key + "'");
  return *it;
}

inline const json* optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) shape_error(where, "expected a string");
  return j.get<std::string>();
}

inline std::int64_t integer_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) shape_error(where, "expected an integer");
  return j.get<std::int64_t>();
}

inline double number_of(const json& j, const std::string& where) {
  if (!j.is_number()) shape_error(where, "expected a number");
  return j.get<double>();
}

// Decimals are read from strings verbatim; plain JSON numbers go through
// their shortest round-trip text.
inline Decimal decimal_of(const json& j, const std::string& where) {
  if (j.is_string()) return Decimal::parse(j.get<std::string>());
  if (j.is_number()) return Decimal::parse(j.dump());
  shape_error(where, "expected a decimal number or numeric string");
}

inline const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) shape_error(where, "expected an array");
  return j;
}

}  // namespace detail

inline json variables_to_json(const VariableTable& table) {
  json out = json::array();
  for (const auto& v : table.variables()) {
    json jv{{"name", v.name}, {"states", v.states}};
    if (v.intervals) {
      json ivs = json::array();
      for (const auto& iv : *v.intervals)
        ivs.push_back({{"lo", iv.lo ? json(iv.lo->to_string()) : json()}, {"hi", iv.hi ? json(iv.hi->to_string()) : json()}});
      jv["intervals"] = ivs;
    }
    out.push_back(jv);
  }
  return out;
}

inline VariableTable variables_from_json(const json& j) {
  VariableTable table;
  for (const auto& jv : detail::array_of(j, "variables")) {
    const std::string where = "variable";
    Variable v;
    v.name = detail::string_of(detail::field(jv, "name", where), where + " name");
    for (const auto& s : detail::array_of(detail::field(jv, "states", where), "states of '" + v.name + "'"))
      v.states.push_back(detail::string_of(s, "state of '" + v.name + "'"));
    if (const auto* ivs = detail::optional_field(jv, "intervals")) {
      v.intervals.emplace();
      for (const auto& iv : detail::array_of(*ivs, "intervals of '" + v.name + "'")) {
        Interval x;
        if (const auto* lo = detail::optional_field(iv, "lo")) x.lo = detail::decimal_of(*lo, "interval of '" + v.name + "'");
        if (const auto* hi = detail::optional_field(iv, "hi")) x.hi = detail::decimal_of(*hi, "interval of '" + v.name + "'");
        v.intervals->push_back(x);
      }
    }
    table.add(std::move(v));
  }
  return table;
}

inline json states_to_json(const VariableTable& table, std::uint32_t var, StateSet states) {
  json out = json::array();
  for (std::uint32_t s = 0; s < table.state_count(var); ++s)
    if ((states >> s) & 1U) out.push_back(table[var].states[s]);
  return out;
}

inline StateSet states_from_json(const VariableTable& table, std::uint32_t var, const json& j) {
  StateSet out = 0;
  for (const auto& s : detail::array_of(j, "states of '" + table[var].name + "'"))
    out |= single_state(table.state(var, detail::string_of(s, "state name")));
  return out;
}

inline json literal_to_json(const VariableTable& table, const Literal& l) {
  return {{"var", table[l.var()].name}, {"states", states_to_json(table, l.var(), l.states())}};
}

template <class Tag>
json literal_set_to_json(const VariableTable& table, const LiteralSet<Tag>& s) {
  json out = json::array();
  for (const auto& l : s) out.push_back(literal_to_json(table, l));
  return out;
}

template <class Tag>
LiteralSet<Tag> literal_set_from_json(const VariableTable& table, const json& j) {
  std::vector<Literal> lits;
  for (const auto& jl : detail::array_of(j, "literal list")) {
    auto var = table.var(detail::string_of(detail::field(jl, "var", "literal"), "literal variable"));
    lits.emplace_back(table, var, states_from_json(table, var, detail::field(jl, "states", "literal")));
  }
  return LiteralSet<Tag>(std::move(lits));
}

}  // namespace xlogic::io
