#pragma once

// Scenario files are flat `key = value` text:
//
//   # comment
//   defaults = "table1-urban"     # preset applied before every other key
//   seed = 1234
//   lambda_per_m2 = 2e-6
//   rate_menu_bps = [30e6, 60e6, 90e6, 120e6, 150e6]
//   solver = "both"               # greedy | exact | both
//   constraints = "all"           # all | qos-only
//
// Values are numbers, double-quoted strings, booleans, or bracketed number lists. Unknown
// keys are rejected. Key order does not matter except that `defaults` always applies first.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nfp/config.hpp"
#include "nfp/errors.hpp"

namespace nfp {

namespace detail {

using ScenarioValue = std::variant<double, std::string, bool, std::vector<double>>;

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(std::string_view text, int line) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw config_error("line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
  return v;
}

inline ScenarioValue parse_value(std::string_view text, int line) {
  if (text.empty()) throw config_error("line " + std::to_string(line) + ": missing value");
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"')
      throw config_error("line " + std::to_string(line) + ": unterminated string");
    return std::string(text.substr(1, text.size() - 2));
  }
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.front() == '[') {
    if (text.back() != ']')
      throw config_error("line " + std::to_string(line) + ": unterminated list");
    std::vector<double> out;
    std::string_view body = trim(text.substr(1, text.size() - 2));
    while (!body.empty()) {
      const auto comma = body.find(',');
      out.push_back(parse_number(body.substr(0, comma), line));
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
    }
    return out;
  }
  return parse_number(text, line);
}

inline std::string strip_comment(const std::string& raw) {
  bool quoted = false;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] == '"') quoted = !quoted;
    if (raw[k] == '#' && !quoted) return raw.substr(0, k);
  }
  return raw;
}

template <typename T>
const T& expect(const ScenarioValue& v, const std::string& key) {
  if (const auto* p = std::get_if<T>(&v)) return *p;
  throw config_error("key '" + key + "': wrong value type");
}

inline std::int64_t as_integer(double v, const std::string& key) {
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e18)
    throw config_error("key '" + key + "': expected an integer");
  return static_cast<std::int64_t>(v);
}

inline std::uint64_t as_unsigned(double v, const std::string& key) {
  const auto i = as_integer(v, key);
  if (i < 0) throw config_error("key '" + key + "': expected a non-negative integer");
  return static_cast<std::uint64_t>(i);
}

}  // namespace detail

inline ScenarioConfig preset(std::string_view name) {
  if (name == "table1-urban") return ScenarioConfig{};
  throw config_error("unknown defaults preset '" + std::string(name) + "'");
}

inline SolverChoice parse_solver(std::string_view s) {
  if (s == "greedy") return SolverChoice::greedy;
  if (s == "exact") return SolverChoice::exact;
  if (s == "both") return SolverChoice::both;
  throw config_error("unknown solver '" + std::string(s) + "'");
}

inline ConstraintSet parse_constraints(std::string_view s) {
  if (s == "all") return ConstraintSet::all();
  if (s == "qos-only") return ConstraintSet::qos_only();
  throw config_error("unknown constraint set '" + std::string(s) + "'");
}

inline ScenarioConfig parse_scenario(std::string_view text) {
  using detail::expect;
  std::map<std::string, detail::ScenarioValue> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = detail::strip_comment(raw);
    const auto body = detail::trim(stripped);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw config_error("line " + std::to_string(line) + ": expected key = value");
    const std::string key(detail::trim(body.substr(0, eq)));
    if (key.empty()) throw config_error("line " + std::to_string(line) + ": empty key");
    if (entries.count(key)) throw config_error("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    entries.emplace(key, detail::parse_value(detail::trim(body.substr(eq + 1)), line));
  }

  ScenarioConfig cfg;
  if (auto it = entries.find("defaults"); it != entries.end()) {
    cfg = preset(expect<std::string>(it->second, "defaults"));
    entries.erase(it);
  }

  for (const auto& [key, value] : entries) {
    auto num = [&]() { return expect<double>(value, key); };
    if (key == "seed") cfg.seed = detail::as_unsigned(num(), key);
    else if (key == "area_side_m") cfg.area_side_m = num();
    else if (key == "lambda_per_m2") cfg.lambda_per_m2 = num();
    else if (key == "s_bs_min_m") cfg.s_bs_min_m = num();
    else if (key == "h_max_m") cfg.h_max_m = num();
    else if (key == "pl_max_db") cfg.radio.pl_max_db = num();
    else if (key == "alpha") cfg.channel.alpha = num();
    else if (key == "beta") cfg.channel.beta = num();
    else if (key == "eta_los_db") cfg.channel.eta_los_db = num();
    else if (key == "eta_nlos_db") cfg.channel.eta_nlos_db = num();
    else if (key == "carrier_hz") cfg.channel.carrier_hz = num();
    else if (key == "pl_exponent") cfg.channel.pl_exponent = num();
    else if (key == "tx_power_w") cfg.radio.tx_power_w = num();
    else if (key == "noise_w") cfg.radio.noise_w = num();
    else if (key == "sinr_min_db") cfg.radio.sinr_min_db = num();
    else if (key == "backhaul_cap_bps") cfg.backhaul_cap_bps = detail::as_integer(num(), key);
    else if (key == "hub_bandwidth_hz") cfg.hub_bandwidth_hz = num();
    else if (key == "hub_link_cap") cfg.hub_link_cap = detail::as_integer(num(), key);
    else if (key == "eta_avg_estimate") cfg.eta_avg_estimate = num();
    else if (key == "node_budget") cfg.node_budget = detail::as_unsigned(num(), key);
    else if (key == "placement_retries") cfg.placement_retries = detail::as_unsigned(num(), key);
    else if (key == "exact_max_cells") cfg.exact_max_cells = detail::as_unsigned(num(), key);
    else if (key == "solver") cfg.solver = parse_solver(expect<std::string>(value, key));
    else if (key == "constraints") cfg.constraints = parse_constraints(expect<std::string>(value, key));
    else if (key == "rate_menu_bps") {
      cfg.rate_menu_bps.clear();
      for (double r : expect<std::vector<double>>(value, key))
        cfg.rate_menu_bps.push_back(detail::as_integer(r, key));
    } else {
      throw config_error("unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace nfp
