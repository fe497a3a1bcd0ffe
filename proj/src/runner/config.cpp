// Copyright 2026 The qbattery Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qbattery/runner.hpp"

namespace qbattery::runner {

namespace {

constexpr int kMaxCells = 16;

std::string at(const std::string& source, const YAML::Mark& mark) {
  if (mark.is_null()) return source + ": ";
  return source + ":" + std::to_string(mark.line + 1) + ": ";
}

[[noreturn]] void fail(const std::string& source, const YAML::Node& node, const std::string& msg) {
  throw ConfigError(at(source, node.Mark()) + msg);
}

double as_number(const std::string& source, const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(source, node, key + ": expected a number");
  const std::string& text = node.Scalar();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    fail(source, node, key + ": '" + text + "' is not a finite number");
  }
  return value;
}

int as_int(const std::string& source, const YAML::Node& node, const std::string& key) {
  const double value = as_number(source, node, key);
  if (value != std::floor(value) || std::abs(value) > std::numeric_limits<int>::max()) {
    fail(source, node, key + ": expected an integer, got " + node.Scalar());
  }
  return static_cast<int>(value);
}

bool as_bool(const std::string& source, const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(source, node, key + ": expected true or false");
  const std::string& text = node.Scalar();
  if (text == "true") return true;
  if (text == "false") return false;
  fail(source, node, key + ": expected true or false, got '" + text + "'");
}

std::string as_text(const std::string& source, const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(source, node, key + ": expected a string");
  return node.Scalar();
}

std::vector<double> as_numbers(const std::string& source, const YAML::Node& node,
                               const std::string& key) {
  std::vector<double> out;
  if (node.IsScalar()) {
    out.push_back(as_number(source, node, key));
  } else if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(as_number(source, item, key));
  } else {
    fail(source, node, key + ": expected a number or a list of numbers");
  }
  return out;
}

/// Splits "g_12" into ("g", 12); returns -1 for keys without an index.
std::pair<std::string, int> split_indexed(std::string_view key) {
  const auto pos = key.rfind('_');
  if (pos == std::string_view::npos || pos + 1 == key.size()) return {std::string(key), -1};
  int index = 0;
  const char* first = key.data() + pos + 1;
  const char* last = key.data() + key.size();
  const auto [end, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || end != last || index < 0) return {std::string(key), -1};
  return {std::string(key.substr(0, pos)), index};
}

bool is_integer_key(std::string_view key) {
  return key.starts_with("cutoff");
}

int to_cutoff(std::string_view key, double value) {
  if (value != std::floor(value) || value < 2.0 || value > 1e6) {
    throw ConfigError(std::string(key) + ": cutoff must be an integer >= 2");
  }
  return static_cast<int>(value);
}

ModelKind parse_model(const std::string& source, const YAML::Node& node) {
  const std::string name = as_text(source, node, "model");
  if (name == "basic") return ModelKind::Basic;
  if (name == "catalyst") return ModelKind::Catalyst;
  if (name == "kcell") return ModelKind::KCell;
  fail(source, node, "model: unknown model '" + name + "' (expected basic, catalyst or kcell)");
}

/// Keys whose assignment depends on other parameters, applied last.
bool is_derived_key(std::string_view key) {
  return key == "delta_af" || key == "delta_aq";
}

struct Entry {
  std::string key;
  YAML::Node value_node;
  YAML::Node key_node;
  double value;
};

void apply_model_section(ScenarioConfig& cfg, const YAML::Node& section) {
  const std::string& src = cfg.source;
  std::vector<Entry> entries;
  std::map<std::string, YAML::Node> seen;
  const std::vector<std::string> keys = parameter_keys(cfg.model);

  for (const auto& kv : section) {
    const std::string key = as_text(src, kv.first, "parameter name");
    bool known = std::find(keys.begin(), keys.end(), key) != keys.end();
    if (!known && cfg.model == ModelKind::KCell) {
      const auto [stem, index] = split_indexed(key);
      known = (stem == "g" || stem == "cutoff") && index >= 0 && index <= kMaxCells;
    }
    if (!known) {
      fail(src, kv.first, "unknown " + std::string(to_string(cfg.model)) + " parameter '" + key + "'");
    }
    if (seen.contains(key)) fail(src, kv.first, "duplicate parameter '" + key + "'");
    seen.emplace(key, kv.first);

    double value = 0.0;
    if (kv.second.IsSequence()) {
      if (cfg.sweep) {
        fail(src, kv.first, "only one parameter may be swept, found '" + cfg.sweep->key +
                                "' and '" + key + "'");
      }
      std::vector<double> values = as_numbers(src, kv.second, key);
      if (values.empty()) fail(src, kv.second, key + ": sweep list is empty");
      cfg.sweep = SweepSpec{key, values};
      value = values.front();
    } else {
      value = as_number(src, kv.second, key);
    }
    if (is_integer_key(key) && value != std::floor(value)) {
      fail(src, kv.second, key + ": expected an integer");
    }
    entries.push_back({key, kv.second, kv.first, value});
  }

  const auto conflict = [&](const char* a, const char* b) {
    if (seen.contains(a) && seen.contains(b)) {
      fail(src, seen.at(b), std::string("give either ") + a + " or " + b + ", not both");
    }
  };
  conflict("omega_f", "delta_af");
  conflict("omega_q", "delta_aq");

  if (cfg.model == ModelKind::KCell) {
    int cells = -1;
    for (const auto& e : entries) {
      const auto [stem, index] = split_indexed(e.key);
      if (stem == "g") cells = std::max(cells, index);
    }
    if (cells < 1) throw ConfigError(src + ": kcell needs couplings g_0 (charger) and g_1 ... g_k");
    for (int i = 0; i <= cells; ++i) {
      if (!seen.contains("g_" + std::to_string(i))) {
        throw ConfigError(src + ": kcell coupling g_" + std::to_string(i) +
                          " missing (indices must run 0.." + std::to_string(cells) + ")");
      }
    }
    for (const auto& e : entries) {
      const auto [stem, index] = split_indexed(e.key);
      if (stem == "cutoff" && index > cells) {
        fail(src, e.key_node, e.key + ": no mode with that index");
      }
    }
    cfg.kcell.couplings.assign(static_cast<std::size_t>(cells + 1), 0.0);
    cfg.kcell.cutoffs.assign(static_cast<std::size_t>(cells + 1), 30);
  }

  // Common cutoff before per-mode overrides, plain keys before derived ones.
  const auto rank = [](const Entry& e) {
    if (e.key == "cutoff") return 0;
    if (is_derived_key(e.key)) return 2;
    return 1;
  };
  std::stable_sort(entries.begin(), entries.end(),
                   [&](const Entry& a, const Entry& b) { return rank(a) < rank(b); });

  for (const auto& e : entries) {
    try {
      set_parameter(cfg, e.key, e.value);
    } catch (const ConfigError& err) {
      fail(src, e.value_node, err.what());
    }
  }

  const double omega = cfg.model == ModelKind::Basic      ? cfg.basic.charger_frequency
                       : cfg.model == ModelKind::Catalyst ? cfg.catalyst.oscillator_frequency
                                                          : cfg.kcell.oscillator_frequency;
  // Drive and qubit frequencies default to the oscillator frequency.
  if (!seen.contains("omega_f") && !seen.contains("delta_af")) set_parameter(cfg, "omega_f", omega);
  if (cfg.model != ModelKind::Basic && !seen.contains("omega_q") && !seen.contains("delta_aq")) {
    set_parameter(cfg, "omega_q", omega);
  }
}

void validate_model(const ScenarioConfig& cfg, const YAML::Node& where) {
  try {
    switch (cfg.model) {
      case ModelKind::Basic: validate(cfg.basic); break;
      case ModelKind::Catalyst: validate(cfg.catalyst); break;
      case ModelKind::KCell: validate(cfg.kcell); break;
    }
  } catch (const ModelError& err) {
    if (where) fail(cfg.source, where, err.what());
    throw ConfigError(cfg.source + ": " + err.what());
  }
}

void apply_run_section(ScenarioConfig& cfg, const YAML::Node& section) {
  const std::string& src = cfg.source;
  for (const auto& kv : section) {
    const std::string key = as_text(src, kv.first, "run key");
    if (key == "t_end") {
      cfg.t_end = as_number(src, kv.second, key);
      if (!(cfg.t_end > 0.0)) fail(src, kv.second, "t_end must be > 0");
    } else if (key == "output") {
      cfg.output = as_text(src, kv.second, key);
    } else if (key == "columns") {
      if (!kv.second.IsSequence()) fail(src, kv.second, "columns: expected a list of column names");
      cfg.columns.clear();
      for (const auto& item : kv.second) {
        const std::string col = as_text(src, item, key);
        if (col == "t" || std::find(kTrajectoryColumns.begin(), kTrajectoryColumns.end(), col) ==
                              kTrajectoryColumns.end()) {
          fail(src, item, "columns: unknown column '" + col + "'");
        }
        cfg.columns.push_back(col);
      }
    } else {
      fail(src, kv.first, "unknown run key '" + key + "'");
    }
  }
}

void apply_integrator_section(ScenarioConfig& cfg, const YAML::Node& section) {
  const std::string& src = cfg.source;
  for (const auto& kv : section) {
    const std::string key = as_text(src, kv.first, "integrator key");
    if (key == "dt") {
      cfg.dt = as_number(src, kv.second, key);
      if (!(*cfg.dt > 0.0)) fail(src, kv.second, "dt must be > 0");
    } else if (key == "sample_every") {
      cfg.sample_every = as_int(src, kv.second, key);
      if (*cfg.sample_every < 1) fail(src, kv.second, "sample_every must be >= 1");
    } else if (key == "spectrum_every") {
      cfg.spectrum_every = as_int(src, kv.second, key);
      if (cfg.spectrum_every < 0) fail(src, kv.second, "spectrum_every must be >= 0");
    } else if (key == "tail_tolerance") {
      cfg.tail_tolerance = as_number(src, kv.second, key);
      if (!(cfg.tail_tolerance > 0.0)) fail(src, kv.second, "tail_tolerance must be > 0");
    } else if (key == "renormalize") {
      cfg.renormalize = as_bool(src, kv.second, key);
    } else {
      fail(src, kv.first, "unknown integrator key '" + key + "'");
    }
  }
}

void apply_compare_section(ScenarioConfig& cfg, const YAML::Node& section) {
  const std::string& src = cfg.source;
  for (const auto& kv : section) {
    const std::string key = as_text(src, kv.first, "compare key");
    if (key != "times") fail(src, kv.first, "unknown compare key '" + key + "'");
    cfg.compare_times = as_numbers(src, kv.second, key);
    if (cfg.compare_times.empty()) fail(src, kv.second, "times: list is empty");
    for (double t : cfg.compare_times) {
      if (!(t >= 0.0)) fail(src, kv.second, "times: must be >= 0");
    }
  }
}

YAML::Node require_map(const std::string& source, const YAML::Node& node, const std::string& name) {
  if (!node || node.IsNull()) return YAML::Node(YAML::NodeType::Map);
  if (!node.IsMap()) fail(source, node, name + ": expected a section of key: value pairs");
  return node;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Basic: return "basic";
    case ModelKind::Catalyst: return "catalyst";
    case ModelKind::KCell: return "kcell";
  }
  return "unknown";
}

std::vector<std::string> parameter_keys(ModelKind kind) {
  switch (kind) {
    case ModelKind::Basic:
      return {"omega_a", "omega_b", "g", "F", "omega_f", "delta_af",
              "gamma", "n_thermal", "cutoff", "cutoff_a", "cutoff_b"};
    case ModelKind::Catalyst:
      return {"omega", "omega_q", "delta_aq", "g_aq", "g_bq", "F", "omega_f", "delta_af",
              "gamma", "n_thermal", "cutoff", "cutoff_a", "cutoff_b"};
    case ModelKind::KCell:
      return {"omega", "omega_q", "delta_aq", "F", "omega_f", "delta_af",
              "gamma", "n_thermal", "cutoff"};
  }
  return {};
}

void set_parameter(ScenarioConfig& cfg, std::string_view key, double value) {
  const auto unknown = [&]() -> ConfigError {
    return ConfigError("unknown " + std::string(to_string(cfg.model)) + " parameter '" +
                       std::string(key) + "'");
  };
  switch (cfg.model) {
    case ModelKind::Basic: {
      auto& p = cfg.basic;
      if (key == "omega_a") p.charger_frequency = value;
      else if (key == "omega_b") p.battery_frequency = value;
      else if (key == "g") p.coupling = value;
      else if (key == "F") p.drive_amplitude = value;
      else if (key == "omega_f") p.drive_frequency = value;
      else if (key == "delta_af") p.drive_frequency = p.charger_frequency + value;
      else if (key == "gamma") p.decay_rate = value;
      else if (key == "n_thermal") p.thermal_occupation = value;
      else if (key == "cutoff") p.charger_cutoff = p.battery_cutoff = to_cutoff(key, value);
      else if (key == "cutoff_a") p.charger_cutoff = to_cutoff(key, value);
      else if (key == "cutoff_b") p.battery_cutoff = to_cutoff(key, value);
      else throw unknown();
      return;
    }
    case ModelKind::Catalyst: {
      auto& p = cfg.catalyst;
      if (key == "omega") p.oscillator_frequency = value;
      else if (key == "omega_q") p.qubit_frequency = value;
      else if (key == "delta_aq") p.qubit_frequency = p.oscillator_frequency - value;
      else if (key == "g_aq") p.charger_qubit_coupling = value;
      else if (key == "g_bq") p.battery_qubit_coupling = value;
      else if (key == "F") p.drive_amplitude = value;
      else if (key == "omega_f") p.drive_frequency = value;
      else if (key == "delta_af") p.drive_frequency = p.oscillator_frequency + value;
      else if (key == "gamma") p.decay_rate = value;
      else if (key == "n_thermal") p.thermal_occupation = value;
      else if (key == "cutoff") p.charger_cutoff = p.battery_cutoff = to_cutoff(key, value);
      else if (key == "cutoff_a") p.charger_cutoff = to_cutoff(key, value);
      else if (key == "cutoff_b") p.battery_cutoff = to_cutoff(key, value);
      else throw unknown();
      return;
    }
    case ModelKind::KCell: {
      auto& p = cfg.kcell;
      const auto [stem, index] = split_indexed(key);
      if (index >= 0 && (stem == "g" || stem == "cutoff")) {
        if (index >= static_cast<int>(p.couplings.size())) {
          throw ConfigError(std::string(key) + ": no mode with that index");
        }
        const auto i = static_cast<std::size_t>(index);
        if (stem == "g") p.couplings[i] = value;
        else p.cutoffs[i] = to_cutoff(key, value);
        return;
      }
      if (key == "omega") p.oscillator_frequency = value;
      else if (key == "omega_q") p.qubit_frequency = value;
      else if (key == "delta_aq") p.qubit_frequency = p.oscillator_frequency - value;
      else if (key == "F") p.drive_amplitude = value;
      else if (key == "omega_f") p.drive_frequency = value;
      else if (key == "delta_af") p.drive_frequency = p.oscillator_frequency + value;
      else if (key == "gamma") p.decay_rate = value;
      else if (key == "n_thermal") p.thermal_occupation = value;
      else if (key == "cutoff") std::fill(p.cutoffs.begin(), p.cutoffs.end(), to_cutoff(key, value));
      else throw unknown();
      return;
    }
  }
}

ScenarioConfig parse_config(std::string_view text, std::string source) {
  ScenarioConfig cfg;
  cfg.source = std::move(source);
  const std::string& src = cfg.source;

  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& err) {
    throw ConfigError(at(src, err.mark) + "syntax error: " + err.msg);
  }
  if (root.IsNull()) throw ConfigError(src + ": empty scenario");
  if (!root.IsMap()) fail(src, root, "expected top-level key: value pairs");

  static const std::vector<std::string> kSections{"model", "basic", "catalyst", "kcell",
                                                  "run", "integrator", "compare"};
  for (const auto& kv : root) {
    const std::string key = as_text(src, kv.first, "key");
    if (std::find(kSections.begin(), kSections.end(), key) == kSections.end()) {
      fail(src, kv.first, "unknown top-level key '" + key + "'");
    }
  }

  if (root["model"]) cfg.model = parse_model(src, root["model"]);
  const std::string active(to_string(cfg.model));
  for (const char* name : {"basic", "catalyst", "kcell"}) {
    if (root[name] && active != name) {
      fail(src, root[name], std::string("section '") + name + "' does not apply to model '" +
                                active + "'");
    }
  }

  const YAML::Node model_section = require_map(src, root[active], active);
  if (cfg.model == ModelKind::KCell && !root[active]) {
    throw ConfigError(src + ": kcell needs a kcell section with couplings g_0 ... g_k");
  }
  apply_model_section(cfg, model_section);
  validate_model(cfg, root[active]);

  if (root["run"]) apply_run_section(cfg, require_map(src, root["run"], "run"));
  if (root["integrator"]) {
    apply_integrator_section(cfg, require_map(src, root["integrator"], "integrator"));
  }
  if (root["compare"]) apply_compare_section(cfg, require_map(src, root["compare"], "compare"));

  if (cfg.sweep) {
    const YAML::Node list = model_section[cfg.sweep->key];
    for (double v : cfg.sweep->values) {
      ScenarioConfig point = cfg;
      try {
        set_parameter(point, cfg.sweep->key, v);
      } catch (const ConfigError& err) {
        fail(src, list, err.what());
      }
      validate_model(point, list);
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

}  // namespace qbattery::runner
