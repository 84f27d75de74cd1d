#include "pulseswitch/cli/config.hpp"

#include <cmath>
#include <set>

namespace pulseswitch::cli {

using nlohmann::json;

namespace {

const std::pair<Command, const char*> kCommandNames[] = {
    {Command::Evolve, "evolve"},           {Command::Ness, "ness"},
    {Command::AnalyticCompare, "analytic-compare"}, {Command::Sweep, "sweep"},
    {Command::SwitchEvent, "switch-event"}, {Command::Robustness, "robustness"},
    {Command::Spectrum, "spectrum"}};

const std::pair<ModelKind, const char*> kKindNames[] = {
    {ModelKind::TwoLevel, "two_level"},
    {ModelKind::ThreeLevelCW, "three_level_cw"},
    {ModelKind::ThreeLevelSW, "three_level_sw"}};

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) throw ConfigError(join(prefix, item.key()), "unknown key");
}

const json& require_object(const json& doc, const std::string& key) {
  if (!doc.is_object()) throw ConfigError(key.empty() ? "<root>" : key, "expected an object");
  return doc;
}

double number(const json& obj, const std::string& prefix, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(prefix, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(prefix, key), "must be finite");
  return x;
}

std::size_t count(const json& obj, const std::string& prefix, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ConfigError(join(prefix, key), "expected a positive integer");
  return v.get<std::size_t>();
}

// a list of numbers or {"start", "stop", "step"}
std::vector<double> number_list(const json& obj, const std::string& prefix, const char* key) {
  const std::string path = join(prefix, key);
  if (!obj.contains(key)) throw ConfigError(path, "required for this command");
  const json& v = obj.at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
  } else if (v.is_object()) {
    reject_unknown(v, path, {"start", "stop", "step"});
    for (const char* k : {"start", "stop", "step"})
      if (!v.contains(k)) throw ConfigError(join(path, k), "required in a range");
    const double start = number(v, path, "start", 0.0);
    const double stop = number(v, path, "stop", 0.0);
    const double step = number(v, path, "step", 0.0);
    if (!(step > 0.0)) throw ConfigError(join(path, "step"), "must be positive");
    if (stop < start) throw ConfigError(join(path, "stop"), "must not be below start");
    const auto n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    throw ConfigError(path, "expected a list of numbers or a {start, stop, step} range");
  }
  if (out.empty()) throw ConfigError(path, "must not be empty");
  return out;
}

bool is_multiple(double x, double unit) {
  const double k = x / unit;
  return std::abs(k - std::round(k)) <= 1e-6;
}

ModelBlock parse_model(const json& doc) {
  ModelBlock m;
  if (!doc.contains("model")) return m;
  const json& obj = require_object(doc.at("model"), "model");
  reject_unknown(obj, "model", {"kind", "delta", "omega_p", "omega_c", "tau", "duty", "alpha"});
  if (obj.contains("kind")) {
    const json& k = obj.at("kind");
    bool found = false;
    if (k.is_string())
      for (const auto& [kind, name] : kKindNames)
        if (k.get<std::string>() == name) {
          m.kind = kind;
          found = true;
        }
    if (!found) throw ConfigError("model.kind", "expected two_level, three_level_cw or three_level_sw");
  }
  m.delta = number(obj, "model", "delta", m.delta);
  m.omega_p = number(obj, "model", "omega_p", m.omega_p);
  m.tau = number(obj, "model", "tau", m.tau);
  m.duty = number(obj, "model", "duty", m.duty);
  m.alpha = number(obj, "model", "alpha", m.alpha);
  if (obj.contains("omega_c")) m.omega_c = number(obj, "model", "omega_c", 0.0);

  if (!(m.tau > 0.0)) throw ConfigError("model.tau", "must be positive");
  if (!(m.duty > 0.0 && m.duty <= 1.0)) throw ConfigError("model.duty", "must lie in (0, 1]");
  if (m.omega_p < 0.0) throw ConfigError("model.omega_p", "must be non-negative");
  if (m.kind == ModelKind::TwoLevel && m.omega_c)
    throw ConfigError("model.omega_c", "not allowed for two_level");
  if (m.kind != ModelKind::TwoLevel && !m.omega_c)
    throw ConfigError("model.omega_c", "required for three-level models");
  if (m.omega_c && *m.omega_c < 0.0) throw ConfigError("model.omega_c", "must be non-negative");
  if (m.alpha != 0.0 && m.kind != ModelKind::ThreeLevelSW)
    throw ConfigError("model.alpha", "mismatch only applies to three_level_sw");
  if (!(std::abs(m.alpha) < m.duty * m.tau / 2.0))
    throw ConfigError("model.alpha", "must satisfy |alpha| < duty * tau / 2");
  return m;
}

RatesBlock parse_rates(const json& doc) {
  RatesBlock r;
  if (!doc.contains("rates")) return r;
  const json& obj = require_object(doc.at("rates"), "rates");
  reject_unknown(obj, "rates", {"preset", "g10", "g11", "g21", "g22"});
  if (obj.contains("preset")) {
    const json& p = obj.at("preset");
    if (!p.is_string() || (p != "main" && p != "eit"))
      throw ConfigError("rates.preset", "expected \"main\" or \"eit\"");
    r.preset = p.get<std::string>();
  }
  if (r.preset == "eit") {
    r.g21 = 0.1;
    r.g22 = 0.01;
  }
  r.g10 = number(obj, "rates", "g10", r.g10);
  r.g11 = number(obj, "rates", "g11", r.g11);
  r.g21 = number(obj, "rates", "g21", r.g21);
  r.g22 = number(obj, "rates", "g22", r.g22);
  for (const auto& [key, v] : {std::pair{"rates.g10", r.g10}, std::pair{"rates.g11", r.g11},
                               std::pair{"rates.g21", r.g21}, std::pair{"rates.g22", r.g22}})
    if (v < 0.0) throw ConfigError(key, "must be non-negative");
  return r;
}

SimBlock parse_sim(const json& doc) {
  SimBlock s;
  if (!doc.contains("sim")) return s;
  const json& obj = require_object(doc.at("sim"), "sim");
  reject_unknown(obj, "sim", {"dt", "t_max", "ness_tol", "fourier_terms", "sample_stride"});
  s.dt = number(obj, "sim", "dt", s.dt);
  s.t_max = number(obj, "sim", "t_max", s.t_max);
  s.ness_tol = number(obj, "sim", "ness_tol", s.ness_tol);
  s.fourier_terms = count(obj, "sim", "fourier_terms", s.fourier_terms);
  s.sample_stride = count(obj, "sim", "sample_stride", s.sample_stride);
  if (!(s.ness_tol > 0.0)) throw ConfigError("sim.ness_tol", "must be positive");
  if (s.t_max < 0.0) throw ConfigError("sim.t_max", "must be non-negative");
  return s;
}

CommandBlock parse_command(const json& doc) {
  if (!doc.contains("command")) throw ConfigError("command", "required");
  const json& obj = require_object(doc.at("command"), "command");
  if (!obj.contains("name")) throw ConfigError("command.name", "required");
  CommandBlock c;
  const json& name = obj.at("name");
  bool found = false;
  if (name.is_string())
    for (const auto& [cmd, text] : kCommandNames)
      if (name.get<std::string>() == text) {
        c.name = cmd;
        found = true;
      }
  if (!found)
    throw ConfigError("command.name",
                      "expected evolve, ness, analytic-compare, sweep, switch-event, robustness or spectrum");

  switch (c.name) {
    case Command::Sweep: {
      reject_unknown(obj, "command", {"name", "omega_c", "modes"});
      c.omega_c = number_list(obj, "command", "omega_c");
      c.modes = {"cw", "sw"};
      if (obj.contains("modes")) {
        const json& modes = obj.at("modes");
        if (!modes.is_array() || modes.empty()) throw ConfigError("command.modes", "expected a non-empty list");
        c.modes.clear();
        for (std::size_t i = 0; i < modes.size(); ++i) {
          if (!modes[i].is_string() || (modes[i] != "cw" && modes[i] != "sw"))
            throw ConfigError("command.modes[" + std::to_string(i) + "]", "expected \"cw\" or \"sw\"");
          c.modes.push_back(modes[i].get<std::string>());
        }
      }
      break;
    }
    case Command::Robustness:
      reject_unknown(obj, "command", {"name", "omega_c", "alpha"});
      c.omega_c = number_list(obj, "command", "omega_c");
      c.alpha = number_list(obj, "command", "alpha");
      break;
    case Command::Spectrum:
      reject_unknown(obj, "command", {"name", "delta"});
      c.delta = number_list(obj, "command", "delta");
      break;
    case Command::SwitchEvent:
      reject_unknown(obj, "command", {"name", "toggle_time"});
      c.toggle_time = number(obj, "command", "toggle_time", c.toggle_time);
      break;
    default:
      reject_unknown(obj, "command", {"name"});
  }
  return c;
}

void check_consistency(const RunConfig& c) {
  const auto& m = c.model;
  const auto& s = c.sim;
  if (!(s.dt > 0.0)) throw ConfigError("sim.dt", "must be positive");
  try {
    check_step_alignment(c.model_config(), s.dt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sim.dt", e.what());
  }
  const double sample = s.dt * static_cast<double>(s.sample_stride);
  switch (c.command.name) {
    case Command::Evolve:
      if (!is_multiple(s.t_max, s.dt)) throw ConfigError("sim.t_max", "must be a multiple of sim.dt");
      break;
    case Command::Ness:
    case Command::AnalyticCompare:
      if (!is_multiple(m.tau, sample))
        throw ConfigError("sim.sample_stride", "tau must be a multiple of dt * sample_stride");
      if (c.command.name == Command::AnalyticCompare && (m.duty != 0.5 || m.alpha != 0.0))
        throw ConfigError(m.duty != 0.5 ? "model.duty" : "model.alpha",
                          "analytic comparison needs an undeformed 50% duty envelope");
      break;
    case Command::SwitchEvent:
      if (m.kind == ModelKind::TwoLevel) throw ConfigError("model.kind", "switch-event needs a three-level model");
      if (c.command.toggle_time < 0.0 || !is_multiple(c.command.toggle_time, m.tau) ||
          !is_multiple(c.command.toggle_time, sample))
        throw ConfigError("command.toggle_time", "must be a non-negative multiple of tau and of dt * sample_stride");
      if (!(s.t_max >= c.command.toggle_time)) throw ConfigError("sim.t_max", "must not precede command.toggle_time");
      if (!is_multiple(s.t_max, s.dt)) throw ConfigError("sim.t_max", "must be a multiple of sim.dt");
      break;
    case Command::Sweep:
    case Command::Robustness:
      if (m.kind != ModelKind::TwoLevel)
        throw ConfigError("model.kind", "the OFF reference of a sweep must be two_level");
      for (double wc : c.command.omega_c)
        if (wc < 0.0) throw ConfigError("command.omega_c", "must be non-negative");
      for (double a : c.command.alpha)
        if (!(std::abs(a) < m.duty * m.tau / 2.0))
          throw ConfigError("command.alpha", "must satisfy |alpha| < duty * tau / 2");
      if (m.omega_p == 0.0) throw ConfigError("model.omega_p", "OFF/ON ratio needs a probe field");
      break;
    case Command::Spectrum:
      if (m.kind == ModelKind::ThreeLevelSW)
        throw ConfigError("model.kind", "spectrum needs constant fields (two_level or three_level_cw)");
      break;
  }
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, text] : kCommandNames)
    if (cmd == c) return text;
  return "?";
}

ModelConfig RunConfig::model_config() const {
  const SquareWaveEnvelope probe(angular(model.omega_p), model.tau, model.duty);
  switch (model.kind) {
    case ModelKind::TwoLevel:
      return ModelConfig::two_level(angular(model.delta), probe);
    case ModelKind::ThreeLevelCW:
      return ModelConfig::three_level_cw(angular(model.delta), probe, angular(model.omega_c.value_or(0.0)));
    case ModelKind::ThreeLevelSW:
      return ModelConfig::three_level_sw(
          angular(model.delta), probe,
          SquareWaveEnvelope(angular(model.omega_c.value_or(0.0)), model.tau, model.duty, 0.0, model.alpha));
  }
  throw std::logic_error("unreachable");
}

DissipatorSpec RunConfig::dissipator() const {
  return {angular(rates.g10), angular(rates.g11), angular(rates.g21), angular(rates.g22)};
}

RunConfig parse_config(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"model", "rates", "sim", "command"});
  RunConfig c;
  c.model = parse_model(doc);
  c.rates = parse_rates(doc);
  c.sim = parse_sim(doc);
  c.command = parse_command(doc);
  check_consistency(c);
  return c;
}

json to_json(const RunConfig& c) {
  json model = {{"kind", to_string(c.model.kind)}, {"delta", c.model.delta}, {"omega_p", c.model.omega_p},
                {"tau", c.model.tau},             {"duty", c.model.duty},   {"alpha", c.model.alpha}};
  if (c.model.omega_c) model["omega_c"] = *c.model.omega_c;
  json command = {{"name", to_string(c.command.name)}};
  switch (c.command.name) {
    case Command::Sweep:
      command["omega_c"] = c.command.omega_c;
      command["modes"] = c.command.modes;
      break;
    case Command::Robustness:
      command["omega_c"] = c.command.omega_c;
      command["alpha"] = c.command.alpha;
      break;
    case Command::Spectrum:
      command["delta"] = c.command.delta;
      break;
    case Command::SwitchEvent:
      command["toggle_time"] = c.command.toggle_time;
      break;
    default:
      break;
  }
  return {{"model", model},
          {"rates",
           {{"preset", c.rates.preset}, {"g10", c.rates.g10}, {"g11", c.rates.g11}, {"g21", c.rates.g21},
            {"g22", c.rates.g22}}},
          {"sim",
           {{"dt", c.sim.dt},
            {"t_max", c.sim.t_max},
            {"ness_tol", c.sim.ness_tol},
            {"fourier_terms", c.sim.fourier_terms},
            {"sample_stride", c.sim.sample_stride}}},
          {"command", command}};
}

}  // namespace pulseswitch::cli
