#include "eit/cli/run_config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace eit::cli {

using nlohmann::json;

std::string_view to_string(BackendChoice b) {
  switch (b) {
    case BackendChoice::Numeric: return "numeric";
    case BackendChoice::Analytic: return "analytic";
    case BackendChoice::Both: return "both";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

optics::OpticalConstants RunConfig::constants() const {
  if (!optics.angular_convention) throw ConfigError("optics.angular_convention", "not resolved");
  optics::OpticalConstants k;
  k.n0 = optics.n0;
  k.mu = optics.mu;
  k.omega_probe = optics.omega_probe;
  k.angular_convention = *optics.angular_convention;
  return k;
}

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(join(prefix, key), "unknown key");
}

const json& require(const json& obj, const std::string& prefix, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(prefix, key), "missing required key");
  return *it;
}

const json& require_object(const json& obj, const std::string& prefix, const std::string& key) {
  const json& v = require(obj, prefix, key);
  if (!v.is_object()) throw ConfigError(join(prefix, key), "expected an object");
  return v;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  return v.get<double>();
}

std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

double require_number(const json& obj, const std::string& prefix, const std::string& key) {
  return number(require(obj, prefix, key), join(prefix, key));
}

std::string require_string(const json& obj, const std::string& prefix, const std::string& key) {
  return string(require(obj, prefix, key), join(prefix, key));
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected an object at top level");
  reject_unknown(doc, "",
                 {"config", "g_probe", "g_pump", "gamma_a", "gamma_b", "delta_pump", "sweep", "optics", "backend",
                  "output"});

  RunConfig cfg;
  try {
    cfg.params.config = parse_configuration(require_string(doc, "", "config"));
  } catch (const Error& e) {
    throw ConfigError("config", e.what());
  }
  cfg.params.g_probe = require_number(doc, "", "g_probe");
  cfg.params.g_pump = require_number(doc, "", "g_pump");
  cfg.params.gamma_a = require_number(doc, "", "gamma_a");
  cfg.params.gamma_b = require_number(doc, "", "gamma_b");
  cfg.params.delta_pump = doc.contains("delta_pump") ? number(doc["delta_pump"], "delta_pump") : 0.0;
  cfg.params.delta_probe = 0.0;
  try {
    cfg.params.validate();
  } catch (const Error& e) {
    const std::string what = e.what();
    const auto colon = what.find(": ");
    const std::string detail = colon == std::string::npos ? what : what.substr(colon + 2);
    const auto field_end = detail.find(':');
    if (field_end == std::string::npos) throw ConfigError("<params>", detail);
    throw ConfigError(detail.substr(0, field_end), detail.substr(std::min(detail.size(), field_end + 2)));
  }

  const json& sw = require_object(doc, "", "sweep");
  reject_unknown(sw, "sweep", {"min", "max", "points"});
  cfg.sweep.min = require_number(sw, "sweep", "min");
  cfg.sweep.max = require_number(sw, "sweep", "max");
  const json& pts = require(sw, "sweep", "points");
  if (!pts.is_number_integer()) throw ConfigError("sweep.points", "expected an integer");
  cfg.sweep.points = pts.get<int>();
  if (!std::isfinite(cfg.sweep.min) || !std::isfinite(cfg.sweep.max) || !(cfg.sweep.min < cfg.sweep.max))
    throw ConfigError("sweep.max", "need finite min < max");
  if (cfg.sweep.points < 3) throw ConfigError("sweep.points", "need at least 3 points");

  const json& op = require_object(doc, "", "optics");
  reject_unknown(op, "optics", {"n0", "mu", "omega_probe", "angular_convention"});
  cfg.optics.n0 = require_number(op, "optics", "n0");
  cfg.optics.mu = require_number(op, "optics", "mu");
  cfg.optics.omega_probe = require_number(op, "optics", "omega_probe");
  for (const auto& [name, v] : {std::pair{"n0", cfg.optics.n0}, {"mu", cfg.optics.mu},
                                {"omega_probe", cfg.optics.omega_probe}})
    if (!std::isfinite(v) || v <= 0.0) throw ConfigError(join("optics", name), "must be finite and > 0");
  if (op.contains("angular_convention")) {
    try {
      cfg.optics.angular_convention =
          optics::parse_angular_convention(string(op["angular_convention"], "optics.angular_convention"));
    } catch (const Error& e) {
      throw ConfigError("optics.angular_convention", e.what());
    }
  }

  const std::string backend = require_string(doc, "", "backend");
  if (backend == "numeric") cfg.backend = BackendChoice::Numeric;
  else if (backend == "analytic") cfg.backend = BackendChoice::Analytic;
  else if (backend == "both") cfg.backend = BackendChoice::Both;
  else throw ConfigError("backend", "expected numeric, analytic or both (got '" + backend + "')");

  const json& out = require_object(doc, "", "output");
  reject_unknown(out, "output", {"path", "format"});
  cfg.output.path = require_string(out, "output", "path");
  if (cfg.output.path.empty()) throw ConfigError("output.path", "must not be empty");
  const std::string format = require_string(out, "output", "format");
  if (format == "csv") cfg.output.format = OutputFormat::Csv;
  else if (format == "json") cfg.output.format = OutputFormat::Json;
  else throw ConfigError("output.format", "expected csv or json (got '" + format + "')");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string canonical_json(const RunConfig& cfg) {
  json optics = {{"n0", cfg.optics.n0}, {"mu", cfg.optics.mu}, {"omega_probe", cfg.optics.omega_probe}};
  if (cfg.optics.angular_convention)
    optics["angular_convention"] = std::string(optics::to_string(*cfg.optics.angular_convention));
  const json doc = {
      {"config", std::string(to_string(cfg.params.config))},
      {"g_probe", cfg.params.g_probe},
      {"g_pump", cfg.params.g_pump},
      {"gamma_a", cfg.params.gamma_a},
      {"gamma_b", cfg.params.gamma_b},
      {"delta_pump", cfg.params.delta_pump},
      {"sweep", {{"min", cfg.sweep.min}, {"max", cfg.sweep.max}, {"points", cfg.sweep.points}}},
      {"optics", optics},
      {"backend", std::string(to_string(cfg.backend))},
      {"output", {{"path", cfg.output.path}, {"format", std::string(to_string(cfg.output.format))}}},
  };
  return doc.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// The output location does not affect the data, so it is left out.
std::string config_hash(const RunConfig& cfg) {
  json doc = json::parse(canonical_json(cfg));
  doc.erase("output");
  return fmt::format("fnv1a64:{:016x}", fnv1a64(doc.dump()));
}

}  // namespace eit::cli
