#include "eit/cli/records.hpp"

#include <fmt/format.h>

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "eit/version.hpp"

namespace eit::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

int parse_int(const std::string& text, const std::string& field) {
  const double v = parse_double(text);
  if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max())
    throw std::invalid_argument(field + ": not an integer: " + text);
  return static_cast<int>(v);
}

BackendChoice parse_backend(const std::string& s) {
  if (s == "numeric") return BackendChoice::Numeric;
  if (s == "analytic") return BackendChoice::Analytic;
  if (s == "both") return BackendChoice::Both;
  throw std::invalid_argument("backend: unknown value " + s);
}

// Metadata as ordered key/value text pairs; shared by both formats.
std::vector<std::pair<std::string, std::string>> metadata_fields(const SweepMetadata& m) {
  std::vector<std::pair<std::string, std::string>> f = {
      {"tool_version", m.tool_version},
      {"config", std::string(to_string(m.config))},
      {"g_probe", format_double(m.g_probe)},
      {"g_pump", format_double(m.g_pump)},
      {"gamma_a", format_double(m.gamma_a)},
      {"gamma_b", format_double(m.gamma_b)},
      {"delta_pump", format_double(m.delta_pump)},
      {"sweep_min", format_double(m.sweep_min)},
      {"sweep_max", format_double(m.sweep_max)},
      {"sweep_points", std::to_string(m.sweep_points)},
      {"n0", format_double(m.n0)},
      {"mu", format_double(m.mu)},
      {"omega_probe", format_double(m.omega_probe)},
      {"angular_convention", std::string(optics::to_string(m.angular_convention))},
      {"backend", std::string(to_string(m.backend))},
      {"config_hash", m.config_hash},
  };
  if (m.backend_discrepancy) f.emplace_back("backend_discrepancy", format_double(*m.backend_discrepancy));
  return f;
}

SweepMetadata metadata_from_fields(const std::map<std::string, std::string>& f) {
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = f.find(key);
    if (it == f.end()) throw std::invalid_argument("metadata: missing " + key);
    return it->second;
  };
  SweepMetadata m;
  m.tool_version = get("tool_version");
  m.config = parse_configuration(get("config"));
  m.g_probe = parse_double(get("g_probe"));
  m.g_pump = parse_double(get("g_pump"));
  m.gamma_a = parse_double(get("gamma_a"));
  m.gamma_b = parse_double(get("gamma_b"));
  m.delta_pump = parse_double(get("delta_pump"));
  m.sweep_min = parse_double(get("sweep_min"));
  m.sweep_max = parse_double(get("sweep_max"));
  m.sweep_points = parse_int(get("sweep_points"), "sweep_points");
  m.n0 = parse_double(get("n0"));
  m.mu = parse_double(get("mu"));
  m.omega_probe = parse_double(get("omega_probe"));
  m.angular_convention = optics::parse_angular_convention(get("angular_convention"));
  m.backend = parse_backend(get("backend"));
  m.config_hash = get("config_hash");
  if (f.count("backend_discrepancy")) m.backend_discrepancy = parse_double(get("backend_discrepancy"));
  return m;
}

std::array<double RecordRow::*, 10> columns() {
  return {&RecordRow::delta_mhz, &RecordRow::n,     &RecordRow::alpha, &RecordRow::n_g,
          &RecordRow::v_g,       &RecordRow::rho11, &RecordRow::rho22, &RecordRow::rho33,
          &RecordRow::re_coh,    &RecordRow::im_coh};
}

std::vector<std::string> column_names() {
  std::vector<std::string> names;
  std::stringstream ss{std::string(kCsvHeader)};
  for (std::string name; std::getline(ss, name, ',');) names.push_back(name);
  return names;
}

constexpr std::string_view kErrorPrefix = "# error at delta_mhz=";

}  // namespace

bool same(const RecordRow& a, const RecordRow& b) {
  for (const auto col : columns())
    if (!same_double(a.*col, b.*col)) return false;
  return a.error == b.error;
}

bool same(const SweepRecord& a, const SweepRecord& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (!same(a.rows[i], b.rows[i])) return false;
  const auto& x = a.metadata;
  const auto& y = b.metadata;
  if (x.backend_discrepancy.has_value() != y.backend_discrepancy.has_value()) return false;
  if (x.backend_discrepancy && !same_double(*x.backend_discrepancy, *y.backend_discrepancy)) return false;
  SweepMetadata xs = x, ys = y;
  xs.backend_discrepancy.reset();
  ys.backend_discrepancy.reset();
  return xs == ys;
}

SweepMetadata make_metadata(const RunConfig& cfg) {
  SweepMetadata m;
  m.tool_version = std::string(kVersion);
  m.config = cfg.params.config;
  m.g_probe = cfg.params.g_probe;
  m.g_pump = cfg.params.g_pump;
  m.gamma_a = cfg.params.gamma_a;
  m.gamma_b = cfg.params.gamma_b;
  m.delta_pump = cfg.params.delta_pump;
  m.sweep_min = cfg.sweep.min;
  m.sweep_max = cfg.sweep.max;
  m.sweep_points = cfg.sweep.points;
  m.n0 = cfg.optics.n0;
  m.mu = cfg.optics.mu;
  m.omega_probe = cfg.optics.omega_probe;
  m.angular_convention = cfg.optics.angular_convention.value_or(optics::AngularConvention::PlainMHz);
  m.backend = cfg.backend;
  m.config_hash = config_hash(cfg);
  return m;
}

RecordRow to_row(const optics::SweepRow& row) {
  RecordRow r;
  if (const auto* f = std::get_if<optics::PointFailure>(&row)) {
    for (const auto col : columns()) r.*col = kNaN;
    r.delta_mhz = f->delta;
    r.error = one_line(f->message);
    return r;
  }
  const auto& p = std::get<optics::SpectralPoint>(row);
  r.delta_mhz = p.delta;
  r.n = p.n;
  r.alpha = p.alpha;
  r.n_g = p.n_g;
  r.v_g = p.v_g;
  r.rho11 = p.rho11;
  r.rho22 = p.rho22;
  r.rho33 = p.rho33;
  r.re_coh = p.probe_coherence.real();
  r.im_coh = p.probe_coherence.imag();
  return r;
}

SweepRecord make_record(const RunConfig& cfg, const optics::Sweep& sweep) {
  SweepRecord rec{make_metadata(cfg), {}};
  rec.rows.reserve(sweep.rows.size());
  for (const auto& row : sweep.rows) rec.rows.push_back(to_row(row));
  return rec;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

double parse_double(std::string_view text) {
  const std::string s(text);
  if (s == "nan") return kNaN;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::string emit_csv(const SweepRecord& r) {
  std::string out;
  for (const auto& [key, value] : metadata_fields(r.metadata)) out += fmt::format("# {}: {}\n", key, value);
  out += kCsvHeader;
  out += '\n';
  for (const auto& row : r.rows) {
    if (row.failed()) out += fmt::format("{}{}: {}\n", kErrorPrefix, format_double(row.delta_mhz), row.error);
    bool first = true;
    for (const auto col : columns()) {
      if (!first) out += ',';
      out += format_double(row.*col);
      first = false;
    }
    out += '\n';
  }
  return out;
}

SweepRecord parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::map<std::string, std::string> fields;
  SweepRecord rec;
  bool header_seen = false;
  std::string pending_error;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    if (!header_seen) {
      if (line == kCsvHeader) {
        header_seen = true;
        rec.metadata = metadata_from_fields(fields);
        continue;
      }
      if (line.rfind("# ", 0) != 0) throw std::invalid_argument("csv: expected metadata or header: " + line);
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) throw std::invalid_argument("csv: malformed metadata: " + line);
      fields[line.substr(2, colon - 2)] = line.substr(colon + 2);
      continue;
    }
    if (line.rfind(kErrorPrefix, 0) == 0) {
      const auto colon = line.find(": ", kErrorPrefix.size());
      if (colon == std::string::npos) throw std::invalid_argument("csv: malformed error line: " + line);
      pending_error = line.substr(colon + 2);
      continue;
    }
    if (line[0] == '#') continue;
    RecordRow row;
    std::stringstream ss(line);
    std::string cell;
    for (const auto col : columns()) {
      if (!std::getline(ss, cell, ',')) throw std::invalid_argument("csv: short row: " + line);
      row.*col = parse_double(cell);
    }
    if (std::getline(ss, cell, ',')) throw std::invalid_argument("csv: long row: " + line);
    row.error = std::move(pending_error);
    pending_error.clear();
    rec.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("csv: header row missing");
  return rec;
}

namespace {

json json_number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

double from_json_number(const json& v) { return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>(); }

}  // namespace

std::string emit_json(const SweepRecord& r) {
  json meta = json::object();
  for (const auto& [key, value] : metadata_fields(r.metadata)) meta[key] = value;
  json rows = json::array();
  const auto names = column_names();
  for (const auto& row : r.rows) {
    json j = json::object();
    const auto cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) j[names[i]] = json_number(row.*cols[i]);
    if (row.failed()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return json{{"metadata", meta}, {"columns", names}, {"rows", rows}}.dump(1) + "\n";
}

SweepRecord parse_json(std::string_view text) {
  const json doc = json::parse(text);
  std::map<std::string, std::string> fields;
  for (const auto& [key, value] : doc.at("metadata").items()) fields[key] = value.get<std::string>();
  SweepRecord rec{metadata_from_fields(fields), {}};
  const auto names = column_names();
  const auto cols = columns();
  for (const auto& j : doc.at("rows")) {
    RecordRow row;
    for (std::size_t i = 0; i < cols.size(); ++i) row.*cols[i] = from_json_number(j.at(names[i]));
    if (j.contains("error")) row.error = j["error"].get<std::string>();
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

std::string emit(const SweepRecord& r, OutputFormat f) { return f == OutputFormat::Csv ? emit_csv(r) : emit_json(r); }

SweepRecord parse(std::string_view text, OutputFormat f) {
  return f == OutputFormat::Csv ? parse_csv(text) : parse_json(text);
}

}  // namespace eit::cli
