#include "eit/cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "eit/cli/records.hpp"
#include "eit/darkstate.hpp"
#include "eit/steady.hpp"
#include "eit/version.hpp"
#include "json.hpp"

namespace eit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path output_dir() {
  const char* env = std::getenv(std::string(kOutputDirEnv).c_str());
  if (env && *env) return fs::path(env);
  return fs::current_path();
}

fs::path resolve_output(const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : output_dir() / p;
}

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateNullSpace:
    case ErrorKind::SingularSolve:
    case ErrorKind::DegenerateDenominator:
    case ErrorKind::PumpDetuningUnsupported:
    case ErrorKind::UndefinedAngle:
      return kExitSolverFailure;
    default:
      return kExitInvalid;
  }
}

// Runs a command body, mapping exceptions to exit codes.
template <class F>
int guarded(Streams io, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    fmt::print(io.err, "error: invalid config: {}\n", e.what());
    return kExitInvalid;
  } catch (const Error& e) {
    fmt::print(io.err, "error: {}\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    fmt::print(io.err, "error: {}\n", e.what());
    return kExitInvalid;
  }
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Fixed 9 decimals; values that round to zero print without a sign.
std::string fixed9(double v) {
  if (std::abs(v) < 5e-10) v = 0.0;
  return fmt::format("{:.9f}", v);
}

std::string complex9(Complex z) {
  const double im = std::abs(z.imag()) < 5e-10 ? 0.0 : z.imag();
  return fmt::format("{} {} {}i", fixed9(z.real()), im < 0 ? '-' : '+', fixed9(std::abs(im)));
}

double max_abs_difference(const ComplexMatrix3& a, const ComplexMatrix3& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

void print_state(std::ostream& out, const Liouvillian& l, const DensityMatrix& rho) {
  for (int i = 1; i <= 3; ++i) fmt::print(out, "  rho{0}{0} = {1}\n", i, fixed9(rho.population(i)));
  for (const auto& [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}})
    fmt::print(out, "  rho{}{} = {}\n", i, j, complex9(rho(i, j)));
  fmt::print(out, "  residual max|L rho| = {:.3e}\n", steady_residual(l, rho.matrix()));
}

std::optional<optics::AngularConvention> read_calibration(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json doc = json::parse(in);
    return optics::parse_angular_convention(doc.at("chosen").get<std::string>());
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

void resolve_convention(RunConfig& cfg, Streams io) {
  if (cfg.optics.angular_convention) return;
  const fs::path path = output_dir() / kCalibrationFile;
  if (const auto conv = read_calibration(path)) {
    cfg.optics.angular_convention = conv;
    return;
  }
  const auto report = optics::calibrate();
  cfg.optics.angular_convention = report.chosen;
  fmt::print(io.err, "note: no usable {}; calibrated in-process, angular_convention = {}\n", path.string(),
             optics::to_string(report.chosen));
}

int cmd_sweep(const SweepOptions& opt, Streams io) {
  return guarded(io, [&] {
    RunConfig cfg = load_run_config(opt.config);
    if (opt.output) cfg.output.path = *opt.output;
    resolve_convention(cfg, io);
    const optics::OpticalConstants k = cfg.constants();
    const auto backend = cfg.backend == BackendChoice::Analytic ? optics::Backend::Analytic : optics::Backend::Numeric;
    const optics::SweepRequest req{cfg.sweep.min, cfg.sweep.max, cfg.sweep.points, backend};
    const optics::Sweep result = optics::sweep(cfg.params, k, req);
    SweepRecord rec = make_record(cfg, result);

    auto failures = result.failures();
    double discrepancy = 0.0;
    if (cfg.backend == BackendChoice::Both) {
      const optics::Sweep closed = optics::sweep(cfg.params, k, {req.delta_min, req.delta_max, req.points,
                                                                  optics::Backend::Analytic});
      for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto* a = std::get_if<optics::SpectralPoint>(&result.rows[i]);
        const auto* b = std::get_if<optics::SpectralPoint>(&closed.rows[i]);
        if (!a || !b) continue;
        discrepancy = std::max({discrepancy, std::abs(a->rho11 - b->rho11), std::abs(a->rho22 - b->rho22),
                                std::abs(a->rho33 - b->rho33), std::abs(a->probe_coherence - b->probe_coherence)});
      }
      rec.metadata.backend_discrepancy = discrepancy;
      for (auto f : closed.failures()) {
        f.message = "analytic backend: " + f.message;
        failures.push_back(std::move(f));
      }
    }

    const fs::path path = resolve_output(cfg.output.path);
    write_file(path, emit(rec, cfg.output.format));
    fmt::print(io.out, "wrote {} rows to {} (config {}, backend {}, angular_convention {})\n", rec.rows.size(),
               path.string(), to_string(cfg.params.config), to_string(cfg.backend),
               optics::to_string(k.angular_convention));

    for (const auto& f : failures) fmt::print(io.err, "error at delta_mhz={}: {}\n", format_double(f.delta), f.message);
    if (!failures.empty()) {
      fmt::print(io.err, "{} point solves failed over {} grid points\n", failures.size(), result.rows.size());
      return int(kExitSolverFailure);
    }
    if (cfg.backend == BackendChoice::Both) {
      fmt::print(io.out, "max |numeric - analytic| = {:.3e}\n", discrepancy);
      if (discrepancy > kBackendTolerance) {
        fmt::print(io.err, "error: backends disagree by {:.3e} (> {:.0e})\n", discrepancy, kBackendTolerance);
        return int(kExitDiscrepancy);
      }
    }
    return int(kExitOk);
  });
}

int cmd_steady(const SteadyOptions& opt, Streams io) {
  return guarded(io, [&] {
    const RunConfig cfg = load_run_config(opt.config);
    if (!std::isfinite(opt.delta)) throw ConfigError("--delta", "must be finite");
    const SystemParams p = cfg.params.with_probe_detuning(opt.delta);
    const Liouvillian l = build_liouvillian(p);
    fmt::print(io.out, "config: {}  delta_mhz: {}\n", to_string(p.config), format_double(opt.delta));

    std::optional<DensityMatrix> numeric, closed;
    const auto report = [&](optics::Backend b, std::optional<DensityMatrix>& slot) {
      try {
        slot = optics::solve_steady_state(p, b);
      } catch (const Error& e) {
        const std::string what = e.what();
        const std::string detail = what.substr(std::min(what.size(), to_string(e.kind()).size() + 2));
        throw Error(e.kind(), fmt::format("{} backend at delta_mhz={}: {}", optics::to_string(b),
                                          format_double(opt.delta), detail));
      }
      fmt::print(io.out, "backend: {}\n", optics::to_string(b));
      print_state(io.out, l, *slot);
    };
    if (cfg.backend != BackendChoice::Analytic) report(optics::Backend::Numeric, numeric);
    if (cfg.backend != BackendChoice::Numeric) report(optics::Backend::Analytic, closed);
    if (numeric && closed) {
      const double d = max_abs_difference(numeric->matrix(), closed->matrix());
      fmt::print(io.out, "max |numeric - analytic| = {:.3e}\n", d);
      if (d > kBackendTolerance) {
        fmt::print(io.err, "error: backends disagree by {:.3e} (> {:.0e})\n", d, kBackendTolerance);
        return int(kExitDiscrepancy);
      }
    }
    return int(kExitOk);
  });
}

DensityMatrix load_density_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--rho0", "cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--rho0", e.what());
  }
  ComplexMatrix3 m = ComplexMatrix3::Zero();
  for (const char* part : {"re", "im"}) {
    if (!doc.contains(part) || !doc[part].is_array() || doc[part].size() != 3)
      throw ConfigError(fmt::format("--rho0.{}", part), "expected a 3x3 array");
    for (int i = 1; i <= 3; ++i) {
      const json& row = doc[part][i - 1];
      if (!row.is_array() || row.size() != 3) throw ConfigError(fmt::format("--rho0.{}", part), "expected a 3x3 array");
      for (int j = 1; j <= 3; ++j) {
        if (!row[j - 1].is_number()) throw ConfigError(fmt::format("--rho0.{}", part), "expected numbers");
        const double v = row[j - 1].get<double>();
        m(slot(i), slot(j)) += std::string_view(part) == "re" ? Complex(v, 0.0) : Complex(0.0, v);
      }
    }
  }
  return DensityMatrix(m);
}

int cmd_evolve(const EvolveOptions& opt, Streams io) {
  return guarded(io, [&] {
    const RunConfig cfg = load_run_config(opt.config);
    if (!std::isfinite(opt.delta)) throw ConfigError("--delta", "must be finite");
    if (!(opt.t_end > 0.0) || !std::isfinite(opt.t_end)) throw ConfigError("--t-end", "must be finite and > 0");
    if (opt.dt && !(*opt.dt > 0.0)) throw ConfigError("--dt", "must be > 0");
    if (opt.samples < 2) throw ConfigError("--samples", "need at least 2");
    const SystemParams p = cfg.params.with_probe_detuning(opt.delta);
    const Liouvillian l = build_liouvillian(p);

    const DensityMatrix rho0 = opt.rho0 == "ground"  ? DensityMatrix::ground()
                               : opt.rho0 == "mixed" ? DensityMatrix::maximally_mixed()
                                                     : load_density_matrix(opt.rho0);
    const double dt = opt.dt.value_or(max_stable_step(l));
    const Trajectory traj = evolve(l, rho0, opt.t_end, dt, opt.samples);

    std::string csv = "t_us,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23,trace\n";
    double drift = 0.0;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
      const DensityMatrix& r = traj.states[s];
      const double trace = r.matrix().trace().real();
      drift = std::max(drift, std::abs(trace - 1.0));
      csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", format_double(traj.times[s]),
                         format_double(r.population(1)), format_double(r.population(2)),
                         format_double(r.population(3)), format_double(r(1, 2).real()), format_double(r(1, 2).imag()),
                         format_double(r(1, 3).real()), format_double(r(1, 3).imag()), format_double(r(2, 3).real()),
                         format_double(r(2, 3).imag()), format_double(trace));
    }
    const fs::path path = resolve_output(opt.output);
    write_file(path, csv);
    fmt::print(io.out, "wrote {} samples to {} (dt = {:.6g} us, max trace drift {:.3e})\n", traj.times.size(),
               path.string(), dt, drift);

    const DensityMatrix target = steady_state(l);
    const double distance = max_abs_difference(traj.states.back().matrix(), target.matrix());
    fmt::print(io.out, "max |rho(t_end) - rho_s| = {:.3e}\n", distance);
    if (distance > kConvergenceTolerance) {
      fmt::print(io.err, "warning: not converged to the steady state within {:.0e} at t_end = {} us\n",
                 kConvergenceTolerance, format_double(opt.t_end));
      return int(kExitNotConverged);
    }
    return int(kExitOk);
  });
}

int cmd_darkstate(const DarkstateOptions& opt, Streams io) {
  return guarded(io, [&] {
    const RunConfig cfg = load_run_config(opt.config);
    const SystemParams p = cfg.params.with_probe_detuning(0.0);
    const auto backend = cfg.backend == BackendChoice::Analytic ? optics::Backend::Analytic : optics::Backend::Numeric;
    const DensityMatrix rho = optics::solve_steady_state(p, backend);
    const darkstate::Populations pops{rho.population(1), rho.population(2), rho.population(3)};
    const auto r = darkstate::estimate_mixing_angle(pops, p.config);
    const auto [pp, qq] = darkstate::dark_pair(p.config);

    fmt::print(io.out, "config: {}  backend: {}  delta_mhz: 0\n", to_string(p.config), optics::to_string(backend));
    fmt::print(io.out, "populations: rho11 = {}  rho22 = {}  rho33 = {}\n", fixed9(pops.rho11), fixed9(pops.rho22),
               fixed9(pops.rho33));
    fmt::print(io.out, "dark pair: |{}>, |{}>\n", pp, qq);
    fmt::print(io.out, "theta = {:.6f} rad = {:.4f} deg\n", r.theta, r.theta * 180.0 / std::numbers::pi);
    fmt::print(io.out, "dark state = {:.6f} |{}> - {:.6f} |{}>\n", std::cos(r.theta), pp, std::sin(r.theta), qq);
    int dominant = 1;
    for (int level = 1; level <= 3; ++level) {
      fmt::print(io.out, "  <{}|dark> = {}\n", level, complex9(r.dark_state.amplitude(level)));
      if (std::norm(r.dark_state.amplitude(level)) > std::norm(r.dark_state.amplitude(dominant))) dominant = level;
    }
    const double weight = std::norm(r.dark_state.amplitude(dominant));
    if (weight >= 0.99) fmt::print(io.out, "dark state ~ |{}> (weight {:.6f})\n", dominant, weight);
    if (p.config == Configuration::Lambda) {
      fmt::print(io.out, "coupling-ratio angle atan(g_probe/g_pump) = {:.6f} rad\n", std::atan2(p.g_probe, p.g_pump));
      if (p.delta_pump == 0.0)
        fmt::print(io.out, "verify_dark_state residual = {:.3e}\n", darkstate::verify_dark_state(p));
      else
        fmt::print(io.out, "verify_dark_state skipped: needs delta_pump = 0\n");
    }
    return int(kExitOk);
  });
}

std::string calibration_json(const optics::CalibrationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"config", std::string(to_string(e.config))},
                       {"angular_convention", std::string(optics::to_string(e.convention))},
                       {"v_g_m_per_s", e.v_g},
                       {"v_g_analytic_m_per_s", e.v_g_analytic},
                       {"target_m_per_s", e.target},
                       {"relative_error", e.relative_error}});
  const json doc = {{"tool_version", std::string(kVersion)},
                    {"chosen", std::string(optics::to_string(r.chosen))},
                    {"lambda_within_tolerance", r.lambda_within_tolerance},
                    {"entries", entries}};
  return doc.dump(1) + "\n";
}

int cmd_calibrate(Streams io) {
  const auto r = optics::calibrate();
  fmt::print(io.out, "{:<12} {:<8} {:>14} {:>14} {:>12}\n", "convention", "system", "v_g (nm/s)", "target (nm/s)",
             "rel. error");
  for (const auto conv : {optics::AngularConvention::PlainMHz, optics::AngularConvention::TwoPiMHz})
    for (const auto c : {Configuration::Lambda, Configuration::Cascade, Configuration::Vee}) {
      const auto& e = r.entry(c, conv);
      fmt::print(io.out, "{:<12} {:<8} {:>14.4e} {:>14.1f} {:>12}\n", optics::to_string(conv), to_string(c),
                 e.v_g * 1e9, e.target * 1e9, fmt::format("{:#.4g}", e.relative_error));
    }
  fmt::print(io.out, "chosen angular_convention: {} (smallest lambda error)\n", optics::to_string(r.chosen));
  if (!r.lambda_within_tolerance)
    fmt::print(io.out, "lambda target not reproduced within 10%; group-velocity check reverts to n_g(0) >= 1e12\n");
  const fs::path path = output_dir() / kCalibrationFile;
  try {
    write_file(path, calibration_json(r));
    fmt::print(io.out, "wrote {}\n", path.string());
  } catch (const std::exception& e) {
    fmt::print(io.err, "warning: {}\n", e.what());
  }
  return kExitOk;
}

}  // namespace eit::cli
