#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include "eit/cli/commands.hpp"
#include "eit/cli/records.hpp"

using namespace eit;
using namespace eit::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = EIT_CONFIG_DIR;

fs::path config_path(std::string_view name) { return kConfigs / (std::string(name) + ".json"); }

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Fresh output directory per test, exported through the environment.
struct Sandbox {
  fs::path dir;
  explicit Sandbox(std::string_view name) {
    dir = fs::temp_directory_path() / ("eit_cli_" + std::string(name));
    fs::remove_all(dir);
    fs::create_directories(dir);
    setenv(std::string(kOutputDirEnv).c_str(), dir.c_str(), 1);
  }
  ~Sandbox() {
    unsetenv(std::string(kOutputDirEnv).c_str());
    fs::remove_all(dir);
  }
  // A bundled config with string substitutions applied.
  fs::path variant(std::string_view base, const std::vector<std::pair<std::string, std::string>>& edits) {
    std::string text = read(config_path(base));
    for (const auto& [from, to] : edits) {
      const auto at = text.find(from);
      REQUIRE(at != std::string::npos);
      text.replace(at, from.size(), to);
    }
    const fs::path p = dir / (std::string(base) + "_variant.json");
    write(p, text);
    return p;
  }
};

struct Run {
  int code;
  std::string out, err;
};

template <class F>
Run run(F&& f) {
  std::ostringstream out, err;
  const int code = f(Streams{out, err});
  return {code, out.str(), err.str()};
}

double parse_printed(const std::string& text, const std::string& label) {
  const std::regex re(label + R"( = ([-+0-9.eE]+))");
  std::smatch m;
  REQUIRE(std::regex_search(text, m, re));
  return std::stod(m[1]);
}

}  // namespace

TEST_CASE("config parsing is strict") {
  const std::string text = read(config_path("lambda"));
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.params.config == Configuration::Lambda);
  CHECK(cfg.params.g_probe == 0.5);
  CHECK(cfg.params.gamma_b == 6.0);
  CHECK(cfg.sweep.points == 201);
  CHECK_FALSE(cfg.optics.angular_convention.has_value());

  const auto field_of = [](std::string doc) {
    try {
      parse_run_config(doc);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  const auto edit = [&](const std::string& from, const std::string& to) {
    std::string t = text;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK(field_of(edit("\"gamma_a\": 0.1", "\"gamma_a\": -0.1")) == "gamma_a");
  CHECK(field_of(edit("\"g_pump\": 105,", "")) == "g_pump");
  CHECK(field_of(edit("\"backend\": \"both\"", "\"backend\": \"both\", \"colour\": 1")) == "colour");
  CHECK(field_of(edit("\"points\": 201", "\"points\": 201, \"step\": 1")) == "sweep.step");
  CHECK(field_of(edit("\"points\": 201", "\"points\": 2")) == "sweep.points");
  CHECK(field_of(edit("\"points\": 201", "\"points\": 20.5")) == "sweep.points");
  CHECK(field_of(edit("\"lambda\"", "\"ladder\"")) == "config");
  CHECK(field_of(edit("\"csv\"", "\"xml\"")) == "output.format");
  CHECK(field_of(edit("\"both\"", "\"fast\"")) == "backend");
  CHECK(field_of(edit("\"n0\": 1e21", "\"n0\": \"many\"")) == "optics.n0");
  CHECK(field_of(edit("\"g_probe\": 0.5", "\"g_probe\": 0.5,")) == "<document>");
  CHECK(field_of(edit("\"omega_probe\": 2.37e9", "\"omega_probe\": 2.37e9, \"angular_convention\": \"degrees\"")) ==
        "optics.angular_convention");

  const RunConfig no_pump = parse_run_config(edit("\"delta_pump\": 0,", ""));
  CHECK(no_pump.params.delta_pump == 0.0);
  const RunConfig conv =
      parse_run_config(edit("\"omega_probe\": 2.37e9", "\"omega_probe\": 2.37e9, \"angular_convention\": \"two_pi_mhz\""));
  CHECK(conv.optics.angular_convention == optics::AngularConvention::TwoPiMHz);
}

TEST_CASE("bundled configs carry the reference parameter sets") {
  for (const auto c : {Configuration::Lambda, Configuration::Cascade, Configuration::Vee}) {
    const RunConfig cfg = load_run_config(config_path(to_string(c)));
    const SystemParams ref = reference_params(c);
    CHECK(cfg.params.config == c);
    CHECK(cfg.params.g_probe == ref.g_probe);
    CHECK(cfg.params.g_pump == ref.g_pump);
    CHECK(cfg.params.gamma_a == ref.gamma_a);
    CHECK(cfg.params.gamma_b == ref.gamma_b);
    CHECK(cfg.params.delta_pump == 0.0);
    CHECK(cfg.optics.omega_probe == optics::reference_constants(c).omega_probe);
    CHECK(cfg.optics.n0 == 1e21);
  }
}

TEST_CASE("config hash") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  RunConfig a = load_run_config(config_path("lambda"));
  RunConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.output.path = "elsewhere.csv";
  CHECK(config_hash(a) == config_hash(b));
  b.params.g_probe = std::nextafter(a.params.g_probe, 1.0);
  CHECK(config_hash(a) != config_hash(b));
  CHECK(std::regex_match(config_hash(a), std::regex("fnv1a64:[0-9a-f]{16}")));
}

TEST_CASE("sweep records round-trip losslessly") {
  RunConfig cfg = load_run_config(config_path("vee"));
  cfg.optics.angular_convention = optics::AngularConvention::TwoPiMHz;
  SweepRecord rec =
      make_record(cfg, optics::sweep(cfg.params, cfg.constants(), {-30, 30, 41, optics::Backend::Numeric}));
  rec.metadata.backend_discrepancy = 1.2345678901234567e-16;

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 200; ++i) {
    RecordRow row;
    row.delta_mhz = std::bit_cast<double>(bits(rng));
    row.n = std::bit_cast<double>(bits(rng));
    row.alpha = std::numeric_limits<double>::denorm_min();
    row.n_g = -std::numeric_limits<double>::infinity();
    row.v_g = std::numeric_limits<double>::max();
    row.rho11 = -0.0;
    if (std::isnan(row.delta_mhz)) row.delta_mhz = 1.0;
    rec.rows.push_back(row);
  }
  RecordRow failed;
  failed.delta_mhz = 0.1;
  for (double* v : {&failed.n, &failed.alpha, &failed.n_g, &failed.v_g, &failed.rho11, &failed.rho22, &failed.rho33,
                    &failed.re_coh, &failed.im_coh})
    *v = std::numeric_limits<double>::quiet_NaN();
  failed.error = "SingularSolve: bordered system ill-conditioned";
  rec.rows.push_back(failed);

  for (const auto f : {OutputFormat::Csv, OutputFormat::Json}) {
    const std::string text = emit(rec, f);
    const SweepRecord back = parse(text, f);
    CHECK(same(back, rec));
    CHECK(emit(back, f) == text);
    for (std::size_t i = 0; i < rec.rows.size(); ++i)
      if (!std::isnan(rec.rows[i].n)) CHECK(std::signbit(back.rows[i].rho11) == std::signbit(rec.rows[i].rho11));
  }
  CHECK(emit_csv(rec).find(std::string(kCsvHeader) + "\n") != std::string::npos);
}

TEST_CASE("sweep command: lambda") {
  Sandbox box("sweep_lambda");
  const Run r = run([&](Streams io) { return cmd_sweep({config_path("lambda"), std::nullopt}, io); });
  CHECK(r.code == kExitOk);
  const fs::path out = box.dir / "lambda_sweep.csv";
  const std::string first = read(out);
  const SweepRecord rec = parse_csv(first);
  REQUIRE(rec.rows.size() == 201);
  double max_alpha = 0.0;
  for (const auto& row : rec.rows) max_alpha = std::max(max_alpha, row.alpha);
  CHECK(rec.rows[100].delta_mhz == 0.0);
  CHECK(rec.rows[100].alpha <= 1e-9 * max_alpha);
  CHECK(rec.metadata.backend == BackendChoice::Both);
  REQUIRE(rec.metadata.backend_discrepancy.has_value());
  CHECK(*rec.metadata.backend_discrepancy <= 1e-8);
  CHECK(rec.metadata.tool_version == "0.1.0");
  CHECK(first.rfind("# tool_version: ", 0) == 0);
  CHECK(fs::exists(box.dir / kCalibrationFile) == false);  // calibrated in-process, nothing written

  const Run again = run([&](Streams io) { return cmd_sweep({config_path("lambda"), std::nullopt}, io); });
  CHECK(again.code == kExitOk);
  CHECK(read(out) == first);
}

TEST_CASE("sweep command: vee resonance populations and JSON output") {
  Sandbox box("sweep_vee");
  const fs::path cfg = box.variant("vee", {{"\"csv\"", "\"json\""}, {"vee_sweep.csv", "vee.json"}});
  const Run r = run([&](Streams io) { return cmd_sweep({cfg, std::nullopt}, io); });
  CHECK(r.code == kExitOk);
  const SweepRecord rec = parse_json(read(box.dir / "vee.json"));
  REQUIRE(rec.rows.size() == 201);
  // The strong 1-2 pump shares the population of |1> and |2> equally.
  CHECK(rec.rows[100].rho11 == doctest::Approx(0.5003228432525403).epsilon(1e-9));
  CHECK(rec.rows[100].rho33 < 1e-3);
}

TEST_CASE("sweep command: failures") {
  Sandbox box("sweep_fail");
  const Run neg = run([&](Streams io) {
    return cmd_sweep({box.variant("lambda", {{"\"gamma_a\": 0.1", "\"gamma_a\": -0.1"}}), std::nullopt}, io);
  });
  CHECK(neg.code == kExitInvalid);
  CHECK(neg.err.find("gamma_a") != std::string::npos);

  const fs::path degenerate =
      box.variant("lambda", {{"\"g_probe\": 0.5", "\"g_probe\": 0"}, {"\"g_pump\": 105", "\"g_pump\": 0"},
                             {"\"points\": 201", "\"points\": 3"}});
  const Run deg = run([&](Streams io) { return cmd_sweep({degenerate, std::string("deg.csv")}, io); });
  CHECK(deg.code == kExitSolverFailure);
  CHECK(deg.err.find("delta_mhz=0: DegenerateNullSpace") != std::string::npos);
  const SweepRecord rec = parse_csv(read(box.dir / "deg.csv"));
  REQUIRE(rec.rows.size() == 3);
  for (const auto& row : rec.rows) {
    CHECK(row.failed());
    CHECK(std::isnan(row.n));
  }

  // Closed forms need zero pump detuning: per-point failures, partial
  // output, exit 2.
  const fs::path detuned = box.variant("cascade", {{"\"delta_pump\": 0", "\"delta_pump\": 1"}});
  const Run pump = run([&](Streams io) { return cmd_sweep({detuned, std::nullopt}, io); });
  CHECK(pump.code == kExitSolverFailure);
  CHECK(pump.err.find("PumpDetuningUnsupported") != std::string::npos);
  CHECK(parse_csv(read(box.dir / "cascade_sweep.csv")).rows.size() == 201);
}

TEST_CASE("calibration is stamped into later sweeps") {
  Sandbox box("calibrate");
  const Run cal = run([](Streams io) { return cmd_calibrate(io); });
  CHECK(cal.code == kExitOk);
  for (const char* target : {"17543.7", "16316.5", "16558"}) CHECK(cal.out.find(target) != std::string::npos);
  CHECK(cal.out.find("-1.000") != std::string::npos);
  CHECK(cal.out.find("chosen angular_convention: plain_mhz") != std::string::npos);
  REQUIRE(fs::exists(box.dir / kCalibrationFile));

  std::string json = read(box.dir / kCalibrationFile);
  json.replace(json.find("\"chosen\": \"plain_mhz\""), 21, "\"chosen\": \"two_pi_mhz\"");
  write(box.dir / kCalibrationFile, json);
  CHECK(run([&](Streams io) { return cmd_sweep({config_path("cascade"), std::nullopt}, io); }).code == kExitOk);
  CHECK(parse_csv(read(box.dir / "cascade_sweep.csv")).metadata.angular_convention ==
        optics::AngularConvention::TwoPiMHz);
}

TEST_CASE("steady command") {
  Sandbox box("steady");
  const Run lam = run([](Streams io) { return cmd_steady({config_path("lambda"), 0.0}, io); });
  CHECK(lam.code == kExitOk);
  CHECK(lam.out.find("rho33 = 0.000000000\n") != std::string::npos);
  for (const char* c : {"lambda", "cascade", "vee"})
    for (const double delta : {-12.5, 0.0, 7.0}) {
      const Run r = run([&](Streams io) { return cmd_steady({config_path(c), delta}, io); });
      CHECK(r.code == kExitOk);
      CHECK(parse_printed(r.out, "max \\|numeric - analytic\\|") <= 1e-8);
    }
  const fs::path degenerate =
      box.variant("lambda", {{"\"g_probe\": 0.5", "\"g_probe\": 0"}, {"\"g_pump\": 105", "\"g_pump\": 0"}});
  const Run deg = run([&](Streams io) { return cmd_steady({degenerate, 0.0}, io); });
  CHECK(deg.code == kExitSolverFailure);
  CHECK(deg.err.find("DegenerateNullSpace") != std::string::npos);
}

TEST_CASE("evolve command") {
  Sandbox box("evolve");
  EvolveOptions opt;
  opt.config = config_path("lambda");
  opt.t_end = 50.0 / 0.1;
  opt.samples = 201;
  const Run ok = run([&](Streams io) { return cmd_evolve(opt, io); });
  CHECK(ok.code == kExitOk);

  std::ifstream in(box.dir / "evolve.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_us,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23,trace");
  int rows = 0;
  double last_t = -1.0;
  for (; std::getline(in, line); ++rows) {
    const double t = std::stod(line.substr(0, line.find(',')));
    const double trace = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(t > last_t);
    CHECK(std::abs(trace - 1.0) <= 1e-9);
    last_t = t;
  }
  CHECK(rows == 201);
  CHECK(last_t == 500.0);

  opt.t_end = 0.01;
  opt.output = "short.csv";
  const Run tiny = run([&](Streams io) { return cmd_evolve(opt, io); });
  CHECK(tiny.code == kExitNotConverged);
  CHECK(fs::exists(box.dir / "short.csv"));

  opt.dt = 0.5;
  const Run big = run([&](Streams io) { return cmd_evolve(opt, io); });
  CHECK(big.code == kExitInvalid);
  CHECK(big.err.find("StepTooLarge") != std::string::npos);

  opt.dt.reset();
  opt.rho0 = (box.dir / "rho0.json").string();
  write(opt.rho0, R"({"re": [[0.2, 0, 0], [0, 0.3, 0], [0, 0, 0.5]], "im": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]})");
  opt.config = config_path("vee");
  opt.t_end = 50.0 / 6.0;
  CHECK(run([&](Streams io) { return cmd_evolve(opt, io); }).code == kExitOk);
  write(opt.rho0, R"({"re": [[0.9, 0, 0], [0, 0.3, 0], [0, 0, 0.5]], "im": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]})");
  const Run bad = run([&](Streams io) { return cmd_evolve(opt, io); });
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("InvalidState") != std::string::npos);
}

TEST_CASE("darkstate command") {
  Sandbox box("darkstate");
  const Run lam = run([](Streams io) { return cmd_darkstate({config_path("lambda")}, io); });
  CHECK(lam.code == kExitOk);
  CHECK(parse_printed(lam.out, "theta") <= 0.05);
  CHECK(parse_printed(lam.out, "verify_dark_state residual") <= 1e-12 * 105);

  const Run cas = run([](Streams io) { return cmd_darkstate({config_path("cascade")}, io); });
  CHECK(cas.code == kExitOk);
  CHECK(cas.out.find("dark state ~ |1>") != std::string::npos);
  CHECK(cas.out.find("verify_dark_state") == std::string::npos);

  const Run vee = run([](Streams io) { return cmd_darkstate({config_path("vee")}, io); });
  CHECK(vee.code == kExitOk);
  CHECK(parse_printed(vee.out, "theta") == doctest::Approx(0.040014).epsilon(1e-4));
}
