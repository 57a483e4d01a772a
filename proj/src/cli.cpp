#include "vibcav/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vibcav/cavity.hpp"
#include "vibcav/errors.hpp"
#include "vibcav/experiments.hpp"
#include "vibcav/export.hpp"
#include "vibcav/single_mirror.hpp"
#include "vibcav/version.hpp"

namespace vibcav::cli {
namespace {

/// Invalid flag values or combinations, detected before any computation.
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Quantity {
  std::string name;
  double value;
  std::string unit;
};

struct GlobalOptions {
  std::string units = "si";
  double rel_tol = 1e-9;
  std::string output;
  std::string format = "csv";
  int digits = 10;
  bool verify = false;
};

struct FrequencyOptions {
  std::optional<double> omega;
  std::optional<double> freq_ghz;
  std::optional<double> order;
};

struct CavityOptions {
  std::optional<double> tau;
  double rho = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double time = 1.0;
  FrequencyOptions freq;
};

struct Context {
  GlobalOptions global;
  Provenance provenance;
  std::vector<Quantity> quantities;
  std::ostream* out;
  std::ostream* err;

  bool dimensionless() const { return global.units == "dimensionless"; }
  PhysicalConstants constants() const {
    return dimensionless() ? PhysicalConstants::natural() : PhysicalConstants::codata();
  }
  void param(const std::string& key, double value) {
    provenance.params.emplace_back(key, format_exact(value));
  }
  void param(const std::string& key, const std::string& value) {
    provenance.params.emplace_back(key, value);
  }
  void emit(std::string name, double value, std::string unit) {
    quantities.push_back({std::move(name), value, std::move(unit)});
  }
  void warn(const std::vector<std::string>& warnings) const {
    for (const auto& w : warnings) *err << "warning: " << w << '\n';
  }
};

template <typename F>
auto validated(F&& build) {
  try {
    return build();
  } catch (const DomainError& e) {
    throw ArgumentError(e.what());
  }
}

std::string format_digits(double value, int digits) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
  return buf;
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n') ? ' ' : c;
  }
  return out + "\"";
}

double resolve_omega(const FrequencyOptions& f, const Context& ctx,
                     std::optional<double> tau) {
  const int given = f.omega.has_value() + f.freq_ghz.has_value() + f.order.has_value();
  if (given != 1) {
    throw ArgumentError("give exactly one of --omega, --freq-ghz, --order");
  }
  if (f.omega) return *f.omega;
  if (f.freq_ghz) {
    if (ctx.dimensionless()) throw ArgumentError("--freq-ghz requires --units si");
    return 2.0 * kPi * *f.freq_ghz * 1e9;
  }
  if (!tau) throw ArgumentError("--order needs a cavity flight time");
  return *f.order * kPi / *tau;
}

void add_frequency_flags(CLI::App* sub, FrequencyOptions& f, bool with_order) {
  sub->add_option("--omega", f.omega, "Drive angular frequency (rad/s, or units of 1/tau)");
  sub->add_option("--freq-ghz", f.freq_ghz, "Drive frequency Omega/2pi in GHz (SI only)");
  if (with_order) sub->add_option("--order", f.order, "Drive phase Omega*tau/pi");
}

void add_cavity_flags(CLI::App* sub, CavityOptions& c, bool with_frequency) {
  sub->add_option("--tau", c.tau, "One-way photon flight time (s); 1 in dimensionless units");
  sub->add_option("--rho", c.rho, "Loss parameter, r1*r2 = exp(-2 rho)")->required();
  sub->add_option("--a1", c.a1, "Signed drive amplitude of mirror 1")->required();
  sub->add_option("--a2", c.a2, "Signed drive amplitude of mirror 2");
  sub->add_option("--time", c.time, "Oscillation duration T");
  if (with_frequency) add_frequency_flags(sub, c.freq, true);
}

double resolve_tau(const CavityOptions& c, const Context& ctx) {
  if (c.tau) return *c.tau;
  if (ctx.dimensionless()) return 1.0;
  throw ArgumentError("--tau is required with --units si");
}

CavityConfig build_cavity(const CavityOptions& c, Context& ctx, std::optional<double> omega) {
  const double tau = resolve_tau(c, ctx);
  const double w = omega ? *omega : resolve_omega(c.freq, ctx, tau);
  auto cavity = validated([&] { return CavityConfig(tau, c.rho, c.a1, c.a2, w, c.time); });
  ctx.param("tau", tau);
  ctx.param("rho", c.rho);
  ctx.param("a1", c.a1);
  ctx.param("a2", c.a2);
  ctx.param("omega", w);
  ctx.param("time", c.time);
  ctx.warn(cavity.warnings());
  return cavity;
}

IntegrationSettings settings_from(const Context& ctx) {
  IntegrationSettings s;
  s.rel_tol = ctx.global.rel_tol;
  return s;
}

std::vector<MirrorSample> read_mirror_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read mirror table '" + path + "'");
  std::vector<MirrorSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double w, rr, ri, sr, si;
    if (!(fields >> w >> rr >> ri >> sr >> si)) {
      throw ArgumentError("mirror table '" + path + "': expected omega,re_r,im_r,re_s,im_s");
    }
    samples.push_back({w, {rr, ri}, {sr, si}});
  }
  return samples;
}

struct SingleOptions {
  double a = 0.0;
  double time = 1.0;
  FrequencyOptions freq;
  std::string mirror = "perfect";
  std::optional<double> r;
  std::string table;
  std::string method = "quadrature";
  std::size_t points = 1001;
};

MirrorModel build_mirror(const SingleOptions& o, Context& ctx) {
  ctx.param("mirror", o.mirror);
  if (o.mirror == "perfect") return MirrorModel::perfect();
  if (o.mirror == "real") {
    if (!o.r) throw ArgumentError("--mirror real needs --r");
    ctx.param("r", *o.r);
    return validated([&] { return MirrorModel::constant_real(*o.r); });
  }
  if (o.table.empty()) throw ArgumentError("--mirror table needs --table");
  ctx.param("table", o.table);
  auto samples = read_mirror_table(o.table);
  auto mirror = validated([&] { return MirrorModel::tabulated(std::move(samples)); });
  if (mirror.has_complex_phases()) {
    *ctx.err << "warning: complex mirror phases are outside the validated regime\n";
  }
  return mirror;
}

HarmonicDrive build_drive(const SingleOptions& o, Context& ctx) {
  const double w = resolve_omega(o.freq, ctx, std::nullopt);
  const auto constants = ctx.constants();
  auto drive = validated([&] { return HarmonicDrive(o.a, w, o.time, constants); });
  ctx.param("a", o.a);
  ctx.param("omega", w);
  ctx.param("time", o.time);
  ctx.warn(drive.warnings());
  return drive;
}

void cmd_flux_single(const SingleOptions& o, Context& ctx) {
  const auto mirror = build_mirror(o, ctx);
  const auto drive = build_drive(o, ctx);
  ctx.param("method", o.method);
  const bool perfect = mirror.kind() == MirrorKind::PerfectReflector;
  if (o.method == "closed" && !perfect) {
    throw ArgumentError("--method closed is only available for --mirror perfect");
  }
  const auto constants = ctx.constants();
  const std::string rate = ctx.dimensionless() ? "1/tau" : "photons/s";

  double value = 0.0;
  if (o.method == "closed") {
    value = flux_perfect(drive, constants);
    ctx.emit("flux", value, rate);
  } else {
    const auto result = flux(mirror, drive, constants, settings_from(ctx));
    value = result.value;
    ctx.emit("flux", value, rate);
    ctx.emit("error_estimate", result.error_estimate, rate);
    ctx.emit("subdivisions", static_cast<double>(result.subdivisions), "count");
  }
  ctx.emit("photons", value * drive.duration(), "count");
  ctx.emit("radiated_power", radiated_power(value, drive.omega(), constants),
           ctx.dimensionless() ? "hbar/tau^2" : "W");
  ctx.emit("peak_velocity", drive.peak_velocity(), ctx.dimensionless() ? "c" : "m/s");
  ctx.emit("v_over_c", drive.peak_velocity() / constants.c(), "1");
  if (perfect) {
    const double closed = flux_perfect(drive, constants);
    ctx.emit("flux_closed_form", closed, rate);
    if (ctx.global.verify) {
      const double rel = closed == 0.0 ? std::abs(value) : std::abs(value - closed) / closed;
      const double band = std::max(1e-8, 10.0 * ctx.global.rel_tol);
      ctx.emit("verify_rel_diff", rel, "1");
      ctx.emit("verify_band", band, "1");
      ctx.emit("verify_pass", rel <= band ? 1.0 : 0.0, "bool");
    }
  }
}

void cmd_flux_cavity(const CavityOptions& c, const std::string& method, int k_max,
                     Context& ctx) {
  const auto cavity = build_cavity(c, ctx, std::nullopt);
  ctx.param("method", method);
  const auto constants = ctx.constants();
  const std::string rate = ctx.dimensionless() ? "1/tau" : "photons/s";
  ctx.emit("resonance_order", cavity.resonance_order(), "pi/tau");

  double total = 0.0;
  if (method == "resummed") {
    const auto r = flux_resummed_terms(cavity, constants);
    total = r.total;
    ctx.emit("flux_total", r.total, rate);
    ctx.emit("flux_nonresonant", r.nonresonant, rate);
    ctx.emit("flux_translation_term", r.translation, rate);
    ctx.emit("flux_elongation_term", r.elongation, rate);
    ctx.emit("below_first_resonance", r.below_first_resonance, "bool");
  } else if (method == "mode-sum") {
    const auto b = flux_mode_sum(cavity, constants, k_max);
    total = b.total;
    ctx.emit("flux_total", b.total, rate);
    ctx.emit("flux_nonresonant", b.nonresonant, rate);
    ctx.emit("tail_estimate", b.tail_estimate, rate);
    ctx.emit("below_first_resonance", b.below_first_resonance, "bool");
    for (const auto& p : b.peaks) {
      const std::string tag = "peak_" + std::to_string(p.k) + "_" + std::to_string(p.k_p);
      ctx.emit(tag + "_flux", p.flux, rate);
      ctx.emit(tag + "_intracavity", p.intracavity, "photons");
    }
  } else {
    const auto q = flux_quadrature(cavity, constants, settings_from(ctx));
    total = q.value;
    ctx.emit("flux_total", q.value, rate);
    ctx.emit("flux_nonresonant", nonresonant_flux(cavity, constants), rate);
    ctx.emit("error_estimate", q.error_estimate, rate);
    ctx.emit("subdivisions", static_cast<double>(q.subdivisions), "count");
  }
  ctx.emit("photons", total * cavity.duration(), "count");

  if (ctx.global.verify) {
    const double resummed = flux_resummed(cavity, constants);
    const double modes = flux_mode_sum(cavity, constants, k_max).total;
    std::vector<double> values{resummed, modes};
    ctx.emit("verify_resummed", resummed, rate);
    ctx.emit("verify_mode_sum", modes, rate);
    if (cavity.rho() >= kQuadratureMinRho) {
      const double quad = flux_quadrature(cavity, constants, settings_from(ctx)).value;
      values.push_back(quad);
      ctx.emit("verify_quadrature", quad, rate);
    } else {
      *ctx.err << "warning: quadrature cross-check skipped for rho < 1e-6\n";
    }
    double worst = 0.0;
    for (double a : values) {
      for (double b : values) {
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
      }
    }
    const double band = 5.0 * cavity.rho();
    ctx.emit("verify_max_rel_diff", worst, "1");
    ctx.emit("verify_band", band, "1");
    ctx.emit("verify_pass", worst <= band ? 1.0 : 0.0, "bool");
  }
}

void cmd_intracavity(const CavityOptions& c, std::optional<int> k, std::optional<int> kp,
                     int k_max, Context& ctx) {
  if (k.has_value() != kp.has_value()) throw ArgumentError("give both --k and --kp, or neither");
  if (k && (*k < 1 || *kp < 1)) throw ArgumentError("--k and --kp must be >= 1");
  const auto cavity = build_cavity(c, ctx, std::nullopt);
  const auto constants = ctx.constants();
  if (k) {
    ctx.param("k", static_cast<double>(*k));
    ctx.param("kp", static_cast<double>(*kp));
    ctx.emit("intracavity", intracavity_photons(cavity, *k, *kp, constants), "photons");
    ctx.emit("pair_flux", mode_peak_flux(cavity, *k, *kp, constants),
             ctx.dimensionless() ? "1/tau" : "photons/s");
  } else {
    ctx.emit("intracavity_total", intracavity_total(cavity, constants, k_max), "photons");
  }
}

void cmd_estimate(double v, const FrequencyOptions& f, double rho, double time,
                  double fresnel, double temperature, Context& ctx) {
  const double w = resolve_omega(f, ctx, std::nullopt);
  const auto constants = ctx.constants();
  const auto thermal = validated([&] { return ThermalContext(temperature); });
  if (!(rho > 0.0) || !(v >= 0.0) || !(w > 0.0) || !(time > 0.0) || !(fresnel > 0.0)) {
    throw ArgumentError("estimate needs rho > 0, v >= 0 and positive omega, time, fresnel");
  }
  ctx.param("v", v);
  ctx.param("omega", w);
  ctx.param("rho", rho);
  ctx.param("time", time);
  ctx.param("fresnel", fresnel);
  ctx.param("temperature", temperature);
  const auto est = order_of_magnitude(v, w, rho, time, constants, fresnel);
  ctx.emit("photons_outside", est.outside, "count");
  ctx.emit("photon_flux_outside", est.outside / time, ctx.dimensionless() ? "1/tau" : "photons/s");
  ctx.emit("photons_inside", est.inside, "count");
  ctx.emit("v_over_c", v / constants.c(), "1");
  // emitted pairs peak at Omega/2
  const double n_thermal = thermal_occupation(thermal, 0.5 * w, constants);
  ctx.emit("thermal_occupation_half_drive", n_thermal, "photons/mode");
  ctx.emit("vacuum_ok", n_thermal < 1.0 ? 1.0 : 0.0, "bool");
}

void print_quantities(const Context& ctx, std::ostream& out) {
  if (ctx.global.format == "json") {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : ctx.provenance.params) params[k] = v;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& q : ctx.quantities) {
      results.push_back({{"quantity", q.name},
                         {"value", std::isfinite(q.value) ? nlohmann::json(q.value)
                                                          : nlohmann::json(nullptr)},
                         {"unit", q.unit}});
    }
    nlohmann::json doc = {{"schema_version", kJsonSchemaVersion},
                          {"kind", "quantities"},
                          {"tool", "vibcav"},
                          {"version", kVersion},
                          {"command", ctx.provenance.command},
                          {"params", params},
                          {"results", results}};
    out << doc.dump(1) << '\n';
    return;
  }
  out << "# tool: vibcav " << kVersion << '\n';
  out << "# command: " << ctx.provenance.command << '\n';
  for (const auto& [k, v] : ctx.provenance.params) out << "# param " << k << '=' << v << '\n';
  out << "# reproducibility: deterministic evaluation, no random seed\n";
  out << "quantity,value,unit\n";
  for (const auto& q : ctx.quantities) {
    out << q.name << ',' << format_digits(q.value, ctx.global.digits) << ',' << q.unit << '\n';
  }
}

template <typename Writer>
void with_output(const Context& ctx, Writer&& write) {
  if (ctx.global.output.empty() || ctx.global.output == "-") {
    write(*ctx.out);
    return;
  }
  std::ofstream file(ctx.global.output, std::ios::binary);
  if (!file) throw IoError("cannot open '" + ctx.global.output + "' for writing");
  write(file);
  if (!file.flush()) throw IoError("write to '" + ctx.global.output + "' failed");
}

template <typename Table>
void write_table(const Table& table, const Context& ctx) {
  with_output(ctx, [&](std::ostream& out) {
    ctx.global.format == "json" ? write_json(table, ctx.provenance, out)
                                : write_csv(table, ctx.provenance, out);
  });
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const ConvergenceFailure*>(&e)) return "convergence-failure";
  if (dynamic_cast<const UnsupportedRegime*>(&e)) return "unsupported-regime";
  if (dynamic_cast<const PeakUnresolved*>(&e)) return "peak-unresolved";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  return "computation";
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& message) {
  err << "error: code=" << code << " kind=" << kind << " message=" << quote(message) << '\n';
  return code;
}

FluxBackend backend_from(const std::string& name) {
  if (name == "mode-sum") return FluxBackend::ModeSum;
  if (name == "quadrature") return FluxBackend::Quadrature;
  return FluxBackend::Resummed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;

  if (const char* env = std::getenv(kRelTolEnv)) {
    try {
      ctx.global.rel_tol = std::stod(env);
    } catch (const std::exception&) {
      return report(err, kExitArgument, "argument",
                    std::string("cannot parse ") + kRelTolEnv + "='" + env + "'");
    }
  }

  CLI::App app{"Motion-induced radiation from vibrating mirrors and cavities", "vibcav"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--units", ctx.global.units, "si or dimensionless (c = tau = hbar = k_B = 1)")
      ->check(CLI::IsMember({"si", "dimensionless"}));
  app.add_option("--rel-tol", ctx.global.rel_tol,
                 std::string("Quadrature relative tolerance (default from ") + kRelTolEnv +
                     " or 1e-9)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", ctx.global.output, "Output path, '-' for standard output");
  app.add_option("--format", ctx.global.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--digits", ctx.global.digits, "Significant digits of scalar output")
      ->check(CLI::Range(1, 17));
  app.add_flag("--verify", ctx.global.verify, "Cross-check against independent formulas");

  SingleOptions single;
  auto* flux_single = app.add_subcommand("flux-single", "Photon flux of one vibrating mirror");
  auto* spectrum_single =
      app.add_subcommand("spectrum-single", "Emission spectrum of one vibrating mirror");
  for (auto* sub : {flux_single, spectrum_single}) {
    sub->add_option("--a", single.a, "Displacement amplitude")->required();
    sub->add_option("--time", single.time, "Oscillation duration T");
    add_frequency_flags(sub, single.freq, false);
    sub->add_option("--mirror", single.mirror, "perfect, real or table")
        ->check(CLI::IsMember({"perfect", "real", "table"}));
    sub->add_option("--r", single.r, "Reflection amplitude for --mirror real");
    sub->add_option("--table", single.table, "CSV omega,re_r,im_r,re_s,im_s for --mirror table");
  }
  flux_single->add_option("--method", single.method, "quadrature or closed")
      ->check(CLI::IsMember({"quadrature", "closed"}));
  spectrum_single->add_option("--points", single.points, "Number of samples")
      ->check(CLI::Range(3, 10000000));

  CavityOptions cav;
  std::string method = "resummed";
  int k_max = 0;
  auto* flux_cavity = app.add_subcommand("flux-cavity", "Photon flux radiated by the cavity");
  add_cavity_flags(flux_cavity, cav, true);
  flux_cavity->add_option("--method", method, "resummed, mode-sum or quadrature")
      ->check(CLI::IsMember({"resummed", "mode-sum", "quadrature"}));
  flux_cavity->add_option("--k-max", k_max, "Mode cutoff for the mode sum (0 = automatic)")
      ->check(CLI::NonNegativeNumber);

  std::optional<int> k;
  std::optional<int> kp;
  auto* intracavity = app.add_subcommand("intracavity", "Stationary intracavity photon number");
  add_cavity_flags(intracavity, cav, true);
  intracavity->add_option("--k", k, "First mode index");
  intracavity->add_option("--kp", kp, "Second mode index");
  intracavity->add_option("--k-max", k_max, "Mode cutoff (0 = automatic)")
      ->check(CLI::NonNegativeNumber);

  SpectrumGridPolicy spectrum_policy;
  auto* spectrum_cavity = app.add_subcommand("spectrum-cavity", "Cavity emission spectrum");
  add_cavity_flags(spectrum_cavity, cav, true);
  spectrum_cavity->add_option("--points", spectrum_policy.base_points, "Uniform base samples")
      ->check(CLI::Range(2, 10000000));
  spectrum_cavity->add_option("--samples-per-fwhm", spectrum_policy.samples_per_fwhm)
      ->check(CLI::Range(1, 100000));

  ScanPolicy scan_policy;
  std::string backend = "resummed";
  std::optional<double> omega_min, omega_max, order_min, order_max, ghz_min, ghz_max;
  auto* scan = app.add_subcommand("scan", "Sweep the drive frequency");
  add_cavity_flags(scan, cav, false);
  scan->add_option("--omega-min", omega_min);
  scan->add_option("--omega-max", omega_max);
  scan->add_option("--order-min", order_min, "Lower bound of Omega*tau/pi");
  scan->add_option("--order-max", order_max, "Upper bound of Omega*tau/pi");
  scan->add_option("--freq-ghz-min", ghz_min);
  scan->add_option("--freq-ghz-max", ghz_max);
  scan->add_option("--points", scan_policy.base_points, "Uniform base samples")
      ->check(CLI::Range(2, 10000000));
  scan->add_option("--samples-per-fwhm", scan_policy.samples_per_fwhm)
      ->check(CLI::Range(1, 100000));
  scan->add_option("--backend", backend, "resummed, mode-sum or quadrature")
      ->check(CLI::IsMember({"resummed", "mode-sum", "quadrature"}));

  double v = 0.0, rho = 0.0, time = 1.0, fresnel = 1.0, temperature = 0.0;
  FrequencyOptions est_freq;
  auto* estimate = app.add_subcommand("estimate", "Order-of-magnitude resonant photon numbers");
  estimate->add_option("--v", v, "Peak velocity sum or difference")->required();
  estimate->add_option("--rho", rho, "Loss parameter")->required();
  estimate->add_option("--time", time, "Oscillation duration T");
  estimate->add_option("--fresnel", fresnel, "Number of efficiently coupled transverse modes");
  estimate->add_option("--temperature", temperature, "Temperature in K for the thermal check");
  add_frequency_flags(estimate, est_freq, false);

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kExitArgument, "argument", e.what());
  }

  auto* chosen = app.get_subcommands().front();
  ctx.provenance.command = chosen->get_name();
  ctx.param("units", ctx.global.units);
  ctx.param("rel_tol", ctx.global.rel_tol);

  try {
    if (chosen == flux_single) {
      cmd_flux_single(single, ctx);
    } else if (chosen == spectrum_single) {
      const auto mirror = build_mirror(single, ctx);
      const auto drive = build_drive(single, ctx);
      write_table(sample_single_spectrum(mirror, drive, ctx.constants(), single.points), ctx);
      return kExitOk;
    } else if (chosen == flux_cavity) {
      cmd_flux_cavity(cav, method, k_max, ctx);
    } else if (chosen == intracavity) {
      cmd_intracavity(cav, k, kp, k_max, ctx);
    } else if (chosen == spectrum_cavity) {
      const auto cavity = build_cavity(cav, ctx, std::nullopt);
      write_table(sample_emission_spectrum(cavity, spectrum_policy, ctx.constants()), ctx);
      return kExitOk;
    } else if (chosen == scan) {
      const double tau = resolve_tau(cav, ctx);
      std::optional<double> lo, hi;
      const int ranges = (omega_min || omega_max) + (order_min || order_max) +
                         (ghz_min || ghz_max);
      if (ranges != 1) {
        throw ArgumentError("give one range: --omega-min/max, --order-min/max or --freq-ghz-min/max");
      }
      if (omega_min && omega_max) {
        lo = *omega_min;
        hi = *omega_max;
      } else if (order_min && order_max) {
        lo = *order_min * kPi / tau;
        hi = *order_max * kPi / tau;
      } else if (ghz_min && ghz_max && !ctx.dimensionless()) {
        lo = 2.0 * kPi * *ghz_min * 1e9;
        hi = 2.0 * kPi * *ghz_max * 1e9;
      }
      if (!lo || !hi || !(*lo > 0.0) || !(*hi > *lo)) {
        throw ArgumentError("scan range needs both bounds with 0 < min < max");
      }
      const auto cavity = build_cavity(cav, ctx, *lo);
      ctx.param("omega_max", *hi);
      ctx.param("backend", backend);
      scan_policy.backend = backend_from(backend);
      scan_policy.settings = settings_from(ctx);
      write_table(scan_drive_frequency(cavity, *lo, *hi, scan_policy, ctx.constants()), ctx);
      return kExitOk;
    } else if (chosen == estimate) {
      cmd_estimate(v, est_freq, rho, time, fresnel, temperature, ctx);
    }
    with_output(ctx, [&](std::ostream& o) { print_quantities(ctx, o); });
  } catch (const ArgumentError& e) {
    return report(err, kExitArgument, "argument", e.what());
  } catch (const Error& e) {
    return report(err, kExitComputation, error_kind(e), e.what());
  }
  return kExitOk;
}

}  // namespace vibcav::cli
