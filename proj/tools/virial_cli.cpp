// Command-line driver. Talks to the library only through virial/virial.h.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "virial/virial.h"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kAudit = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  LibraryError(virial_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  virial_status status;
};

void check(virial_status s) {
  if (s != VIRIAL_OK) throw LibraryError(s, virial_last_error());
}

int exit_code_for(virial_status s) {
  switch (s) {
    case VIRIAL_INVALID_ARGUMENT:
    case VIRIAL_NOT_SYMMETRIC:
    case VIRIAL_NOT_CONVEX:
    case VIRIAL_DEGENERATE_POTENTIAL:
    case VIRIAL_ALREADY_SHIFTED:
    case VIRIAL_ORDER_OUT_OF_RANGE:
    case VIRIAL_PARSE_ERROR:
    case VIRIAL_IO_ERROR:
      return kConfig;
    default:
      return kNumerical;
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PotentialPtr = std::unique_ptr<virial_potential, Deleter<virial_potential, virial_potential_free>>;
using TablePtr = std::unique_ptr<virial_table, Deleter<virial_table, virial_table_free>>;
using AuditPtr = std::unique_ptr<virial_audit, Deleter<virial_audit, virial_audit_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, virial_string_free>>;

// Effective settings: flags first, then the config file on top.
using Settings = std::map<std::string, std::string>;

const std::string* lookup(const Settings& s, const std::string& key) {
  const auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (b != e && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (b == e || ec != std::errc() || ptr != e) throw ConfigError(key + ": '" + text + "' is not a number");
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(key + ": '" + text + "' is not an integer");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double real_or(const Settings& s, const std::string& key, double fallback) {
  const auto* v = lookup(s, key);
  return v ? to_real(key, *v) : fallback;
}

int int_or(const Settings& s, const std::string& key, int fallback) {
  const auto* v = lookup(s, key);
  return v ? to_int(key, *v) : fallback;
}

bool flag(const Settings& s, const std::string& key) {
  const auto* v = lookup(s, key);
  if (!v) return false;
  if (*v == "1" || *v == "true" || *v == "yes" || *v == "on") return true;
  if (*v == "0" || *v == "false" || *v == "no" || *v == "off") return false;
  throw ConfigError(key + ": '" + *v + "' is not a boolean");
}

std::vector<double> real_list(const Settings& s, const std::string& key,
                              std::vector<double> fallback) {
  const auto* v = lookup(s, key);
  if (!v) return fallback;
  std::vector<double> out;
  for (const auto& t : split_list(*v)) out.push_back(to_real(key, t));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<int> int_list(const Settings& s, const std::string& key, std::vector<int> fallback) {
  const auto* v = lookup(s, key);
  if (!v) return fallback;
  std::vector<int> out;
  for (const auto& t : split_list(*v)) out.push_back(to_int(key, t));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

void overlay_config_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  CLI::ConfigINI reader;
  reader.comment('#');
  for (const auto& item : reader.from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string key;
    for (const auto& p : item.parents) key += p + ".";
    key += item.name;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
    s[key] = value;
  }
}

virial_options options_from(const Settings& s) {
  virial_options o;
  virial_options_init(&o);
  o.solver_tol = real_or(s, "tol", o.solver_tol);
  o.numerov = flag(s, "numerov") ? 1 : 0;
  o.box_half_width = real_or(s, "box", o.box_half_width);
  o.workers = int_or(s, "workers", o.workers);
  o.max_refinements = int_or(s, "max-refinements", o.max_refinements);
  o.audit_energy_tol = real_or(s, "energy-threshold", o.audit_energy_tol);
  o.audit_coefficient_tol = real_or(s, "coefficient-threshold", o.audit_coefficient_tol);
  o.audit_amplitude_tol = real_or(s, "amplitude-threshold", o.audit_amplitude_tol);
  o.audit_eps_spread_tol = real_or(s, "eps-spread-threshold", o.audit_eps_spread_tol);
  if (const auto* b = lookup(s, "basis")) {
    if (*b == "three-term") o.basis_method = VIRIAL_BASIS_THREE_TERM;
    else if (*b == "gram-schmidt") o.basis_method = VIRIAL_BASIS_GRAM_SCHMIDT;
    else throw ConfigError("basis: expected three-term or gram-schmidt");
  }
  return o;
}

virial_format format_from(const Settings& s) {
  const auto* f = lookup(s, "format");
  if (!f || *f == "csv") return VIRIAL_FORMAT_CSV;
  if (*f == "json") return VIRIAL_FORMAT_JSON;
  throw ConfigError("format: expected csv or json, got '" + *f + "'");
}

PotentialPtr potential_from(const Settings& s) {
  std::string text;
  for (const char* key : {"kind", "kappa", "lambda", "omega", "coeffs", "xi"})
    if (const auto* v = lookup(s, key)) text += std::string(key) + "=" + *v + "\n";
  virial_potential* p = nullptr;
  check(virial_potential_parse(text.c_str(), &p));
  return PotentialPtr(p);
}

std::string serialize(const virial_table* t, virial_format f) {
  char* raw = nullptr;
  check(virial_table_serialize(t, f, &raw));
  return StringPtr(raw).get();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw LibraryError(VIRIAL_IO_ERROR, "cannot write '" + path + "'");
}

// out.csv + "_series" -> out_series.csv
std::string derived_path(const std::string& path, const std::string& suffix, virial_format f) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  const std::string ext = p.has_extension() ? p.extension().string()
                                            : (f == VIRIAL_FORMAT_JSON ? ".json" : ".csv");
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

struct Context {
  Settings settings;
  bool quiet = false;
  void note(const std::string& msg) const {
    if (!quiet) std::cerr << msg << "\n";
  }
  std::string out() const {
    const auto* o = lookup(settings, "out");
    return o ? *o : "-";
  }
};

void emit(const Context& ctx, const virial_table* t, const std::string& path) {
  write_output(path, serialize(t, format_from(ctx.settings)));
  if (path != "-") ctx.note("wrote " + path);
}

int cmd_spectrum(const Context& ctx) {
  const auto& s = ctx.settings;
  const auto pot = potential_from(s);
  const auto opts = options_from(s);
  virial_table* t = nullptr;
  check(virial_spectrum(pot.get(), int_or(s, "nmax", 5), &opts, &t));
  TablePtr table(t);
  emit(ctx, table.get(), ctx.out());
  return kOk;
}

int cmd_error_table(const Context& ctx) {
  const auto& s = ctx.settings;
  const auto kappas = int_list(s, "kappas", {2, 3, 4, 5});
  const auto opts = options_from(s);
  virial_table* m = nullptr;
  virial_table* series = nullptr;
  check(virial_error_table(kappas.data(), kappas.size(), int_or(s, "nmax", 10), &opts, &m, &series));
  TablePtr matrix(m), long_form(series);
  emit(ctx, matrix.get(), ctx.out());
  std::string series_path;
  if (const auto* p = lookup(s, "series-out")) series_path = *p;
  else if (ctx.out() != "-") series_path = derived_path(ctx.out(), "_series", format_from(s));
  if (!series_path.empty()) emit(ctx, long_form.get(), series_path);
  return kOk;
}

int cmd_scaling_check(const Context& ctx) {
  const auto& s = ctx.settings;
  const auto lambdas = real_list(s, "lambdas", {0.1, 0.5, 1.0, 1.5});
  const auto opts = options_from(s);
  virial_audit* a = nullptr;
  check(virial_scaling_audit(int_or(s, "kappa", 2), lambdas.data(), lambdas.size(),
                             int_or(s, "nmax", 5), &opts, &a));
  AuditPtr audit(a);
  virial_table* t = nullptr;
  check(virial_audit_table(audit.get(), &t));
  TablePtr table(t);
  emit(ctx, table.get(), ctx.out());
  if (!virial_audit_passed(audit.get())) {
    std::cerr << "scaling audit failed: a residual exceeds its threshold\n";
    return kAudit;
  }
  ctx.note("scaling audit passed");
  return kOk;
}

int cmd_export_wavefunctions(const Context& ctx) {
  const auto& s = ctx.settings;
  const auto opts = options_from(s);
  const int n_max = int_or(s, "nmax", 4);
  const auto pot = potential_from(s);
  virial_table* t = nullptr;
  check(virial_wavefunctions(pot.get(), n_max, int_or(s, "points", 201), &opts, &t));
  TablePtr table(t);
  emit(ctx, table.get(), ctx.out());

  if (!flag(s, "sweep")) return kOk;
  std::vector<double> lambdas;
  if (lookup(s, "sweep-lambdas")) {
    lambdas = real_list(s, "sweep-lambdas", {});
  } else {
    const int count = int_or(s, "sweep-points", 25);
    if (count < 1) throw ConfigError("sweep-points must be >= 1");
    lambdas.resize(static_cast<std::size_t>(count));
    check(virial_log_grid(real_or(s, "sweep-min", 1e-3), real_or(s, "sweep-max", 1e3), count,
                          lambdas.data()));
  }
  virial_table* sw = nullptr;
  check(virial_anharmonic_sweep(real_or(s, "omega", 1.0), lambdas.data(), lambdas.size(), n_max,
                                &opts, &sw));
  TablePtr sweep(sw);
  std::string path;
  if (const auto* p = lookup(s, "sweep-out")) path = *p;
  else if (ctx.out() != "-") path = derived_path(ctx.out(), "_sweep", format_from(s));
  else path = "-";
  emit(ctx, sweep.get(), path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virial-theorem ansatz spectra for symmetric convex 1-D potentials"};
  app.require_subcommand(1);
  app.fallthrough();

  // Every value option lands in `flags` as text; parsing happens after the
  // config file has been merged on top.
  Settings flags;
  auto add = [&flags](CLI::App* cmd, const std::string& name, const std::string& help) {
    return cmd->add_option_function<std::string>(
        "--" + name, [&flags, name](const std::string& v) { flags[name] = v; }, help);
  };
  auto add_flag = [&flags](CLI::App* cmd, const std::string& name, const std::string& help) {
    return cmd->add_flag_callback("--" + name, [&flags, name] { flags[name] = "true"; }, help);
  };

  std::string config_path;
  bool quiet = false;
  app.add_option("--config", config_path, "key=value file; its values override flags");
  app.add_flag("--quiet", quiet, "suppress progress notes on stderr");
  add(&app, "out", "output path ('-' for stdout)");
  add(&app, "format", "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add(&app, "tol", "reference solver tolerance");
  add(&app, "workers", "worker threads for independent levels / sweep points");
  add(&app, "basis", "three-term or gram-schmidt");
  add(&app, "box", "reference box half-width (0 = automatic)");
  add(&app, "max-refinements", "grid halvings allowed before giving up (default 10)");
  add_flag(&app, "numerov", "use the Numerov discretisation in the reference solver");
  app.add_flag("--seedless", "accepted for reproducibility scripts; nothing is random");

  auto potential_flags = [&](CLI::App* cmd) {
    add(cmd, "kappa", "monomial exponent: lambda x^(2 kappa)");
    add(cmd, "lambda", "coupling constant");
    add(cmd, "omega", "harmonic frequency of the quartic anharmonic oscillator");
    add(cmd, "coeffs", "even polynomial coefficients c2,c4,...");
    add(cmd, "xi", "centre of symmetry");
    add(cmd, "kind", "monomial|harmonic|quartic-anharmonic|even-polynomial|polynomial");
    cmd->add_flag_callback("--quartic-anharmonic", [&flags] { flags["kind"] = "quartic-anharmonic"; },
                           "omega^2 x^2 / 2 + lambda x^4");
    cmd->add_flag_callback("--polynomial", [&flags] { flags["kind"] = "polynomial"; },
                           "treat --coeffs as the full list c1,c2,...");
  };

  auto* spectrum = app.add_subcommand("spectrum", "ansatz and reference energies, eps, gamma");
  potential_flags(spectrum);
  add(spectrum, "nmax", "highest level (default 5)");

  auto* errors = app.add_subcommand("error-table", "percentage error matrix for lambda x^(2 kappa)");
  add(errors, "kappas", "comma-separated kappa list (default 2,3,4,5)");
  add(errors, "nmax", "highest level (default 10)");
  add(errors, "series-out", "path of the long-format (kappa, n, eps) series");

  auto* scaling = app.add_subcommand("scaling-check", "audit the coupling-constant scaling laws");
  add(scaling, "kappa", "monomial exponent (default 2)");
  add(scaling, "lambdas", "comma-separated couplings (default 0.1,0.5,1.0,1.5)");
  add(scaling, "nmax", "highest level (default 5)");
  add(scaling, "energy-threshold", "relative energy-covariance threshold (default 1e-9)");
  add(scaling, "coefficient-threshold", "relative coefficient-law threshold (default 1e-8)");
  add(scaling, "amplitude-threshold", "absolute amplitude-law threshold (default 1e-9)");
  add(scaling, "eps-spread-threshold", "eps spread threshold in points (default 1e-6)");

  auto* waves = app.add_subcommand("export-wavefunctions", "reference and ansatz wavefunctions");
  potential_flags(waves);
  add(waves, "nmax", "highest level (default 4)");
  add(waves, "points", "maximum number of grid rows (default 201)");
  add_flag(waves, "sweep", "also write the quartic anharmonic lambda sweep");
  add(waves, "sweep-min", "smallest lambda (default 1e-3)");
  add(waves, "sweep-max", "largest lambda (default 1e3)");
  add(waves, "sweep-points", "number of log-spaced lambdas (default 25)");
  add(waves, "sweep-lambdas", "explicit comma-separated lambda list");
  add(waves, "sweep-out", "sweep output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  Context ctx;
  ctx.quiet = quiet;
  try {
    ctx.settings = flags;
    if (!config_path.empty()) overlay_config_file(ctx.settings, config_path);
    if (spectrum->parsed()) return cmd_spectrum(ctx);
    if (errors->parsed()) return cmd_error_table(ctx);
    if (scaling->parsed()) return cmd_scaling_check(ctx);
    return cmd_export_wavefunctions(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
