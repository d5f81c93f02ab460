#include "sskcrit/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sskcrit/continuum.hpp"
#include "sskcrit/duality.hpp"
#include "sskcrit/errors.hpp"
#include "sskcrit/experiments.hpp"
#include "sskcrit/version.hpp"

namespace sskcrit::cli {
namespace {

using nlohmann::json;

constexpr const char* kWorkersEnv = "SSKCRIT_WORKERS";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_switch(const std::string& text) {
  const std::string t = lower(text);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw ParameterError("--noise expects on or off, got '" + text + "'");
}

std::size_t default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ParameterError(std::string(kWorkersEnv) + " must be a positive integer");
  }
  return 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write '" + path + "'");
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Options shared by every command.
struct Common {
  std::string manifest;
  std::string config;
  std::size_t workers = 1;
  std::string out;
};

// Values bound to CLI11 options.
struct Flags {
  double beta = 1.0;
  std::size_t n = 0;
  Seed seed = 0;
  double h = 0.0;
  std::optional<double> mu;
  std::size_t k = 0;
  std::string w = "inf";
  std::string source = "discrete";
  double grid_len = 24.0;
  double grid_step = 0.005;
  std::string noise = "on";
  std::size_t reps = 1;
  std::string mode = "external-field";
  std::string file_a;
  std::string file_b;
};

AiryGrid grid_from(const Flags& f) {
  AiryGrid g;
  g.beta = f.beta;
  g.w = parse_spike(f.w);
  g.length = f.grid_len;
  g.step = f.grid_step;
  g.noise = parse_switch(f.noise);
  g.seed = f.seed;
  return g;
}

json points_json(const std::vector<LowCritical>& pts) {
  json arr = json::array();
  for (const auto& p : pts) {
    arr.push_back({{"lambda", p.lambda}, {"value", p.value}, {"j2_sign", p.j2_sign}});
  }
  return arr;
}

// Records a command's parameters: every option given or defaulted, except
// those that never change results.
json collect_parameters(const CLI::App& sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "workers" || name == "manifest" ||
        name == "config") {
      continue;
    }
    if (opt->count() > 0) {
      params[name] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

void emit_distribution(const EmpiricalDistribution& d, const Common& c, std::ostream& out,
                       std::vector<std::string>& outputs) {
  if (c.out.empty()) {
    out << to_csv(d);
    return;
  }
  write_file(c.out, to_csv(d));
  const std::string meta_path = c.out + ".meta.json";
  write_file(meta_path, meta_json(d.meta));
  outputs.push_back(c.out);
  outputs.push_back(meta_path);
}

// Appends `--key value` for config entries whose flag is not on the command line.
std::vector<std::string> inject_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : parse_config(read_file(path))) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  return merged;
}

}  // namespace

std::string ensemble_csv(const SymTridiag& t) {
  std::string s = "diag,offdiag\n";
  char buf[96];
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (i + 1 < t.n()) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t.diag()[i], t.offdiag()[i]);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,\n", t.diag()[i]);
    }
    s += buf;
  }
  return s;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty()) throw ParameterError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(t.substr(eq + 1));
  }
  return kv;
}

Spike parse_spike(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "inf" || t == "+inf" || t == "infinity") return Spike::infinity(0.0);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size() || !std::isfinite(v)) {
    throw ParameterError("--w expects a number or inf, got '" + text + "'");
  }
  return Spike::finite(v);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical-point and edge-fluctuation laboratory for the spherical SK model"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(kVersion));

  Common common;
  Flags f;
  try {
    common.workers = default_workers();
  } catch (const ParameterError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--manifest", common.manifest, "Manifest path");
    sub->add_option("--config", common.config, "key = value file; command-line flags win");
    sub->add_option("--workers", common.workers, "Worker threads (default from SSKCRIT_WORKERS)")
        ->check(CLI::PositiveNumber);
  };
  const auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--beta", f.beta, "Inverse temperature")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--w", f.w, "Boundary parameter (number or inf)")->capture_default_str();
    sub->add_option("--grid-len", f.grid_len, "Domain length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--grid-step", f.grid_step, "Grid step")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--noise", f.noise, "on or off")->capture_default_str();
    sub->add_option("--seed", f.seed, "Seed")->capture_default_str();
  };

  auto* sample = app.add_subcommand("sample-ensemble", "Sample a beta-Hermite tridiagonal matrix");
  sample->add_option("--beta", f.beta)->check(CLI::PositiveNumber)->capture_default_str();
  sample->add_option("--n", f.n)->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", f.seed)->capture_default_str();
  sample->add_option("--out", common.out, "CSV path")->required();
  add_common(sample);

  auto* ground = app.add_subcommand("ground-state", "Ground-state energy of one sampled instance");
  ground->add_option("--beta", f.beta)->check(CLI::PositiveNumber)->capture_default_str();
  ground->add_option("--n", f.n)->required()->check(CLI::PositiveNumber);
  ground->add_option("--h", f.h, "Field strength h_N")->capture_default_str();
  ground->add_option("--seed", f.seed)->capture_default_str();
  ground->add_option("--mu", f.mu, "Curie-Weiss coupling");
  add_common(ground);

  auto* crit = app.add_subcommand("critical-values", "Low-lying critical values");
  crit->add_option("--source", f.source, "discrete or continuum")
      ->check(CLI::IsMember({"discrete", "continuum"}))
      ->capture_default_str();
  crit->add_option("--n", f.n, "Dimension (discrete source)");
  crit->add_option("--k", f.k)->capture_default_str();
  crit->add_option("--h", f.h)->capture_default_str();
  add_grid(crit);
  add_common(crit);

  auto* tw = app.add_subcommand("tw-sample", "Continuum samples of the sup of the dual");
  tw->add_option("--h", f.h)->capture_default_str();
  tw->add_option("--reps", f.reps)->check(CLI::PositiveNumber)->capture_default_str();
  tw->add_option("--out", common.out, "CSV path (stdout if absent)");
  add_grid(tw);
  add_common(tw);

  auto* fluct = app.add_subcommand("fluctuations", "Discrete fluctuation statistics");
  fluct->add_option("--beta", f.beta)->check(CLI::PositiveNumber)->capture_default_str();
  fluct->add_option("--n", f.n)->required()->check(CLI::Range(std::size_t{4}, std::size_t{1} << 40));
  fluct->add_option("--reps", f.reps)->check(CLI::PositiveNumber)->capture_default_str();
  fluct->add_option("--seed", f.seed)->capture_default_str();
  fluct->add_option("--mode", f.mode)
      ->check(CLI::IsMember({"external-field", "curie-weiss", "fixed-field"}))
      ->capture_default_str();
  fluct->add_option("--h", f.h)->capture_default_str();
  fluct->add_option("--w", f.w, "Curie-Weiss w (curie-weiss mode)")->capture_default_str();
  fluct->add_option("--out", common.out, "CSV path (stdout if absent)");
  add_common(fluct);

  auto* cmp = app.add_subcommand("compare", "KS distance between two sample CSVs");
  cmp->add_option("--file-a", f.file_a)->required();
  cmp->add_option("--file-b", f.file_b)->required();
  add_common(cmp);

  std::vector<std::string> reversed;
  try {
    if (raw_args.empty()) throw ParameterError("missing program name");
    const auto args = inject_config(raw_args);
    reversed.assign(args.rbegin(), args.rend() - 1);
  } catch (const ParameterError& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::vector<std::string> outputs;

  try {
    if (sub == sample) {
      write_file(common.out, ensemble_csv(sample_beta_hermite(f.n, f.beta, f.seed)));
      outputs.push_back(common.out);
    } else if (sub == ground) {
      const SymTridiag a = sample_beta_hermite(f.n, f.beta, f.seed);
      const double n = static_cast<double>(f.n);
      const double root_n = std::sqrt(n);
      std::vector<double> diag = a.diag();
      std::vector<double> off = a.offdiag();
      for (double& d : diag) d /= root_n;
      for (double& b : off) b /= root_n;
      if (f.mu) diag[0] += *f.mu;
      std::vector<double> v(f.n, 0.0);
      v[0] = f.h * root_n;
      const GroundState gs =
          ground_state(DualProblem::general(SymTridiag(std::move(diag), std::move(off)), std::move(v), n));
      const double energy = gs.energy / n;
      json j;
      j["energy"] = energy;
      j["lambda_star"] = gs.lambda_star;
      j["statistic_up"] = fluctuation_statistic(energy, f.n, f.h, Mode::ExternalField);
      j["statistic_cw"] = fluctuation_statistic(energy, f.n, f.h, Mode::CurieWeiss);
      j["seed"] = f.seed;
      out << j.dump() << "\n";
    } else if (sub == crit) {
      std::vector<LowCritical> pts;
      if (f.source == "continuum") {
        pts = point_process(grid_from(f), f.h, f.k);
      } else {
        if (f.n < 2) throw ParameterError("--n is required for the discrete source");
        const SymTridiag a = sample_beta_hermite(f.n, f.beta, f.seed);
        const Spike w = parse_spike(f.w);
        if (w.infinite) {
          const SpikedOperator op = edge_rescale(a);
          const double shift = 0.5 * f.h * f.h * op.m;
          pts = low_crit_set(op, f.h * op.m, f.k);
          if (f.h != 0.0) {
            for (auto& p : pts) p.value += shift;
          }
        } else {
          const double mu = 1.0 - w.value * std::cbrt(1.0 / static_cast<double>(f.n));
          pts = low_crit_set(edge_rescale(a, mu), f.h, f.k);
        }
      }
      out << points_json(pts).dump() << "\n";
    } else if (sub == tw) {
      ExperimentConfig cfg;
      cfg.grid = grid_from(f);
      cfg.replicates = f.reps;
      cfg.master_seed = f.seed;
      cfg.h_amplitude = f.h;
      cfg.workers = common.workers;
      emit_distribution(run_continuum(cfg), common, out, outputs);
    } else if (sub == fluct) {
      ExperimentConfig cfg;
      cfg.beta = f.beta;
      cfg.n = f.n;
      cfg.replicates = f.reps;
      cfg.master_seed = f.seed;
      cfg.mode = parse_mode(f.mode);
      cfg.h_amplitude = f.h;
      if (cfg.mode == Mode::CurieWeiss) {
        const Spike w = parse_spike(f.w);
        if (w.infinite) throw ParameterError("--w must be finite in curie-weiss mode");
        cfg.w_target = w.value;
      }
      cfg.workers = common.workers;
      emit_distribution(run_discrete(cfg), common, out, outputs);
    } else if (sub == cmp) {
      const auto a = parse_csv_values(read_file(f.file_a));
      const auto b = parse_csv_values(read_file(f.file_b));
      json j;
      j["ks"] = ks_distance(a, b);
      out << j.dump() << "\n";
    }
  } catch (const ParameterError& e) {
    err << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateCritical& e) {
    out << json{{"error", "degenerate"}, {"message", e.what()}}.dump() << "\n";
    return kDegenerate;
  } catch (const DegenerateSpectrum& e) {
    out << json{{"error", "degenerate"}, {"message", e.what()}}.dump() << "\n";
    return kDegenerate;
  } catch (const Error& e) {
    out << json{{"error", "numeric"}, {"message", e.what()}}.dump() << "\n";
    return kNumeric;
  }

  json manifest;
  manifest["command"] = command;
  manifest["parameters"] = collect_parameters(*sub);
  manifest["master_seed"] = f.seed;
  manifest["artifact_version"] = std::string(kVersion);
  manifest["outputs"] = outputs;
  std::string manifest_path = common.manifest;
  if (manifest_path.empty()) {
    manifest_path = common.out.empty() ? command + ".manifest.json" : common.out + ".manifest.json";
  }
  try {
    write_file(manifest_path, manifest.dump(2) + "\n");
  } catch (const ParameterError& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace sskcrit::cli
