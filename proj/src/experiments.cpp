#include "sskcrit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "sskcrit/duality.hpp"
#include "sskcrit/errors.hpp"
#include "sskcrit/spectral.hpp"
#include "sskcrit/version.hpp"

namespace sskcrit {
namespace {

struct ReplicateOutcome {
  double value = 0.0;
  bool reseeded = false;
};

template <typename Fn>
ReplicateOutcome run_with_reseed(Seed master, std::size_t r, const Fn& fn) {
  try {
    return {fn(replicate_seed(master, r, 0)), false};
  } catch (const DegenerateCritical&) {
  } catch (const DegenerateSpectrum&) {
  }
  // A second degeneracy on a fresh stream propagates and aborts the run.
  return {fn(replicate_seed(master, r, 1)), true};
}

// Runs fn over replicates on `workers` threads. Results land in replicate
// order, and the first failing replicate (by index) decides the exception,
// so output never depends on scheduling.
template <typename Fn>
std::vector<ReplicateOutcome> farm(std::size_t replicates, std::size_t workers, Seed master,
                                   const Fn& fn) {
  std::vector<ReplicateOutcome> out(replicates);
  std::vector<std::exception_ptr> errors(replicates);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < replicates; r = next++) {
      try {
        out[r] = run_with_reseed(master, r, fn);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(workers, replicates));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

EmpiricalDistribution collect(const std::vector<ReplicateOutcome>& outcomes, RunMeta meta) {
  std::vector<double> values;
  values.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    values.push_back(o.value);
    if (o.reseeded) ++meta.failed_reseeds;
  }
  return make_distribution(std::move(values), std::move(meta));
}

RunMeta base_meta(const ExperimentConfig& cfg) {
  RunMeta meta;
  meta.beta = cfg.beta;
  meta.n = cfg.n;
  meta.mode = std::string(to_string(cfg.mode));
  meta.h_amplitude = cfg.h_amplitude;
  meta.w_target = cfg.mode == Mode::CurieWeiss ? Spike::finite(cfg.w_target) : Spike::infinity(0.0);
  meta.master_seed = cfg.master_seed;
  meta.replicates = cfg.replicates;
  meta.version = std::string(kVersion);
  return meta;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::ExternalField: return "external-field";
    case Mode::CurieWeiss: return "curie-weiss";
    case Mode::FixedField: return "fixed-field";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "external-field") return Mode::ExternalField;
  if (name == "curie-weiss") return Mode::CurieWeiss;
  if (name == "fixed-field") return Mode::FixedField;
  throw ParameterError("unknown mode '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (!(beta > 0.0)) throw ParameterError("beta must be positive");
  if (n < 4) throw ParameterError("n must be at least 4");
  if (replicates < 1) throw ParameterError("replicates must be at least 1");
  if (!std::isfinite(h_amplitude) || !std::isfinite(w_target)) {
    throw ParameterError("h and w must be finite");
  }
}

double EmpiricalDistribution::cdf(double x) const {
  if (samples.empty()) return 0.0;
  const auto it = std::upper_bound(samples.begin(), samples.end(), x);
  return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

double EmpiricalDistribution::mean() const {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double x : by_replicate) acc += x;
  return acc / static_cast<double>(samples.size());
}

EmpiricalDistribution make_distribution(std::vector<double> by_replicate, RunMeta meta) {
  EmpiricalDistribution d;
  d.samples = by_replicate;
  std::sort(d.samples.begin(), d.samples.end());
  d.by_replicate = std::move(by_replicate);
  d.meta = std::move(meta);
  return d;
}

double fluctuation_statistic(double energy, std::size_t n, double h_n, Mode mode) {
  const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
  switch (mode) {
    case Mode::ExternalField: return scale * (1.0 + 0.5 * h_n * h_n - energy);
    case Mode::CurieWeiss: return scale * (2.0 - energy);
    case Mode::FixedField: break;
  }
  throw ParameterError("fixed-field mode has no fluctuation statistic");
}

double discrete_replicate(const ExperimentConfig& cfg, Seed seed) {
  const SymTridiag a = sample_beta_hermite(cfg.n, cfg.beta, seed);
  const double n = static_cast<double>(cfg.n);
  switch (cfg.mode) {
    case Mode::ExternalField: {
      // Field h_N√N = h·m² on coordinate 1 is h·m in the weighted convention;
      // adding ½h²m turns (R wme1, wme1) into (R wme1, wme1) - w with w = m.
      const SpikedOperator op = edge_rescale(a);
      const double field = cfg.h_amplitude * op.m;
      const double shift = 0.5 * cfg.h_amplitude * cfg.h_amplitude * op.m;
      return minimum_state(DualProblem::weighted(op, field)).energy + shift;
    }
    case Mode::CurieWeiss: {
      const double mu = 1.0 - cfg.w_target * std::cbrt(1.0 / n);
      const SpikedOperator op = edge_rescale(a, mu);
      return minimum_state(DualProblem::weighted(op, cfg.h_amplitude)).energy;
    }
    case Mode::FixedField: {
      const double root_n = std::sqrt(n);
      std::vector<double> diag = a.diag();
      std::vector<double> off = a.offdiag();
      for (double& d : diag) d /= root_n;
      for (double& b : off) b /= root_n;
      std::vector<double> v(cfg.n, 0.0);
      v[0] = cfg.h_amplitude * root_n;
      const auto p = DualProblem::general(SymTridiag(std::move(diag), std::move(off)), std::move(v), n);
      return ground_state(p).energy / n;
    }
  }
  throw ParameterError("unknown mode");
}

double continuum_replicate(const ExperimentConfig& cfg, Seed seed) {
  AiryGrid g = cfg.grid;
  g.seed = seed;
  return tw_sample(g, cfg.h_amplitude);
}

EmpiricalDistribution run_discrete(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto outcomes = farm(cfg.replicates, cfg.workers, cfg.master_seed,
                             [&cfg](Seed s) { return discrete_replicate(cfg, s); });
  return collect(outcomes, base_meta(cfg));
}

EmpiricalDistribution run_continuum(const ExperimentConfig& cfg) {
  if (cfg.replicates < 1) throw ParameterError("replicates must be at least 1");
  cfg.grid.validate();
  const auto outcomes = farm(cfg.replicates, cfg.workers, cfg.master_seed,
                             [&cfg](Seed s) { return continuum_replicate(cfg, s); });
  RunMeta meta;
  meta.beta = cfg.grid.beta;
  meta.n = cfg.grid.size();
  meta.mode = "continuum";
  meta.h_amplitude = cfg.h_amplitude;
  meta.w_target = cfg.grid.w;
  meta.master_seed = cfg.master_seed;
  meta.replicates = cfg.replicates;
  meta.version = std::string(kVersion);
  return collect(outcomes, std::move(meta));
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw ParameterError("KS distance needs two nonempty samples");
  std::vector<double> x = a;
  std::vector<double> y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  return ks_distance(a.samples, b.samples);
}

std::string to_csv(const EmpiricalDistribution& d) {
  std::string out = "replicate,value\n";
  char buf[64];
  for (std::size_t r = 0; r < d.by_replicate.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", r, d.by_replicate[r]);
    out += buf;
  }
  return out;
}

std::vector<double> parse_csv_values(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "replicate,value") throw ParameterError("CSV header must be 'replicate,value'");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParameterError("malformed CSV row: " + line);
    try {
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ParameterError("malformed CSV value: " + line);
    }
  }
  return values;
}

std::string meta_json(const RunMeta& meta) {
  nlohmann::json j;
  j["beta"] = meta.beta;
  j["n"] = meta.n;
  j["mode"] = meta.mode;
  j["h_amplitude"] = meta.h_amplitude;
  if (meta.w_target.infinite) {
    j["w_target"] = "inf";
  } else {
    j["w_target"] = meta.w_target.value;
  }
  j["master_seed"] = meta.master_seed;
  j["replicates"] = meta.replicates;
  j["failed_reseeds"] = meta.failed_reseeds;
  j["generator_id"] = meta.generator_id;
  j["version"] = meta.version;
  return j.dump(2) + "\n";
}

}  // namespace sskcrit
