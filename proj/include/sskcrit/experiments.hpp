#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sskcrit/continuum.hpp"
#include "sskcrit/ensembles.hpp"
#include "sskcrit/rng.hpp"

namespace sskcrit {

/// external-field: h_N = h·n^{-1/6}, no spike.
/// curie-weiss: h_N = h·n^{-1/2}, μ = 1 - w·n^{-1/3}.
/// fixed-field: h_N = h held fixed; the statistic is the energy E itself.
enum class Mode { ExternalField, CurieWeiss, FixedField };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

struct ExperimentConfig {
  double beta = 1.0;
  std::size_t n = 1000;
  std::size_t replicates = 100;
  Seed master_seed = 0;
  Mode mode = Mode::ExternalField;
  double h_amplitude = 0.0;
  double w_target = 0.0;
  AiryGrid grid;
  std::size_t workers = 1;

  void validate() const;
};

struct RunMeta {
  double beta = 0.0;
  std::size_t n = 0;
  std::string mode;
  double h_amplitude = 0.0;
  Spike w_target;
  Seed master_seed = 0;
  std::size_t replicates = 0;
  std::size_t failed_reseeds = 0;
  std::string generator_id{kGeneratorId};
  std::string version;
};

struct EmpiricalDistribution {
  std::vector<double> samples;     // ascending
  std::vector<double> by_replicate;  // same values, replicate order
  RunMeta meta;

  /// Fraction of samples <= x.
  double cdf(double x) const;
  double mean() const;
};

EmpiricalDistribution make_distribution(std::vector<double> by_replicate, RunMeta meta = {});

/// external-field: n^{2/3}(1 + h_n²/2 - E); curie-weiss: n^{2/3}(2 - E).
double fluctuation_statistic(double energy, std::size_t n, double h_n, Mode mode);

/// One replicate of run_discrete for the given replicate seed.
double discrete_replicate(const ExperimentConfig& cfg, Seed seed);

/// One replicate of run_continuum for the given replicate seed.
double continuum_replicate(const ExperimentConfig& cfg, Seed seed);

EmpiricalDistribution run_discrete(const ExperimentConfig& cfg);
EmpiricalDistribution run_continuum(const ExperimentConfig& cfg);

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// CSV with header `replicate,value` in replicate order, 17 significant digits.
std::string to_csv(const EmpiricalDistribution& d);
std::vector<double> parse_csv_values(const std::string& text);
std::string meta_json(const RunMeta& meta);

}  // namespace sskcrit
