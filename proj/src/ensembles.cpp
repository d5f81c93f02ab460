#include "sskcrit/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "sskcrit/errors.hpp"

namespace sskcrit {

SymTridiag::SymTridiag(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw ParameterError("SymTridiag: dimension must be positive");
  if (offdiag_.size() + 1 != diag_.size()) {
    throw ParameterError("SymTridiag: offdiag length " + std::to_string(offdiag_.size()) +
                         " does not match n-1 = " + std::to_string(diag_.size() - 1));
  }
}

double SymTridiag::gershgorin_lower() const {
  double lo = diag_[0];
  for (std::size_t i = 0; i < n(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag_[i - 1]);
    if (i + 1 < n()) r += std::abs(offdiag_[i]);
    lo = std::min(lo, diag_[i] - r);
  }
  return lo;
}

double SymTridiag::gershgorin_upper() const {
  double hi = diag_[0];
  for (std::size_t i = 0; i < n(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag_[i - 1]);
    if (i + 1 < n()) r += std::abs(offdiag_[i]);
    hi = std::max(hi, diag_[i] + r);
  }
  return hi;
}

std::vector<double> SymTridiag::apply(const std::vector<double>& x) const {
  if (x.size() != n()) throw ParameterError("SymTridiag::apply: vector length mismatch");
  std::vector<double> y(n());
  for (std::size_t i = 0; i < n(); ++i) {
    double s = diag_[i] * x[i];
    if (i > 0) s += offdiag_[i - 1] * x[i - 1];
    if (i + 1 < n()) s += offdiag_[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

SymTridiag SymTridiag::negated() const {
  SymTridiag out = *this;
  for (auto& d : out.diag_) d = -d;
  for (auto& b : out.offdiag_) b = -b;
  return out;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::BetaEdge:
      return "beta-edge";
    case Provenance::AiryGrid:
      return "airy-grid";
    case Provenance::Custom:
      return "custom";
  }
  return "custom";
}

double sample_chi(Engine& engine, double k) {
  boost::random::gamma_distribution<double> gamma(0.5 * k, 1.0);
  return std::sqrt(2.0 * gamma(engine));
}

SymTridiag sample_beta_hermite(std::size_t n, double beta, Seed seed) {
  if (n < 1) throw ParameterError("sample_beta_hermite: n must be >= 1");
  if (!(beta > 0.0)) throw ParameterError("sample_beta_hermite: beta must be > 0");

  // Diagonal and chi entries draw from separate streams so that the diagonal
  // does not depend on how many variates the gamma sampler consumed.
  Engine diag_engine = make_engine(seed, "beta-hermite/diag");
  Engine chi_engine = make_engine(seed, "beta-hermite/chi");
  boost::random::normal_distribution<double> normal(0.0, 1.0);

  const double diag_scale = std::sqrt(2.0 / beta);
  const double off_scale = 1.0 / std::sqrt(beta);
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i < n; ++i) diag[i] = diag_scale * normal(diag_engine);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dof = beta * static_cast<double>(n - 1 - i);
    double x = off_scale * sample_chi(chi_engine, dof);
    // A zero draw has probability zero; keep the positivity invariant anyway.
    while (!(x > 0.0)) x = off_scale * sample_chi(chi_engine, dof);
    off[i] = x;
  }
  return SymTridiag(std::move(diag), std::move(off));
}

SpikedOperator edge_rescale(const SymTridiag& a, std::optional<double> mu) {
  const double n = static_cast<double>(a.n());
  const double n23 = std::cbrt(n * n);
  const double n16 = std::pow(n, 1.0 / 6.0);
  const double m = std::cbrt(n);

  std::vector<double> diag(a.n());
  std::vector<double> off(a.offdiag().size());
  for (std::size_t i = 0; i < a.n(); ++i) diag[i] = 2.0 * n23 - n16 * a.diag()[i];
  for (std::size_t i = 0; i < off.size(); ++i) off[i] = -n16 * a.offdiag()[i];

  SpikedOperator op;
  op.m = m;
  op.provenance = Provenance::BetaEdge;
  if (mu) {
    diag[0] -= n23 * *mu;
    op.w = Spike::finite(m * (1.0 - *mu));
  } else {
    op.w = Spike::infinity(m);
  }
  op.base = SymTridiag(std::move(diag), std::move(off));
  return op;
}

SpikedOperator build_spiked(const PotentialPaths& paths, double w_spike, double m) {
  if (!(m > 0.0)) throw ParameterError("build_spiked: m must be > 0");
  if (paths.y1.size() < 2 || paths.y1.size() != paths.y2.size()) {
    throw ParameterError("build_spiked: paths must have equal length n+1 >= 2");
  }
  if (paths.y1[0] != 0.0 || paths.y2[0] != 0.0) {
    throw ParameterError("build_spiked: paths must start at 0");
  }
  const std::size_t n = paths.y1.size() - 1;
  const double m2 = m * m;

  std::vector<double> diag(n, 2.0 * m2);
  std::vector<double> off(n - 1, -m2);
  diag[0] = m2 + w_spike * m;
  for (std::size_t j = 1; j <= n; ++j) diag[j - 1] += m * (paths.y1[j] - paths.y1[j - 1]);
  for (std::size_t j = 1; j < n; ++j) off[j - 1] += 0.5 * m * (paths.y2[j] - paths.y2[j - 1]);

  SpikedOperator op;
  op.base = SymTridiag(std::move(diag), std::move(off));
  op.m = m;
  op.w = Spike::finite(w_spike);
  op.provenance = Provenance::Custom;
  return op;
}

PotentialPaths beta_edge_paths(const SymTridiag& a) {
  const std::size_t n = a.n();
  const double nd = static_cast<double>(n);
  const double n_m16 = std::pow(nd, -1.0 / 6.0);
  const double sqrt_n = std::sqrt(nd);

  PotentialPaths p;
  p.y1.assign(n + 1, 0.0);
  p.y2.assign(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    // √(2/β)·g_k is the stored diagonal entry.
    p.y1[k] = p.y1[k - 1] - n_m16 * a.diag()[k - 1];
    // χ_{β(n-k)}/√β is the stored off-diagonal; χ_0 = 0 closes the path.
    const double chi_scaled = k < n ? a.offdiag()[k - 1] : 0.0;
    p.y2[k] = p.y2[k - 1] + n_m16 * 2.0 * (sqrt_n - chi_scaled);
  }
  return p;
}

}  // namespace sskcrit
