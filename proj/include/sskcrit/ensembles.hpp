#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sskcrit/rng.hpp"

namespace sskcrit {

/// Symmetric tridiagonal matrix. Row/column 0 is the top-left corner, the
/// coordinate on which spikes and the external field act. offdiag[i] couples
/// rows i and i+1.
class SymTridiag {
 public:
  SymTridiag() = default;
  SymTridiag(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t n() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& offdiag() const { return offdiag_; }
  std::vector<double>& diag() { return diag_; }
  std::vector<double>& offdiag() { return offdiag_; }

  /// Gershgorin enclosure of the spectrum.
  double gershgorin_lower() const;
  double gershgorin_upper() const;
  double gershgorin_spread() const { return gershgorin_upper() - gershgorin_lower(); }

  /// y = T x
  std::vector<double> apply(const std::vector<double>& x) const;

  SymTridiag negated() const;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/// Spike / boundary parameter w in R ∪ {∞}. The infinite case still carries
/// the numeric spike actually assembled into entry (1,1) (w_N = m_N).
struct Spike {
  double value = 0.0;
  bool infinite = false;

  static Spike finite(double w) { return {w, false}; }
  static Spike infinity(double numeric) { return {numeric, true}; }
};

enum class Provenance { BetaEdge, AiryGrid, Custom };

std::string_view to_string(Provenance p);

/// Tridiagonal operator acting on R^n with the weighted inner product
/// (u,v) = m^{-1} Σ u_i v_i. The unit sphere is {σ : Σ σ_i² = m}.
struct SpikedOperator {
  SymTridiag base;
  double m = 1.0;
  Spike w;
  Provenance provenance = Provenance::Custom;

  std::size_t n() const { return base.n(); }
};

/// Discrete potential paths y1, y2 sampled at j = 0..n, both starting at 0.
struct PotentialPaths {
  std::vector<double> y1;
  std::vector<double> y2;
};

/// β-Hermite tridiagonal matrix: diag √(2/β)·g_i, offdiag χ_{β(n-i)}/√β
/// (top-left coupling carries β(n-1)).
SymTridiag sample_beta_hermite(std::size_t n, double beta, Seed seed);

/// Chi variate with (possibly fractional) degrees of freedom k > 0.
double sample_chi(Engine& engine, double k);

/// B = n^{2/3}(2 - a/√n) - n^{2/3}·mu·E11, returned with m = n^{1/3} and
/// w = ∞ (numeric m) when mu is absent, else w = n^{1/3}(1 - mu).
SpikedOperator edge_rescale(const SymTridiag& a, std::optional<double> mu = std::nullopt);

/// Assembles D*D + (D y1)× + (D y2)× ½(T + T*) + w·m·E11 with D = m(T - 1),
/// T the left shift sending e_n to 0. The y2 term is symmetrized: the couple
/// (j, j+1) receives m(y2[j] - y2[j-1])/2.
SpikedOperator build_spiked(const PotentialPaths& paths, double w_spike, double m);

/// Paths that reproduce edge_rescale(a) (no Curie–Weiss term) through
/// build_spiked(paths, m, m) with m = n^{1/3}, for a β-Hermite sample `a`.
PotentialPaths beta_edge_paths(const SymTridiag& a);

}  // namespace sskcrit
