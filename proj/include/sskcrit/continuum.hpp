#pragma once

#include <cstddef>
#include <vector>

#include "sskcrit/duality.hpp"
#include "sskcrit/ensembles.hpp"
#include "sskcrit/rng.hpp"

namespace sskcrit {

/// Finite-difference grid for -d²/dx² + x + (2/√β) B'(x) on [0, length] with
/// boundary condition w f(0) = f'(0) (w = ∞: Dirichlet). For infinite w the
/// numeric spike is the grid density m and `w.value` is ignored.
struct AiryGrid {
  double beta = 2.0;
  Spike w = Spike::infinity(0.0);
  double length = 24.0;
  double step = 0.005;
  bool noise = true;
  Seed seed = 0;

  std::size_t size() const;
  void validate() const;
};

/// Boundary data of the Weyl solution at λ. For finite w: value0 = m_w(λ) and
/// deriv0 = w·value0 + 1. For w = ∞: value0 = 1 and deriv0 = m_∞(λ).
/// norm_sq = ∂_λ of the m-function = weighted squared norm of the solution.
struct WeylEval {
  double lambda = 0.0;
  double value0 = 0.0;
  double deriv0 = 0.0;
  double norm_sq = 0.0;
  Spike w;

  /// The m-function: value0 for finite w, deriv0 for w = ∞.
  double m_function() const { return w.infinite ? deriv0 : value0; }
};

/// Per-cell Brownian increments (variance step each) for the grid's seed.
std::vector<double> brownian_increments(const AiryGrid& g);

/// Sums consecutive groups of `factor` fine increments: the same path on a
/// grid `factor` times coarser.
std::vector<double> coarsen_increments(const std::vector<double>& fine, std::size_t factor);

/// Assembles the operator without the grid-size checks. `increments` is
/// empty (no noise) or has n entries.
SpikedOperator assemble_airy(double beta, Spike w, double step, std::size_t n,
                             const std::vector<double>& increments);

SpikedOperator discretize_airy(const AiryGrid& g);
SpikedOperator discretize_airy(const AiryGrid& g, const std::vector<double>& increments);

WeylEval weyl_eval(const SpikedOperator& op, double lambda);

/// Continuum dual J(λ) = ½(λ - h²·m_w(λ)).
double continuum_dual(const SpikedOperator& op, double h, double lambda);

/// sup over λ < λ1 of the continuum dual: one sample of -TW^h_{β,w}.
double tw_sample(const AiryGrid& g, double h);
double tw_sample(const SpikedOperator& op, double h);

/// Λ^k_{w,h}: continuum analogue of low_crit_set, ascending in λ.
std::vector<LowCritical> point_process(const AiryGrid& g, double h, std::size_t k);
std::vector<LowCritical> point_process(const SpikedOperator& op, double h, std::size_t k);

}  // namespace sskcrit
