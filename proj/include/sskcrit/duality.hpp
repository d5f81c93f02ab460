#pragma once

#include <cstddef>
#include <vector>

#include "sskcrit/ensembles.hpp"
#include "sskcrit/spectral.hpp"

namespace sskcrit {

/// L(σ) = ½<Hσ,σ> + <σ,v> on the sphere <σ,σ> = radius_sq, and its dual
/// J(λ) = ½[radius_sq·λ - <(H-λ)^{-1}v, v>], multiplied by value_scale.
///
/// The weighted convention of a SpikedOperator (v = -h·m·e1, radius_sq = m)
/// uses value_scale = 1/m, which turns J into ½(λ - h²·(R(λ)me1, me1)).
struct DualProblem {
  SymTridiag matrix;
  std::vector<double> v;
  double radius_sq = 1.0;
  double value_scale = 1.0;

  static DualProblem general(SymTridiag h, std::vector<double> v, double radius_sq);
  static DualProblem weighted(const SpikedOperator& op, double h);

  std::size_t n() const { return matrix.n(); }
};

struct CriticalPoint {
  double lambda = 0.0;
  double value = 0.0;
  int morse_index = 0;
  std::size_t gap = 0;  // number of eigenvalues below lambda: 0 and n are the rays
  int j2_sign = 0;
};

struct CriticalSet {
  std::vector<CriticalPoint> points;  // descending lambda
  std::size_t merged_poles = 0;       // eigenvalues whose weight was too small to act as a pole
};

double dual_value(const DualProblem& p, double lambda);

/// |σ_λ|² = <(H-λ)^{-2}v, v>; critical multipliers solve secular(λ) = radius_sq.
double dual_secular(const DualProblem& p, double lambda);

CriticalSet critical_points(const DualProblem& p);

/// Morse index of σ_λ. With ascending eigenvalues and j of them below λ, the
/// Hessian P(H-λ)P has j negative directions when J'' < 0 and j-1 when J'' > 0.
int morse_index_of(double lambda, int j2_sign, const SpectralData& spectrum);

/// σ_λ = -(H-λ)^{-1} v
std::vector<double> reconstruct_sigma(const DualProblem& p, double lambda);

struct GroundState {
  double energy = 0.0;
  double lambda_star = 0.0;
};

/// Maximum of L over the sphere, inf of J over (μ_max, ∞).
GroundState ground_state(const DualProblem& p);

/// Minimum of L over the sphere, sup of J over (-∞, μ_min).
GroundState minimum_state(const DualProblem& p);

struct LowCritical {
  double lambda = 0.0;
  double value = 0.0;
  int j2_sign = 0;
};

/// Low-lying critical multipliers of the weighted dual J = ½(λ - h²(R(λ)me1, me1)):
/// roots of ‖R(λ)me1‖² = h^{-2} below λ_{k+1} plus the J'' > 0 root in
/// (λ_{k+1}, λ_{k+2}). Ascending. For h = 0 the first k+1 eigenvalues.
std::vector<LowCritical> low_crit_set(const SpikedOperator& op, double h, std::size_t k);

}  // namespace sskcrit
