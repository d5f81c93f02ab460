#pragma once

#include <cstddef>
#include <vector>

#include "sskcrit/ensembles.hpp"

namespace sskcrit {

/// Ascending eigenvalues with one weight per eigenvalue.
///
/// For first-component data (eigen_range) q_i is the first entry of the i-th
/// eigenvector normalized to Σ_j (v_i)_j² = m, so Σ q_i² = m. For projection
/// data (spectral_projection) q_i = <u_i, v> with u_i unit, so Σ q_i² = |v|².
/// `mass` holds the expected Σ q_i² either way.
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> q;
  double mass = 1.0;

  std::size_t size() const { return eigenvalues.size(); }
  double spread() const {
    return eigenvalues.empty() ? 0.0 : eigenvalues.back() - eigenvalues.front();
  }
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymTridiag& t, double x);

/// k smallest eigenvalues by bisection, ascending.
std::vector<double> smallest_eigenvalues(const SymTridiag& t, std::size_t k);
double largest_eigenvalue(const SymTridiag& t);

/// k smallest eigenpairs' (eigenvalue, first-component weight). Throws
/// DegenerateSpectrum when two of them coincide within 1e-12 of the spread.
SpectralData eigen_range(const SymTridiag& t, std::size_t k);
SpectralData eigen_range(const SpikedOperator& op, std::size_t k);

/// Full spectrum with projections q_i = <u_i, v>.
SpectralData spectral_projection(const SymTridiag& t, const std::vector<double>& v);

/// Solves (t - shift) x = rhs by Gaussian elimination with partial pivoting.
/// An exactly singular pivot raises PoleProximity.
std::vector<double> shifted_solve(const SymTridiag& t, double shift, std::vector<double> rhs);

/// [(t - λ)^{-1}]_{11} by the bottom-up continued fraction
/// c_n = d_n - λ, c_i = d_i - λ - b_i² / c_{i+1}.
double resolvent_entry11(const SymTridiag& t, double lambda);

/// (R(λ) m e1, m e1) = m·[(H - λ)^{-1}]_{11} in the weighted inner product.
double resolvent_first(const SpikedOperator& op, double lambda);

/// First column x = (t - λ)^{-1} e1 reduced to what callers need.
struct ResolventColumn {
  double first = 0.0;   // x_1
  double sum_sq = 0.0;  // Σ x_j²
};
ResolventColumn resolvent_column(const SymTridiag& t, double lambda);

/// Σ q_i² / (μ_i - λ); equals resolvent_first for first-component data.
double eigen_expansion(const SpectralData& data, double lambda);

/// s(λ) = Σ q_i² / (μ_i - λ)², the derivative of eigen_expansion.
double secular_sum(const SpectralData& data, double lambda);

/// Throws PoleProximity if λ is within 1e-12·spread of an eigenvalue.
void check_pole_distance(const SpectralData& data, double lambda);

}  // namespace sskcrit
