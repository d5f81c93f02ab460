#pragma once

// Independent reference computations for the tests. Everything here works on
// dense matrices with Eigen or on special functions from boost::math, and
// deliberately shares no numerical code with the library.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>
#include <boost/math/special_functions/airy.hpp>

#include "sskcrit/ensembles.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const sskcrit::SymTridiag& t) {
  const auto n = static_cast<Eigen::Index>(t.n());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = t.diag()[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.offdiag()[i];
  return a;
}

inline Eigen::VectorXd vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// GOE-like dense matrix with N(0,1) off-diagonal and N(0,2) diagonal entries.
inline Eigen::MatrixXd gaussian_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = std::sqrt(2.0) * g(rng);
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = g(rng);
  }
  return a;
}

/// Real roots of Σ c_i/(μ_i-λ)² = R, by clearing denominators into a degree-2n
/// polynomial, taking companion-matrix roots and polishing with Newton in
/// long double on the rational form. Ascending, duplicates merged.
inline std::vector<double> secular_roots(const Eigen::MatrixXd& h, const Eigen::VectorXd& v,
                                         double radius_sq) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd mu = es.eigenvalues();
  const Eigen::VectorXd proj = es.eigenvectors().transpose() * v;
  const int n = static_cast<int>(mu.size());

  using Poly = Eigen::VectorXd;  // coefficients, lowest degree first
  auto mul = [](const Poly& a, const Poly& b) {
    Poly c = Poly::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
      for (Eigen::Index j = 0; j < b.size(); ++j) c(i + j) += a(i) * b(j);
    return c;
  };
  auto sq_factor = [&](int i) {
    Poly f(3);  // (μ - λ)²
    f << mu(i) * mu(i), -2.0 * mu(i), 1.0;
    return f;
  };
  Poly all = Poly::Ones(1);
  for (int i = 0; i < n; ++i) all = mul(all, sq_factor(i));
  Poly p = -radius_sq * all;
  for (int i = 0; i < n; ++i) {
    Poly rest = Poly::Ones(1);
    for (int j = 0; j < n; ++j)
      if (j != i) rest = mul(rest, sq_factor(j));
    const double c = proj(i) * proj(i);
    for (Eigen::Index d = 0; d < rest.size(); ++d) p(d) += c * rest(d);
  }

  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(p);
  const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
  std::vector<double> candidates;
  for (const auto& z : solver.roots()) {
    if (std::abs(z.imag()) < 1e-5 * scale) candidates.push_back(z.real());
  }

  auto f = [&](long double x, long double& df) {
    long double s = 0.0L;
    df = 0.0L;
    for (int i = 0; i < n; ++i) {
      const long double r = 1.0L / (static_cast<long double>(mu(i)) - x);
      const long double c = static_cast<long double>(proj(i)) * proj(i);
      s += c * r * r;
      df += 2.0L * c * r * r * r;
    }
    return s - radius_sq;
  };
  std::vector<double> roots;
  for (double x0 : candidates) {
    long double x = x0;
    for (int it = 0; it < 60; ++it) {
      long double df = 0.0L;
      const long double fx = f(x, df);
      if (df == 0.0L) break;
      const long double step = fx / df;
      x -= step;
      if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(x))) break;
    }
    long double df = 0.0L;
    if (std::abs(f(x, df)) <= 1e-9L * radius_sq) roots.push_back(static_cast<double>(x));
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (unique.empty() || std::abs(r - unique.back()) > 1e-10 * scale) unique.push_back(r);
  }
  return unique;
}

/// Negative eigenvalue count of the Hessian of L restricted to the tangent
/// space at σ = -(H-λ)^{-1}v.
inline int projected_hessian_index(const Eigen::MatrixXd& h, const Eigen::VectorXd& v, double lambda) {
  const int n = static_cast<int>(h.rows());
  const Eigen::MatrixXd shifted = h - lambda * Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd sigma = -shifted.fullPivLu().solve(v);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(sigma);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd tangent = q.rightCols(n - 1);
  const Eigen::MatrixXd block = tangent.transpose() * shifted * tangent;
  int neg = 0;
  for (double e : eigenvalues(block)) neg += e < 0.0;
  return neg;
}

/// max of L(σ) = ½σᵀHσ + σᵀv on σᵀσ = R for n = 2 by an angle grid with
/// golden-section polish of the best cell.
inline double circle_max(const Eigen::Matrix2d& h, const Eigen::Vector2d& v, double radius_sq,
                         int angles = 1000000) {
  const double r = std::sqrt(radius_sq);
  auto L = [&](double t) {
    const Eigen::Vector2d s(r * std::cos(t), r * std::sin(t));
    return 0.5 * s.dot(h * s) + s.dot(v);
  };
  const double dt = 2.0 * M_PI / angles;
  int best = 0;
  double best_val = L(0.0);
  for (int i = 1; i < angles; ++i) {
    const double val = L(i * dt);
    if (val > best_val) best_val = val, best = i;
  }
  double a = (best - 1) * dt;
  double b = (best + 1) * dt;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (L(c) > L(d)) b = d; else a = c;
  }
  return std::max(best_val, L(0.5 * (a + b)));
}

// Airy constants from boost::math.
inline double airy_zero() { return -boost::math::airy_ai_zero<double>(1); }

/// First zero of Ai' (returned as a positive number), Newton on Ai'(x) with Ai'' = x·Ai.
inline double airy_prime_zero() {
  double x = -1.0;
  for (int it = 0; it < 50; ++it) x -= boost::math::airy_ai_prime(x) / (x * boost::math::airy_ai(x));
  return -x;
}

/// m_∞(λ) = Ai'(-λ)/Ai(-λ): boundary derivative of the Dirichlet Weyl solution.
inline double m_dirichlet(double lambda) {
  return boost::math::airy_ai_prime(-lambda) / boost::math::airy_ai(-lambda);
}

/// m_0(λ) = -Ai(-λ)/Ai'(-λ): boundary value of the Neumann Weyl solution
/// -Ai(x-λ)/Ai'(-λ), the sign for which ∂_λ m_0 = ‖φ‖² = 1 + λ·m_0².
inline double m_neumann(double lambda) {
  return -boost::math::airy_ai(-lambda) / boost::math::airy_ai_prime(-lambda);
}

/// Noise-free continuum sup of ½(λ - h²m_∞(λ)) for λ below the first Airy zero.
/// The Weyl solution's squared norm is ∫_0^∞ Ai(x-λ)²/Ai(-λ)² dx = m_∞² + λ,
/// so the maximizer solves m_∞(λ)² + λ = h^{-2}.
inline double dirichlet_sup(double h, double* lambda_star = nullptr) {
  auto g = [&](double l) { const double m = m_dirichlet(l); return m * m + l - 1.0 / (h * h); };
  double lo = -50.0;
  double hi = airy_zero() - 1e-9;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) lo = mid; else hi = mid;
  }
  const double l = 0.5 * (lo + hi);
  if (lambda_star) *lambda_star = l;
  return 0.5 * (l - h * h * m_dirichlet(l));
}

/// Two-sample KS statistic by brute force over every pooled point.
inline double ks_bruteforce(std::vector<double> a, std::vector<double> b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (double x : pooled) {
    const double fa = double(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size();
    const double fb = double(std::upper_bound(b.begin(), b.end(), x) - b.begin()) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace oracle
