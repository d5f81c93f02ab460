#include "sskcrit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/random/uniform_real_distribution.hpp>

#include "sskcrit/errors.hpp"

namespace sskcrit {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

// Smallest pivot magnitude allowed in Sturm counts and continued fractions.
double pivot_floor(const SymTridiag& t) {
  double bmax = 1.0;
  for (double b : t.offdiag()) bmax = std::max(bmax, b * b);
  return kSafeMin * bmax / kEps;
}

double bisect_eigenvalue(const SymTridiag& t, std::size_t index, double lo, double hi) {
  // Invariant: count(lo) < index <= count(hi), index is 1-based.
  for (int it = 0; it < 256; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) >= index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> bisection_window(const SymTridiag& t) {
  const double lo = t.gershgorin_lower();
  const double hi = t.gershgorin_upper();
  const double pad = 2.0 * kEps * std::max({std::abs(lo), std::abs(hi), 1.0}) + 1e-300;
  return {lo - pad, hi + pad};
}

// Two steps of inverse iteration from a fixed pseudo-random start. Returns the
// unit eigenvector approximation.
std::vector<double> inverse_iteration(const SymTridiag& t, double mu) {
  Engine engine(0x5eed5eedULL);
  boost::random::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(t.n());
  for (auto& xi : x) xi = uni(engine);

  const double scale = std::max(t.gershgorin_spread(), 1.0);
  for (int step = 0; step < 2; ++step) {
    // Shift the diagonal a hair off μ when the factorization hits an exact
    // zero pivot; the direction is unaffected at working precision.
    std::vector<double> dd = t.diag();
    std::vector<double> up = t.offdiag();
    std::vector<double> lo = t.offdiag();
    std::vector<double> up2(t.n(), 0.0);
    const std::size_t n = t.n();
    const double tiny = kEps * scale;
    for (auto& d : dd) d -= mu;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(dd[i]) >= std::abs(lo[i])) {
        if (dd[i] == 0.0) dd[i] = tiny;
        const double f = lo[i] / dd[i];
        dd[i + 1] -= f * up[i];
        x[i + 1] -= f * x[i];
      } else {
        const double f = dd[i] / lo[i];
        const double up_next = i + 2 < n ? up[i + 1] : 0.0;
        dd[i] = lo[i];
        const double tmp = dd[i + 1];
        dd[i + 1] = up[i] - f * tmp;
        up[i] = tmp;
        up2[i] = up_next;
        if (i + 2 < n) up[i + 1] = -f * up_next;
        const double r = x[i];
        x[i] = x[i + 1];
        x[i + 1] = r - f * x[i + 1];
      }
    }
    if (dd[n - 1] == 0.0) dd[n - 1] = tiny;
    x[n - 1] /= dd[n - 1];
    for (std::size_t ii = n - 1; ii-- > 0;) {
      double s = x[ii] - up[ii] * x[ii + 1];
      if (ii + 2 < n) s -= up2[ii] * x[ii + 2];
      x[ii] = s / dd[ii];
    }
    double norm = 0.0;
    for (double xi : x) norm = std::hypot(norm, xi);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DegenerateSpectrum("inverse iteration failed to converge");
    }
    for (auto& xi : x) xi /= norm;
  }
  return x;
}

void check_simple(const std::vector<double>& eig, double spread) {
  const double tol = 1e-12 * spread;
  for (std::size_t i = 1; i < eig.size(); ++i) {
    if (eig[i] - eig[i - 1] <= tol) {
      throw DegenerateSpectrum("eigenvalues " + std::to_string(i) + " and " +
                               std::to_string(i + 1) + " coincide within resolution");
    }
  }
}

}  // namespace

std::size_t sturm_count(const SymTridiag& t, double x) {
  const auto& d = t.diag();
  const auto& b = t.offdiag();
  const double pivmin = pivot_floor(t);
  std::size_t count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.n(); ++i) {
    q = d[i] - x - b[i - 1] * b[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> smallest_eigenvalues(const SymTridiag& t, std::size_t k) {
  if (k < 1 || k > t.n()) {
    throw ParameterError("eigen_range: k must satisfy 1 <= k <= n");
  }
  auto [lo, hi] = bisection_window(t);
  std::vector<double> eig(k);
  for (std::size_t i = 1; i <= k; ++i) {
    double start = lo;
    if (i > 1 && sturm_count(t, eig[i - 2]) < i) start = eig[i - 2];
    eig[i - 1] = bisect_eigenvalue(t, i, start, hi);
  }
  return eig;
}

double largest_eigenvalue(const SymTridiag& t) {
  auto [lo, hi] = bisection_window(t);
  return bisect_eigenvalue(t, t.n(), lo, hi);
}

SpectralData eigen_range(const SymTridiag& t, std::size_t k) {
  SpectralData data;
  data.eigenvalues = smallest_eigenvalues(t, k);
  check_simple(data.eigenvalues, t.gershgorin_spread());
  data.q.resize(k);
  for (std::size_t i = 0; i < k; ++i) data.q[i] = inverse_iteration(t, data.eigenvalues[i])[0];
  data.mass = 1.0;
  return data;
}

SpectralData eigen_range(const SpikedOperator& op, std::size_t k) {
  SpectralData data = eigen_range(op.base, k);
  const double root_m = std::sqrt(op.m);
  for (auto& q : data.q) q *= root_m;
  data.mass = op.m;
  return data;
}

SpectralData spectral_projection(const SymTridiag& t, const std::vector<double>& v) {
  if (v.size() != t.n()) throw ParameterError("spectral_projection: vector length mismatch");
  SpectralData data;
  data.eigenvalues = smallest_eigenvalues(t, t.n());
  check_simple(data.eigenvalues, t.gershgorin_spread());
  data.q.resize(t.n());
  double mass = 0.0;
  for (double vi : v) mass += vi * vi;
  for (std::size_t i = 0; i < t.n(); ++i) {
    const auto u = inverse_iteration(t, data.eigenvalues[i]);
    double dot = 0.0;
    for (std::size_t j = 0; j < t.n(); ++j) dot += u[j] * v[j];
    data.q[i] = dot;
  }
  data.mass = mass;
  return data;
}

std::vector<double> shifted_solve(const SymTridiag& t, double shift, std::vector<double> x) {
  const std::size_t n = t.n();
  if (x.size() != n) throw ParameterError("shifted_solve: rhs length mismatch");
  std::vector<double> dd = t.diag();
  std::vector<double> up = t.offdiag();
  std::vector<double> lo = t.offdiag();
  std::vector<double> up2(n, 0.0);
  for (auto& d : dd) d -= shift;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(lo[i])) {
      if (dd[i] == 0.0) throw PoleProximity("shifted_solve: singular pivot");
      const double f = lo[i] / dd[i];
      dd[i + 1] -= f * up[i];
      x[i + 1] -= f * x[i];
    } else {
      const double f = dd[i] / lo[i];
      const double up_next = i + 2 < n ? up[i + 1] : 0.0;
      dd[i] = lo[i];
      const double tmp = dd[i + 1];
      dd[i + 1] = up[i] - f * tmp;
      up[i] = tmp;
      up2[i] = up_next;
      if (i + 2 < n) up[i + 1] = -f * up_next;
      const double r = x[i];
      x[i] = x[i + 1];
      x[i + 1] = r - f * x[i + 1];
    }
  }
  if (dd[n - 1] == 0.0) throw PoleProximity("shifted_solve: singular pivot");
  x[n - 1] /= dd[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    double s = x[i] - up[i] * x[i + 1];
    if (i + 2 < n) s -= up2[i] * x[i + 2];
    x[i] = s / dd[i];
  }
  for (double xi : x) {
    if (!std::isfinite(xi)) throw PoleProximity("shifted_solve: non-finite solution");
  }
  return x;
}

double resolvent_entry11(const SymTridiag& t, double lambda) {
  const auto& d = t.diag();
  const auto& b = t.offdiag();
  const double pivmin = pivot_floor(t);
  const std::size_t n = t.n();
  double c = d[n - 1] - lambda;
  for (std::size_t i = n - 1; i-- > 0;) {
    if (std::abs(c) < pivmin) c = -pivmin;
    c = d[i] - lambda - b[i] * b[i] / c;
  }
  if (std::abs(c) <= pivmin || !std::isfinite(c)) {
    throw PoleProximity("resolvent: spectral parameter on a pole");
  }
  return 1.0 / c;
}

double resolvent_first(const SpikedOperator& op, double lambda) {
  return op.m * resolvent_entry11(op.base, lambda);
}

ResolventColumn resolvent_column(const SymTridiag& t, double lambda) {
  std::vector<double> e1(t.n(), 0.0);
  e1[0] = 1.0;
  const auto x = shifted_solve(t, lambda, std::move(e1));
  ResolventColumn col;
  col.first = x[0];
  for (double xi : x) col.sum_sq += xi * xi;
  return col;
}

void check_pole_distance(const SpectralData& data, double lambda) {
  const double guard = 1e-12 * data.spread();
  for (double mu : data.eigenvalues) {
    if (std::abs(lambda - mu) <= guard) {
      throw PoleProximity("spectral parameter within 1e-12*spread of an eigenvalue");
    }
  }
}

double eigen_expansion(const SpectralData& data, double lambda) {
  check_pole_distance(data, lambda);
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) s += data.q[i] * data.q[i] / (data.eigenvalues[i] - lambda);
  return s;
}

double secular_sum(const SpectralData& data, double lambda) {
  check_pole_distance(data, lambda);
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.q[i] / (data.eigenvalues[i] - lambda);
    s += r * r;
  }
  return s;
}

}  // namespace sskcrit
