#include "sskcrit/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sskcrit/errors.hpp"
#include "sskcrit/secular_roots.hpp"

namespace sskcrit {
namespace {

constexpr double kAbsentWeight = 1e-14;
constexpr double kFarMargin = 1.0 + 1e-6;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void validate(const DualProblem& p) {
  if (!(p.radius_sq > 0.0) || !std::isfinite(p.radius_sq)) {
    throw ParameterError("radius_sq must be positive and finite");
  }
  if (p.v.size() != p.matrix.n()) throw ParameterError("field length does not match the matrix");
}

// Keeps a far point strictly outside the pole when the offset underflows.
double nudge(double pole) { return 1e-12 * std::max(1.0, std::abs(pole)); }

}  // namespace

DualProblem DualProblem::general(SymTridiag h, std::vector<double> v, double radius_sq) {
  DualProblem p{std::move(h), std::move(v), radius_sq, 1.0};
  validate(p);
  return p;
}

DualProblem DualProblem::weighted(const SpikedOperator& op, double h) {
  std::vector<double> v(op.n(), 0.0);
  v[0] = -h * op.m;
  DualProblem p{op.base, std::move(v), op.m, 1.0 / op.m};
  validate(p);
  return p;
}

double dual_value(const DualProblem& p, double lambda) {
  const auto x = shifted_solve(p.matrix, lambda, p.v);
  return p.value_scale * 0.5 * (p.radius_sq * lambda - dot(x, p.v));
}

double dual_secular(const DualProblem& p, double lambda) {
  const auto x = shifted_solve(p.matrix, lambda, p.v);
  return dot(x, x);
}

int morse_index_of(double lambda, int j2_sign, const SpectralData& spectrum) {
  if (j2_sign == 0) throw DegenerateCritical("J'' vanishes: Morse index undefined");
  const auto& ev = spectrum.eigenvalues;
  const auto below = static_cast<int>(std::lower_bound(ev.begin(), ev.end(), lambda) - ev.begin());
  return j2_sign < 0 ? below : below - 1;
}

CriticalSet critical_points(const DualProblem& p) {
  validate(p);
  const SpectralData data = spectral_projection(p.matrix, p.v);
  double total = 0.0;
  for (double q : data.q) total += q * q;
  if (total == 0.0) throw ParameterError("field is zero");

  std::vector<double> poles;
  std::vector<double> weights;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double w = data.q[i] * data.q[i];
    if (w >= kAbsentWeight * total) {
      poles.push_back(data.eigenvalues[i]);
      weights.push_back(w);
    }
  }
  if (poles.size() < 2) {
    throw ParameterError("field is zero or an eigenvector of the matrix");
  }

  const SecularFn s = [&](double lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      const double r = 1.0 / (poles[i] - lambda);
      acc += weights[i] * r * r;
    }
    return acc;
  };
  const double R = p.radius_sq;
  const double reach = std::sqrt(total / R) * kFarMargin;

  std::vector<SecularRoot> roots;
  roots.push_back(ray_root_below(s, poles.front(), poles.front() - reach - nudge(poles.front()), R));
  for (std::size_t g = 0; g + 1 < poles.size(); ++g) {
    for (const auto& r : gap_roots(s, poles[g], poles[g + 1], R)) roots.push_back(r);
  }
  roots.push_back(ray_root_above(s, poles.back(), poles.back() + reach + nudge(poles.back()), R));

  CriticalSet out;
  out.merged_poles = data.size() - poles.size();
  for (const auto& r : roots) {
    CriticalPoint cp;
    cp.lambda = r.lambda;
    cp.j2_sign = r.j2_sign;
    double expansion = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      expansion += data.q[i] * data.q[i] / (data.eigenvalues[i] - r.lambda);
    }
    cp.value = p.value_scale * 0.5 * (R * r.lambda - expansion);
    cp.morse_index = morse_index_of(r.lambda, r.j2_sign, data);
    cp.gap = static_cast<std::size_t>(
        std::lower_bound(data.eigenvalues.begin(), data.eigenvalues.end(), r.lambda) -
        data.eigenvalues.begin());
    out.points.push_back(cp);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return a.lambda > b.lambda; });
  return out;
}

std::vector<double> reconstruct_sigma(const DualProblem& p, double lambda) {
  auto x = shifted_solve(p.matrix, lambda, p.v);
  for (double& xi : x) xi = -xi;
  return x;
}

GroundState ground_state(const DualProblem& p) {
  validate(p);
  const double top = largest_eigenvalue(p.matrix);
  const double vnorm2 = dot(p.v, p.v);
  if (vnorm2 == 0.0) return {p.value_scale * 0.5 * p.radius_sq * top, top};

  const SecularFn s = [&](double lambda) { return dual_secular(p, lambda); };
  const double R = p.radius_sq;
  const double far = top + std::sqrt(vnorm2 / R) * kFarMargin + nudge(top);

  // J is convex on (top, ∞); find a point where J' < 0, i.e. s > R.
  const double floor = 1e-13 * std::max(1.0, p.matrix.gershgorin_spread());
  double d = far - top;
  while (!(s(top + d) > R)) {
    d *= 0.5;
    if (d < floor) {
      throw DegenerateCritical("field nearly orthogonal to the top eigenvector");
    }
  }
  const double lambda = ray_root_above(s, top + d, far, R).lambda;
  return {dual_value(p, lambda), lambda};
}

GroundState minimum_state(const DualProblem& p) {
  std::vector<double> v = p.v;
  for (double& x : v) x = -x;
  DualProblem neg{p.matrix.negated(), std::move(v), p.radius_sq, p.value_scale};
  const GroundState g = ground_state(neg);
  return {-g.energy, -g.lambda_star};
}

std::vector<LowCritical> low_crit_set(const SpikedOperator& op, double h, std::size_t k) {
  if (k + 2 > op.n()) throw ParameterError("low_crit_set needs k + 2 <= n");
  const std::vector<double> eig = smallest_eigenvalues(op.base, k + 2);
  std::vector<LowCritical> out;
  if (h == 0.0) {
    for (std::size_t i = 0; i <= k; ++i) out.push_back({eig[i], eig[i], 0});
    return out;
  }
  const double target = 1.0 / (h * h);
  const SecularFn s = [&](double lambda) {
    return op.m * resolvent_column(op.base, lambda).sum_sq;
  };
  // m·Σx² <= m/(λ1-λ)², so this point has s below target.
  const double far = eig[0] - std::abs(h) * std::sqrt(op.m) * kFarMargin - nudge(eig[0]);
  for (const auto& r : low_lying_roots(s, eig, k, far, target)) {
    out.push_back({r.lambda, 0.5 * (r.lambda - h * h * resolvent_first(op, r.lambda)), r.j2_sign});
  }
  return out;
}

}  // namespace sskcrit
