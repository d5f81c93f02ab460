#include "sskcrit/secular_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sskcrit/errors.hpp"

namespace sskcrit {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kTernaryIterations = 200;

bool converged(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  return mid <= lo || mid >= hi || hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi));
}

// Bisection on a monotone branch. `above_at_lo` tells whether s > target at
// the lo end of the bracket.
double bisect_branch(const SecularFn& s, double lo, double hi, double target, bool above_at_lo) {
  for (int it = 0; it < 400 && !converged(lo, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool above = s(mid) > target;
    if (above == above_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double gap_minimizer(const SecularFn& s, double a, double b) {
  double lo = a;
  double hi = b;
  for (int it = 0; it < kTernaryIterations && !converged(lo, hi); ++it) {
    const double third = (hi - lo) / 3.0;
    const double m1 = lo + third;
    const double m2 = hi - third;
    if (s(m1) < s(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<SecularRoot> gap_roots(const SecularFn& s, double a, double b, double target) {
  const double x_min = gap_minimizer(s, a, b);
  const double s_min = s(x_min);
  if (std::abs(s_min - target) < 1e-9 * target) {
    throw DegenerateCritical("secular function tangent to its target inside a gap");
  }
  if (s_min > target) return {};
  // Left of the minimum s decreases (J'' > 0), right of it s increases.
  return {SecularRoot{bisect_branch(s, a, x_min, target, true), +1},
          SecularRoot{bisect_branch(s, x_min, b, target, false), -1}};
}

SecularRoot ray_root_above(const SecularFn& s, double pole, double far, double target) {
  if (!(s(far) < target)) throw BracketFailure("ray above: far end does not bracket the root");
  return {bisect_branch(s, pole, far, target, true), +1};
}

SecularRoot ray_root_below(const SecularFn& s, double pole, double far, double target) {
  if (!(s(far) < target)) throw BracketFailure("ray below: far end does not bracket the root");
  return {bisect_branch(s, far, pole, target, false), -1};
}

double expand_below(const SecularFn& s, double pole, double target, double max_distance) {
  double dist = 1.0;
  while (true) {
    if (dist > max_distance) {
      throw BracketFailure("no bracket within distance " + std::to_string(max_distance) +
                           " below the lowest pole");
    }
    if (s(pole - dist) < target) return pole - dist;
    dist *= 2.0;
  }
}

std::vector<SecularRoot> low_lying_roots(const SecularFn& s, const std::vector<double>& poles,
                                         std::size_t k, double ray_far, double target) {
  if (poles.size() < k + 2) throw ParameterError("low_lying_roots: need k+2 poles");
  std::vector<SecularRoot> out;
  out.push_back(ray_root_below(s, poles[0], ray_far, target));
  for (std::size_t gap = 0; gap <= k; ++gap) {
    const auto roots = gap_roots(s, poles[gap], poles[gap + 1], target);
    for (const auto& r : roots) {
      if (gap < k || r.j2_sign > 0) out.push_back(r);
    }
  }
  return out;
}

}  // namespace sskcrit
