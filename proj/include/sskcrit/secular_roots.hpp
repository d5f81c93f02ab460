#pragma once

#include <cstddef>
#include <functional>
#include <vector>

// Root finding for secular-type equations s(λ) = target, where s is positive,
// convex between consecutive poles and blows up at each pole. Shared by the
// discrete dual (duality) and the continuum Weyl solutions (continuum).

namespace sskcrit {

using SecularFn = std::function<double(double)>;

/// A root of s(λ) = target. j2_sign is the sign of J'' for any dual of the
/// form J = ½(c·λ - F(λ)) with F' = s, i.e. -sign(s').
struct SecularRoot {
  double lambda = 0.0;
  int j2_sign = 0;
};

/// Location of the minimum of s on the open gap (a, b) by ternary search.
double gap_minimizer(const SecularFn& s, double a, double b);

/// Roots of s = target in the gap (a, b), ascending (0 or 2 of them).
/// Throws DegenerateCritical if min s is within 1e-9·target of target.
std::vector<SecularRoot> gap_roots(const SecularFn& s, double a, double b, double target);

/// Root on (pole, ∞) where s decreases to 0; requires s(far) < target.
SecularRoot ray_root_above(const SecularFn& s, double pole, double far, double target);

/// Root on (-∞, pole) where s increases from 0; requires s(far) < target.
SecularRoot ray_root_below(const SecularFn& s, double pole, double far, double target);

/// Grows a left bracket from pole - 1 by doubling until s < target. Throws
/// BracketFailure once the distance from the pole exceeds max_distance.
double expand_below(const SecularFn& s, double pole, double target, double max_distance);

/// Roots forming the low-lying set V^k: every root with λ below the (k+1)-th
/// pole, plus the decreasing-branch root (J'' > 0) between poles k+1 and k+2.
/// `poles` holds the k+2 smallest poles ascending; `ray_far` is a point below
/// poles[0] with s(ray_far) < target. Result is ascending in λ.
std::vector<SecularRoot> low_lying_roots(const SecularFn& s, const std::vector<double>& poles,
                                         std::size_t k, double ray_far, double target);

}  // namespace sskcrit
