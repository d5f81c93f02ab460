#include "sskcrit/continuum.hpp"

#include <cmath>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "sskcrit/errors.hpp"
#include "sskcrit/secular_roots.hpp"
#include "sskcrit/spectral.hpp"

namespace sskcrit {
namespace {

constexpr double kMaxBracket = 1e3;

SecularFn norm_fn(const SpikedOperator& op) {
  return [&op](double lambda) { return weyl_eval(op, lambda).norm_sq; };
}

}  // namespace

std::size_t AiryGrid::size() const {
  return static_cast<std::size_t>(std::llround(length / step));
}

void AiryGrid::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("grid beta must be positive");
  if (!(step > 0.0) || step > 0.05) throw ParameterError("grid step must lie in (0, 0.05]");
  if (!(length >= 10.0) || !std::isfinite(length)) throw ParameterError("grid length must be >= 10");
  if (length / step < 100.0) throw ParameterError("grid needs length/step >= 100");
  if (!w.infinite && !std::isfinite(w.value)) throw ParameterError("finite w must be a number");
}

std::vector<double> brownian_increments(const AiryGrid& g) {
  Engine engine = make_engine(g.seed, "airy-noise");
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(g.step));
  std::vector<double> inc(g.size());
  for (double& x : inc) x = normal(engine);
  return inc;
}

std::vector<double> coarsen_increments(const std::vector<double>& fine, std::size_t factor) {
  if (factor == 0 || fine.size() % factor != 0) {
    throw ParameterError("fine grid size must be a multiple of the coarsening factor");
  }
  std::vector<double> coarse(fine.size() / factor, 0.0);
  for (std::size_t i = 0; i < fine.size(); ++i) coarse[i / factor] += fine[i];
  return coarse;
}

SpikedOperator assemble_airy(double beta, Spike w, double step, std::size_t n,
                             const std::vector<double>& increments) {
  if (n < 2) throw ParameterError("Airy grid needs at least two points");
  if (!increments.empty() && increments.size() != n) {
    throw ParameterError("increment count does not match the grid");
  }
  const double m = 1.0 / step;
  const double noise_scale = 2.0 / std::sqrt(beta) / step;
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * step;
    diag[i] = 2.0 * m * m + x;
    if (!increments.empty()) diag[i] += noise_scale * increments[i];
  }
  const Spike spike = w.infinite ? Spike::infinity(m) : w;
  diag[0] -= m * m;
  diag[0] += spike.value * m;
  std::vector<double> off(n - 1, -m * m);
  return {SymTridiag(std::move(diag), std::move(off)), m, spike, Provenance::AiryGrid};
}

SpikedOperator discretize_airy(const AiryGrid& g) {
  g.validate();
  return assemble_airy(g.beta, g.w, g.step, g.size(),
                       g.noise ? brownian_increments(g) : std::vector<double>{});
}

SpikedOperator discretize_airy(const AiryGrid& g, const std::vector<double>& increments) {
  g.validate();
  return assemble_airy(g.beta, g.w, g.step, g.size(), increments);
}

WeylEval weyl_eval(const SpikedOperator& op, double lambda) {
  const ResolventColumn col = resolvent_column(op.base, lambda);
  WeylEval e;
  e.lambda = lambda;
  e.w = op.w;
  const double m = op.m;
  if (op.w.infinite) {
    const double w = op.w.value;
    e.value0 = 1.0;
    e.deriv0 = w * w * m * resolvent_entry11(op.base, lambda) - w;
    e.norm_sq = w * w * m * col.sum_sq;
  } else {
    e.value0 = resolvent_first(op, lambda);
    e.deriv0 = op.w.value * e.value0 + 1.0;
    e.norm_sq = m * col.sum_sq;
  }
  return e;
}

double continuum_dual(const SpikedOperator& op, double h, double lambda) {
  return 0.5 * (lambda - h * h * weyl_eval(op, lambda).m_function());
}

double tw_sample(const SpikedOperator& op, double h) {
  const double lambda1 = smallest_eigenvalues(op.base, 1)[0];
  if (h == 0.0) return 0.5 * lambda1;
  const SecularFn s = norm_fn(op);
  const double target = 1.0 / (h * h);
  const double far = expand_below(s, lambda1, target, kMaxBracket);
  const double lambda = ray_root_below(s, lambda1, far, target).lambda;
  return continuum_dual(op, h, lambda);
}

double tw_sample(const AiryGrid& g, double h) { return tw_sample(discretize_airy(g), h); }

std::vector<LowCritical> point_process(const SpikedOperator& op, double h, std::size_t k) {
  if (k + 2 > op.n()) throw ParameterError("point_process needs k + 2 <= grid size");
  const std::vector<double> eig = smallest_eigenvalues(op.base, k + 2);
  const double wall = 0.5 * static_cast<double>(op.n()) / op.m;
  if (eig[k + 1] > wall) {
    throw GridTooCoarse("eigenvalue " + std::to_string(k + 2) + " lies above half the domain length");
  }
  std::vector<LowCritical> out;
  if (h == 0.0) {
    for (std::size_t i = 0; i <= k; ++i) out.push_back({eig[i], eig[i], 0});
    return out;
  }
  const SecularFn s = norm_fn(op);
  const double target = 1.0 / (h * h);
  const double far = expand_below(s, eig[0], target, kMaxBracket);
  for (const auto& r : low_lying_roots(s, eig, k, far, target)) {
    out.push_back({r.lambda, continuum_dual(op, h, r.lambda), r.j2_sign});
  }
  return out;
}

std::vector<LowCritical> point_process(const AiryGrid& g, double h, std::size_t k) {
  return point_process(discretize_airy(g), h, k);
}

}  // namespace sskcrit
