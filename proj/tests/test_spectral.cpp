#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sskcrit/errors.hpp"
#include "sskcrit/spectral.hpp"

using namespace sskcrit;

namespace {

SpikedOperator unit_op(SymTridiag t) { return {std::move(t), 1.0, Spike::finite(0.0), Provenance::Custom}; }

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("diagonal matrix") {
  const auto d = eigen_range(SymTridiag({1.0, 2.0, 3.0}, {0.0, 0.0}), 2);
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(std::abs(d.q[0]) == doctest::Approx(1.0));
  CHECK(std::abs(d.q[1]) < 1e-12);

  SpikedOperator op{SymTridiag({1.0, 2.0, 3.0}, {0.0, 0.0}), 4.0, Spike::finite(0.0), Provenance::Custom};
  const auto w = eigen_range(op, 2);
  CHECK(std::abs(w.q[0]) == doctest::Approx(2.0));
}

TEST_CASE("2x2 free Laplacian closed form") {
  const auto d = eigen_range(SymTridiag({1.0, 2.0}, {-1.0}), 2);
  CHECK(d.eigenvalues[0] == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
  CHECK(d.eigenvalues[1] == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
}

TEST_CASE("k out of range") {
  const SymTridiag t({1.0, 2.0}, {-1.0});
  CHECK_THROWS_AS(eigen_range(t, 0), ParameterError);
  CHECK_THROWS_AS(eigen_range(t, 3), ParameterError);
}

TEST_CASE("tie raises DegenerateSpectrum") {
  CHECK_THROWS_AS(eigen_range(SymTridiag({1.0, 1.0, 3.0}, {0.0, 0.0}), 2), DegenerateSpectrum);
}

TEST_CASE("sampled edge operator matches dense eigensolver") {
  const auto op = edge_rescale(sample_beta_hermite(200, 2.0, 11));
  const auto d = eigen_range(op, 200);
  const auto ref = oracle::eigenvalues(oracle::dense(op.base));
  for (std::size_t i = 0; i < 200; ++i) CHECK(d.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(1.0));
  double total = 0.0;
  for (double q : d.q) total += q * q;
  CHECK(total == doctest::Approx(op.m).epsilon(1e-10));
}

TEST_CASE("first components match the dense eigenvectors") {
  const auto t = sample_beta_hermite(40, 1.0, 3);
  const auto d = eigen_range(t, 40);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(t));
  for (int i = 0; i < 40; ++i) {
    CHECK(d.q[i] * d.q[i] == doctest::Approx(es.eigenvectors()(0, i) * es.eigenvectors()(0, i)).epsilon(1e-8).scale(1e-12));
  }
}

TEST_CASE("resolvent_first trivial cases") {
  CHECK(resolvent_first(unit_op(SymTridiag({3.0}, {})), 1.0) == doctest::Approx(0.5));
  CHECK(resolvent_first(unit_op(SymTridiag({1.0, -1.0}, {0.0})), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("resolvent_first agrees with the eigen expansion") {
  const auto op = edge_rescale(sample_beta_hermite(500, 1.0, 8));
  const auto d = eigen_range(op, 500);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1e-3, 20.0);
  for (int i = 0; i < 20; ++i) {
    const double lambda = d.eigenvalues[0] - u(rng);
    const double expansion = eigen_expansion(d, lambda);
    CHECK(resolvent_first(op, lambda) == doctest::Approx(expansion).epsilon(1e-9));
  }
}

TEST_CASE("secular_sum trivial cases") {
  CHECK(secular_sum(SpectralData{{2.0}, {1.0}, 1.0}, 1.0) == doctest::Approx(1.0));
  CHECK(secular_sum(SpectralData{{-1.0, 1.0}, {1.0, 2.0}, 5.0}, 0.0) == doctest::Approx(5.0));
}

TEST_CASE("secular_sum is the derivative of resolvent_first and the resolvent norm") {
  for (Seed s = 0; s < 5; ++s) {
    const auto op = edge_rescale(sample_beta_hermite(150, 2.0, s));
    const auto d = eigen_range(op, 150);
    for (double gap : {0.5, 2.0, 7.0}) {
      const double lambda = d.eigenvalues[0] - gap;
      const double eps = 1e-5;
      const double fd = (resolvent_first(op, lambda + eps) - resolvent_first(op, lambda - eps)) / (2 * eps);
      const double s_val = secular_sum(d, lambda);
      CHECK(fd == doctest::Approx(s_val).epsilon(1e-6));
      CHECK(op.m * resolvent_column(op.base, lambda).sum_sq == doctest::Approx(s_val).epsilon(1e-9));
    }
    // between eigenvalues too
    const double mid = 0.5 * (d.eigenvalues[2] + d.eigenvalues[3]);
    CHECK(op.m * resolvent_column(op.base, mid).sum_sq == doctest::Approx(secular_sum(d, mid)).epsilon(1e-8));
  }
}

TEST_CASE("secular sum is convex between eigenvalues") {
  const auto op = edge_rescale(sample_beta_hermite(60, 1.0, 21));
  const auto d = eigen_range(op, 60);
  for (std::size_t g = 0; g + 1 < 6; ++g) {
    const double a = d.eigenvalues[g];
    const double b = d.eigenvalues[g + 1];
    const double h = 1e-3 * (b - a);
    for (int i = 1; i <= 100; ++i) {
      const double x = a + (b - a) * i / 101.0;
      const double s0 = secular_sum(d, x);
      const double second = secular_sum(d, x - h) - 2 * s0 + secular_sum(d, x + h);
      CHECK(second / s0 >= -1e-8);
    }
  }
}

TEST_CASE("pole guard") {
  const SpectralData d{{0.0, 1.0}, {1.0, 1.0}, 2.0};
  CHECK_THROWS_AS(secular_sum(d, 1.0), PoleProximity);
  CHECK_THROWS_AS(eigen_expansion(d, 1e-14), PoleProximity);
  CHECK_THROWS_AS(resolvent_first(unit_op(SymTridiag({2.0}, {})), 2.0), PoleProximity);
}

TEST_CASE("sturm count") {
  const SymTridiag t({1.0, 2.0}, {-1.0});
  CHECK(sturm_count(t, 0.0) == 0);
  CHECK(sturm_count(t, 1.0) == 1);
  CHECK(sturm_count(t, 3.0) == 2);
}

TEST_CASE("spectral projection completeness") {
  const auto t = sample_beta_hermite(30, 1.0, 99);
  std::vector<double> v(30);
  for (std::size_t i = 0; i < 30; ++i) v[i] = std::sin(double(i) + 1.0);
  const auto d = spectral_projection(t, v);
  double total = 0.0, norm = 0.0;
  for (double q : d.q) total += q * q;
  for (double x : v) norm += x * x;
  CHECK(total == doctest::Approx(norm).epsilon(1e-10));
}

}
