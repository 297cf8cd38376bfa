#include <cmath>

#include "doctest.h"
#include "nehari/energy.hpp"
#include "nehari/nehari_solver.hpp"

using namespace nehari;

namespace {

double bump(double r) { return (1 - r * r) * (1 - r * r); }

// Unit-norm smooth clamped profiles at the scale where the Nehari set lives.
RadialFunction profile(const Energy& J, int k) {
  return random_start(J, 99, k, 16);
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("zero function") {
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(ModelParams{}));
  const auto z = RadialFunction::zero(g);
  const EnergyBreakdown e = J.energy(z);
  CHECK(e.total == 0.0);
  CHECK(e.kirchhoff_term == 0.0);
  CHECK(e.power_term == 0.0);
  CHECK(e.f_term == 0.0);
  CHECK(J.weak_action(z, profile(J, 0)) == 0.0);
  CHECK(J.sobolev_gradient(z).values().norm() == 0.0);
  CHECK(J.fibering(profile(J, 1), 0.0) == 0.0);
}

TEST_CASE("pure q-power functional against closed form") {
  // alpha0 = 0, Cp = 0, g = 1, q-term only, beta = 0:
  // J(u) = ||u||^2 / 2 - |u|_q^q / q with ||u||^2 = 16 pi^2 and
  // |u|_q^q = pi^2 / ((2q+1)(2q+2)) for u = (1-r^2)^2.
  ModelParams m;
  m.beta = 0.0;
  m.kirchhoff = KirchhoffSpec::affine(1.0, 0.0);
  FunctionalSpec spec = FunctionalSpec::full(m);
  spec.with_nonlinearity = false;
  const GridPtr g = build_grid(64, GridScheme::spectral_even);
  const Energy J(g, spec);
  const auto u = RadialFunction::sample(g, bump);
  const double pi2 = kPi * kPi, q = m.q;
  const double expected = 16 * pi2 / 2 - pi2 / ((2 * q + 1) * (2 * q + 2)) / q;
  CHECK(J.energy(u).total == doctest::Approx(expected).epsilon(1e-12));
  CHECK(J.energy(u).f_term == 0.0);
}

TEST_CASE("identities between the derived quantities") {
  ModelParams m;
  m.cp = 10.0;
  const GridPtr g = build_grid(48, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  for (int k = 0; k < 5; ++k) {
    const auto u = 0.3 * profile(J, k);
    CHECK(J.weak_action(u, u) == doctest::Approx(J.nehari_residual(u)).epsilon(1e-13));
    CHECK(J.fibering(u, 1.0) == doctest::Approx(J.energy(u).total).epsilon(1e-13));
    CHECK(J.fibering_deriv(u, 1.0) == doctest::Approx(J.nehari_residual(u)).epsilon(1e-12));
    CHECK(J.norm_squared(u) == doctest::Approx(std::pow(w_norm(u, m.beta), 2)).epsilon(1e-12));
    const EnergyBreakdown e = J.energy(u);
    CHECK(e.total == doctest::Approx(e.kirchhoff_term - e.power_term - e.f_term).epsilon(1e-14));
  }
}

TEST_CASE("weak action matches centered differences") {
  ModelParams m;
  m.cp = 10.0;
  for (auto scheme : {GridScheme::spectral_even, GridScheme::uniform_fd}) {
    const GridPtr g = build_grid(scheme == GridScheme::spectral_even ? 48 : 120, scheme);
    const Energy J(g, FunctionalSpec::full(m));
    for (int k = 0; k < 10; ++k) {
      const auto u = 0.5 * profile(J, k);
      const auto phi = profile(J, 100 + k);
      const double eps = 1e-5;
      const double fd = (J.energy(u + eps * phi).total - J.energy(u - eps * phi).total) / (2 * eps);
      const double exact = J.weak_action(u, phi);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(std::abs(exact), 1e-3));
    }
  }
}

TEST_CASE("fibering derivatives match differences") {
  ModelParams m;
  m.cp = 10.0;
  const GridPtr g = build_grid(48, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  for (int k = 0; k < 5; ++k) {
    const auto u = profile(J, k);
    for (double t : {0.2, 0.7, 1.3}) {
      const double h = 1e-5 * t;
      const double d1 = (J.fibering(u, t + h) - J.fibering(u, t - h)) / (2 * h);
      const double d2 = (J.fibering_deriv(u, t + h) - J.fibering_deriv(u, t - h)) / (2 * h);
      CHECK(d1 == doctest::Approx(J.fibering_deriv(u, t)).epsilon(1e-7));
      CHECK(d2 == doctest::Approx(J.fibering_second_deriv(u, t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("Sobolev gradient represents the weak action") {
  ModelParams m;
  m.cp = 10.0;
  for (auto scheme : {GridScheme::spectral_even, GridScheme::uniform_fd}) {
    const GridPtr g = build_grid(40, scheme);
    const Energy J(g, FunctionalSpec::full(m));
    CHECK(J.metric().gram_condition() < SobolevMetric::kMaxGramCondition);
    const auto u = 0.4 * profile(J, 3);
    const auto v = J.sobolev_gradient(u);
    CHECK(v.boundary_defect() <= 1e-9 * v.values().norm());
    for (int k = 0; k < 4; ++k) {
      const auto phi = profile(J, 50 + k);
      CHECK(J.inner(v, phi) ==
            doctest::Approx(J.weak_action(u, phi)).epsilon(1e-9).scale(1e-12));
    }
  }
}

TEST_CASE("metric basis is orthonormal") {
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const SobolevMetric metric(g, 0.5);
  const Eigen::MatrixXd& B = metric.basis();
  CHECK(B.cols() == 30);
  const Eigen::MatrixXd L = Eigen::MatrixXd(g->laplacian()) * B;
  const Eigen::MatrixXd gram = L.transpose() * metric.weighted_ball_weights().asDiagonal() * L;
  CHECK((gram - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("convenience wrappers agree with Energy") {
  ModelParams m;
  m.cp = 10.0;
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  const auto u = 0.5 * profile(J, 0), phi = profile(J, 1);
  CHECK(energy(u, m).total == J.energy(u).total);
  CHECK(weak_action(u, phi, m) == J.weak_action(u, phi));
  CHECK(nehari_residual(u, m) == J.nehari_residual(u));
  CHECK(fibering(u, 0.7, m) == J.fibering(u, 0.7));
  CHECK(fibering_deriv(u, 0.7, m) == J.fibering_deriv(u, 0.7));
}

}
