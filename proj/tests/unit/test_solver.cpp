#include <cmath>

#include "doctest.h"
#include "nehari/nehari_solver.hpp"

using namespace nehari;

namespace {

ModelParams moderate() {
  ModelParams m;
  m.cp = 10.0;
  return m;
}

SearchConfig small_search() {
  SearchConfig s;
  s.starts = 3;
  s.max_iter = 2000;
  s.threads = 1;
  return s;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("scalar quartic oracle") {
  // g(t) = 1 + t, p = 6, ||u|| = 1, |u|_6^6 = 1: t^4 - t^2 - 1 = 0.
  ModelParams m = moderate();
  const GridPtr g = build_grid(16, GridScheme::spectral_even);
  const Energy Jp(g, FunctionalSpec::auxiliary(m));
  Energy::Fibre fb;
  fb.values = Vector::Zero(g->size());
  fb.norm_sq = 1.0;
  fb.power_int = 1.0;
  fb.max_abs = 1.0;
  CHECK(std::abs(nehari_scale(Jp, fb) - 1.2720196495140689) <= 1e-9);
}

TEST_CASE("pure power closed form") {
  ModelParams m = moderate();
  m.kirchhoff = KirchhoffSpec::affine(1.5, 0.0);
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const Energy Jp(g, FunctionalSpec::auxiliary(m));
  for (int k = 0; k < 5; ++k) {
    const auto u = random_start(Jp, 5, k, 12);
    const Energy::Fibre fb = Jp.fibre(u);
    const double exact = std::pow(1.5 * fb.norm_sq / fb.power_int, 1.0 / (m.p - 2));
    CHECK(project(Jp, u).t_u == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("projection lands on the Nehari set") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(40, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  for (int k = 0; k < 10; ++k) {
    const auto u = random_start(J, 7, k, 16);
    const NehariPoint pt = project(J, u);
    CHECK(pt.t_u > 0.0);
    // Residual scale is g(||u||^2) ||u||^2, not ||u||^2.
    const double n2 = pt.norm * pt.norm;
    CHECK(std::abs(pt.residual) <= 1e-10 * (1 + kirchhoff_g(m.kirchhoff, n2) * n2));
    CHECK(pt.energy >= coercivity_floor(J, pt.projected) - 1e-12);
    // A maximum along the fibre.
    CHECK(pt.energy >= J.fibering(u, 0.9 * pt.t_u));
    CHECK(pt.energy >= J.fibering(u, 1.1 * pt.t_u));

    // Scaling law and the fixed point.
    for (double lambda : {0.5, 2.0, 10.0})
      CHECK(project(J, lambda * u).t_u == doctest::Approx(pt.t_u / lambda).epsilon(1e-9));
    CHECK(project(J, pt.projected).t_u == doctest::Approx(1.0).epsilon(1e-9));
    const RadialFunction twice = 2.0 * pt.projected;
    CHECK(J.nehari_residual(twice) < 0.0);
    CHECK(project(J, twice).t_u == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(t_leq_one_check(J, twice));
  }
}

TEST_CASE("projection preconditions") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(16, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  CHECK_THROWS_AS(project(J, RadialFunction::zero(g)), std::invalid_argument);
  const auto u = random_start(J, 1, 0, 8);
  const NehariPoint pt = project(J, u);
  // Inside the Nehari set the residual is positive: precondition violated.
  CHECK_THROWS_AS(t_leq_one_check(J, 0.5 * pt.projected), std::invalid_argument);
}

TEST_CASE("random starts are clamped, unit-norm and reproducible") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const Energy J(g, FunctionalSpec::full(m));
  const auto a = random_start(J, 11, 2, 16);
  CHECK(J.norm_squared(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.boundary_defect() <= 1e-10);
  CHECK(random_start(J, 11, 2, 16).values() == a.values());
  CHECK(random_start(J, 11, 3, 16).values() != a.values());
}

TEST_CASE("ground state converges and dominates the floor") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const GroundStateResult gs = ground_state(m, g, small_search());
  CHECK(gs.converged);
  CHECK(gs.m > 0.0);
  CHECK(gs.starts == 3);
  CHECK(gs.per_start.size() == 3);
  const double n2 = gs.minimizer_norm * gs.minimizer_norm;
  const double gn = kirchhoff_g(m.kirchhoff, n2);
  CHECK(gs.gradient_norm <= small_search().tol * gn * gs.minimizer_norm);
  CHECK(std::abs(gs.residual) <= 1e-10 * (1 + gn * n2));
  CHECK(gs.kappa > 0.0);
  CHECK(gs.kappa <= gs.minimizer_norm * (1 + 1e-12));
  for (const auto& s : gs.per_start) {
    CHECK(gs.m <= s.energy);
    CHECK(s.coercivity_violations == 0);
    for (std::size_t i = 1; i < s.history.size(); ++i) CHECK(s.history[i] <= s.history[i - 1]);
  }
}

TEST_CASE("ground state is deterministic across schedules") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(24, GridScheme::spectral_even);
  SearchConfig a = small_search();
  SearchConfig b = a;
  b.threads = 3;
  const GroundStateResult x = ground_state(m, g, a);
  const GroundStateResult y = ground_state(m, g, b);
  CHECK(x.m == y.m);
  CHECK(x.minimizer.values() == y.minimizer.values());
  CHECK(x.best_start == y.best_start);
}

TEST_CASE("search configuration is validated") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(16, GridScheme::spectral_even);
  SearchConfig s;
  s.starts = 0;
  CHECK_THROWS_AS(ground_state(m, g, s), std::invalid_argument);
  s = SearchConfig{};
  s.tol = 0.0;
  CHECK_THROWS_AS(ground_state(m, g, s), std::invalid_argument);
}

TEST_CASE("auxiliary level") {
  const ModelParams m = moderate();
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  const AuxResult aux = aux_ground_state(m, g, small_search());
  CHECK(aux.run.converged);
  CHECK(aux.m_p > 0.0);
  // |w_p|_p^p <= pq/(p-q) m_p
  CHECK(aux.p_norm_p <= m.p * m.q / (m.p - m.q) * aux.m_p + kBoundSlack);
  ModelParams low = m;
  low.p = 4.0;
  CHECK_THROWS_AS(aux_ground_state(low, g, small_search()), std::invalid_argument);
}

TEST_CASE("quadratic-power maximum") {
  CHECK(quadratic_power_max(1.0, 2.0, 6.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(quadratic_power_max(0.0, 2.0, 6.0), std::invalid_argument);
}

TEST_CASE("Cp threshold and level ceiling") {
  ModelParams m;
  const CpThreshold t0 = min_admissible_cp(0.0, m);
  CHECK(t0.statement == 1.0);
  CHECK(t0.proof == 1.0);
  const CpThreshold t = min_admissible_cp(1.0, m);
  CHECK(t.statement > 1.0);
  CHECK(t.proof > 1.0);

  m.cp = 10.0;
  const BoundsReport b = level_bounds(0.0, 1e-3, 1e-3, m);
  CHECK(b.level_ceiling == doctest::Approx(2.6617).epsilon(1e-4));
  CHECK(b.alpha_beta == doctest::Approx(6234.18).epsilon(1e-6));
  CHECK(b.aux_ceiling == doctest::Approx(30.0 * 1e-3));
}

TEST_CASE("bounds chain at an admissible Cp") {
  ModelParams m;
  const GridPtr g = build_grid(32, GridScheme::spectral_even);
  SearchConfig s = small_search();
  const AuxResult aux = aux_ground_state(m, g, s);
  const CpThreshold th = min_admissible_cp(aux, m);
  m.cp = 1.1 * th.statement;
  const GroundStateResult gs = ground_state(m, g, s);
  const BoundsReport b = level_bounds(gs.m, aux, m);
  CHECK(b.cp_admissible);
  REQUIRE(b.level_ceiling_holds.has_value());
  CHECK(*b.level_ceiling_holds);
  CHECK(b.norm_bound_holds);
  CHECK(b.level_bound_holds);
  CHECK(b.aux_ceiling_holds);
  CHECK(b.all_pass());
}

}
