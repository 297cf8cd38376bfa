#include <cmath>

#include "doctest.h"
#include "nehari/model.hpp"

using namespace nehari;

namespace {
constexpr double kPiM = 3.14159265358979323846;
}

TEST_SUITE("model") {

TEST_CASE("affine Kirchhoff function") {
  const auto g = KirchhoffSpec::affine(1.0, 1.0);
  CHECK(kirchhoff_g(g, 2.0) == 3.0);
  CHECK(kirchhoff_G(g, 2.0) == 4.0);
  CHECK(kirchhoff_g_prime(g, 0.7) == 1.0);
  for (double s : {0.0, 0.3, 2.0, 17.0})
    for (double t : {0.0, 0.1, 5.0})
      CHECK(kirchhoff_G(g, s + t) - kirchhoff_G(g, s) - kirchhoff_G(g, t) ==
            doctest::Approx(s * t));
  CHECK_THROWS_AS(kirchhoff_g(g, -1.0), std::invalid_argument);
}

TEST_CASE("log-type Kirchhoff function") {
  const auto g = KirchhoffSpec::log_type();
  CHECK(g.g_at_zero() == 1.0);
  CHECK(kirchhoff_g(g, 0.0) == 1.0);
  CHECK(kirchhoff_g(g, std::exp(1.0) - 1) == doctest::Approx(2.0));
  // G' = g by central differences.
  for (double t : {0.1, 1.0, 4.0}) {
    const double h = 1e-5;
    CHECK((kirchhoff_G(g, t + h) - kirchhoff_G(g, t - h)) / (2 * h) ==
          doctest::Approx(kirchhoff_g(g, t)).epsilon(1e-8));
  }
  CHECK(parse_kirchhoff_kind("log-type") == KirchhoffKind::log_type);
  CHECK(to_string(KirchhoffKind::affine) == "affine");
  CHECK_THROWS(parse_kirchhoff_kind("cubic"));
}

TEST_CASE("nonlinearity values") {
  ModelParams m;
  const NonlinearitySpec f = m.nonlinearity();
  CHECK(f.gamma == 4.0);
  CHECK(f_eval(f, 0.0) == 0.0);
  CHECK(F_eval(f, 0.0) == 0.0);
  // 2 (1/2)^5 + (1/2)^5 e^(1/16)
  CHECK(f_eval(f, 0.5) == doctest::Approx(0.0625 + 0.03125 * std::exp(0.0625)).epsilon(1e-14));
  CHECK(f_eval(f, 0.5) == doctest::Approx(0.09576).epsilon(1e-4));
  CHECK(f_eval(f, -0.5) == -f_eval(f, 0.5));
  CHECK(F_eval(f, -0.7) == doctest::Approx(F_eval(f, 0.7)));
}

TEST_CASE("F' = f and f' by differences") {
  ModelParams m;
  const NonlinearitySpec f = m.nonlinearity();
  for (double t : {0.05, 0.3, 0.9, 1.4, -1.1}) {
    const double h = 1e-5 * std::max(1.0, std::abs(t));
    CHECK((F_eval(f, t + h) - F_eval(f, t - h)) / (2 * h) ==
          doctest::Approx(f_eval(f, t)).epsilon(1e-7));
    CHECK((f_eval(f, t + h) - f_eval(f, t - h)) / (2 * h) ==
          doctest::Approx(f_prime(f, t)).epsilon(1e-7));
  }
}

TEST_CASE("alpha0 = 0 collapses F to a pure power") {
  ModelParams m;
  m.alpha0 = 0.0;
  m.cp = 3.0;
  const NonlinearitySpec f = m.nonlinearity();
  CHECK(F_eval(f, 1.3) == doctest::Approx((3.0 + 1.0) * std::pow(1.3, 6) / 6).epsilon(1e-12));
}

TEST_CASE("overflow guard") {
  ModelParams m;
  const NonlinearitySpec f = m.nonlinearity();
  const double lim = overflow_limit(f);
  CHECK(lim == doctest::Approx(std::pow(kExpGuard, 0.25)));
  CHECK_NOTHROW(f_eval(f, 0.99 * lim));
  CHECK_THROWS_AS(f_eval(f, 1.01 * lim), RangeError);
}

TEST_CASE("Adams constant and growth exponent") {
  CHECK(alpha_beta(0.5) == doctest::Approx(64 * std::pow(kPiM, 4)).epsilon(1e-14));
  CHECK(alpha_beta(0.5) == doctest::Approx(6234.18).epsilon(1e-6));
  CHECK(alpha_beta(1e-9) == doctest::Approx(32 * kPiM * kPiM).epsilon(1e-6));
  CHECK(gamma_exp(0.5) == 4.0);
  CHECK(gamma_exp(0.0) == 2.0);
  CHECK(gamma_exp(0.75) == 8.0);
  CHECK_THROWS_AS(alpha_beta(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_exp(1.0), std::invalid_argument);
}

TEST_CASE("validation names the key") {
  auto message = [](ModelParams m, bool degenerate = false) -> std::string {
    try {
      validate(m, degenerate);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  ModelParams m;
  CHECK(message(m) == "");
  ModelParams q4 = m;
  q4.q = 4.0;
  CHECK(message(q4) == "q must exceed 4");
  ModelParams p4 = m;
  p4.q = 4.5;
  p4.p = 4.0;
  CHECK(message(p4) == "p must exceed 4");
  ModelParams pq = m;
  pq.p = 5.0;
  CHECK(message(pq) == "p must exceed q");
  ModelParams b0 = m;
  b0.beta = 0.0;
  CHECK(message(b0) == "beta must lie in (0,1)");
  CHECK(message(b0, true) == "");
  ModelParams cp = m;
  cp.cp = 1.0;
  CHECK(message(cp) == "Cp must exceed 1");
  ModelParams g0 = m;
  g0.kirchhoff.g0 = 0.0;
  CHECK(message(g0) == "kirchhoff.g0 must be positive");
}

TEST_CASE("hypotheses hold for the default family") {
  ModelParams m;
  m.cp = 10.0;
  const HypothesisReport rep = check_hypotheses(m, 400);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
  CHECK(rep.all_passed());
  CHECK(rep.checks.size() == 13);
  CHECK(rep.find("g_over_t_nonincreasing").passed);

  ModelParams logg = m;
  logg.kirchhoff = KirchhoffSpec::log_type();
  CHECK(check_hypotheses(logg, 200).all_passed());
}

TEST_CASE("a weakened nonlinearity is caught") {
  ModelParams m;
  m.cp = 10.0;
  m.power_weight = 0.5;
  m.exp_weight = 0.0;
  const HypothesisReport rep = check_hypotheses(m, 400);
  CHECK_FALSE(rep.find("lower_power_bound").passed);
  CHECK(rep.find("lower_power_bound").worst_margin < 0.0);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("check_hypotheses needs enough samples") {
  CHECK_THROWS_AS(check_hypotheses(ModelParams{}, 50), std::invalid_argument);
}

}
