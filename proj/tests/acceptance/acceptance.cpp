// One PASS/FAIL line per acceptance criterion; exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nehari/verify_cli.hpp"

using namespace nehari;
using namespace nehari::cli;

namespace {

using Clock = std::chrono::steady_clock;

struct Line {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Returns the wall time of the named checks (shared blocks counted once).
double require_checks(Line& line, const SuiteReport& rep,
                      const std::vector<std::string>& names) {
  double secs = 0.0;
  std::vector<double> seen;
  for (const auto& n : names) {
    const SuiteCheck* c = rep.find(n);
    if (!c) {
      line.require(false, n + " missing");
      continue;
    }
    line.require(c->status == CheckStatus::pass, n + ": " + c->detail);
    if (std::find(seen.begin(), seen.end(), c->seconds) == seen.end()) {
      seen.push_back(c->seconds);
      secs += c->seconds;
    }
  }
  return secs;
}

double bump(double r) { return (1 - r * r) * (1 - r * r); }

}  // namespace

int main() {
  const RunConfig defaults;
  int failures = 0;
  auto report = [&](int k, const char* title, const Line& line, double secs) {
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", line.pass ? "PASS" : "FAIL", k, title,
                secs, line.note.empty() ? "" : " -- ", line.note.c_str());
    std::fflush(stdout);
    if (!line.pass) ++failures;
  };

  // 1. Discretization oracles, computed directly.
  {
    const auto t0 = Clock::now();
    Line line;
    const GridPtr g = build_grid(64, GridScheme::spectral_even);
    const auto u = RadialFunction::sample(g, bump);
    const double wn = w_norm(u, 0.0);
    line.require(std::abs(wn - 4 * kPi) <= 1e-8, "w_norm " + std::to_string(wn));
    const auto L = laplacian4(u);
    double lap_err = 0.0;
    for (int i = 0; i < g->size(); ++i) {
      const double r = g->nodes()[i];
      lap_err = std::max(lap_err, std::abs(L[i] - (-16 + 24 * r * r)));
    }
    line.require(lap_err <= 1e-10, "laplacian error " + std::to_string(lap_err));
    const double vol = ball_integral(RadialFunction::sample(g, [](double) { return 1.0; }));
    line.require(std::abs(vol - kPi * kPi / 2) <= 1e-12, "ball volume");
    const double secs = seconds_since(t0);
    line.require(secs < 1.0, "slower than 1 s");
    report(1, "discretization oracles", line, secs);
  }

  // The suite at the default configuration backs criteria 2-4 and 6-10.
  const SuiteReport suite = run_suite(defaults);

  {
    Line line;
    const double secs =
        require_checks(line, suite, {"energy.weak_action_fd", "energy.fibering_deriv_fd"});
    line.require(secs < 10.0, "slower than 10 s");
    report(2, "derivative consistency", line, secs);
  }
  {
    Line line;
    const double secs =
        require_checks(line, suite, {"nehari.scalar_quartic_oracle",
                                     "nehari.pure_power_closed_form", "nehari.scaling_law"});
    report(3, "projection oracles", line, secs);
  }
  {
    Line line;
    const double secs = require_checks(
        line, suite, {"nehari.unique_sign_change", "nehari.fibering_max_at_t_u",
                      "nehari.residual_sign_t_le_1", "nehari.coercivity_floor"});
    line.require(secs < 60.0, "slower than 1 min");
    report(4, "Nehari invariants on 200 directions", line, secs);
  }

  // 5. Ground state, spectral n=64 against uniform FD n=400 at one Cp.
  {
    const auto t0 = Clock::now();
    Line line;
    try {
      const GridPtr spectral = build_grid(64, GridScheme::spectral_even);
      const CpResolution cp = resolve_cp(defaults, spectral);
      ModelParams params = defaults.params;
      params.cp = cp.cp;
      const GroundStateResult gs = ground_state(params, spectral, defaults.search);
      const double nu = gs.minimizer_norm;
      line.require(gs.converged, "spectral run not converged");
      line.require(gs.gradient_norm <= 1e-6 * (1 + nu), "gradient norm");
      line.require(std::abs(gs.residual) <= 1e-10 * (1 + nu * nu), "Nehari residual");
      line.require(gs.m > 0.0, "m <= 0");

      const GridPtr fd = build_grid(400, GridScheme::uniform_fd);
      const GroundStateResult gf = ground_state(params, fd, defaults.search);
      line.require(gf.converged, "FD run not converged");
      const double rel = std::abs(gs.m - gf.m) / std::abs(gs.m);
      line.require(rel <= 1e-4, "spectral/FD relative gap " + std::to_string(rel));
      char buf[160];
      std::snprintf(buf, sizeof buf, "m = %.10g (spectral), %.10g (FD), gap %.2e", gs.m, gf.m, rel);
      if (line.pass) line.note = buf;
    } catch (const std::exception& e) {
      line.require(false, e.what());
    }
    const double secs = seconds_since(t0);
    line.require(secs < 300.0, "slower than 5 min");
    report(5, "ground-state quality and cross-scheme agreement", line, secs);
  }

  {
    Line line;
    // The auto-Cp auxiliary solve runs before the suite's checks; time it here.
    const auto t0 = Clock::now();
    const CpResolution cp = resolve_cp(defaults, build_grid(defaults.n, defaults.scheme));
    double secs = seconds_since(t0);
    secs += require_checks(line, suite, {"solver.ground_state", "bounds.aux_ceiling",
                                         "bounds.level_bound", "bounds.level_ceiling"});
    line.require(cp.automatic, "Cp not automatic");
    line.require(secs < 300.0, "slower than 5 min");
    report(6, "auxiliary and level bounds at auto Cp", line, secs);
  }
  {
    const auto t0 = Clock::now();
    Line line;
    double secs = 0.0;
    for (const auto& c : suite.checks)
      if (c.name.rfind("hypothesis.", 0) == 0) {
        line.require(c.status == CheckStatus::pass, c.name);
        secs = std::max(secs, c.seconds);
      }
    line.require(suite.find("hypothesis.mutation_detected") != nullptr, "mutation check missing");
    RunConfig faulty = defaults;
    faulty.inject_fault = "laplacian-sign";
    const SuiteReport bad = run_suite(faulty);
    const SuiteCheck* lap = bad.find("radial.laplacian_oracle");
    line.require(lap && lap->status == CheckStatus::fail, "flipped Laplacian not detected");
    line.require(!bad.overall(), "faulty suite passed overall");
    report(7, "hypothesis suite and mutation detection", line, secs + seconds_since(t0));
  }
  {
    Line line;
    const double secs =
        require_checks(line, suite, {"radial.pointwise_bound", "radial.sobolev_ratio"});
    report(8, "radial estimates", line, secs);
  }
  {
    Line line;
    const double secs = require_checks(line, suite, {"adams.sampling"});
    if (const SuiteCheck* c = suite.find("adams.sampling"))
      if (c->witness.contains("sampled_sup"))
        line.note = "sampled sup " + c->witness["sampled_sup"].dump();
    report(9, "Adams sampling", line, secs);
  }
  {
    const auto t0 = Clock::now();
    Line line;
    require_checks(line, suite, {"determinism.repeat"});
    const SuiteReport again = run_suite(defaults);
    const Json a = to_json(suite, false), b = to_json(again, false);
    line.require(a.dump() == b.dump(), "suite payloads differ between runs");
    report(10, "determinism", line, seconds_since(t0));
  }

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
