#include "nehari/nehari_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace nehari {

// ---------------------------------------------------------------- projection

double nehari_scale(const Energy& functional, const Energy::Fibre& fb,
                    const ProjectionOptions& opts) {
  if (!(fb.norm_sq > 0.0) || !std::isfinite(fb.norm_sq))
    throw std::invalid_argument("project: direction must be nonzero and finite");

  const double t_cap = 0.999 * functional.fibre_limit(fb);
  auto psi = [&](double t) { return functional.fibering_deriv(fb, t); };

  double lo = 0.0;
  double hi = 0.0;
  double t = std::min(1.0, t_cap);
  double value = psi(t);
  if (value > 0.0) {
    lo = t;
    while (true) {
      if (t >= t_cap)
        throw ProjectionFailure(
            "project: fibering derivative still positive at the overflow "
            "guard (t = " + std::to_string(t) + ")");
      t = std::min(2.0 * t, t_cap);
      value = psi(t);
      if (value <= 0.0) {
        hi = t;
        break;
      }
      lo = t;
    }
  } else {
    hi = t;
    while (true) {
      t *= 0.5;
      if (t < opts.t_floor)
        throw ProjectionFailure(
            "project: fibering derivative nonpositive down to t = " +
            std::to_string(opts.t_floor));
      value = psi(t);
      if (value > 0.0) {
        lo = t;
        break;
      }
      hi = t;
    }
  }

  // psi(lo) > 0 >= psi(hi)
  while (hi - lo > opts.rel_width * hi) {
    const double mid = hi > 2.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (psi(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }

  // Newton polish, kept inside the bracket and only while |psi| drops.
  double best = 0.5 * (lo + hi);
  double best_abs = std::abs(psi(best));
  for (int k = 0; k < opts.newton_steps && best_abs > 0.0; ++k) {
    const double slope = functional.fibering_second_deriv(fb, best);
    if (!(slope != 0.0) || !std::isfinite(slope)) break;
    const double next = best - psi(best) / slope;
    if (!(next >= lo && next <= hi)) break;
    const double next_abs = std::abs(psi(next));
    if (!(next_abs < best_abs)) break;
    best = next;
    best_abs = next_abs;
  }

  return best;
}

NehariPoint project(const Energy& functional, const RadialFunction& u,
                    const ProjectionOptions& opts) {
  const double best = nehari_scale(functional, functional.fibre(u), opts);
  NehariPoint pt{u, best, best * u, 0.0, 0.0, 0.0};
  pt.energy = functional.energy(pt.projected).total;
  pt.residual = functional.nehari_residual(pt.projected);
  pt.norm = std::sqrt(functional.norm_squared(pt.projected));
  return pt;
}

NehariPoint project(const RadialFunction& u, const ModelParams& params) {
  return project(Energy(u.grid(), FunctionalSpec::full(params)), u);
}

bool t_leq_one_check(const Energy& functional, const RadialFunction& u) {
  if (!(functional.norm_squared(u) > 0.0))
    throw std::invalid_argument("t_leq_one_check: u must be nonzero");
  if (functional.nehari_residual(u) > 0.0)
    throw std::invalid_argument(
        "t_leq_one_check: precondition <J'(u),u> <= 0 violated");
  return project(functional, u).t_u <= 1.0 + 1e-10;
}

bool t_leq_one_check(const RadialFunction& u, const ModelParams& params) {
  return t_leq_one_check(Energy(u.grid(), FunctionalSpec::full(params)), u);
}

// ------------------------------------------------------------ random starts

RadialFunction random_start(const Energy& functional, std::uint64_t seed,
                            int index, int modes) {
  const GridPtr& grid = functional.grid();
  modes = std::clamp(modes, 1, grid->size() - 2);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x6e656861u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coeff(modes);
  for (int k = 0; k < modes; ++k) coeff[k] = normal(rng) / (1.0 + double(k) * k);

  // sum_k c_k (1 - s)^2 P_k(2s - 1), P_k Legendre.
  auto profile = [&](double r) {
    const double s = r * r;
    const double x = 2.0 * s - 1.0;
    double p_prev = 1.0;
    double p = x;
    double acc = coeff[0];
    if (modes > 1) acc += coeff[1] * x;
    for (int k = 2; k < modes; ++k) {
      const double next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
      p_prev = p;
      p = next;
      acc += coeff[k] * p;
    }
    return (1.0 - s) * (1.0 - s) * acc;
  };
  RadialFunction u = RadialFunction::sample(grid, profile).clamped();
  const double norm = std::sqrt(functional.norm_squared(u));
  return (1.0 / norm) * u;
}

// ---------------------------------------------------------------- descent

double coercivity_floor(const Energy& functional, const RadialFunction& u) {
  const FunctionalSpec& spec = functional.spec();
  if (spec.with_nonlinearity) {
    const double g0 = spec.kirchhoff.g_at_zero();
    return (0.25 - 1.0 / spec.power_exponent) * g0 * functional.norm_squared(u);
  }
  const double pp =
      std::pow(lebesgue_norm(u, spec.power_exponent), spec.power_exponent);
  return (0.25 - 1.0 / spec.power_exponent) * pp;
}

namespace {

constexpr double kArmijo = 1e-4;

struct StartRun {
  StartOutcome outcome;
  Vector best_values;
};

StartRun run_start(const Energy& functional, const SearchConfig& cfg,
                   int index) {
  StartRun run;
  StartOutcome& out = run.outcome;
  out.index = index;

  RadialFunction dir =
      random_start(functional, cfg.seed, index, cfg.start_modes);
  NehariPoint pt = project(functional, dir);
  out.min_norm = pt.norm;
  out.lowest_trial_energy = pt.energy;
  auto note_point = [&](const NehariPoint& p) {
    out.min_norm = std::min(out.min_norm, p.norm);
    out.lowest_trial_energy = std::min(out.lowest_trial_energy, p.energy);
    if (p.energy < coercivity_floor(functional, p.projected) - 1e-9)
      ++out.coercivity_violations;
  };
  note_point(pt);
  out.history.push_back(pt.energy);

  const KirchhoffSpec& kir = functional.spec().kirchhoff;
  // Both halves of the gradient, g u and the Riesz load, have size g ||u||
  // on the Nehari set, so that is the scale the stopping test uses.
  auto scale = [&](const NehariPoint& p) {
    return kirchhoff_g(kir, p.norm * p.norm) * p.norm;
  };
  RadialFunction grad = functional.sobolev_gradient(pt.projected);
  double gnorm = std::sqrt(functional.norm_squared(grad));

  out.status = "max_iter";
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    if (gnorm <= cfg.tol * scale(pt)) {
      out.status = "converged";
      break;
    }
    // The tangent Hessian is g I minus a compact part, so 1/g is the
    // natural step; growing past it parks the step at the stability edge.
    double step = 1.0 / kirchhoff_g(kir, pt.norm * pt.norm);
    const double slope = gnorm * gnorm;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries, step *= 0.5) {
      RadialFunction trial = (pt.projected - step * grad).clamped();
      const double tn = std::sqrt(functional.norm_squared(trial));
      if (!(tn > 0.0)) continue;
      std::optional<NehariPoint> cand;
      try {
        cand = project(functional, (1.0 / tn) * trial);
      } catch (const ProjectionFailure&) {
        continue;
      } catch (const RangeError&) {
        continue;
      }
      note_point(*cand);
      if (cand->energy <= pt.energy - kArmijo * step * slope) {
        pt = std::move(*cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.status = "stalled";
      break;
    }
    out.history.push_back(pt.energy);
    grad = functional.sobolev_gradient(pt.projected);
    gnorm = std::sqrt(functional.norm_squared(grad));
  }
  out.iterations = it;
  out.energy = pt.energy;
  out.gradient_norm = gnorm;
  out.norm = pt.norm;
  out.converged = gnorm <= cfg.tol * scale(pt);
  if (out.converged) out.status = "converged";
  run.best_values = pt.projected.values();
  return run;
}

}  // namespace

GroundStateResult minimize_on_nehari(const Energy& functional,
                                     const SearchConfig& cfg) {
  if (cfg.starts < 1) throw std::invalid_argument("starts must be >= 1");
  if (cfg.max_iter < 0) throw std::invalid_argument("max_iter must be >= 0");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  // Build the metric once before fanning out.
  (void)functional.metric();

  std::vector<StartRun> runs(cfg.starts);
  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.starts);
  if (threads == 1) {
    for (int i = 0; i < cfg.starts; ++i) runs[i] = run_start(functional, cfg, i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int i = next++; i < cfg.starts; i = next++)
            runs[i] = run_start(functional, cfg, i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Best start by (energy, index): independent of scheduling.
  int best = 0;
  for (int i = 1; i < cfg.starts; ++i)
    if (runs[i].outcome.energy < runs[best].outcome.energy) best = i;

  RadialFunction minimizer(functional.grid(), runs[best].best_values);
  GroundStateResult res(minimizer);
  res.m = runs[best].outcome.energy;
  res.gradient_norm = runs[best].outcome.gradient_norm;
  res.minimizer_norm = runs[best].outcome.norm;
  res.residual = functional.nehari_residual(minimizer);
  res.breakdown = functional.energy(minimizer);
  res.starts = cfg.starts;
  res.best_start = best;
  res.converged = runs[best].outcome.converged;
  res.kappa = std::numeric_limits<double>::infinity();
  for (auto& r : runs) {
    res.kappa = std::min(res.kappa, r.outcome.min_norm);
    res.per_start.push_back(std::move(r.outcome));
  }
  return res;
}

GroundStateResult ground_state(const ModelParams& params, const GridPtr& grid,
                               const SearchConfig& cfg) {
  return minimize_on_nehari(Energy(grid, FunctionalSpec::full(params)), cfg);
}

AuxResult aux_ground_state(const ModelParams& params, const GridPtr& grid,
                           const SearchConfig& cfg) {
  if (!(params.p > 4.0))
    throw std::invalid_argument("p must exceed 4");
  Energy functional(grid, FunctionalSpec::auxiliary(params));
  GroundStateResult run = minimize_on_nehari(functional, cfg);
  AuxResult aux{run.minimizer, run.m, 0.0, std::move(run)};
  aux.p_norm_p = std::pow(lebesgue_norm(aux.w_p, params.p), params.p);
  return aux;
}

// ----------------------------------------------------------- level bounds

double quadratic_power_max(double A, double cp, double p) {
  if (!(A > 0.0 && cp > 0.0 && p > 2.0))
    throw std::invalid_argument("quadratic_power_max: need A, Cp > 0 and p > 2");
  return A * std::pow(2.0 * A / cp, 2.0 / (p - 2.0)) * (p - 2.0) / p;
}

namespace {

struct Taus {
  double statement;
  double proof;
};

Taus taus(double m_p, const ModelParams& params) {
  const double g0 = params.g0();
  const double g1 = kirchhoff_g(params.kirchhoff, 1.0);
  const double p = params.p;
  const double q = params.q;
  return {g1 / (2.0 * g0) + g1 / (g0 * g0) * p / (p - 4.0) * m_p,
          g1 / (2.0 * g0) + g1 / (4.0 * g0 * g0) * p * q / (p - q) * m_p};
}

double threshold_for(double tau, double m_p, const ModelParams& params) {
  const double p = params.p;
  const double q = params.q;
  const double g0 = params.g0();
  const double ab = alpha_beta(params.beta);
  const double inner =
      4.0 * q * q * (p - 2.0) * m_p / (g0 * (q - 4.0) * (p - q)) *
      std::pow(2.0 * (params.alpha0 + params.delta) / ab, 1.0 - params.beta);
  return std::max(1.0, 2.0 * std::pow(tau, p / 2.0) *
                           std::pow(inner, (p - 2.0) / 2.0));
}

}  // namespace

CpThreshold min_admissible_cp(double m_p, const ModelParams& params) {
  const Taus t = taus(m_p, params);
  return {threshold_for(t.statement, m_p, params),
          threshold_for(t.proof, m_p, params)};
}

CpThreshold min_admissible_cp(const AuxResult& aux, const ModelParams& params) {
  return min_admissible_cp(aux.m_p, params);
}

bool BoundsReport::all_pass() const {
  return aux_ceiling_holds && norm_bound_holds && level_bound_holds && chain_consistent &&
         (!level_ceiling_holds.has_value() || *level_ceiling_holds);
}

BoundsReport level_bounds(double m, double m_p, double p_norm_p,
                          const ModelParams& params) {
  BoundsReport b;
  const double p = params.p;
  const double q = params.q;
  const double cp = params.cp;
  b.m = m;
  b.m_p = m_p;
  b.p_norm_p = p_norm_p;
  b.cp = cp;
  const Taus t = taus(m_p, params);
  b.tau_statement = t.statement;
  b.tau_proof = t.proof;
  b.alpha_beta = alpha_beta(params.beta);
  b.cp_threshold = min_admissible_cp(m_p, params);
  b.level_ceiling = params.g0() * (q - 4.0) / (4.0 * q) *
               std::pow(b.alpha_beta / (2.0 * (params.alpha0 + params.delta)),
                        1.0 - params.beta);
  b.aux_ceiling = p * q / (p - q) * m_p;

  auto lead = [&](double tau) {
    return tau * std::pow(2.0 * tau / cp, 2.0 / (p - 2.0));
  };
  b.norm_bound_statement = lead(t.statement) * (p - 2.0) / p * p_norm_p;
  b.norm_bound_proof = lead(t.proof) * (p - 2.0) / p * p_norm_p;
  b.level_bound_statement = lead(t.statement) * q * (p - 2.0) / (p - q) * m_p;
  b.level_bound_proof = lead(t.proof) * q * (p - 2.0) / (p - q) * m_p;

  b.aux_ceiling_holds = p_norm_p <= b.aux_ceiling + kBoundSlack;
  b.norm_bound_holds = m <= b.norm_bound_proof + kBoundSlack;
  b.level_bound_holds = m <= b.level_bound_proof + kBoundSlack;
  b.cp_admissible = cp > b.cp_threshold.statement;
  if (b.cp_admissible) b.level_ceiling_holds = m <= b.level_ceiling + kBoundSlack;
  b.chain_consistent = b.norm_bound_proof <= b.level_bound_proof + kBoundSlack;
  return b;
}

BoundsReport level_bounds(double m, const AuxResult& aux,
                          const ModelParams& params) {
  return level_bounds(m, aux.m_p, aux.p_norm_p, params);
}

}  // namespace nehari
