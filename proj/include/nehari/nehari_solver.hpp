#pragma once

// Nehari-manifold machinery: the projection u -> t_u u onto the Nehari set,
// multi-start projected Sobolev-gradient descent for the ground-state level
// m (and for the auxiliary pure-power level m_p), and the level-bound
// arithmetic that ties m, m_p and Cp together.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nehari/energy.hpp"

namespace nehari {

// No sign change of the fibering derivative inside the admissible range.
class ProjectionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NehariPoint {
  RadialFunction direction;
  double t_u = 0.0;
  RadialFunction projected;  // t_u * direction
  double energy = 0.0;
  double residual = 0.0;     // <J'(projected), projected>
  double norm = 0.0;         // ||projected||
};

struct ProjectionOptions {
  // Bisection stops once (hi - lo) <= rel_width * hi.
  double rel_width = 1e-12;
  // Smallest scale tried while halving from t = 1.
  double t_floor = 1e-150;
  int newton_steps = 8;
};

// Unique maximizer of t -> J(t u) on (0, inf). Throws
// std::invalid_argument for u = 0 and ProjectionFailure when no
// sign change exists before the overflow guard.
NehariPoint project(const Energy& functional, const RadialFunction& u,
                    const ProjectionOptions& opts = {});
NehariPoint project(const RadialFunction& u, const ModelParams& params);

// The root t_u alone, from precomputed fibre moments.
double nehari_scale(const Energy& functional, const Energy::Fibre& fb,
                    const ProjectionOptions& opts = {});

// Whether the Nehari scale of u is at most 1. Requires
// <J'(u),u> <= 0 and u != 0 (std::invalid_argument otherwise).
bool t_leq_one_check(const Energy& functional, const RadialFunction& u);
bool t_leq_one_check(const RadialFunction& u, const ModelParams& params);

struct SearchConfig {
  int starts = 8;
  int max_iter = 5000;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  // Worker threads for the starts; 0 picks the hardware concurrency.
  int threads = 0;
  // Number of smooth clamped modes in a random start.
  int start_modes = 24;
};

// Random smooth clamped profile with ||u|| = 1, determined by (seed, index).
RadialFunction random_start(const Energy& functional, std::uint64_t seed,
                            int index, int modes);

struct StartOutcome {
  int index = 0;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
  // Projected energy after every accepted step (first entry: the start).
  std::vector<double> history;
  // Smallest ||t_u u|| seen at any projected point of this start.
  double min_norm = 0.0;
  // Projected points that violated the functional's coercivity bound.
  int coercivity_violations = 0;
  // Lowest projected energy among all trial points, accepted or not.
  double lowest_trial_energy = 0.0;
};

struct GroundStateResult {
  explicit GroundStateResult(RadialFunction u) : minimizer(std::move(u)) {}

  RadialFunction minimizer;
  double m = 0.0;
  double gradient_norm = 0.0;
  double residual = 0.0;
  double minimizer_norm = 0.0;
  EnergyBreakdown breakdown;
  int starts = 0;
  int best_start = -1;
  std::vector<StartOutcome> per_start;
  bool converged = false;
  // Smallest Nehari norm observed over the whole run (kappa).
  double kappa = 0.0;
};

// Lower bound on J over the Nehari set of `functional` at a point:
// (1/4 - 1/q) g0 ||u||^2 for J, (1/4 - 1/p) |u|_p^p for J_p.
double coercivity_floor(const Energy& functional, const RadialFunction& u);

// Multi-start projected descent on `functional`'s Nehari set.
GroundStateResult minimize_on_nehari(const Energy& functional,
                                     const SearchConfig& cfg);

GroundStateResult ground_state(const ModelParams& params, const GridPtr& grid,
                               const SearchConfig& cfg);

struct AuxResult {
  RadialFunction w_p;
  double m_p = 0.0;
  double p_norm_p = 0.0;  // |w_p|_p^p
  GroundStateResult run;
};

AuxResult aux_ground_state(const ModelParams& params, const GridPtr& grid,
                           const SearchConfig& cfg);

// max over xi > 0 of A xi^2 - Cp xi^p / p.
double quadratic_power_max(double A, double cp, double p);

struct CpThreshold {
  // tau = g(1)/(2g0) + g(1) p m_p / (g0^2 (p-4))
  double statement = 0.0;
  // tau = g(1)/(2g0) + g(1) pq m_p / (4 g0^2 (p-q)), the sharper variant
  double proof = 0.0;
};

CpThreshold min_admissible_cp(const AuxResult& aux, const ModelParams& params);
CpThreshold min_admissible_cp(double m_p, const ModelParams& params);

struct BoundsReport {
  double m = 0.0;
  double m_p = 0.0;
  double p_norm_p = 0.0;
  double cp = 0.0;
  double tau_statement = 0.0;
  double tau_proof = 0.0;
  double alpha_beta = 0.0;
  CpThreshold cp_threshold;
  // g0 (q-4)/(4q) (alpha_beta / (2(alpha0+delta)))^(1-beta)
  double level_ceiling = 0.0;
  // tau (2tau/Cp)^(2/(p-2)) times (p-2)/p |w_p|_p^p, resp. q(p-2)/(p-q) m_p
  double norm_bound_statement = 0.0;
  double norm_bound_proof = 0.0;
  double level_bound_statement = 0.0;
  double level_bound_proof = 0.0;
  double aux_ceiling = 0.0;  // pq/(p-q) m_p

  bool aux_ceiling_holds = false;  // |w_p|_p^p <= pq/(p-q) m_p
  bool norm_bound_holds = false;  // m <= norm_bound_proof
  bool level_bound_holds = false;  // m <= level_bound_proof
  bool cp_admissible = false;  // Cp > threshold (statement tau)
  // m <= level_ceiling, evaluated only when cp_admissible.
  std::optional<bool> level_ceiling_holds;
  bool chain_consistent = false;  // norm_bound_proof <= level_bound_proof

  bool all_pass() const;
};

inline constexpr double kBoundSlack = 1e-8;

BoundsReport level_bounds(double m, const AuxResult& aux,
                          const ModelParams& params);
BoundsReport level_bounds(double m, double m_p, double p_norm_p,
                          const ModelParams& params);

}  // namespace nehari
