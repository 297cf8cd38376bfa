#pragma once

// The energy functional
//
//   J(u) = 1/2 G(||u||^2) - 1/r int_B |u|^r dx - int_B F(u) dx
//
// on the clamped radial space, its first variation, the Riesz representative
// of that variation in the weighted inner product (the Sobolev gradient) and
// the fibering map t -> J(t u). With r = q and F present this is the
// Kirchhoff problem; with r = p and no F it is the pure-power auxiliary
// problem. All integrals use the grid quadrature, so the discrete chain rule
// holds to rounding.

#include <memory>

#include "nehari/model.hpp"
#include "nehari/radial_core.hpp"

namespace nehari {

struct FunctionalSpec {
  KirchhoffSpec kirchhoff;
  double beta = 0.5;
  double power_exponent = 5.0;
  bool with_nonlinearity = true;
  NonlinearitySpec nonlinearity;

  // J: power term |u|^q plus F.
  static FunctionalSpec full(const ModelParams& params);
  // J_p: power term |u|^p only.
  static FunctionalSpec auxiliary(const ModelParams& params);
};

struct EnergyBreakdown {
  double kirchhoff_term = 0.0;  // G(||u||^2) / 2
  double power_term = 0.0;      // |u|_r^r / r
  double f_term = 0.0;          // int_B F(u)
  double total = 0.0;
};

// Raised when the weighted Gram matrix is too ill-conditioned to invert.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Weighted inner product data for one (grid, beta): nodal weights mu_i w(r_i)
// and a basis of the clamped subspace that is orthonormal for <.,.>.
class SobolevMetric {
 public:
  static constexpr double kMaxGramCondition = 1e14;

  SobolevMetric(GridPtr grid, double beta);

  const GridPtr& grid() const { return grid_; }
  double beta() const { return beta_; }
  const Vector& weighted_ball_weights() const { return muw_; }
  // n x (n-2), columns satisfy <b_k, b_l> = delta_kl.
  const Eigen::MatrixXd& basis() const { return basis_; }
  // basis * basis^T: maps nodal loads to their Riesz representative.
  const RowMatrix& green() const { return green_; }
  // Condition number of the Gram matrix of the Euclidean clamped basis.
  double gram_condition() const { return gram_condition_; }

 private:
  GridPtr grid_;
  double beta_;
  Vector muw_;
  Eigen::MatrixXd basis_;
  RowMatrix green_;
  double gram_condition_ = 0.0;
};

class Energy {
 public:
  Energy(GridPtr grid, FunctionalSpec spec);

  const GridPtr& grid() const { return grid_; }
  const FunctionalSpec& spec() const { return spec_; }

  double norm_squared(const RadialFunction& u) const;
  double inner(const RadialFunction& u, const RadialFunction& v) const;

  EnergyBreakdown energy(const RadialFunction& u) const;
  // <J'(u), phi> = g(||u||^2) <u,phi> - int |u|^(r-2) u phi - int f(u) phi.
  double weak_action(const RadialFunction& u, const RadialFunction& phi) const;
  // <J'(u), u>.
  double nehari_residual(const RadialFunction& u) const;
  // v with <v, phi> = <J'(u), phi> for every clamped phi. Throws
  // IllConditioned when the Gram condition estimate exceeds 1e14.
  RadialFunction sobolev_gradient(const RadialFunction& u) const;

  double fibering(const RadialFunction& u, double t) const;
  double fibering_deriv(const RadialFunction& u, double t) const;
  double fibering_second_deriv(const RadialFunction& u, double t) const;

  const SobolevMetric& metric() const;

  // Moments of a fixed direction, reused along its fibre.
  struct Fibre {
    Vector values;
    double norm_sq = 0.0;   // ||u||^2
    double power_int = 0.0; // int |u|^r
    double max_abs = 0.0;
  };
  Fibre fibre(const RadialFunction& u) const;
  double fibering(const Fibre& fb, double t) const;
  double fibering_deriv(const Fibre& fb, double t) const;
  double fibering_second_deriv(const Fibre& fb, double t) const;

  // Largest t with t*max|u| inside the nonlinearity's overflow guard.
  double fibre_limit(const Fibre& fb) const;

 private:
  Vector nodal_load(const Vector& u) const;  // |u|^(r-2) u + f(u)
  double power_integral(const Vector& u) const;

  GridPtr grid_;
  FunctionalSpec spec_;
  Vector mu_;
  Vector muw_;
  struct LazyMetric;
  std::shared_ptr<LazyMetric> metric_;
};

// Convenience wrappers over Energy(grid, FunctionalSpec::full(params)).
EnergyBreakdown energy(const RadialFunction& u, const ModelParams& params);
double weak_action(const RadialFunction& u, const RadialFunction& phi,
                   const ModelParams& params);
double nehari_residual(const RadialFunction& u, const ModelParams& params);
RadialFunction sobolev_gradient(const RadialFunction& u,
                                const ModelParams& params);
double fibering(const RadialFunction& u, double t, const ModelParams& params);
double fibering_deriv(const RadialFunction& u, double t,
                      const ModelParams& params);

}  // namespace nehari
