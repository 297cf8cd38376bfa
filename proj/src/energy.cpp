#include "nehari/energy.hpp"

#include <cmath>
#include <mutex>

#include "nehari/kernels.hpp"

namespace nehari {

FunctionalSpec FunctionalSpec::full(const ModelParams& params) {
  FunctionalSpec s;
  s.kirchhoff = params.kirchhoff;
  s.beta = params.beta;
  s.power_exponent = params.q;
  s.with_nonlinearity = true;
  s.nonlinearity = params.nonlinearity();
  return s;
}

FunctionalSpec FunctionalSpec::auxiliary(const ModelParams& params) {
  FunctionalSpec s;
  s.kirchhoff = params.kirchhoff;
  s.beta = params.beta;
  s.power_exponent = params.p;
  s.with_nonlinearity = false;
  s.nonlinearity = params.nonlinearity();
  return s;
}

SobolevMetric::SobolevMetric(GridPtr grid, double beta)
    : grid_(std::move(grid)), beta_(beta) {
  const RadialGrid& g = *grid_;
  muw_ = g.stiffness_weights().cwiseProduct(weight_at_nodes(g, beta));

  // M = diag(sqrt(mu w)) L B0 has M^T M = Gram(B0). A QR factorization
  // M = Q R gives the orthonormal basis B0 R^-1 without forming the Gram
  // matrix, whose condition number is the square of M's.
  const Eigen::MatrixXd& b0 = g.clamped_basis();
  const Eigen::MatrixXd lap = g.laplacian();
  const Eigen::MatrixXd m =
      muw_.cwiseSqrt().asDiagonal() * (lap * b0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd r =
      qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  basis_ = r.transpose()
               .triangularView<Eigen::Lower>()
               .solve(b0.transpose())
               .transpose();
  green_ = basis_ * basis_.transpose();

  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  gram_condition_ = smin > 0 ? (smax / smin) * (smax / smin)
                             : std::numeric_limits<double>::infinity();
}

struct Energy::LazyMetric {
  std::once_flag once;
  std::shared_ptr<const SobolevMetric> metric;
};

Energy::Energy(GridPtr grid, FunctionalSpec spec)
    : grid_(std::move(grid)),
      spec_(spec),
      metric_(std::make_shared<LazyMetric>()) {
  mu_ = grid_->ball_weights();
  muw_ = grid_->stiffness_weights().cwiseProduct(
      weight_at_nodes(*grid_, spec_.beta));
}

const SobolevMetric& Energy::metric() const {
  std::call_once(metric_->once, [&] {
    metric_->metric = std::make_shared<SobolevMetric>(grid_, spec_.beta);
  });
  return *metric_->metric;
}

double Energy::inner(const RadialFunction& u, const RadialFunction& v) const {
  require_same_grid(u, v);
  if (u.grid() != grid_)
    throw std::invalid_argument("Energy: function on a foreign grid");
  const Vector lu = laplacian4(u).values();
  const Vector lv = &u == &v ? lu : laplacian4(v).values();
  return kernels::active().dot3(muw_.data(), lu.data(), lv.data(),
                                static_cast<std::size_t>(lu.size()));
}

double Energy::norm_squared(const RadialFunction& u) const {
  return inner(u, u);
}

double Energy::power_integral(const Vector& u) const {
  const double r = spec_.power_exponent;
  Vector a(u.size());
  for (int i = 0; i < u.size(); ++i) a[i] = std::pow(std::abs(u[i]), r);
  return kernels::active().dot(mu_.data(), a.data(), std::size_t(a.size()));
}

Vector Energy::nodal_load(const Vector& u) const {
  const double r = spec_.power_exponent;
  Vector out(u.size());
  for (int i = 0; i < u.size(); ++i) {
    const double t = u[i];
    double v = std::pow(std::abs(t), r - 2.0) * t;
    if (spec_.with_nonlinearity) v += f_eval(spec_.nonlinearity, t);
    out[i] = v;
  }
  return out;
}

EnergyBreakdown Energy::energy(const RadialFunction& u) const {
  EnergyBreakdown e;
  e.kirchhoff_term = 0.5 * kirchhoff_G(spec_.kirchhoff, norm_squared(u));
  e.power_term = power_integral(u.values()) / spec_.power_exponent;
  if (spec_.with_nonlinearity) {
    Vector fv(u.size());
    for (int i = 0; i < u.size(); ++i) fv[i] = F_eval(spec_.nonlinearity, u[i]);
    e.f_term = kernels::active().dot(mu_.data(), fv.data(), std::size_t(fv.size()));
  }
  e.total = e.kirchhoff_term - e.power_term - e.f_term;
  return e;
}

double Energy::weak_action(const RadialFunction& u,
                           const RadialFunction& phi) const {
  require_same_grid(u, phi);
  const double g = kirchhoff_g(spec_.kirchhoff, norm_squared(u));
  const Vector load = nodal_load(u.values());
  const double rhs = kernels::active().dot3(
      mu_.data(), load.data(), phi.values().data(), std::size_t(load.size()));
  return g * inner(u, phi) - rhs;
}

double Energy::nehari_residual(const RadialFunction& u) const {
  return weak_action(u, u);
}

RadialFunction Energy::sobolev_gradient(const RadialFunction& u) const {
  const SobolevMetric& m = metric();
  if (m.gram_condition() > SobolevMetric::kMaxGramCondition)
    throw IllConditioned("Gram matrix condition estimate " +
                         std::to_string(m.gram_condition()) +
                         " exceeds 1e14; reduce the node count");
  const double g = kirchhoff_g(spec_.kirchhoff, norm_squared(u));
  const Vector load = nodal_load(u.values()).cwiseProduct(mu_);
  Vector riesz(u.size());
  kernels::active().matvec(m.green().data(), load.data(), riesz.data(),
                           u.size(), u.size());
  // Only the clamped part of u pairs with clamped test functions.
  const Vector uc = u.clamped().values();
  // Rounding in the Green matrix leaks into the boundary values; drop it.
  return RadialFunction(grid_, g * uc - riesz).clamped();
}

Energy::Fibre Energy::fibre(const RadialFunction& u) const {
  Fibre fb;
  fb.values = u.values();
  fb.norm_sq = norm_squared(u);
  fb.power_int = power_integral(fb.values);
  fb.max_abs = fb.values.cwiseAbs().maxCoeff();
  return fb;
}

double Energy::fibre_limit(const Fibre& fb) const {
  if (!spec_.with_nonlinearity || fb.max_abs == 0.0)
    return std::numeric_limits<double>::infinity();
  return overflow_limit(spec_.nonlinearity) / fb.max_abs;
}

double Energy::fibering(const Fibre& fb, double t) const {
  const double r = spec_.power_exponent;
  double value = 0.5 * kirchhoff_G(spec_.kirchhoff, t * t * fb.norm_sq) -
                 std::pow(t, r) * fb.power_int / r;
  if (spec_.with_nonlinearity) {
    double acc = 0.0;
    for (int i = 0; i < fb.values.size(); ++i)
      acc += mu_[i] * F_eval(spec_.nonlinearity, t * fb.values[i]);
    value -= acc;
  }
  return value;
}

double Energy::fibering_deriv(const Fibre& fb, double t) const {
  const double r = spec_.power_exponent;
  const double s = t * t * fb.norm_sq;
  double value = kirchhoff_g(spec_.kirchhoff, s) * t * fb.norm_sq -
                 std::pow(t, r - 1.0) * fb.power_int;
  if (spec_.with_nonlinearity) {
    double acc = 0.0;
    for (int i = 0; i < fb.values.size(); ++i)
      acc += mu_[i] * f_eval(spec_.nonlinearity, t * fb.values[i]) * fb.values[i];
    value -= acc;
  }
  return value;
}

double Energy::fibering_second_deriv(const Fibre& fb, double t) const {
  const double r = spec_.power_exponent;
  const double s = t * t * fb.norm_sq;
  double value = kirchhoff_g_prime(spec_.kirchhoff, s) * 2.0 * s * fb.norm_sq +
                 kirchhoff_g(spec_.kirchhoff, s) * fb.norm_sq -
                 (r - 1.0) * std::pow(t, r - 2.0) * fb.power_int;
  if (spec_.with_nonlinearity) {
    double acc = 0.0;
    for (int i = 0; i < fb.values.size(); ++i) {
      const double ui = fb.values[i];
      acc += mu_[i] * f_prime(spec_.nonlinearity, t * ui) * ui * ui;
    }
    value -= acc;
  }
  return value;
}

double Energy::fibering(const RadialFunction& u, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("fibering: t must be >= 0");
  return fibering(fibre(u), t);
}

double Energy::fibering_deriv(const RadialFunction& u, double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("fibering_deriv: t must be >= 0");
  return fibering_deriv(fibre(u), t);
}

double Energy::fibering_second_deriv(const RadialFunction& u, double t) const {
  if (!(t >= 0.0))
    throw std::invalid_argument("fibering_second_deriv: t must be >= 0");
  return fibering_second_deriv(fibre(u), t);
}

EnergyBreakdown energy(const RadialFunction& u, const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).energy(u);
}

double weak_action(const RadialFunction& u, const RadialFunction& phi,
                   const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).weak_action(u, phi);
}

double nehari_residual(const RadialFunction& u, const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).nehari_residual(u);
}

RadialFunction sobolev_gradient(const RadialFunction& u,
                                const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).sobolev_gradient(u);
}

double fibering(const RadialFunction& u, double t, const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).fibering(u, t);
}

double fibering_deriv(const RadialFunction& u, double t,
                      const ModelParams& params) {
  return Energy(u.grid(), FunctionalSpec::full(params)).fibering_deriv(u, t);
}

}  // namespace nehari
