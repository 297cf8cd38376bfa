#include "nehari/radial_core.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nehari/kernels.hpp"

namespace nehari {

namespace {

// Gauss-Radau rule for the Jacobi weight (1-x)^a (1+x)^b on [-1,1] with the
// node x = 1 prescribed (Golub-Welsch with the Radau modification of the last
// diagonal entry of the Jacobi matrix).
void radau_jacobi(int n, double a, double b, Vector& x, Vector& w) {
  auto alpha = [&](int k) {
    const double s = 2.0 * k + a + b;
    if (k == 0) return (b - a) / (a + b + 2.0);
    return (b * b - a * a) / (s * (s + 2.0));
  };
  auto beta = [&](int k) {
    const double s = 2.0 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
           (s * s * (s + 1.0) * (s - 1.0));
  };

  Vector diag(n);
  Vector sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = alpha(k);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(beta(k));

  // ratio_k = pi_k(1) / pi_{k-1}(1) for the monic orthogonal polynomials.
  double ratio = 1.0 - alpha(0);
  for (int k = 1; k < n - 1; ++k) ratio = (1.0 - alpha(k)) - beta(k) / ratio;
  diag[n - 1] = 1.0 - beta(n - 1) / ratio;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Radau eigenproblem did not converge");

  const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) *
                     std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
  x = solver.eigenvalues();
  w.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = solver.eigenvectors()(0, k);
    w[k] = mu0 * v0 * v0;
  }
  x[n - 1] = 1.0;
}

// Barycentric first and second differentiation matrices on arbitrary nodes.
// Assembled in extended precision; the entries near the clustered ends are
// large and lose several digits to cancellation in plain double.
void barycentric_derivatives(const Vector& nodes, RowMatrix& D, RowMatrix& D2) {
  using Real = long double;
  const int n = static_cast<int>(nodes.size());
  std::vector<Real> s(nodes.data(), nodes.data() + n);
  const Real scale = Real(4) / (s[n - 1] - s[0]);  // node products near unity
  std::vector<Real> lambda(n);
  for (int j = 0; j < n; ++j) {
    Real prod = 1;
    for (int k = 0; k < n; ++k)
      if (k != j) prod *= scale * (s[j] - s[k]);
    lambda[j] = 1 / prod;
  }
  std::vector<Real> d(std::size_t(n) * n, 0);
  std::vector<Real> d2(std::size_t(n) * n, 0);
  auto at = [n](std::vector<Real>& m, int i, int j) -> Real& {
    return m[std::size_t(i) * n + j];
  };
  for (int i = 0; i < n; ++i) {
    Real acc = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      at(d, i, j) = (lambda[j] / lambda[i]) / (s[i] - s[j]);
      acc -= at(d, i, j);
    }
    at(d, i, i) = acc;
  }
  for (int i = 0; i < n; ++i) {
    Real acc = 0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      at(d2, i, j) = 2 * at(d, i, j) * (at(d, i, i) - 1 / (s[i] - s[j]));
      acc -= at(d2, i, j);
    }
    at(d2, i, i) = acc;
  }
  D.resize(n, n);
  D2.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      D(i, j) = static_cast<double>(at(d, i, j));
      D2(i, j) = static_cast<double>(at(d2, i, j));
    }
}

// Fornberg's finite-difference weights at x0 for derivatives 0..m.
Eigen::MatrixXd fornberg(double x0, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

void build_spectral(int n, Vector& nodes, Vector& qw,
                    RowMatrix& d1, RowMatrix& d2, RowMatrix& lap) {
  Vector x;
  Vector wx;
  radau_jacobi(n, 0.0, 1.0, x, wx);
  Vector s = (x.array() + 1.0) / 2.0;
  s[n - 1] = 1.0;
  nodes = s.array().sqrt();
  // int_0^1 v r^3 dr = (1/2) int_0^1 v s ds = (1/8) int_{-1}^{1} v (1+x) dx
  qw = wx / 8.0;

  RowMatrix Ds;
  RowMatrix Dss;
  barycentric_derivatives(s, Ds, Dss);
  d1 = (2.0 * nodes).asDiagonal() * Ds;
  d2 = 2.0 * Ds + (4.0 * s).asDiagonal() * Dss;
  lap = 8.0 * Ds + (4.0 * s).asDiagonal() * Dss;
}

void build_uniform_fd(int n, Vector& nodes, Vector& qw, RowMatrix& d1,
                      RowMatrix& d2, RowMatrix& lap) {
  const double h = 1.0 / n;
  nodes.resize(n);
  for (int i = 0; i < n; ++i) nodes[i] = (i + 1) * h;
  nodes[n - 1] = 1.0;

  d1.setZero(n, n);
  d2.setZero(n, n);
  // Node 0 (r = h): even extension u(-r) = u(r), stencil {-2h,-h,h,2h}.
  {
    const std::vector<double> pts{-2 * h, -h, h, 2 * h};
    const Eigen::MatrixXd c = fornberg(h, pts, 2);
    const int idx[4] = {1, 0, 0, 1};
    for (int k = 0; k < 4; ++k) {
      d1(0, idx[k]) += c(k, 1);
      d2(0, idx[k]) += c(k, 2);
    }
  }
  for (int i = 1; i < n - 1; ++i) {
    d1(i, i - 1) = -0.5 / h;
    d1(i, i + 1) = 0.5 / h;
    d2(i, i - 1) = 1.0 / (h * h);
    d2(i, i) = -2.0 / (h * h);
    d2(i, i + 1) = 1.0 / (h * h);
  }
  // r = 1: one-sided, second order.
  d1(n - 1, n - 1) = 1.5 / h;
  d1(n - 1, n - 2) = -2.0 / h;
  d1(n - 1, n - 3) = 0.5 / h;
  // u''(1) from u(1-h) = u - h u' + h^2/2 u'' with u' taken from the row
  // above: the ghost-point closure, exact for quadratics. A one-sided 4-point
  // row is formally better but lets the clamped minimizers cheat near r = 1
  // and the levels converge only at first order.
  d2(n - 1, n - 2) = 2.0 / (h * h);
  d2(n - 1, n - 1) = -2.0 / (h * h);
  d2.row(n - 1) += (2.0 / h) * d1.row(n - 1);

  lap = d2 + (3.0 / nodes.array()).matrix().asDiagonal() * d1;

  // Composite product rule for int_0^1 v(r) r^3 dr: on each cell
  // [r_{i-1}, r_i] (r_{-1} = 0) integrate against r^3 (exactly, 3-point
  // Gauss) the mean of the quadratic interpolants on the two overlapping
  // node triples, or the only one available at the ends. Exact for
  // quadratics; the weights stay smooth, which the clamped levels need.
  qw.setZero(n);
  const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  auto add_cell = [&](double lo, double hi, int first, double share) {
    const double xs[3] = {nodes[first], nodes[first + 1], nodes[first + 2]};
    for (int q = 0; q < 3; ++q) {
      const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[q];
      const double wq = share * 0.5 * (hi - lo) * gw[q] * r * r * r;
      for (int k = 0; k < 3; ++k) {
        double lk = 1.0;
        for (int j = 0; j < 3; ++j)
          if (j != k) lk *= (r - xs[j]) / (xs[k] - xs[j]);
        qw[first + k] += wq * lk;
      }
    }
  };
  for (int cell = 0; cell < n; ++cell) {
    const double lo = cell == 0 ? 0.0 : nodes[cell - 1];
    const double hi = nodes[cell];
    std::vector<int> firsts;
    if (cell >= 2) firsts.push_back(cell - 2);
    if (cell >= 1 && cell + 1 <= n - 1) firsts.push_back(cell - 1);
    if (cell == 0) firsts.push_back(0);
    for (int f : firsts) add_cell(lo, hi, f, 1.0 / firsts.size());
  }
}

}  // namespace

std::string_view to_string(GridScheme scheme) {
  return scheme == GridScheme::spectral_even ? "spectral-even" : "uniform-fd";
}

GridScheme parse_scheme(std::string_view name) {
  if (name == "spectral-even") return GridScheme::spectral_even;
  if (name == "uniform-fd") return GridScheme::uniform_fd;
  throw std::invalid_argument("unknown grid scheme '" + std::string(name) +
                              "' (expected spectral-even or uniform-fd)");
}

GridPtr build_grid(int n, GridScheme scheme) {
  if (n < RadialGrid::kMinNodes)
    throw std::invalid_argument("grid needs at least 8 nodes, got " +
                                std::to_string(n));
  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid());
  grid->scheme_ = scheme;
  if (scheme == GridScheme::spectral_even)
    build_spectral(n, grid->nodes_, grid->quad_weights_, grid->d1_,
                   grid->d2_, grid->laplacian_);
  else
    build_uniform_fd(n, grid->nodes_, grid->quad_weights_, grid->d1_,
                     grid->d2_, grid->laplacian_);
  grid->ball_weights_ = kSphereArea * grid->quad_weights_;
  if (scheme == GridScheme::spectral_even) {
    grid->stiffness_weights_ = grid->ball_weights_;
  } else {
    const double h = 1.0 / n;
    grid->stiffness_weights_ =
        kSphereArea * h * grid->nodes_.array().cube().matrix();
    grid->stiffness_weights_[n - 1] *= 0.5;
  }

  // Boundary functionals: u(1) and u'(1). Their null space is the clamped
  // subspace; the trailing Householder columns span it orthonormally.
  Eigen::MatrixXd constraints(n, 2);
  constraints.setZero();
  constraints(n - 1, 0) = 1.0;
  constraints.col(1) = grid->d1_.row(n - 1).transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(constraints);
  Eigen::MatrixXd q = qr.householderQ();
  grid->clamped_basis_ = q.rightCols(n - 2);
  return grid;
}

GridPtr with_flipped_laplacian(const GridPtr& grid) {
  auto copy = std::shared_ptr<RadialGrid>(new RadialGrid(*grid));
  copy->laplacian_ = -copy->laplacian_;
  return copy;
}

RadialFunction::RadialFunction(GridPtr grid, Vector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("RadialFunction without grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("RadialFunction: value count " +
                                std::to_string(values_.size()) +
                                " does not match grid size " +
                                std::to_string(grid_->size()));
}

RadialFunction RadialFunction::sample(
    GridPtr grid, const std::function<double(double)>& profile) {
  Vector v(grid->size());
  for (int i = 0; i < grid->size(); ++i) v[i] = profile(grid->nodes()[i]);
  return RadialFunction(std::move(grid), std::move(v));
}

RadialFunction RadialFunction::zero(GridPtr grid) {
  const int n = grid->size();
  return RadialFunction(std::move(grid), Vector::Zero(n));
}

RadialFunction RadialFunction::clamped() const {
  const auto& b = grid_->clamped_basis();
  Vector v = b * (b.transpose() * values_);
  return RadialFunction(grid_, std::move(v));
}

double RadialFunction::boundary_defect() const {
  const int n = size();
  const double du = grid_->d1().row(n - 1).dot(values_);
  return std::max(std::abs(values_[n - 1]), std::abs(du));
}

RadialFunction RadialFunction::derivative() const {
  Vector out(size());
  kernels::active().matvec(grid_->d1().data(), values_.data(), out.data(),
                           size(), size());
  return RadialFunction(grid_, std::move(out));
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& other) {
  require_same_grid(*this, other);
  values_ += other.values_;
  return *this;
}

RadialFunction& RadialFunction::operator-=(const RadialFunction& other) {
  require_same_grid(*this, other);
  values_ -= other.values_;
  return *this;
}

RadialFunction& RadialFunction::operator*=(double c) {
  values_ *= c;
  return *this;
}

RadialFunction operator+(RadialFunction a, const RadialFunction& b) {
  return a += b;
}
RadialFunction operator-(RadialFunction a, const RadialFunction& b) {
  return a -= b;
}
RadialFunction operator*(double c, RadialFunction a) { return a *= c; }
RadialFunction operator*(RadialFunction a, double c) { return a *= c; }

void require_same_grid(const RadialFunction& a, const RadialFunction& b) {
  if (a.grid() != b.grid())
    throw std::invalid_argument("radial functions live on different grids");
}

RadialFunction laplacian4(const RadialFunction& u) {
  const auto& g = *u.grid();
  Vector out(u.size());
  kernels::active().matvec(g.laplacian().data(), u.values().data(),
                           out.data(), u.size(), u.size());
  return RadialFunction(u.grid(), std::move(out));
}

double weight(double r, double beta) {
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument("weight: radius must lie in (0,1]");
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("weight: beta must lie in (0,1) (0 allowed)");
  if (beta == 0.0) return 1.0;
  return std::pow(1.0 - std::log(r), beta);
}

Vector weight_at_nodes(const RadialGrid& grid, double beta) {
  Vector w(grid.size());
  for (int i = 0; i < grid.size(); ++i) w[i] = weight(grid.nodes()[i], beta);
  return w;
}

double ball_integral(const RadialGrid& grid, std::span<const double> v) {
  if (static_cast<int>(v.size()) != grid.size())
    throw std::invalid_argument("ball_integral: size mismatch");
  const auto& mu = grid.ball_weights();
  return kernels::active().dot(mu.data(), v.data(), v.size());
}

double ball_integral(const RadialFunction& v) {
  return ball_integral(*v.grid(), v.span());
}

double w_inner(const RadialFunction& u, const RadialFunction& v, double beta) {
  require_same_grid(u, v);
  const auto& g = *u.grid();
  const Vector lu = laplacian4(u).values();
  const Vector lv = laplacian4(v).values();
  const Vector muw =
      g.stiffness_weights().cwiseProduct(weight_at_nodes(g, beta));
  return kernels::active().dot3(muw.data(), lu.data(), lv.data(),
                                static_cast<std::size_t>(g.size()));
}

double w_norm(const RadialFunction& u, double beta) {
  return std::sqrt(std::max(0.0, w_inner(u, u, beta)));
}

double lebesgue_norm(const RadialFunction& u, double s) {
  if (!(s >= 1.0))
    throw std::invalid_argument("lebesgue_norm: exponent must be >= 1");
  Vector a = u.values().cwiseAbs();
  const double amax = a.size() ? a.maxCoeff() : 0.0;
  if (amax == 0.0) return 0.0;
  // Scale by the max to keep |u|^s representable.
  for (int i = 0; i < a.size(); ++i) a[i] = std::pow(a[i] / amax, s);
  return amax * std::pow(ball_integral(*u.grid(), {a.data(), std::size_t(a.size())}),
                         1.0 / s);
}

double full_sobolev_norm(const RadialFunction& u, double beta) {
  const auto& g = *u.grid();
  const Vector du = u.derivative().values();
  const double l2 = kernels::dot3(
      {g.ball_weights().data(), std::size_t(g.size())}, u.span(), u.span());
  const double grad = kernels::dot3(
      {g.ball_weights().data(), std::size_t(g.size())},
      {du.data(), std::size_t(du.size())}, {du.data(), std::size_t(du.size())});
  const double w2 = w_inner(u, u, beta);
  return std::sqrt(std::max(0.0, l2 + grad + w2));
}

double pointwise_bound_coeff(double r, double beta) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("pointwise_bound_coeff: radius must lie in (0,1)");
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("pointwise_bound_coeff: beta must lie in [0,1)");
  const double l = 1.0 - std::log(r);
  const double core = std::abs(std::pow(l, 1.0 - beta) - 1.0);
  return std::sqrt(core) / (2.0 * std::sqrt(2.0) * kPi * std::sqrt(1.0 - beta));
}

void write_profile_csv(std::ostream& out, const RadialFunction& u) {
  const auto& r = u.grid()->nodes();
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "r,u\n";
  for (int i = 0; i < u.size(); ++i) buf << r[i] << ',' << u[i] << '\n';
  out << buf.str();
}

ProfileTable read_profile_csv(std::istream& in) {
  ProfileTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,u")
    throw std::runtime_error("profile CSV header must be 'r,u', got '" + line + "'");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("profile CSV line " + std::to_string(lineno) +
                               ": expected two columns");
    try {
      std::size_t used = 0;
      const double r = std::stod(line.substr(0, comma), &used);
      const double u = std::stod(line.substr(comma + 1));
      if (!table.r.empty() && !(r > table.r.back()))
        throw std::runtime_error("radii not strictly ascending");
      table.r.push_back(r);
      table.u.push_back(u);
    } catch (const std::logic_error&) {
      throw std::runtime_error("profile CSV line " + std::to_string(lineno) +
                               ": not a number");
    }
  }
  return table;
}

RadialFunction profile_on_grid(GridPtr grid, const ProfileTable& table,
                               double node_tol) {
  if (static_cast<int>(table.r.size()) != grid->size())
    throw std::invalid_argument("profile has " + std::to_string(table.r.size()) +
                                " rows, grid has " + std::to_string(grid->size()));
  Vector v(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    if (std::abs(table.r[i] - grid->nodes()[i]) > node_tol)
      throw std::invalid_argument("profile radius " + std::to_string(i) +
                                  " does not match the grid node");
    v[i] = table.u[i];
  }
  return RadialFunction(std::move(grid), std::move(v));
}

}  // namespace nehari
