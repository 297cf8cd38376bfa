#pragma once

// Radial functions on the unit ball of R^4.
//
// A radial profile u(r), r in (0,1], is stored by its values at the nodes of
// a RadialGrid. Two discretizations are provided:
//
//   spectral-even  polynomials in s = r^2 collocated at the Gauss-Radau points
//                  of the weight s ds on [0,1] (endpoint s = 1 included).
//                  Functions are even in r, so the 3u'/r term of the radial
//                  Laplacian stays finite at the origin.
//   uniform-fd     nodes r_i = i/n, second-order finite differences and a
//                  composite piecewise-quadratic product rule.
//
// Clamped boundary conditions u(1) = u'(1) = 0 are imposed by restricting to
// the null space of the two boundary functionals (basis recombination).

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace nehari {

using Vector = Eigen::VectorXd;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846;
// Area of the unit sphere S^3.
inline constexpr double kSphereArea = 2.0 * kPi * kPi;

enum class GridScheme { spectral_even, uniform_fd };

std::string_view to_string(GridScheme scheme);
GridScheme parse_scheme(std::string_view name);

class RadialGrid;
using GridPtr = std::shared_ptr<const RadialGrid>;

class RadialGrid {
 public:
  static constexpr int kMinNodes = 8;

  int size() const { return static_cast<int>(nodes_.size()); }
  GridScheme scheme() const { return scheme_; }

  // Radii r_i, strictly increasing, last one exactly 1.
  const Vector& nodes() const { return nodes_; }
  // Weights q_i with sum_i q_i v(r_i) ~ int_0^1 v(r) r^3 dr.
  const Vector& quad_weights() const { return quad_weights_; }
  // 2 pi^2 q_i, so that sum_i mu_i v(r_i) ~ int_B v dx.
  const Vector& ball_weights() const { return ball_weights_; }
  // Ball weights used for int_B w |Lap u|^2. Same as ball_weights() on the
  // spectral grid; the plain r^3 trapezoid rule on the uniform grid, which
  // pairs with its ghost-point clamp row for second-order levels.
  const Vector& stiffness_weights() const { return stiffness_weights_; }

  const RowMatrix& d1() const { return d1_; }
  const RowMatrix& d2() const { return d2_; }
  // Radial Laplacian u'' + 3u'/r as a nodal operator.
  const RowMatrix& laplacian() const { return laplacian_; }

  // Orthonormal (Euclidean) basis of the clamped subspace, n x (n-2).
  const Eigen::MatrixXd& clamped_basis() const { return clamped_basis_; }

 private:
  friend GridPtr build_grid(int n, GridScheme scheme);
  friend GridPtr with_flipped_laplacian(const GridPtr& grid);
  RadialGrid() = default;

  GridScheme scheme_ = GridScheme::spectral_even;
  Vector nodes_;
  Vector quad_weights_;
  Vector ball_weights_;
  Vector stiffness_weights_;
  RowMatrix d1_;
  RowMatrix d2_;
  RowMatrix laplacian_;
  Eigen::MatrixXd clamped_basis_;
};

// Deterministic for fixed (n, scheme). Throws std::invalid_argument for
// n < 8.
GridPtr build_grid(int n, GridScheme scheme);

// Copy of `grid` whose Laplacian has the wrong sign. Fault injection for
// the verification suite; nothing else should call it.
GridPtr with_flipped_laplacian(const GridPtr& grid);

// Nodal values of a radial profile on a fixed grid.
class RadialFunction {
 public:
  RadialFunction(GridPtr grid, Vector values);

  // Samples `profile(r)` at the grid nodes; no boundary enforcement.
  static RadialFunction sample(GridPtr grid,
                               const std::function<double(double)>& profile);
  static RadialFunction zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  std::span<const double> span() const {
    return {values_.data(), static_cast<std::size_t>(values_.size())};
  }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }

  // Orthogonal projection onto the clamped subspace.
  RadialFunction clamped() const;
  // max(|u(1)|, |u'(1)|).
  double boundary_defect() const;

  RadialFunction derivative() const;

  RadialFunction& operator+=(const RadialFunction& other);
  RadialFunction& operator-=(const RadialFunction& other);
  RadialFunction& operator*=(double c);

 private:
  GridPtr grid_;
  Vector values_;
};

RadialFunction operator+(RadialFunction a, const RadialFunction& b);
RadialFunction operator-(RadialFunction a, const RadialFunction& b);
RadialFunction operator*(double c, RadialFunction a);
RadialFunction operator*(RadialFunction a, double c);

// Throws std::invalid_argument unless both live on the same grid object.
void require_same_grid(const RadialFunction& a, const RadialFunction& b);

RadialFunction laplacian4(const RadialFunction& u);

// (log(e/r))^beta = (1 - ln r)^beta. beta = 0 is accepted (w = 1).
double weight(double r, double beta);

// Weight evaluated at every node of `grid`.
Vector weight_at_nodes(const RadialGrid& grid, double beta);

// int_B v dx for a radial v given by its nodal values.
double ball_integral(const RadialGrid& grid, std::span<const double> v);
double ball_integral(const RadialFunction& v);

double w_inner(const RadialFunction& u, const RadialFunction& v, double beta);
double w_norm(const RadialFunction& u, double beta);

// (int_B |u|^s dx)^(1/s), s >= 1.
double lebesgue_norm(const RadialFunction& u, double s);

// (|u|_2^2 + |grad u|_2^2 + ||u||^2)^(1/2).
double full_sobolev_norm(const RadialFunction& u, double beta);

// Coefficient c(r) of the radial pointwise estimate |u(r)| <= c(r) ||u||:
// |(log(e/r))^(1-beta) - 1|^(1/2) / (2 sqrt(2) pi sqrt(1-beta)).
double pointwise_bound_coeff(double r, double beta);

// Two-column CSV, header "r,u", ascending r.
void write_profile_csv(std::ostream& out, const RadialFunction& u);

struct ProfileTable {
  std::vector<double> r;
  std::vector<double> u;
};
ProfileTable read_profile_csv(std::istream& in);

// Rebuilds a function from a table whose radii match the grid nodes.
RadialFunction profile_on_grid(GridPtr grid, const ProfileTable& table,
                               double node_tol = 1e-12);

}  // namespace nehari
