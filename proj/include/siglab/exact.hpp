#pragma once

#include <array>
#include <string>
#include <vector>

#include "siglab/grid.hpp"

namespace siglab {

// Sparse monomial representation c * x1^e0 * x2^e1 * x3^e2.
struct Monomial {
  std::array<int, 3> e{0, 0, 0};
  double c = 0.0;
};
using Poly = std::vector<Monomial>;

double poly_eval(const Poly& p, const Point& x);
Poly poly_derivative(const Poly& p, int axis);

// Basis of even-in-x_n homogeneous harmonic polynomials of degree kappa that
// spans the Q_kappa class; hardcoded for kappa in {2,4}, dim in {2,3}.
const std::vector<Poly>& qpoly_basis(int dim, int kappa);

// Closed-form members of the solution library: the 3/2-homogeneous regular
// profile a*Re(x'.nu + i|x_n|)^{3/2}, the Q_kappa polynomials, constants and
// the full-contact field -c|x_n|.
class ExactSolution {
 public:
  enum class Kind { Regular32, QPoly, Constant, FullContact };

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double homogeneity() const { return kappa_; }
  double coefficient() const { return a_; }
  const std::array<double, 3>& direction() const { return nu_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double operator()(const Point& x) const;
  // Analytic gradient with the upper-half convention: the normal component
  // is the one-sided limit from above on the thin plane.
  Point grad(const Point& x) const;

  FieldFn field() const {
    return [*this](const Point& p) { return (*this)(p); };
  }

  friend ExactSolution regular32(int dim, double a, std::array<double, 3> nu);
  friend ExactSolution qpoly(int dim, int kappa, std::vector<double> coeffs);
  friend ExactSolution constant(int dim, double c);
  friend ExactSolution full_contact(int dim, double c);

 private:
  Kind kind_ = Kind::Constant;
  int dim_ = 2;
  double kappa_ = 0.0;  // homogeneity degree
  double a_ = 0.0;      // Regular32 amplitude / Constant value / FullContact slope
  std::array<double, 3> nu_{1.0, 0.0, 0.0};
  std::vector<double> coeffs_;
  Poly poly_;
  std::array<Poly, 3> poly_grad_;
};

ExactSolution regular32(int dim, double a, std::array<double, 3> nu);
ExactSolution qpoly(int dim, int kappa, std::vector<double> coeffs);
ExactSolution constant(int dim, double c);
ExactSolution full_contact(int dim, double c);

// Names like "regular32:a=1,nu=30deg", "qpoly2d:1", "qpoly3d:1,1,0",
// "constant:1", "fullcontact:0.5".
ExactSolution parse_solution(int dim, const std::string& name);

// High-accuracy reference integrals evaluated directly on the closed form
// (no grid). Orders well above the grid quadratures.
double oracle_sphere_mass(const ExactSolution& sol, double r, int order = 4096);
double oracle_ball_energy(const ExactSolution& sol, double r, int order = 4096);
// Radial-shell quadrature cross-check of oracle_ball_energy.
double oracle_ball_energy_shell(const ExactSolution& sol, double r, int order = 4096);

// Nodes and weights of the n-point Gauss-Legendre rule on [0,1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace siglab
