#pragma once

#include <vector>

#include "siglab/grid.hpp"

namespace siglab {

// Quadrature node on the upper unit hemisphere. Weights sum to half the
// sphere measure; integrals of even integrands double the upper sum.
struct SphereNode {
  Point xi;
  double w;
};

// Uniform angular rule: midpoint in the 2D polar angle, midpoint
// latitude-longitude in 3D. `level` scales the default (256 angles in 2D,
// 64x128 bands in 3D).
std::vector<SphereNode> sphere_quadrature(int dim, int level = 1);

// Squared cell-center gradient magnitude per cell of the upper half-grid,
// in storage order (x1 fastest). Shared by ball_energy and the profile
// driver, which sweeps many radii over one field.
std::vector<double> cell_energies(const GridFunction& f);

// D = integral of |grad f|^2 over B_r(x0), computed as twice the upper-half
// sum of cell-centered gradient magnitudes weighted by the fraction of each
// cell inside the ball (4^n subsamples per boundary-cut cell).
double ball_energy(const GridFunction& f, const BallSpec& ball);
double ball_energy_cached(const Grid& grid, const std::vector<double>& cellE, const BallSpec& ball);

// H = integral of f^2 over the sphere of BallSpec, doubled from the upper
// hemisphere with interpolated values.
double sphere_mass(const GridFunction& f, const BallSpec& ball, int level = 1);

// Quadratic deficit integrand of the Weiss derivative:
// integral over the sphere of (u_nu - kappa (1 - b t^alpha)/t * u)^2.
double sphere_flux_deficit(const GridFunction& f, const VectorField& grad, const BallSpec& ball, double kappa,
                           double b, double alpha, int level = 1);
double sphere_flux_deficit(const GridFunction& f, const BallSpec& ball, double kappa, double b, double alpha,
                           int level = 1);

// Dirichlet energy of the whole upper half-domain, doubled (unit cell
// weights; used by the energy-minimality checks).
double total_energy(const GridFunction& f);

}  // namespace siglab
